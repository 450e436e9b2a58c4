import argparse
from contextlib import contextmanager
import logging
from pathlib import Path
import sys

from Model import COMMANDS, JobConfig, Model
from settings import DEFAULT_FORMAT, DEFAULT_JOBS, DEFAULT_PRIME, GROUP_ORDER_CAP
from views.formats import (
    SUPERCHARACTER_COLUMNS, SUPERCLASS_COLUMNS, normal_poset_dot, supercharacter_dot,
    supercharacter_record, superclass_record, write_json, write_jsonl, write_tsv,
)


def create_parser():
    parser = argparse.ArgumentParser(
        prog="NPS.py",
        description="Superclasses, supercharacters and representative posets of normal pattern subgroups of U_n(F_p)",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--n", type=int, help="size of the ground set [n]")
    parser.add_argument("--p", type=int, default=DEFAULT_PRIME, help="field characteristic (default %(default)s)")
    parser.add_argument("--poset", help="builtin name (full, empty, commutator, dyck-index:K, t-family:M,N, "
                                        "p-index:I, example-hasse, example-six) or a JSON file")
    parser.add_argument("--out", help="output file, or directory for classify; stdout when omitted")
    parser.add_argument("--format", choices=("json", "tsv", "dot"), default=DEFAULT_FORMAT)
    parser.add_argument("--cap-group-order", type=int, default=GROUP_ORDER_CAP,
                        help="largest |U_P| the brute force oracle will enumerate")
    parser.add_argument("--jobs", type=int, default=DEFAULT_JOBS, help="worker processes for classification")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true")
    verbosity.add_argument("--quiet", action="store_true")
    return parser


def config_from_args(args):
    return JobConfig(
        command=args.command, n=args.n, p=args.p, poset=args.poset, out=args.out,
        format=args.format, cap_group_order=args.cap_group_order, jobs=args.jobs,
    )


class View:
    """
    Command-line front end: dispatches the configured command to the model
    and writes its results.
    """

    def __init__(self, config, stdout=None):
        self.logger = logging.getLogger(__name__)
        self.config = config
        self.model = Model(config)
        self.stdout = stdout if stdout is not None else sys.stdout

    async def main(self):
        '''
        Runs the command, returns the process exit status
        '''
        handler = {
            "enumerate": self.cmd_enumerate,
            "classify": self.cmd_classify,
            "chartable": self.cmd_chartable,
            "verify": self.cmd_verify,
        }[self.config.command]
        return await handler()

    @contextmanager
    def open_output(self, name=None):
        '''
        The --out file; with a name, that file inside the --out directory
        '''
        if self.config.out is None:
            yield self.stdout
            return
        path = Path(self.config.out)
        if name is not None:
            path.mkdir(parents=True, exist_ok=True)
            path = path / name
        else:
            path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as stream:
            yield stream
        self.logger.info(f"Wrote {path}")

    async def cmd_enumerate(self):
        with self.open_output() as stream:
            if self.config.format == "dot":
                for dyck, P in enumerate(self.model.enumerate_posets()):
                    stream.write(normal_poset_dot(dyck, P))
            else:
                write_jsonl(self.model.enumerate_records(), stream)
        return 0

    async def cmd_classify(self):
        _, superclasses, supercharacters = await self.model.classify()
        if self.config.format == "dot":
            with self.open_output("representatives.dot") as stream:
                for number, idx in enumerate(supercharacters):
                    stream.write(supercharacter_dot(number, idx))
            return 0

        superclass_records = [superclass_record(k, idx) for k, idx in enumerate(superclasses)]
        supercharacter_records = [supercharacter_record(k, idx) for k, idx in enumerate(supercharacters)]
        if self.config.format == "tsv":
            with self.open_output("superclasses.tsv") as stream:
                write_tsv(SUPERCLASS_COLUMNS, superclass_records, stream)
            with self.open_output("supercharacters.tsv") as stream:
                write_tsv(SUPERCHARACTER_COLUMNS, supercharacter_records, stream)
        else:
            with self.open_output("superclasses.jsonl") as stream:
                write_jsonl(superclass_records, stream)
            with self.open_output("supercharacters.jsonl") as stream:
                write_jsonl(supercharacter_records, stream)
        return 0

    async def cmd_chartable(self):
        table = await self.model.chartable()
        with self.open_output() as stream:
            stream.write(table.to_tsv() if self.config.format == "tsv" else table.to_jsonl())
        return 0

    async def cmd_verify(self):
        report = self.model.verify()
        with self.open_output() as stream:
            write_json(report, stream)
        if not report["passed"]:
            self.logger.error("Verification failed")
            return 1
        return 0
