import asyncio
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
import logging

from algebra.FiniteField import check_prime
from algebra.UpperMatrix import Role
from analysis.CharacterTable import CharacterTable
from analysis.Classifier import Classifier, supercharacter_unit, superclass_unit
from analysis.Verifier import verify_all_normal, verify_poset
from analysis.utils import catalan, flatten
from combinatorics.Poset import boundary, enumerate_normal
from errors import CapExceededError, ConfigError
from settings import CHARACTER_TABLE_CAP, DEFAULT_FORMAT, DEFAULT_JOBS, DEFAULT_PRIME, GROUP_ORDER_CAP, MAX_N
from source import PosetSourceHandler
from views.formats import poset_record

COMMANDS = ("enumerate", "classify", "chartable", "verify")
FORMATS = {
    "enumerate": ("json", "dot"),
    "classify": ("json", "tsv", "dot"),
    "chartable": ("json", "tsv"),
    "verify": ("json",),
}


@dataclass(frozen=True)
class JobConfig:
    """
    One batch job as given on the command line.
    """
    command: str
    n: int = None
    p: int = DEFAULT_PRIME
    poset: str = None
    out: str = None
    format: str = DEFAULT_FORMAT
    cap_group_order: int = GROUP_ORDER_CAP
    jobs: int = DEFAULT_JOBS

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"Unknown command '{self.command}'")
        check_prime(self.p)
        if self.n is not None and not 0 <= self.n <= MAX_N:
            raise ConfigError(f"--n must lie in 0..{MAX_N}, got {self.n}")
        if self.cap_group_order <= 0:
            raise ConfigError("--cap-group-order must be positive")
        if self.jobs <= 0:
            raise ConfigError("--jobs must be positive")
        if self.format not in FORMATS[self.command]:
            raise ConfigError(f"{self.command} writes {'/'.join(FORMATS[self.command])}, not {self.format}")
        if self.command == "enumerate" and self.n is None:
            raise ConfigError("enumerate needs --n")
        if self.command == "verify" and self.poset is None and self.n is None:
            raise ConfigError("verify needs --poset or --n")


class Model:
    """
    Runs the computation behind each command. Per-partition work units of
    classify and chartable go through a process pool when jobs > 1.
    """

    def __init__(self, config):
        self.logger = logging.getLogger(__name__)
        self.config = config
        self.source_handler = PosetSourceHandler()

    def resolve_poset(self):
        spec = self.config.poset or "full"
        return self.source_handler.create_poset(spec, self.config.n)

    def enumerate_posets(self):
        n = self.config.n
        posets = enumerate_normal(n)
        if len(posets) != catalan(n):
            self.logger.error(f"Found {len(posets)} normal posets on [{n}], expected {catalan(n)}")
        return posets

    def enumerate_records(self):
        posets = self.enumerate_posets()
        records = [poset_record(P, k, boundary(P)) for k, P in enumerate(posets)]
        records.append({"count": len(posets)})
        return records

    async def map_units(self, unit, P, partitions):
        '''
        unit(P, p, lam) for every partition, concatenated in partition order
        '''
        p = self.config.p
        if self.config.jobs == 1:
            return flatten(unit(P, p, lam) for lam in partitions)
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=self.config.jobs) as pool:
            chunks = await asyncio.gather(*(
                loop.run_in_executor(pool, unit, P, p, lam) for lam in partitions
            ))
        return flatten(chunks)

    async def classify(self, P=None):
        P = self.resolve_poset() if P is None else P
        classifier = Classifier(P, self.config.p)
        superclasses = await self.map_units(superclass_unit, P, classifier.partitions(Role.PRIMAL))
        supercharacters = await self.map_units(supercharacter_unit, P, classifier.partitions(Role.DUAL))
        self.logger.info(f"Classified {len(superclasses)} superclasses and {len(supercharacters)} supercharacters")
        return P, superclasses, supercharacters

    async def chartable(self):
        P = self.resolve_poset()
        order = self.config.p ** len(P)
        limit = min(self.config.cap_group_order, CHARACTER_TABLE_CAP)
        if order > limit:
            raise CapExceededError("Character table group order", order, limit)
        P, superclasses, supercharacters = await self.classify(P)
        return CharacterTable(P, self.config.p, cap=self.config.cap_group_order,
                              rows=supercharacters, cols=superclasses)

    def verify(self):
        if self.config.poset is None:
            return verify_all_normal(self.config.n, self.config.p, self.config.cap_group_order)
        return verify_poset(self.resolve_poset(), self.config.p, self.config.cap_group_order)
