import json
import logging
from pathlib import Path

from combinatorics.Poset import (
    Poset, commutator, empty_poset, example_hasse, example_six,
    from_dyck_index, full_poset, p_index_poset, t_family,
)
from errors import ConfigError, PosetError


class PosetSourceHandler:
    """
    Resolves a poset spec from the command line: a builtin name with optional
    integer arguments ("dyck-index:3", "t-family:5,3") or a path to a JSON file.
    """

    def __init__(self):
        self.logger = logging.getLogger(__name__)
        # name -> (factory taking n and the parsed arguments, number of arguments)
        self.builtin_posets = {
            "full": (lambda n: full_poset(n), 0),
            "empty": (lambda n: empty_poset(n), 0),
            "commutator": (lambda n: commutator(n), 0),
            "dyck-index": (lambda n, k: from_dyck_index(n, k), 1),
            "t-family": (lambda n, m, n2: t_family(m, n2), 2),
            "p-index": (lambda n, i: p_index_poset(n, i), 1),
            "example-hasse": (lambda n: example_hasse(), 0),
            "example-six": (lambda n: example_six(), 0),
        }

    def get_builtin_names(self):
        return list(self.builtin_posets.keys())

    def needs_size(self, spec):
        return spec.split(":")[0] in {"full", "empty", "commutator", "dyck-index", "p-index"}

    def create_poset(self, spec, n=None):
        '''
        Builds the poset named by spec; n is required by the families
        parametrised by size
        '''
        name, _, arg_text = spec.partition(":")
        if name not in self.builtin_posets:
            path = Path(spec)
            if path.suffix == ".json" or path.exists():
                return self.load_poset(path, n)
            raise ConfigError(f"Unknown poset '{spec}', expected one of {self.get_builtin_names()} or a JSON file")

        factory, arity = self.builtin_posets[name]
        try:
            args = [int(a) for a in arg_text.split(",")] if arg_text else []
        except ValueError as exc:
            raise ConfigError(f"Poset arguments must be integers in '{spec}'") from exc
        if len(args) != arity:
            raise ConfigError(f"'{name}' takes {arity} argument(s), got {len(args)}")
        if n is None and self.needs_size(spec):
            raise ConfigError(f"'{name}' needs --n")

        P = factory(n, *args)
        if n is not None and P.n != n:
            self.logger.warning(f"'{spec}' lives on [{P.n}], ignoring --n {n}")
        self.logger.info(f"Resolved '{spec}' to a poset with {len(P)} relations on [{P.n}]")
        return P

    def load_poset(self, path, n=None):
        try:
            data = json.loads(Path(path).read_text())
        except OSError as exc:
            raise ConfigError(f"Cannot read poset file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise PosetError(f"{path} is not valid JSON: {exc}") from exc
        P = Poset.from_json(data)
        if n is not None and P.n != n:
            raise ConfigError(f"{path} describes a poset on [{P.n}], not [{n}]")
        return P
