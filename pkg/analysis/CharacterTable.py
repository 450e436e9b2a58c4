import json
import logging

import numpy as np

from algebra.Cyclotomic import CyclotomicRat, row_value
from algebra.UpperMatrix import Role
from analysis.Classifier import degree, supercharacters, superclasses
from analysis.Oracle import Oracle, TWO_SIDED
from combinatorics.SetPartition import format_arcs
from errors import CapExceededError
from settings import CHARACTER_TABLE_CAP, GROUP_ORDER_CAP, RANDOM_SEED
from views.formats import entry_text


class CharacterTable:
    """
    Supercharacter table of U_P: rows follow the supercharacter indexing,
    columns the superclass indexing, values come from orbit sums.
    """

    def __init__(self, P, p, oracle=None, cap=GROUP_ORDER_CAP, rows=None, cols=None):
        self.logger = logging.getLogger(__name__)
        self.CHARACTER_TABLE_CAP = CHARACTER_TABLE_CAP
        self.P = P
        self.p = p
        self.oracle = oracle if oracle is not None else Oracle(P, p, cap)
        if self.oracle.order > self.CHARACTER_TABLE_CAP:
            raise CapExceededError("Character table group order", self.oracle.order, self.CHARACTER_TABLE_CAP)
        self.rows = rows if rows is not None else supercharacters(P, p)
        self.cols = cols if cols is not None else superclasses(P, p)
        self.rng = np.random.default_rng(RANDOM_SEED)
        self.values = [self._row(idx) for idx in self.rows]
        self.logger.info(f"Built a {len(self.rows)}x{len(self.cols)} supercharacter table")

    def _row(self, idx):
        classes = self.oracle.orbit_table(Role.PRIMAL, TWO_SIDED)
        coeffs, scale = self.oracle.character_row(idx.functional)
        row = []
        for col in self.cols:
            key = col.representative.off_diag.key
            members = classes.member_keys(classes.labels[key])
            other = int(self.rng.choice(members))
            if not np.array_equal(coeffs[key], coeffs[other]):
                raise AssertionError(
                    f"Supercharacter {format_arcs(idx.lam)} is not constant on superclass {format_arcs(col.lam)}"
                )
            row.append(row_value(coeffs[key], self.p, scale))
        return row

    def identity_column(self):
        return next(c for c, col in enumerate(self.cols) if col.representative.is_identity())

    def degree_mismatch(self):
        '''
        First row whose value at the identity is not its closed-form degree, or None
        '''
        column = self.identity_column()
        for idx, values in zip(self.rows, self.values):
            if values[column] != CyclotomicRat.from_int(self.p, degree(idx)):
                return {"lam": format_arcs(idx.lam), "identity": str(values[column]), "degree": degree(idx)}
        return None

    def superclass_sizes(self):
        classes = self.oracle.orbit_table(Role.PRIMAL, TWO_SIDED)
        return [classes.size_of(col.representative.off_diag) for col in self.cols]

    def row_orthogonality(self):
        '''
        Gram matrix of the rows: (1/|U_P|) sum over superclasses of size * chi * conj(psi)
        '''
        sizes = self.superclass_sizes()
        gram = []
        for a in self.values:
            gram_row = []
            for b in self.values:
                total = CyclotomicRat.from_int(self.p, 0)
                for size, x, y in zip(sizes, a, b):
                    total = total + x * y.conj() * size
                gram_row.append(total / self.oracle.order)
            gram.append(gram_row)
        return gram

    def row_label(self, idx):
        return f"{format_arcs(idx.lam)} {entry_text(idx.eta)}"

    def col_label(self, idx):
        return f"{format_arcs(idx.lam)} {entry_text(idx.X)}"

    def to_tsv(self):
        lines = ["\t".join(["supercharacter"] + [self.col_label(c) for c in self.cols])]
        for idx, values in zip(self.rows, self.values):
            lines.append("\t".join([self.row_label(idx)] + [str(v) for v in values]))
        return "\n".join(lines) + "\n"

    def to_jsonl(self):
        lines = []
        for number, (idx, values) in enumerate(zip(self.rows, self.values)):
            lines.append(json.dumps({
                "index": number,
                "lam": format_arcs(idx.lam),
                "eta": [[i, j, v] for (i, j), v in sorted(idx.eta.entries().items())],
                "values": [v.to_json() for v in values],
            }))
        return "\n".join(lines) + "\n"
