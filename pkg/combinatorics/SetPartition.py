from dataclasses import dataclass
import itertools
import logging
import re

from algebra.UpperMatrix import FqUpperMatrix, Role
from errors import CapExceededError, PnpsError
from settings import PARTITION_CAP

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LabeledSetPartition:
    """
    F_p-labeled set partition over P: a matrix with at most one nonzero entry
    in each row and each column. Each nonzero entry (i,j) is an arc i -> j.
    """
    matrix: FqUpperMatrix

    def __post_init__(self):
        rows = [i for i, _ in self.matrix.support]
        cols = [j for _, j in self.matrix.support]
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise PnpsError(f"{sorted(self.matrix.support)} repeats a row or column")

    @property
    def role(self):
        return self.matrix.role

    @property
    def P(self):
        return self.matrix.P

    @property
    def p(self):
        return self.matrix.p

    @property
    def n(self):
        return self.matrix.n

    @property
    def support(self):
        return self.matrix.support

    def arcs(self):
        return sorted(self.matrix.entries().items())

    def label(self, i, j):
        return self.matrix.entry(i, j)

    @classmethod
    def from_arcs(cls, P, p, arcs, role):
        return cls(FqUpperMatrix.from_entries(P, p, dict(arcs), role))

    def __str__(self):
        return format_arcs(self)


@dataclass(frozen=True)
class PositionSets:
    """
    adj/aux sets (superclass side, primal lam) and coadj/coaux sets
    (supercharacter side, dual lam) of one labeled set partition.
    """
    role: Role
    adjL: frozenset
    adjR: frozenset
    adj: frozenset
    auxL: frozenset
    auxR: frozenset
    aux: frozenset
    coadjL: frozenset
    coadjR: frozenset
    coadj: frozenset
    coauxL: frozenset
    coauxR: frozenset
    coaux: frozenset
    # Same sets taken over the ambient [[n]]
    adjL_full: frozenset = frozenset()
    adjR_full: frozenset = frozenset()
    coadjL_full: frozenset = frozenset()
    coadjR_full: frozenset = frozenset()


def _matchings(positions):
    '''
    Every subset of positions using each row and each column at most once
    '''
    by_row = {}
    for i, j in positions:
        by_row.setdefault(i, []).append(j)
    rows = sorted(by_row)

    def extend(r, used_cols, chosen):
        if r == len(rows):
            yield tuple(chosen)
            return
        yield from extend(r + 1, used_cols, chosen)
        i = rows[r]
        for j in by_row[i]:
            if j not in used_cols:
                yield from extend(r + 1, used_cols | {j}, chosen + [(i, j)])
    yield from extend(0, frozenset(), [])


def enumerate_partitions(P, p, role=Role.DUAL, cap=PARTITION_CAP):
    '''
    All labeled set partitions with support in P, ordered by support (row-major,
    lexicographic) and then by label vector
    '''
    supports = sorted(_matchings(P.positions))
    total = sum((p - 1) ** len(s) for s in supports)
    if total > cap:
        raise CapExceededError("Labeled set partition enumeration", total, cap)
    partitions = []
    for support in supports:
        for labels in itertools.product(range(1, p), repeat=len(support)):
            partitions.append(LabeledSetPartition.from_arcs(P, p, zip(support, labels), role))
    logger.debug(f"Enumerated {len(partitions)} {role.value} partitions over {len(P)} positions")
    return partitions


def _one_sided(P, support, Q):
    n = P.n
    adjL = {(i, k) for j, k in support for i in range(1, j) if (i, j) in Q}
    adjR = {(i, k) for i, j in support for k in range(j + 1, n + 1) if (j, k) in Q}
    coadjL = {(j, k) for i, k in support for j in range(i + 1, k) if (j, k) in P and (i, j) in Q}
    coadjR = {(i, j) for i, k in support for j in range(i + 1, k) if (i, j) in P and (j, k) in Q}
    return frozenset(adjL), frozenset(adjR), frozenset(coadjL), frozenset(coadjR)


def position_sets(P, lam):
    '''
    All twelve adj/aux/coadj/coaux sets of lam, each computed for the pattern
    poset P and for the ambient [[n]]
    '''
    support = lam.support
    adjL_P, adjR_P, coadjL_P, coadjR_P = _one_sided(P, support, P.relations)
    ambient = _AmbientRelations(P.n)
    adjL_n, adjR_n, coadjL_n, coadjR_n = _one_sided(P, support, ambient)
    adj_P, adj_n = adjL_P | adjR_P, adjL_n | adjR_n
    coadj_P, coadj_n = coadjL_P | coadjR_P, coadjL_n | coadjR_n
    return PositionSets(
        role=lam.role,
        adjL=adjL_P, adjR=adjR_P, adj=adj_P,
        auxL=adjL_n - adjL_P, auxR=adjR_n - adjR_P, aux=adj_n - adj_P,
        coadjL=coadjL_P, coadjR=coadjR_P, coadj=coadj_P,
        coauxL=coadjL_n - coadjL_P, coauxR=coadjR_n - coadjR_P, coaux=coadj_n - coadj_P,
        adjL_full=adjL_n, adjR_full=adjR_n, coadjL_full=coadjL_n, coadjR_full=coadjR_n,
    )


class _AmbientRelations:
    def __init__(self, n):
        self.n = n

    def __contains__(self, pos):
        i, j = pos
        return 1 <= i < j <= self.n


def is_noncrossing(lam):
    '''
    No arcs (i,k), (j,l) with i < j < k < l
    '''
    return not any(i < j < k < l for (i, k), (j, l) in itertools.permutations(lam.support, 2))


def format_arcs(lam):
    '''
    Arc notation: parts separated by '|', ordered by least element, each part
    a chain of vertices with bracketed labels, e.g. 1[2]4[1]6|2[1]5|3|7
    '''
    successor = {i: (j, v) for (i, j), v in lam.matrix.entries().items()}
    has_predecessor = {j for _, j in lam.support}
    parts = []
    for start in range(1, lam.n + 1):
        if start in has_predecessor:
            continue
        text = str(start)
        vertex = start
        while vertex in successor:
            vertex, label = successor[vertex]
            text += f"[{label}]{vertex}"
        parts.append(text)
    return "|".join(parts)


_PART = re.compile(r"^(\d+)((?:\[\d+\]\d+)*)$")
_STEP = re.compile(r"\[(\d+)\](\d+)")


def parse_arcs(text, P, p, role=Role.DUAL):
    '''
    Inverse of format_arcs. Omitted singletons are allowed.
    '''
    arcs = {}
    for part in text.strip().split("|"):
        part = part.strip()
        if not part:
            continue
        match = _PART.match(part)
        if not match:
            raise PnpsError(f"Cannot parse arc notation part '{part}'")
        vertex = int(match.group(1))
        for label, target in _STEP.findall(match.group(2)):
            arcs[(vertex, int(target))] = int(label)
            vertex = int(target)
    return LabeledSetPartition.from_arcs(P, p, arcs.items(), role)
