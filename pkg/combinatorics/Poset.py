from dataclasses import dataclass
from functools import cached_property
import itertools
import logging

import networkx as nx

from errors import CapExceededError, NotNormalError, PosetError
from settings import MAX_N, NORMAL_ENUMERATION_CAP

logger = logging.getLogger(__name__)


def ambient_positions(n):
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


@dataclass(frozen=True)
class Poset:
    """
    A strict partial order on [n] that refines the natural order, stored as its
    set of relations (i,j), i < j. Relations are closed under composition.
    """
    n: int
    relations: frozenset

    def __post_init__(self):
        if not 0 <= self.n <= MAX_N:
            raise PosetError(f"n={self.n} outside the supported range 0..{MAX_N}")
        relations = frozenset((int(i), int(j)) for i, j in self.relations)
        for i, j in relations:
            if not 1 <= i < j <= self.n:
                raise PosetError(f"({i},{j}) is not a position of [[{self.n}]]")
        for (i, j), (j2, k) in itertools.product(relations, repeat=2):
            if j == j2 and (i, k) not in relations:
                raise PosetError(f"Not transitive: ({i},{j}), ({j},{k}) present but ({i},{k}) missing")
        object.__setattr__(self, "relations", relations)

    @cached_property
    def positions(self):
        '''
        Relations in row-major order, the fixed coordinate order of n_P
        '''
        return tuple(sorted(self.relations))

    @cached_property
    def index(self):
        return {pos: t for t, pos in enumerate(self.positions)}

    def __contains__(self, pos):
        return pos in self.relations

    def __len__(self):
        return len(self.relations)

    def __iter__(self):
        return iter(self.positions)

    def issubset(self, other):
        return self.n == other.n and self.relations <= other.relations

    def to_json(self):
        return {"n": self.n, "relations": [list(pos) for pos in self.positions]}

    @classmethod
    def from_json(cls, data):
        try:
            return cls(int(data["n"]), frozenset(tuple(pos) for pos in data["relations"]))
        except (KeyError, TypeError) as exc:
            raise PosetError(f"Malformed poset JSON: {exc}") from exc


@dataclass(frozen=True)
class CoverSet:
    n: int
    covers: frozenset

    def __contains__(self, pos):
        return pos in self.covers

    def __len__(self):
        return len(self.covers)

    def __iter__(self):
        return iter(sorted(self.covers))


def full_poset(n):
    return Poset(n, frozenset(ambient_positions(n)))


def empty_poset(n):
    return Poset(n, frozenset())


def covers(P):
    rel = P.relations
    cov = {
        (i, k) for i, k in rel
        if not any((i, j) in rel and (j, k) in rel for j in range(i + 1, k))
    }
    return CoverSet(P.n, frozenset(cov))


def _closure(n, pairs):
    graph = nx.DiGraph()
    graph.add_nodes_from(range(1, n + 1))
    graph.add_edges_from(pairs)
    return frozenset(nx.transitive_closure_dag(graph).edges())


def from_covers(n, C):
    '''
    The unique poset whose cover set is C, rejects sets containing a non-cover
    '''
    pairs = frozenset(C.covers if isinstance(C, CoverSet) else C)
    for i, k in pairs:
        if not 1 <= i < k <= n:
            raise PosetError(f"({i},{k}) is not a position of [[{n}]]")
    P = Poset(n, _closure(n, pairs))
    extra = pairs - covers(P).covers
    if extra:
        raise PosetError(f"{sorted(extra)} are not covers of the generated poset")
    return P


def is_cover_set(n, S):
    try:
        from_covers(n, S)
    except PosetError:
        return False
    return True


def normality_violation(P):
    '''
    First quadruple i <= j < k <= l with (j,k) in P but (i,l) not in P, or None
    '''
    n = P.n
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            for k in range(j + 1, n + 1):
                if (j, k) not in P:
                    continue
                for l in range(k, n + 1):
                    if (i, l) not in P:
                        return (i, j, k, l)
    return None


def is_normal(P):
    return normality_violation(P) is None


def require_normal(P):
    violation = normality_violation(P)
    if violation is not None:
        raise NotNormalError(violation)
    return P


def from_boundary(r):
    '''
    The normal poset {(i,j) : j > r_i} of a weakly increasing boundary with r_i >= i
    '''
    n = len(r)
    for i, ri in enumerate(r, start=1):
        if not i <= ri <= n or (i > 1 and ri < r[i - 2]):
            raise PosetError(f"{list(r)} is not a weakly increasing boundary with r_i >= i")
    return Poset(n, frozenset((i, j) for i in range(1, n + 1) for j in range(r[i - 1] + 1, n + 1)))


def boundary(P):
    require_normal(P)
    r = []
    for i in range(1, P.n + 1):
        row = [j for j in range(i + 1, P.n + 1) if (i, j) in P]
        r.append(min(row) - 1 if row else P.n)
    return tuple(r)


def _boundaries(n):
    def extend(prefix):
        i = len(prefix) + 1
        if i > n:
            yield tuple(prefix)
            return
        low = max(i, prefix[-1] if prefix else 1)
        for ri in range(low, n + 1):
            yield from extend(prefix + [ri])
    yield from extend([])


def enumerate_normal(n, cap=NORMAL_ENUMERATION_CAP):
    '''
    All normal posets on [n], one per monotone staircase boundary, in
    lexicographic order of the boundary vector
    '''
    if n > cap:
        raise CapExceededError("Normal poset enumeration", n, cap)
    posets = [from_boundary(r) for r in _boundaries(n)]
    logger.debug(f"Enumerated {len(posets)} normal posets on [{n}]")
    return posets


def dyck_index(P):
    target = boundary(P)
    for k, r in enumerate(_boundaries(P.n)):
        if r == target:
            return k
    raise PosetError("Boundary not found")


def from_dyck_index(n, k):
    for index, r in enumerate(_boundaries(n)):
        if index == k:
            return from_boundary(r)
    raise PosetError(f"Dyck index {k} out of range for n={n}")


def t_family(m, n2):
    '''
    [[m]] together with every (i,j), i <= m < j <= m+n2
    '''
    n = m + n2
    return Poset(n, frozenset(
        (i, j) for i in range(1, m + 1) for j in range(i + 1, n + 1)
    ))


def commutator(n):
    return Poset(n, frozenset((i, j) for i, j in ambient_positions(n) if j - i >= 2))


def p_index_poset(n, i):
    '''
    The chain 2 < 3 < ... < n with 1 joined below i+1
    '''
    if not 1 <= i < n:
        raise PosetError(f"p-index poset needs 1 <= i < n, got i={i}, n={n}")
    chain = {(a, b) for a in range(2, n + 1) for b in range(a + 1, n + 1)}
    return Poset(n, frozenset(chain | {(1, b) for b in range(i + 1, n + 1)}))


def example_hasse():
    return from_covers(4, {(1, 3), (2, 3), (3, 4)})


def example_six():
    return from_covers(6, {(1, 2), (1, 3), (2, 6), (3, 4), (3, 5), (4, 6), (5, 6)})


def subposets(P):
    '''
    Every subset of P closed under composition
    '''
    for size in range(len(P) + 1):
        for subset in itertools.combinations(P.positions, size):
            chosen = frozenset(subset)
            if all((i, k) in chosen for (i, j), (j2, k) in itertools.product(chosen, repeat=2) if j == j2):
                yield Poset(P.n, chosen)
