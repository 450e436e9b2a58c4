from dataclasses import dataclass
import itertools
import logging

from algebra.UpperMatrix import FqUpperMatrix, Role
from analysis.Classifier import SupercharacterIndex, supercharacters
from combinatorics.Poset import CoverSet, covers, from_covers, require_normal, subposets
from combinatorics.SetPartition import LabeledSetPartition
from errors import CapExceededError, NotRepresentativeError, PosetError
from settings import SUBPOSET_SEARCH_CAP

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LabeledPoset:
    """
    A poset Q with a nonzero label on each of its covers.
    labels is a sorted tuple of ((i,j), value) pairs.
    """
    Q: object
    p: int
    labels: tuple

    def __post_init__(self):
        labels = tuple(sorted((tuple(pos), int(v) % self.p) for pos, v in dict(self.labels).items()))
        if {pos for pos, _ in labels} != covers(self.Q).covers:
            raise PosetError("Labels must be given exactly on the covers")
        if any(v == 0 for _, v in labels):
            raise PosetError("Cover labels must be nonzero")
        object.__setattr__(self, "labels", labels)

    @property
    def n(self):
        return self.Q.n

    def label(self, i, j):
        return dict(self.labels).get((i, j), 0)

    def to_json(self):
        return {"n": self.n, "p": self.p, "covers": [[i, j, v] for (i, j), v in self.labels]}


def length_profile(S):
    '''
    Lengths k - i of the pairs in S, weakly decreasing
    '''
    return tuple(sorted((k - i for i, k in S), reverse=True))


def profile_key(S, width):
    profile = length_profile(S)
    return profile + (0,) * (width - len(profile))


def highest_cover_set(P, choose=None):
    '''
    Greedy highest cover set: take a cover of maximal length, drop every
    cover sharing its first or its second coordinate, repeat. choose picks
    among the candidates of maximal length, lexicographically smallest by default.
    '''
    remaining = set(covers(P).covers)
    chosen = set()
    while remaining:
        longest = max(k - i for i, k in remaining)
        candidates = sorted(pos for pos in remaining if pos[1] - pos[0] == longest)
        i, k = candidates[0] if choose is None else choose(candidates)
        chosen.add((i, k))
        remaining = {(a, b) for a, b in remaining if a != i and b != k}
    return CoverSet(P.n, frozenset(chosen))


def decomposes_into_chains(P):
    return highest_cover_set(P).covers == covers(P).covers


def is_p_representative(P, Q):
    '''
    Q inside P, and every highest cover (i,k) of Q satisfies: a cover (i,j)
    of Q has (j,k) not in P, a cover (j,k) of Q has (i,j) not in P
    '''
    if Q.n != P.n or not Q.issubset(P):
        return False
    cov = covers(Q).covers
    for i, k in highest_cover_set(Q).covers:
        for a, j in cov:
            if a == i and j != k and (j, k) in P:
                return False
        for j, b in cov:
            if b == k and j != i and (i, j) in P:
                return False
    return True


def index_to_poset(idx):
    '''
    The labeled poset whose covers are supp(lam + eta), labelled by lam + eta
    '''
    combined = idx.lam.matrix + idx.eta
    try:
        Q = from_covers(idx.P.n, combined.support)
    except PosetError as exc:
        raise AssertionError(f"supp(lam + eta) is not a cover set: {exc}") from exc
    return LabeledPoset(Q, combined.p, tuple(combined.entries().items()))


def poset_to_index(P, labeled):
    '''
    lam from the labels on the highest cover set of Q, eta from the other covers
    '''
    if not is_p_representative(P, labeled.Q):
        raise NotRepresentativeError(f"{sorted(labeled.Q.relations)} is not P-representative")
    highest = highest_cover_set(labeled.Q).covers
    labels = dict(labeled.labels)
    lam = FqUpperMatrix.from_entries(P, labeled.p, {pos: labels[pos] for pos in highest}, Role.DUAL)
    eta = FqUpperMatrix.from_entries(P, labeled.p, {pos: v for pos, v in labels.items() if pos not in highest}, Role.DUAL)
    return SupercharacterIndex(P, LabeledSetPartition(lam), eta)


def enumerate_representative(P, p):
    require_normal(P)
    posets = [index_to_poset(idx) for idx in supercharacters(P, p)]
    logger.info(f"Found {len(posets)} P-representative labeled posets")
    return posets


def enumerate_representative_shapes(P, cap=SUBPOSET_SEARCH_CAP):
    '''
    Direct search: every subposet of P passing the representative predicate.
    Does not require P to be normal.
    '''
    if len(P) > cap:
        raise CapExceededError("Subposet search", len(P), cap)
    return [Q for Q in subposets(P) if is_p_representative(P, Q)]


def label_shapes(shapes, p):
    labeled = []
    for Q in shapes:
        cov = sorted(covers(Q).covers)
        for values in itertools.product(range(1, p), repeat=len(cov)):
            labeled.append(LabeledPoset(Q, p, tuple(zip(cov, values))))
    return labeled


def count_representative(P, p, cap=SUBPOSET_SEARCH_CAP):
    return sum((p - 1) ** len(covers(Q)) for Q in enumerate_representative_shapes(P, cap))


def degree_one_test(P, labeled):
    return covers(labeled.Q).covers <= covers(P).covers
