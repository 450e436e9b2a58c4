from dataclasses import dataclass
from fractions import Fraction
import itertools
import logging

from algebra.Cyclotomic import CyclotomicInt, CyclotomicRat, theta
from algebra.FiniteField import inverse_mod
from algebra.UpperMatrix import FqUpperMatrix, GroupElement, Role, act_dual
from analysis.Oracle import Oracle
from combinatorics.Poset import full_poset, require_normal
from combinatorics.SetPartition import LabeledSetPartition, enumerate_partitions, position_sets
from errors import RoleMismatchError, SupportError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SuperclassIndex:
    """
    A pair (lam, X) with lam a primal labeled set partition and
    supp(X) inside aux_P(lam). Indexes the superclass of 1 + lam + R_lam(X).
    """
    P: object
    lam: LabeledSetPartition
    X: FqUpperMatrix

    def __post_init__(self):
        if self.lam.role != Role.PRIMAL or self.X.role != Role.PRIMAL:
            raise RoleMismatchError("Superclass indices are built from primal matrices")
        outside = self.X.support - position_sets(self.P, self.lam).aux
        if outside:
            raise SupportError(outside, f"X has entries outside aux_P(lam) at {sorted(outside)}")

    @property
    def representative(self):
        return GroupElement(self.P, self.lam.matrix + rep_map_primal(self))


@dataclass(frozen=True)
class SupercharacterIndex:
    """
    A pair (lam, eta) with lam a dual labeled set partition and
    supp(eta) inside coaux_P(lam). Indexes the supercharacter of
    lam + R*_lam(eta).
    """
    P: object
    lam: LabeledSetPartition
    eta: FqUpperMatrix

    def __post_init__(self):
        if self.lam.role != Role.DUAL or self.eta.role != Role.DUAL:
            raise RoleMismatchError("Supercharacter indices are built from dual matrices")
        outside = self.eta.support - position_sets(self.P, self.lam).coaux
        if outside:
            raise SupportError(outside, f"eta has entries outside coaux_P(lam) at {sorted(outside)}")

    @property
    def functional(self):
        return self.lam.matrix + rep_map_dual(self)


def star_primal(lam, X, Y):
    '''
    (X *_lam Y)_il = X_il + Y_il + sum over (j,k) in supp(lam), i<j<k<l, of X_ik Y_jl / lam_jk
    '''
    p, n = X.p, X.n
    A, B = X.to_array(), Y.to_array()
    result = A + B
    for (j, k), label in lam.matrix.entries().items():
        assert label % p, "labels of a set partition are nonzero"
        w = inverse_mod(label, p)
        for i in range(1, j):
            a = A[i - 1, k - 1]
            if not a:
                continue
            for l in range(k + 1, n + 1):
                b = B[j - 1, l - 1]
                if b:
                    result[i - 1, l - 1] += a * b * w
    return FqUpperMatrix.from_array(X.P, p, result % p, Role.PRIMAL, strict=True)


def star_dual(lam, eta, mu):
    '''
    (eta *_lam mu)_jk = eta_jk + mu_jk + sum over (i,l) in supp(lam), i<j<k<l, of eta_jl mu_ik / lam_il
    '''
    p = eta.p
    E, M = eta.to_array(), mu.to_array()
    result = E + M
    for (i, l), label in lam.matrix.entries().items():
        assert label % p, "labels of a set partition are nonzero"
        w = inverse_mod(label, p)
        for j in range(i + 1, l):
            e = E[j - 1, l - 1]
            if not e:
                continue
            for k in range(j + 1, l):
                m = M[i - 1, k - 1]
                if m:
                    result[j - 1, k - 1] += e * m * w
    return FqUpperMatrix.from_array(eta.P, p, result % p, Role.DUAL, strict=False)


def left_split(X, left, right):
    '''
    X = X_L + X_{R\\L} with X_L on left and X_{R\\L} on right - left.
    Positions in both sets go to the left factor.
    '''
    return X.restrict(left), X.restrict(right - left)


def rep_map_primal(idx):
    sets = position_sets(idx.P, idx.lam)
    X_L, X_RL = left_split(idx.X, sets.auxL, sets.auxR)
    return star_primal(idx.lam, X_L, X_RL)


def rep_map_dual(idx):
    sets = position_sets(idx.P, idx.lam)
    eta_L, eta_RL = left_split(idx.eta, sets.coauxL, sets.coauxR)
    return star_dual(idx.lam, eta_L, eta_RL)


def _fillings(P, p, positions, role):
    positions = sorted(positions)
    for values in itertools.product(range(p), repeat=len(positions)):
        yield FqUpperMatrix.from_entries(P, p, dict(zip(positions, values)), role)


class Classifier:
    """
    Indexing of the superclasses and supercharacters of U_P for a normal
    poset P. Work is organised per labeled set partition so it can be
    spread over processes and concatenated in order.
    """

    def __init__(self, P, p):
        self.logger = logging.getLogger(__name__)
        self.P = require_normal(P)
        self.p = p

    def partitions(self, role):
        return enumerate_partitions(self.P, self.p, role)

    def superclasses_for(self, lam):
        aux = position_sets(self.P, lam).aux
        return [SuperclassIndex(self.P, lam, X) for X in _fillings(self.P, self.p, aux, Role.PRIMAL)]

    def supercharacters_for(self, lam):
        coaux = position_sets(self.P, lam).coaux
        return [SupercharacterIndex(self.P, lam, eta) for eta in _fillings(self.P, self.p, coaux, Role.DUAL)]

    def superclasses(self):
        indices = [idx for lam in self.partitions(Role.PRIMAL) for idx in self.superclasses_for(lam)]
        self.logger.info(f"Classified {len(indices)} superclasses")
        return indices

    def supercharacters(self):
        indices = [idx for lam in self.partitions(Role.DUAL) for idx in self.supercharacters_for(lam)]
        self.logger.info(f"Classified {len(indices)} supercharacters")
        return indices


def superclasses(P, p):
    return Classifier(P, p).superclasses()


def supercharacters(P, p):
    return Classifier(P, p).supercharacters()


def superclass_size(idx):
    return idx.lam.p ** len(position_sets(idx.P, idx.lam).adj)


def degree(idx):
    sets = position_sets(idx.P, idx.lam)
    assert len(sets.coadjL) == len(sets.coadjR), "left and right coadjacent sets differ in size"
    return idx.lam.p ** len(sets.coadjL)


def norm_sq(idx):
    sets = position_sets(idx.P, idx.lam)
    return idx.lam.p ** len(sets.coadjL & sets.coadjR)


def is_irreducible(idx):
    P = idx.P
    for (i, k), (j, l) in itertools.permutations(idx.lam.support, 2):
        if i < j < k < l and (i, j) in P and (j, k) in P and (k, l) in P:
            return False
    return True


def restrict_from_un(P, lam_n):
    '''
    Res from U_n to U_P of the supercharacter of lam_n is
    p^c * sum over eta of the supercharacters (mu, eta) of U_P.
    Returns c and the indices (mu, eta).
    '''
    require_normal(P)
    if lam_n.role != Role.DUAL or lam_n.P != full_poset(P.n):
        raise RoleMismatchError("Restriction starts from a dual partition over [[n]]")
    mu = LabeledSetPartition(lam_n.matrix.project(P))
    ambient = position_sets(full_poset(P.n), lam_n)
    sets = position_sets(P, mu)
    c = len(ambient.coadjL) - len(sets.coadjL) - len(sets.coaux)
    return c, Classifier(P, mu.p).supercharacters_for(mu)


def elementary_factorization(idx, oracle=None):
    '''
    Functionals g alpha_i h, one per arc alpha_i of lam, where
    lam + R*_lam(eta) = g lam h with g, h in U_n
    '''
    lam = idx.lam.matrix
    if lam.is_zero():
        return []
    oracle = oracle if oracle is not None else Oracle(idx.P, lam.p)
    witness = oracle.find_witness(lam, idx.functional, actor=full_poset(idx.P.n))
    if witness is None:
        raise AssertionError(f"{idx.functional} is not in the U_n orbit of {lam}")
    g, h = witness
    return [act_dual(g, lam.restrict({pos}), h) for pos in sorted(lam.support)]


def un_character(lam, mu):
    '''
    Closed form of the U_n supercharacter of lam in S_n* at 1 + mu, mu in S_n
    '''
    if lam.role != Role.DUAL or mu.role != Role.PRIMAL:
        raise RoleMismatchError("Expected a dual lam and a primal mu")
    p = lam.p
    mu_support = mu.support
    for i, k in lam.support:
        for j in range(i + 1, k):
            if (i, j) in mu_support or (j, k) in mu_support:
                return CyclotomicRat.from_int(p, 0)
    value = CyclotomicInt.one(p)
    scale = Fraction(1)
    for (i, l), a in lam.matrix.entries().items():
        value = value * theta(a * mu.matrix.entry(i, l), p)
        nested = sum(1 for j, k in mu_support if i < j < k < l)
        scale *= Fraction(p ** (l - i - 1), p**nested)
    return CyclotomicRat.scaled(value, scale)


def superclass_unit(P, p, lam):
    return Classifier(P, p).superclasses_for(lam)


def supercharacter_unit(P, p, lam):
    return Classifier(P, p).supercharacters_for(lam)
