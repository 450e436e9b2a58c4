from functools import lru_cache

from hypothesis import given, settings, strategies as st
import pytest

from algebra.Cyclotomic import CyclotomicRat
from algebra.FiniteField import inverse_mod
from algebra.UpperMatrix import FqUpperMatrix, GroupElement, Role, act_dual, act_matrix
from analysis.Classifier import (
    Classifier, SupercharacterIndex, SuperclassIndex, degree, elementary_factorization, is_irreducible,
    left_split, norm_sq, rep_map_dual, rep_map_primal, restrict_from_un, star_dual, star_primal,
    superclass_size, supercharacters, superclasses, un_character,
)
from analysis.Oracle import TWO_SIDED, enumerate_group
from combinatorics.Poset import commutator, enumerate_normal, full_poset, p_index_poset
from combinatorics.SetPartition import LabeledSetPartition, enumerate_partitions, parse_arcs, position_sets
from errors import NotNormalError, RoleMismatchError, SupportError
from settings import CHARACTER_CHECK_CAP
from tests.helpers import group_elements, normal_posets_upto

NORMAL_4 = normal_posets_upto(4)
LABELS = st.integers(1, 4)
ENTRIES = st.integers(0, 4)


@lru_cache(maxsize=None)
def ambient_partitions(n, p, role):
    return enumerate_partitions(full_poset(n), p, role)


def matrix(P, p, entries, role=Role.PRIMAL):
    return FqUpperMatrix.from_entries(P, p, entries, role)


@pytest.fixture
def primal_lam(commutator7):
    # a=1, b=2, c=3, d=4 over F_5
    return parse_arcs("1[1]4[2]6|2[3]5|3[4]7", commutator7, 5, Role.PRIMAL)


@pytest.fixture
def dual_lam(commutator7):
    return parse_arcs("1[1]4[2]6|2[3]7|3[4]5", commutator7, 5, Role.DUAL)


def test_star_primal(primal_lam, commutator7):
    P = commutator7
    X = matrix(P, 5, {(1, 5): 1, (2, 7): 2, (3, 6): 3})
    Y = matrix(P, 5, {(1, 5): 2, (2, 6): 1, (4, 7): 2})
    # r v / c at (1,6) and t w / b at (3,7)
    assert star_primal(primal_lam, X, Y).entries() == {
        (1, 5): 3, (2, 7): 2, (3, 6): 3, (2, 6): 1, (4, 7): 2, (1, 6): 2, (3, 7): 3,
    }


def test_star_dual_projects_outside_positions(dual_lam, commutator7):
    P = commutator7
    eta = matrix(P, 5, {(2, 4): 1, (3, 7): 2}, Role.DUAL)
    mu = matrix(P, 5, {(1, 3): 3, (2, 6): 4}, Role.DUAL)
    assert star_dual(dual_lam, eta, mu).entries() == {(2, 4): 1, (3, 7): 2, (1, 3): 3, (2, 6): 4, (3, 6): 1}


def test_left_split_sends_shared_positions_left(commutator7):
    X = matrix(commutator7, 5, {(1, 5): 1, (3, 6): 2, (4, 7): 3})
    left, rest = left_split(X, {(1, 5), (2, 7), (3, 6)}, {(1, 5), (2, 6), (4, 7)})
    assert left.entries() == {(1, 5): 1, (3, 6): 2}
    assert rest.entries() == {(4, 7): 3}


def test_primal_representative_map(primal_lam, commutator7):
    X = matrix(commutator7, 5, {(1, 5): 1, (3, 6): 2, (4, 7): 3})
    idx = SuperclassIndex(commutator7, primal_lam, X)
    # X + b^-1 s t e37
    assert rep_map_primal(idx) == X + matrix(commutator7, 5, {(3, 7): 3})
    assert idx.representative.off_diag == primal_lam.matrix + rep_map_primal(idx)
    assert superclass_size(idx) == 5**4


def test_dual_representative_map(dual_lam, commutator7):
    eta = matrix(commutator7, 5, {(1, 3): 1, (2, 6): 2, (3, 7): 3}, Role.DUAL)
    idx = SupercharacterIndex(commutator7, dual_lam, eta)
    # eta + c^-1 s t e36
    assert rep_map_dual(idx) == eta + matrix(commutator7, 5, {(3, 6): 2}, Role.DUAL)
    assert degree(idx) == 25
    assert norm_sq(idx) == 1
    assert is_irreducible(idx)


@given(a=LABELS, b=LABELS, c=LABELS, d=LABELS, r=ENTRIES, s=ENTRIES, t=ENTRIES)
def test_primal_representative_map_for_any_labels(a, b, c, d, r, s, t):
    P = commutator(7)
    lam = parse_arcs(f"1[{a}]4[{b}]6|2[{c}]5|3[{d}]7", P, 5, Role.PRIMAL)
    X = matrix(P, 5, {(1, 5): r, (3, 6): s, (4, 7): t})
    idx = SuperclassIndex(P, lam, X)
    assert rep_map_primal(idx) == X + matrix(P, 5, {(3, 7): s * t * inverse_mod(b, 5)})


@given(a=LABELS, b=LABELS, c=LABELS, d=LABELS, r=ENTRIES, s=ENTRIES, t=ENTRIES)
def test_dual_representative_map_for_any_labels(a, b, c, d, r, s, t):
    P = commutator(7)
    lam = parse_arcs(f"1[{a}]4[{b}]6|2[{c}]7|3[{d}]5", P, 5, Role.DUAL)
    eta = matrix(P, 5, {(1, 3): r, (2, 6): s, (3, 7): t}, Role.DUAL)
    idx = SupercharacterIndex(P, lam, eta)
    assert rep_map_dual(idx) == eta + matrix(P, 5, {(3, 6): s * t * inverse_mod(c, 5)}, Role.DUAL)


@pytest.mark.parametrize("n, p", [(5, 2), (4, 3)])
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_star_primal_composes_one_sided_moves(n, p, data):
    P = full_poset(n)
    lam = data.draw(st.sampled_from(ambient_partitions(n, p, Role.PRIMAL)))
    g, h = data.draw(group_elements(P, p)), data.draw(group_elements(P, p))
    one = GroupElement.identity(P, p)
    X = act_matrix(g, lam.matrix, one) - lam.matrix
    Y = act_matrix(one, lam.matrix, h) - lam.matrix
    assert star_primal(lam, X, Y) == act_matrix(g, lam.matrix, h) - lam.matrix


@pytest.mark.parametrize("n, p", [(5, 2), (4, 3)])
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_star_dual_composes_one_sided_moves(n, p, data):
    P = full_poset(n)
    lam = data.draw(st.sampled_from(ambient_partitions(n, p, Role.DUAL)))
    g, h = data.draw(group_elements(P, p)), data.draw(group_elements(P, p))
    one = GroupElement.identity(P, p)
    eta = act_dual(g, lam.matrix, one) - lam.matrix
    mu = act_dual(one, lam.matrix, h) - lam.matrix
    assert star_dual(lam, eta, mu) == act_dual(g, lam.matrix, h) - lam.matrix


def test_indices_validate_their_inputs(primal_lam, dual_lam, commutator7):
    with pytest.raises(SupportError):
        SuperclassIndex(commutator7, primal_lam, matrix(commutator7, 5, {(1, 6): 1}))
    with pytest.raises(SupportError):
        SupercharacterIndex(commutator7, dual_lam, matrix(commutator7, 5, {(2, 4): 1}, Role.DUAL))
    with pytest.raises(RoleMismatchError):
        SuperclassIndex(commutator7, dual_lam, FqUpperMatrix.zero(commutator7, 5))
    with pytest.raises(NotNormalError):
        Classifier(p_index_poset(5, 3), 2)


def test_naive_superclass_map_merges_orbits(commutator7, oracle_factory):
    P = commutator7
    mu = parse_arcs("4[1]6", P, 2, Role.PRIMAL)
    nu = parse_arcs("1[1]7|4[1]6", P, 2, Role.PRIMAL)
    X = matrix(P, 2, {(3, 6): 1, (4, 7): 1})
    table = oracle_factory(P, 2).orbit_table(Role.PRIMAL, TWO_SIDED)
    assert table.same_orbit(mu.matrix + X, nu.matrix + X)
    first, second = SuperclassIndex(P, mu, X), SuperclassIndex(P, nu, X)
    assert not table.same_orbit(first.representative.off_diag, second.representative.off_diag)


def test_naive_supercharacter_map_merges_orbits(commutator7, oracle_factory):
    P = commutator7
    mu = parse_arcs("1[1]7", P, 2, Role.DUAL)
    nu = parse_arcs("1[1]7|4[1]6", P, 2, Role.DUAL)
    eta = matrix(P, 2, {(1, 6): 1, (2, 7): 1}, Role.DUAL)
    table = oracle_factory(P, 2).orbit_table(Role.DUAL, TWO_SIDED)
    assert table.same_orbit(mu.matrix + eta, nu.matrix + eta)
    first, second = SupercharacterIndex(P, mu, eta), SupercharacterIndex(P, nu, eta)
    assert first.functional.entries() == {(1, 7): 1, (1, 6): 1, (2, 7): 1, (2, 6): 1}
    assert not table.same_orbit(first.functional, second.functional)


def test_commutator_five_counts(commutator5, oracle_factory):
    classes, characters = superclasses(commutator5, 2), supercharacters(commutator5, 2)
    assert len(classes) == len(characters) == 40
    assert sum(superclass_size(idx) for idx in classes) == 2**6
    assert all(is_irreducible(idx) and norm_sq(idx) == 1 for idx in characters)
    oracle = oracle_factory(commutator5, 2)
    assert len(oracle.orbit_table(Role.PRIMAL)) == len(oracle.orbit_table(Role.DUAL)) == 40


@pytest.mark.slow
def test_commutator_five_counts_over_f3(commutator5):
    assert len(superclasses(commutator5, 3)) == len(supercharacters(commutator5, 3)) == 540


FORMULA_CASES = (
    [(P, 2) for P in NORMAL_4]
    + [pytest.param(P, 2, marks=pytest.mark.slow) for P in enumerate_normal(5)]
    + [pytest.param(P, 3, marks=pytest.mark.slow) for P in normal_posets_upto(5)]
)


@pytest.mark.parametrize("P, p", FORMULA_CASES, ids=str)
def test_formulas_match_orbits(P, p, oracle_factory):
    oracle = oracle_factory(P, p)
    classes, functionals = oracle.orbit_table(Role.PRIMAL), oracle.orbit_table(Role.DUAL)
    class_indices, character_indices = superclasses(P, p), supercharacters(P, p)

    # Representatives hit every orbit exactly once
    hit = sorted(classes.orbit_id(idx.representative.off_diag) for idx in class_indices)
    assert hit == list(range(len(classes)))
    hit = sorted(functionals.orbit_id(idx.functional) for idx in character_indices)
    assert hit == list(range(len(functionals)))

    for idx in class_indices:
        assert classes.size_of(idx.representative.off_diag) == superclass_size(idx)
    for idx in character_indices:
        f = idx.functional
        assert functionals.size_of(f) == p ** len(position_sets(P, idx.lam).coadj)
        assert oracle.left_orbit_size(f) == degree(idx)
        assert oracle.stabiliser_overlap(f) == norm_sq(idx)
        if oracle.order <= CHARACTER_CHECK_CAP:
            assert oracle.inner_product(f, f) == CyclotomicRat.from_int(p, norm_sq(idx))
        assert is_irreducible(idx) == (norm_sq(idx) == 1)


def test_restriction_of_a_degree_one_character():
    P = commutator(4)
    lam = parse_arcs("1[1]2", full_poset(4), 2, Role.DUAL)
    c, indices = restrict_from_un(P, lam)
    assert c == 0
    assert len(indices) == 1 and indices[0].functional.is_zero()
    with pytest.raises(RoleMismatchError):
        restrict_from_un(P, parse_arcs("1[1]3", P, 2, Role.DUAL))


def _check_restrictions(n, p, oracle_factory):
    full = full_poset(n)
    ambient = oracle_factory(full, p)
    for P in enumerate_normal(n):
        oracle = oracle_factory(P, p)
        group = enumerate_group(P, p)
        for lam in enumerate_partitions(full, p, Role.DUAL):
            c, indices = restrict_from_un(P, lam)
            for g in group:
                total = CyclotomicRat.from_int(p, 0)
                for idx in indices:
                    total = total + oracle.evaluate_character(idx.functional, g)
                assert ambient.evaluate_character(lam.matrix, g) == total * p**c


@pytest.mark.parametrize("n", [2, 3, 4])
def test_restriction_from_the_full_group(n, oracle_factory):
    _check_restrictions(n, 2, oracle_factory)


@pytest.mark.slow
def test_restriction_from_the_full_group_over_f3(oracle_factory):
    _check_restrictions(4, 3, oracle_factory)


def _check_factorization(P, p, oracle):
    group = enumerate_group(P, p)
    for idx in supercharacters(P, p):
        factors = elementary_factorization(idx, oracle)
        assert len(factors) == len(idx.lam.support)
        for g in group:
            product = CyclotomicRat.from_int(p, 1)
            for f in factors:
                product = product * oracle.evaluate_character(f, g)
            assert product == oracle.evaluate_character(idx.functional, g)


@pytest.mark.parametrize("P", [commutator(4), full_poset(4), full_poset(3)], ids=str)
def test_elementary_factorization(P, oracle_factory):
    _check_factorization(P, 2, oracle_factory(P, 2))


@pytest.mark.slow
@pytest.mark.parametrize("P", NORMAL_4, ids=str)
def test_elementary_factorization_over_f3(P, oracle_factory):
    _check_factorization(P, 3, oracle_factory(P, 3))


def test_elementary_factorization_edge_cases(commutator5, oracle_factory):
    oracle = oracle_factory(commutator5, 2)
    zero = SupercharacterIndex(commutator5, LabeledSetPartition(FqUpperMatrix.zero(commutator5, 2, Role.DUAL)),
                               FqUpperMatrix.zero(commutator5, 2, Role.DUAL))
    assert elementary_factorization(zero, oracle) == []
    single = SupercharacterIndex(commutator5, parse_arcs("1[1]4", commutator5, 2, Role.DUAL),
                                 FqUpperMatrix.zero(commutator5, 2, Role.DUAL))
    assert elementary_factorization(single, oracle) == [single.functional]


def test_un_character_examples():
    P = full_poset(3)
    zero = FqUpperMatrix.zero(P, 2)
    e13 = LabeledSetPartition(matrix(P, 2, {(1, 3): 1}, Role.DUAL))
    assert un_character(e13, LabeledSetPartition(zero)) == CyclotomicRat.from_int(2, 2)
    assert un_character(e13, parse_arcs("1[1]2", P, 2, Role.PRIMAL)).is_zero()
    assert un_character(e13, parse_arcs("1[1]3", P, 2, Role.PRIMAL)) == CyclotomicRat.from_int(2, -2)
    with pytest.raises(RoleMismatchError):
        un_character(e13, e13)


@pytest.mark.parametrize("p", [2, pytest.param(3, marks=pytest.mark.slow)])
def test_un_character_matches_orbit_sums(p, oracle_factory):
    full = full_poset(4)
    oracle = oracle_factory(full, p)
    for lam in enumerate_partitions(full, p, Role.DUAL):
        for mu in enumerate_partitions(full, p, Role.PRIMAL):
            assert un_character(lam, mu) == oracle.evaluate_character(lam.matrix, GroupElement(full, mu.matrix))
