from collections import defaultdict
import itertools

from hypothesis import strategies as st
import networkx as nx

from algebra.UpperMatrix import FqUpperMatrix, GroupElement, Role
from combinatorics.LabeledPoset import profile_key
from combinatorics.Poset import Poset, covers, enumerate_normal


def normal_posets_upto(n_max):
    return [P for n in range(1, n_max + 1) for P in enumerate_normal(n)]


def closure_poset(n, pairs):
    graph = nx.DiGraph()
    graph.add_nodes_from(range(1, n + 1))
    graph.add_edges_from(pairs)
    return Poset(n, frozenset(nx.transitive_closure_dag(graph).edges()))


@st.composite
def posets(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    positions = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    pairs = draw(st.sets(st.sampled_from(positions), max_size=len(positions))) if positions else set()
    return closure_poset(n, pairs)


@st.composite
def matrices(draw, P, p, role=Role.PRIMAL):
    values = draw(st.lists(st.integers(0, p - 1), min_size=len(P), max_size=len(P)))
    return FqUpperMatrix(P, p, tuple(values), role)


@st.composite
def group_elements(draw, P, p):
    return GroupElement(P, draw(matrices(P, p)))


def independent_subsets(cover_set):
    cov = sorted(cover_set)
    for size in range(len(cov) + 1):
        for subset in itertools.combinations(cov, size):
            firsts = [i for i, _ in subset]
            seconds = [k for _, k in subset]
            if len(set(firsts)) == size and len(set(seconds)) == size:
                yield frozenset(subset)


def brute_force_highest(P):
    '''
    Every independent cover subset whose length profile is lexicographically largest
    '''
    cov = covers(P).covers
    width = len(cov)
    best, winners = None, []
    for S in independent_subsets(cov):
        key = profile_key(S, width)
        if best is None or key > best:
            best, winners = key, [S]
        elif key == best:
            winners.append(S)
    return winners


def set_partitions(elements):
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for partition in set_partitions(rest):
        yield [[first]] + partition
        for k in range(len(partition)):
            yield partition[:k] + [[first] + partition[k]] + partition[k + 1:]


def decomposes_by_definition(P):
    '''
    Some set partition of [n] whose blocks, read as chains, union to P
    '''
    for partition in set_partitions(list(range(1, P.n + 1))):
        chains = {(a, b) for block in partition for a in block for b in block if a < b}
        if chains == set(P.relations):
            return True
    return False


def t_shape(Q, m):
    '''
    Shape test for T(m,n)-representative posets: the covers inside [m] form
    disjoint chains, only chain tops cover vertices above m, and for chain
    tops u > u' the largest vertex covering u' is not covering u
    '''
    cov = covers(Q).covers
    inner = [(a, b) for a, b in cov if b <= m]
    outer = [(a, c) for a, c in cov if c > m]
    up = defaultdict(int)
    down = defaultdict(int)
    for a, b in inner:
        up[a] += 1
        down[b] += 1
    if any(v > 1 for v in up.values()) or any(v > 1 for v in down.values()):
        return False
    if any(a in up for a, _ in outer):
        return False
    above = defaultdict(set)
    for a, c in outer:
        above[a].add(c)
    tops = [v for v in range(1, m + 1) if v not in up]
    for u, w in itertools.permutations(tops, 2):
        if u > w and above[w] and max(above[w]) in above[u]:
            return False
    return True
