from collections import OrderedDict, deque
from dataclasses import dataclass, field
from fractions import Fraction
import logging
import random

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from algebra.Cyclotomic import CyclotomicRat, conj_rows, multiply_rows, reduce_rows, row_value, sum_rows
from algebra.UpperMatrix import FqUpperMatrix, GroupElement, Role
from errors import CapExceededError, ShapeError, SupportError
from settings import GROUP_ORDER_CAP, ROW_BATCH_ENTRIES, ROW_CACHE_SIZE

LEFT = "left"
RIGHT = "right"
TWO_SIDED = "two-sided"


@dataclass
class OrbitTable:
    """
    Partition of n_P (primal) or n_P* (dual) into orbits of U_actor acting on
    one or both sides. labels[key] is the orbit id of the matrix with that key;
    orbit ids follow the smallest key in each orbit.
    """
    side: str
    space: Role
    P: object
    p: int
    labels: np.ndarray
    representatives: list
    sizes: np.ndarray
    witnesses: dict = field(default=None)

    def __len__(self):
        return len(self.representatives)

    def orbit_id(self, X):
        return int(self.labels[X.key])

    def size_of(self, X):
        return int(self.sizes[self.orbit_id(X)])

    def member_keys(self, orbit_id):
        return np.flatnonzero(self.labels == orbit_id)

    def same_orbit(self, X, Y):
        return self.orbit_id(X) == self.orbit_id(Y)


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: object = None
    expected_negative: bool = False

    def to_json(self):
        data = {"check": self.name, "passed": bool(self.passed)}
        if self.witness is not None:
            data["witness"] = self.witness
        if self.expected_negative:
            data["expected-negative"] = True
        return data


class Oracle:
    """
    Brute-force ground truth for one pattern group U_P over F_p: every element
    of n_P and n_P* is addressed by its base-p key, generators 1 + c e_ij act
    as k x k matrices on coordinate vectors, and orbits are the connected
    components of the generator graph.
    """

    def __init__(self, P, p, cap=GROUP_ORDER_CAP):
        self.logger = logging.getLogger(__name__)
        self.GROUP_ORDER_CAP = cap
        self.ROW_CACHE_SIZE = ROW_CACHE_SIZE
        self.P = P
        self.p = p
        self.k = len(P)
        self.order = p**self.k
        if self.order > self.GROUP_ORDER_CAP:
            raise CapExceededError("Group order", self.order, self.GROUP_ORDER_CAP)
        self.weights = p ** np.arange(self.k, dtype=np.int64)
        self.member_batch = max(1, ROW_BATCH_ENTRIES // self.order)
        self._vectors = None
        self._tables = {}
        self._rows = OrderedDict()
        self._witness_tree = (None, None)

    @property
    def vectors(self):
        '''
        Coordinate vectors of every element of n_P, row index = key
        '''
        if self._vectors is None:
            keys = np.arange(self.order, dtype=np.int64)[:, None]
            self._vectors = (keys // self.weights) % self.p
        return self._vectors

    def keys_of(self, vectors):
        return (vectors % self.p) @ self.weights

    def matrix(self, key, role):
        return FqUpperMatrix.from_key(self.P, self.p, int(key), role)

    def keys_in(self, ambient):
        '''
        Key in the ambient oracle of every element of n_P, ambient.P containing P
        '''
        columns = np.array([ambient.P.index[pos] for pos in self.P.positions], dtype=np.int64)
        return self.vectors @ ambient.weights[columns]

    # Generators

    def generator_matrix(self, space, side, i, j, c):
        '''
        Coordinate matrix of the action of 1 + c e_ij on n_P (primal) or n_P* (dual)
        '''
        P, n, p = self.P, self.P.n, self.p
        M = np.eye(self.k, dtype=np.int64)
        escaped = []
        for a in range(1, n + 1):
            if space == Role.PRIMAL and side == LEFT:
                source, target, coeff = (j, a), (i, a), c
            elif space == Role.PRIMAL and side == RIGHT:
                source, target, coeff = (a, i), (a, j), c
            elif space == Role.DUAL and side == LEFT:
                source, target, coeff = (i, a), (j, a), -c
            else:
                source, target, coeff = (a, j), (a, i), -c
            if source not in P:
                continue
            if target not in P:
                # Functionals are projected back to P, matrices must stay inside
                if space == Role.PRIMAL:
                    escaped.append(target)
                continue
            M[P.index[target], P.index[source]] += coeff
        if escaped:
            raise SupportError(escaped, f"1+{c}e{i},{j} moves n_P outside P at {sorted(escaped)}")
        return M % p

    def generators(self, space, side, actor=None):
        actor = self.P if actor is None else actor
        if actor.n != self.P.n:
            raise ShapeError("Actor poset has a different ground set")
        sides = [LEFT, RIGHT] if side == TWO_SIDED else [side]
        return [
            ((s, i, j, c), self.generator_matrix(space, s, i, j, c))
            for s in sides for i, j in actor.positions for c in range(1, self.p)
        ]

    # Orbit partitions

    def orbit_table(self, space, side=TWO_SIDED, actor=None):
        cache_key = (space, side, actor)
        if cache_key in self._tables:
            return self._tables[cache_key]

        V = self.vectors
        sources, targets = [np.arange(self.order)], [np.arange(self.order)]
        for _, M in self.generators(space, side, actor):
            sources.append(np.arange(self.order))
            targets.append(self.keys_of(V @ M.T))
        rows, cols = np.concatenate(sources), np.concatenate(targets)
        graph = csr_matrix((np.ones(len(rows), dtype=np.int32), (rows, cols)), shape=(self.order, self.order))
        count, labels = connected_components(graph, directed=True, connection="weak")

        # Renumber orbits by their smallest key
        _, first = np.unique(labels, return_index=True)
        order = np.argsort(first)
        renumber = np.empty(count, dtype=np.int64)
        renumber[order] = np.arange(count)
        labels = renumber[labels]
        first_keys = first[order]

        table = OrbitTable(
            side=side, space=space, P=self.P, p=self.p, labels=labels,
            representatives=[self.matrix(key, space) for key in first_keys],
            sizes=np.bincount(labels, minlength=count),
        )
        self.logger.info(f"Found {count} {side} {space.value} orbits of U_P with |P|={self.k}, p={self.p}")
        self._tables[cache_key] = table
        return table

    def orbit_of(self, start, side=TWO_SIDED, actor=None, record_witnesses=False, shuffle_seed=None):
        '''
        BFS over the orbit of start. Returns a dict key -> parent step
        (parent_key, side, i, j, c); the step is None for start, and for
        every key when witnesses are not recorded.
        '''
        gens = self.generators(start.role, side, actor)
        if shuffle_seed is not None:
            random.Random(shuffle_seed).shuffle(gens)
        start_vec = np.array(start.values, dtype=np.int64)
        start_key = int(self.keys_of(start_vec))
        seen = {start_key: None}
        frontier = deque([(start_key, start_vec)])
        while frontier:
            key, vec = frontier.popleft()
            for step, M in gens:
                image = (M @ vec) % self.p
                image_key = int(image @ self.weights)
                if image_key not in seen:
                    seen[image_key] = (key, *step) if record_witnesses else None
                    frontier.append((image_key, image))
        return seen

    def find_witness(self, start, target, actor=None):
        '''
        Group elements g, h of U_actor with target = g.start.h
        '''
        actor = self.P if actor is None else actor
        # Consecutive searches from the same start reuse its BFS tree
        tree_key = (start.role, start.key, actor)
        if self._witness_tree[0] != tree_key:
            self._witness_tree = (tree_key, self.orbit_of(start, TWO_SIDED, actor, record_witnesses=True))
        parents = self._witness_tree[1]
        if target.key not in parents:
            return None
        path = []
        key = target.key
        while parents[key] is not None:
            parent_key, side, i, j, c = parents[key]
            path.append((side, i, j, c))
            key = parent_key
        path.reverse()

        n, p = self.P.n, self.p
        g = np.eye(n, dtype=np.int64)
        h = np.eye(n, dtype=np.int64)
        for side, i, j, c in path:
            x = np.eye(n, dtype=np.int64)
            x[i - 1, j - 1] = c
            if side == LEFT:
                g = (x @ g) % p
            else:
                h = (h @ x) % p
        return GroupElement.from_array(actor, p, g), GroupElement.from_array(actor, p, h)

    def left_orbit_size(self, lam):
        return self.orbit_table(lam.role, LEFT).size_of(lam)

    def two_sided_orbit_size(self, lam):
        return self.orbit_table(lam.role, TWO_SIDED).size_of(lam)

    def stabiliser_overlap(self, lam):
        '''
        |U_P lam  intersect  lam U_P| as an explicit set intersection
        '''
        left = self.orbit_table(lam.role, LEFT)
        right = self.orbit_table(lam.role, RIGHT)
        both = (left.labels == left.orbit_id(lam)) & (right.labels == right.orbit_id(lam))
        return int(np.count_nonzero(both))

    # Characters

    def character_row(self, lam):
        '''
        Values of the supercharacter of lam at every g = 1 + X, indexed by the
        key of X: an (N, p-1) coefficient array and a rational scale
        '''
        table = self.orbit_table(Role.DUAL, TWO_SIDED)
        orbit = table.orbit_id(lam)
        if orbit in self._rows:
            self._rows.move_to_end(orbit)
            return self._rows[orbit]

        members = table.member_keys(orbit)
        counts = np.zeros((self.order, self.p), dtype=np.int64)
        V = self.vectors
        for start in range(0, len(members), self.member_batch):
            batch = V[members[start:start + self.member_batch]]
            residues = (V @ batch.T) % self.p
            for t in range(self.p):
                counts[:, t] += np.count_nonzero(residues == t, axis=1)
        scale = Fraction(self.left_orbit_size(lam), len(members))
        row = (reduce_rows(counts), scale)
        self._rows[orbit] = row
        if len(self._rows) > self.ROW_CACHE_SIZE:
            self._rows.popitem(last=False)
        return row

    def evaluate_character(self, lam, g):
        X = g.off_diag if g.P == self.P else g.off_diag.project(self.P)
        if g.P != self.P and X.support != g.off_diag.support:
            raise SupportError(g.off_diag.support - X.support)
        rows, scale = self.character_row(lam)
        return row_value(rows[X.key], self.p, scale)

    def inner_product(self, a, b):
        rows_a, scale_a = self.character_row(a)
        rows_b, scale_b = self.character_row(b)
        total = sum_rows(multiply_rows(rows_a, conj_rows(rows_b, self.p), self.p))
        return row_value(total, self.p, scale_a * scale_b / self.order)

    def weighted_sum(self, terms):
        '''
        sum of weight * rows over (rows, weight) pairs as an exact
        (rows, denominator) pair
        '''
        acc = np.zeros((self.order, self.p - 1), dtype=np.int64)
        den = 1
        for rows, weight in terms:
            weight = Fraction(weight)
            common = int(np.lcm(den, weight.denominator))
            acc = acc * (common // den) + rows * (weight.numerator * (common // weight.denominator))
            den = common
        return acc, den

    def regular_character_residual(self):
        '''
        sum over dual orbits of (|orbit| / |left orbit|) chi minus the regular
        character, as an exact (rows, denominator) pair; zero when the
        decomposition holds
        '''
        table = self.orbit_table(Role.DUAL, TWO_SIDED)

        def terms():
            for orbit, lam in enumerate(table.representatives):
                rows, scale = self.character_row(lam)
                yield rows, Fraction(int(table.sizes[orbit]), self.left_orbit_size(lam)) * scale

        acc, den = self.weighted_sum(terms())
        acc[0, 0] -= self.order * den
        return acc, den

    def constancy_violation(self, lam):
        '''
        First key whose value differs from the value at its superclass
        representative, or None
        '''
        classes = self.orbit_table(Role.PRIMAL, TWO_SIDED)
        rows, _ = self.character_row(lam)
        first_keys = np.array([X.key for X in classes.representatives], dtype=np.int64)
        reference = rows[first_keys[classes.labels]]
        bad = np.flatnonzero(np.any(rows != reference, axis=1))
        return int(bad[0]) if len(bad) else None

    def verify_axioms(self, evaluate=True):
        '''
        Counting and identity checks always run; the character checks walk
        every orbit member and are skipped when evaluate is False
        '''
        classes = self.orbit_table(Role.PRIMAL, TWO_SIDED)
        functionals = self.orbit_table(Role.DUAL, TWO_SIDED)
        results = [CheckResult(
            "superclass count equals supercharacter count",
            len(classes) == len(functionals),
            None if len(classes) == len(functionals) else {"superclasses": len(classes), "supercharacters": len(functionals)},
        )]

        identity_size = int(classes.sizes[classes.labels[0]])
        results.append(CheckResult("identity is a superclass", identity_size == 1,
                                   None if identity_size == 1 else {"size": identity_size}))
        if not evaluate:
            return results

        bad = None
        for lam in functionals.representatives:
            violation = self.constancy_violation(lam)
            if violation is not None:
                bad = {"functional": lam.to_json(), "element": self.matrix(violation, Role.PRIMAL).to_json()}
                break
        results.append(CheckResult("supercharacters constant on superclasses", bad is None, bad))

        residual, _ = self.regular_character_residual()
        nonzero = np.flatnonzero(np.any(residual != 0, axis=1))
        results.append(CheckResult(
            "supercharacters decompose the regular character", len(nonzero) == 0,
            None if len(nonzero) == 0 else {"element": self.matrix(nonzero[0], Role.PRIMAL).to_json()},
        ))
        return results


def enumerate_group(P, p, cap=GROUP_ORDER_CAP):
    order = p ** len(P)
    if order > cap:
        raise CapExceededError("Group order", order, cap)
    return [GroupElement(P, FqUpperMatrix.from_key(P, p, key)) for key in range(order)]


def two_sided_orbits(P, p, space, cap=GROUP_ORDER_CAP):
    return Oracle(P, p, cap).orbit_table(space, TWO_SIDED)


def evaluate_character(P, p, lam, g, oracle=None):
    return (oracle or Oracle(P, p)).evaluate_character(lam, g)


def inner_product(P, p, a, b, oracle=None):
    return (oracle or Oracle(P, p)).inner_product(a, b)


def verify_supercharacter_theory(P, p, cap=GROUP_ORDER_CAP):
    '''
    Axiom checks for the supercharacter theory of U_P as a JSON-ready report
    '''
    results = Oracle(P, p, cap).verify_axioms()
    return {
        "poset": P.to_json(), "p": p,
        "passed": all(r.passed for r in results),
        "checks": [r.to_json() for r in results],
    }
