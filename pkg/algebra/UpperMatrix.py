from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from algebra.FiniteField import Fp, check_prime
from combinatorics.Poset import Poset, full_poset
from errors import RoleMismatchError, ShapeError, SupportError


class Role(Enum):
    PRIMAL = "primal" # element X of n_P
    DUAL = "dual"     # functional on n_P, identified with its matrix


@dataclass(frozen=True)
class FqUpperMatrix:
    """
    Strictly upper triangular matrix over F_p supported on the poset P.
    values[t] is the entry at P.positions[t].
    """
    P: Poset
    p: int
    values: tuple
    role: Role = Role.PRIMAL

    def __post_init__(self):
        check_prime(self.p)
        if len(self.values) != len(self.P):
            raise ShapeError(f"Expected {len(self.P)} entries, got {len(self.values)}")
        object.__setattr__(self, "values", tuple(int(v) % self.p for v in self.values))

    @property
    def n(self):
        return self.P.n

    @classmethod
    def zero(cls, P, p, role=Role.PRIMAL):
        return cls(P, p, (0,) * len(P), role)

    @classmethod
    def from_entries(cls, P, p, entries, role=Role.PRIMAL):
        '''
        Builds from a mapping (i,j) -> value, every nonzero position must lie in P
        '''
        values = [0] * len(P)
        outside = []
        for pos, v in entries.items():
            v = int(v) % p
            if v == 0:
                continue
            if pos not in P:
                outside.append(pos)
                continue
            values[P.index[pos]] = v
        if outside:
            raise SupportError(outside)
        return cls(P, p, tuple(values), role)

    @classmethod
    def from_array(cls, P, p, array, role=Role.PRIMAL, strict=True):
        '''
        Reads an n x n array. With strict, nonzero entries outside P raise
        SupportError, otherwise they are projected away.
        '''
        array = np.asarray(array, dtype=np.int64) % p
        if array.shape != (P.n, P.n):
            raise ShapeError(f"Expected a {P.n}x{P.n} array, got {array.shape}")
        if strict:
            rows, cols = np.nonzero(array)
            outside = [(int(i) + 1, int(j) + 1) for i, j in zip(rows, cols) if (i + 1, j + 1) not in P]
            if outside:
                raise SupportError(outside)
        return cls(P, p, tuple(int(array[i - 1, j - 1]) for i, j in P.positions), role)

    @classmethod
    def from_key(cls, P, p, key, role=Role.PRIMAL):
        values = []
        for _ in range(len(P)):
            key, digit = divmod(key, p)
            values.append(digit)
        return cls(P, p, tuple(values), role)

    @cached_property
    def key(self):
        '''
        Base-p integer encoding over P's positions, the orbit hashing key
        '''
        return sum(v * self.p**t for t, v in enumerate(self.values))

    def entry(self, i, j):
        t = self.P.index.get((i, j))
        return 0 if t is None else self.values[t]

    def entries(self):
        return {pos: v for pos, v in zip(self.P.positions, self.values) if v}

    @cached_property
    def support(self):
        return frozenset(pos for pos, v in zip(self.P.positions, self.values) if v)

    def is_zero(self):
        return not any(self.values)

    def to_array(self):
        array = np.zeros((self.n, self.n), dtype=np.int64)
        for (i, j), v in zip(self.P.positions, self.values):
            array[i - 1, j - 1] = v
        return array

    def _check_compatible(self, other):
        if self.P != other.P or self.p != other.p:
            raise ShapeError("Matrices live over different posets or fields")
        if self.role != other.role:
            raise RoleMismatchError(f"Cannot combine {self.role.value} and {other.role.value} matrices")

    def __add__(self, other):
        self._check_compatible(other)
        return FqUpperMatrix(self.P, self.p, tuple(a + b for a, b in zip(self.values, other.values)), self.role)

    def __sub__(self, other):
        self._check_compatible(other)
        return FqUpperMatrix(self.P, self.p, tuple(a - b for a, b in zip(self.values, other.values)), self.role)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return FqUpperMatrix(self.P, self.p, tuple(int(c) * v for v in self.values), self.role)

    def restrict(self, positions):
        '''
        Keeps only the entries at the given positions
        '''
        return FqUpperMatrix(
            self.P, self.p,
            tuple(v if pos in positions else 0 for pos, v in zip(self.P.positions, self.values)),
            self.role,
        )

    def project(self, Q):
        '''
        The same entries viewed over the poset Q, dropping those outside Q
        '''
        return FqUpperMatrix(Q, self.p, tuple(self.entry(i, j) for i, j in Q.positions), self.role)

    def with_role(self, role):
        return FqUpperMatrix(self.P, self.p, self.values, role)

    def to_json(self):
        return {
            "n": self.n, "p": self.p, "role": self.role.value,
            "entries": [[i, j, v] for (i, j), v in sorted(self.entries().items())],
        }

    @classmethod
    def from_json(cls, P, data):
        return cls.from_entries(
            P, int(data["p"]), {(i, j): v for i, j, v in data["entries"]}, Role(data["role"])
        )

    def __str__(self):
        entries = self.entries()
        if not entries:
            return "0"
        return " + ".join(f"{v}*e{i},{j}" for (i, j), v in sorted(entries.items()))


@dataclass(frozen=True)
class GroupElement:
    """
    g = 1 + off_diag in the pattern group U_P.
    """
    P: Poset
    off_diag: FqUpperMatrix

    def __post_init__(self):
        if self.off_diag.P != self.P:
            raise ShapeError("Off-diagonal part lives over a different poset")

    @property
    def p(self):
        return self.off_diag.p

    @property
    def n(self):
        return self.P.n

    @classmethod
    def identity(cls, P, p):
        return cls(P, FqUpperMatrix.zero(P, p))

    @classmethod
    def from_array(cls, P, p, array):
        off = np.asarray(array, dtype=np.int64) - np.eye(P.n, dtype=np.int64)
        if np.any(np.tril(off % p)):
            raise SupportError([], "Not a unipotent upper triangular matrix")
        return cls(P, FqUpperMatrix.from_array(P, p, off, Role.PRIMAL))

    def to_array(self):
        return np.eye(self.n, dtype=np.int64) + self.off_diag.to_array()

    def is_identity(self):
        return self.off_diag.is_zero()

    def __mul__(self, other):
        return mul(self, other)

    def __str__(self):
        return f"1 + {self.off_diag}"


def elementary(P, p, i, j, c=1):
    '''
    The group element 1 + c e_ij of U_P
    '''
    return GroupElement(P, FqUpperMatrix.from_entries(P, p, {(i, j): c}))


def _check_same_field(g, h):
    if g.n != h.n:
        raise ShapeError(f"Dimension mismatch: {g.n} vs {h.n}")
    if g.p != h.p:
        raise ShapeError(f"Field mismatch: F_{g.p} vs F_{h.p}")


def mul(g, h):
    _check_same_field(g, h)
    if h.P.issubset(g.P):
        P = g.P
    elif g.P.issubset(h.P):
        P = h.P
    else:
        P = full_poset(g.n)
    return GroupElement.from_array(P, g.p, (g.to_array() @ h.to_array()) % g.p)


def inv(g):
    '''
    (1+X)^-1 as the finite Neumann series sum_k (-X)^k, k < n
    '''
    p = g.p
    minus_x = (-g.off_diag.to_array()) % p
    term = np.eye(g.n, dtype=np.int64)
    result = term.copy()
    for _ in range(1, max(g.n, 1)):
        term = (term @ minus_x) % p
        result = (result + term) % p
    return GroupElement.from_array(g.P, p, result)


def _require_role(X, role):
    if X.role != role:
        raise RoleMismatchError(f"Expected a {role.value} matrix, got {X.role.value}")


def act_matrix(g, X, h):
    '''
    gXh, raising SupportError if the product leaves n_P
    '''
    _require_role(X, Role.PRIMAL)
    _check_same_field(g, h)
    if g.n != X.n or g.p != X.p:
        raise ShapeError("Group elements and matrix have different shapes")
    product = (g.to_array() @ X.to_array() @ h.to_array()) % X.p
    return FqUpperMatrix.from_array(X.P, X.p, product, Role.PRIMAL, strict=True)


def act_dual(g, lam, h):
    '''
    The functional X -> lam(g^-1 X h^-1), as the matrix
    project_P(inv(g)^T . lam . inv(h)^T)
    '''
    _require_role(lam, Role.DUAL)
    _check_same_field(g, h)
    if g.n != lam.n or g.p != lam.p:
        raise ShapeError("Group elements and functional have different shapes")
    product = (inv(g).to_array().T @ lam.to_array() @ inv(h).to_array().T) % lam.p
    return FqUpperMatrix.from_array(lam.P, lam.p, product, Role.DUAL, strict=False)


def left_dual_offset(g, lam):
    '''
    Entrywise (g^-1 lam - lam)_jk = sum_{i<j} g_ij lam_ik over (j,k) in P
    '''
    _require_role(lam, Role.DUAL)
    p = lam.p
    entries = {}
    for j, k in lam.P.positions:
        entries[(j, k)] = sum(g.off_diag.entry(i, j) * lam.entry(i, k) for i in range(1, j)) % p
    return FqUpperMatrix.from_entries(lam.P, p, entries, Role.DUAL)


def right_dual_offset(g, lam):
    '''
    Entrywise (lam g^-1 - lam)_ij = sum_{k>j} g_jk lam_ik over (i,j) in P
    '''
    _require_role(lam, Role.DUAL)
    p = lam.p
    entries = {}
    for i, j in lam.P.positions:
        entries[(i, j)] = sum(g.off_diag.entry(j, k) * lam.entry(i, k) for k in range(j + 1, lam.n + 1)) % p
    return FqUpperMatrix.from_entries(lam.P, p, entries, Role.DUAL)


def pairing(lam, X):
    '''
    lam(X) = sum over P of lam_ij X_ij
    '''
    _require_role(lam, Role.DUAL)
    _require_role(X, Role.PRIMAL)
    if lam.P != X.P or lam.p != X.p:
        raise RoleMismatchError("Functional and matrix live over different posets")
    return Fp.of(lam.p, sum(a * b for a, b in zip(lam.values, X.values)))
