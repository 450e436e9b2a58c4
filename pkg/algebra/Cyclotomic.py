from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from algebra.FiniteField import Fp, check_prime
from errors import ConfigError
from settings import SUM_BATCH

'''
Exact arithmetic in Z[z] and Q(z), z a primitive p-th root of unity.

Elements are coefficient vectors over the basis 1, z, ..., z^(p-2). The
relation 1 + z + ... + z^(p-1) = 0 is applied eagerly, so two elements are
equal exactly when their coefficient vectors are.
'''


def reduce_full(full, p):
    '''
    Maps a length-p vector over 1, z, ..., z^(p-1) to the canonical length p-1 form
    '''
    top = full[p - 1]
    return tuple(int(full[i] - top) for i in range(p - 1))


def _full(coeffs):
    return list(coeffs) + [0]


@dataclass(frozen=True)
class CyclotomicInt:
    p: int
    coeffs: tuple

    def __post_init__(self):
        check_prime(self.p)
        if len(self.coeffs) != self.p - 1:
            raise ConfigError(f"Expected {self.p - 1} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def from_full(cls, p, full):
        return cls(p, reduce_full(full, p))

    @classmethod
    def from_exponent_counts(cls, p, counts):
        '''
        sum_t counts[t] * z^t
        '''
        return cls.from_full(p, [int(c) for c in counts])

    @classmethod
    def integer(cls, p, m):
        return cls(p, (int(m),) + (0,) * (p - 2))

    @classmethod
    def zero(cls, p):
        return cls.integer(p, 0)

    @classmethod
    def one(cls, p):
        return cls.integer(p, 1)

    def _lift(self, other):
        if isinstance(other, CyclotomicInt):
            if other.p != self.p:
                raise ConfigError(f"Cannot combine Z[z_{self.p}] and Z[z_{other.p}]")
            return other
        return CyclotomicInt.integer(self.p, int(other))

    def __add__(self, other):
        other = self._lift(other)
        return CyclotomicInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        p = self.p
        product = np.zeros(p, dtype=object)
        for s, a in enumerate(_full(self.coeffs)):
            if a == 0:
                continue
            for t, b in enumerate(_full(other.coeffs)):
                if b:
                    product[(s + t) % p] += a * b
        return CyclotomicInt.from_full(p, product)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValueError(f"Z[z_{self.p}] has no negative powers, use CyclotomicRat.inverse")
        result = CyclotomicInt.one(self.p)
        for _ in range(exponent):
            result = result * self
        return result

    def galois(self, k):
        '''
        Image under the automorphism z -> z^k, k a unit modulo p
        '''
        p = self.p
        if k % p == 0:
            raise ConfigError(f"{k} is not a unit modulo {p}")
        image = [0] * p
        for i, c in enumerate(_full(self.coeffs)):
            image[(k * i) % p] += c
        return CyclotomicInt.from_full(p, image)

    def conj(self):
        return self.galois(self.p - 1)

    def is_zero(self):
        return not any(self.coeffs)

    def is_integer(self):
        return not any(self.coeffs[1:])

    def as_integer(self):
        if not self.is_integer():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def content(self):
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{i}")
        return " + ".join(terms) if terms else "0"


def theta(t, p=None):
    '''
    The additive character t -> z^t of F_p
    '''
    if isinstance(t, Fp):
        p, t = t.p, t.value
    full = [0] * p
    full[t % p] = 1
    return CyclotomicInt.from_full(p, full)


def conj(x):
    return x.conj()


@dataclass(frozen=True)
class CyclotomicRat:
    """
    numerator / denominator in lowest terms, denominator positive.
    """
    numerator: CyclotomicInt
    denominator: int = 1

    def __post_init__(self):
        den = int(self.denominator)
        if den == 0:
            raise ZeroDivisionError("Zero denominator")
        num = self.numerator
        if den < 0:
            num, den = -num, -den
        g = gcd(num.content(), den)
        if num.is_zero():
            g = den
        if g > 1:
            num = CyclotomicInt(num.p, tuple(c // g for c in num.coeffs))
            den //= g
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @property
    def p(self):
        return self.numerator.p

    @classmethod
    def from_int(cls, p, value):
        if isinstance(value, Fraction):
            return cls(CyclotomicInt.integer(p, value.numerator), value.denominator)
        return cls(CyclotomicInt.integer(p, int(value)), 1)

    @classmethod
    def scaled(cls, x, scale):
        '''
        x * scale for a CyclotomicInt x and a Fraction scale
        '''
        scale = Fraction(scale)
        return cls(x * scale.numerator, scale.denominator)

    def _lift(self, other):
        if isinstance(other, CyclotomicRat):
            return other
        if isinstance(other, CyclotomicInt):
            return CyclotomicRat(other, 1)
        return CyclotomicRat.from_int(self.p, other)

    def __add__(self, other):
        other = self._lift(other)
        num = self.numerator * other.denominator + other.numerator * self.denominator
        return CyclotomicRat(num, self.denominator * other.denominator)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicRat(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        return CyclotomicRat(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def inverse(self):
        if self.numerator.is_zero():
            raise ZeroDivisionError("Zero has no inverse")
        cofactor = CyclotomicInt.one(self.p)
        for k in range(2, self.p):
            cofactor = cofactor * self.numerator.galois(k)
        norm = (self.numerator * cofactor).as_integer()
        return CyclotomicRat(cofactor * self.denominator, norm)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def conj(self):
        return CyclotomicRat(self.numerator.conj(), self.denominator)

    def is_zero(self):
        return self.numerator.is_zero()

    def to_fraction(self):
        return Fraction(self.numerator.as_integer(), self.denominator)

    def __str__(self):
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator} / {self.denominator}"

    def to_json(self):
        return [self.denominator, *self.numerator.coeffs]

    @classmethod
    def from_json(cls, p, data):
        return cls(CyclotomicInt(p, tuple(data[1:])), data[0])


# Vectorised rows: an (N, p-1) integer array holds N canonical coefficient vectors

def reduce_rows(full):
    return full[:, :-1] - full[:, -1:]


def expand_rows(rows):
    return np.hstack([rows, np.zeros((rows.shape[0], 1), dtype=rows.dtype)])


def conj_rows(rows, p):
    full = expand_rows(rows)
    return reduce_rows(full[:, (-np.arange(p)) % p])


def multiply_rows(a, b, p):
    fa, fb = expand_rows(a), expand_rows(b)
    product = np.zeros_like(fa)
    for s in range(p):
        for t in range(p):
            product[:, (s + t) % p] += fa[:, s] * fb[:, t]
    return reduce_rows(product)


def row_value(row, p, scale=1):
    return CyclotomicRat.scaled(CyclotomicInt(p, tuple(int(c) for c in row)), scale)


def sum_rows(rows, batch=SUM_BATCH):
    '''
    Column sums of an (N, p-1) int64 array as exact integers, int64 only
    within blocks of batch rows
    '''
    total = np.zeros(rows.shape[1], dtype=object)
    for start in range(0, rows.shape[0], batch):
        total += rows[start:start + batch].sum(axis=0).astype(object)
    return total
