from dataclasses import dataclass
from functools import lru_cache

from errors import ConfigError
from settings import MAX_PRIME


@lru_cache(maxsize=None)
def is_prime(p):
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def check_prime(p):
    '''
    Raises ConfigError unless p is a prime within the supported range
    '''
    if not isinstance(p, int) or not is_prime(p):
        raise ConfigError(f"p={p} is not prime")
    if p > MAX_PRIME:
        raise ConfigError(f"p={p} exceeds the supported maximum {MAX_PRIME}")
    return p


def inverse_mod(a, p):
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse modulo {p}")
    return pow(a, -1, p)


@dataclass(frozen=True, order=True)
class Fp:
    """
    Element of the prime field F_p, stored as its residue in [0, p).
    """
    p: int
    value: int

    def __post_init__(self):
        check_prime(self.p)
        if not 0 <= self.value < self.p:
            raise ConfigError(f"{self.value} is not a residue modulo {self.p}")

    @classmethod
    def of(cls, p, value):
        return cls(p, int(value) % p)

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ConfigError(f"Cannot combine F_{self.p} and F_{other.p}")
            return other.value
        return int(other)

    def __add__(self, other):
        return Fp.of(self.p, self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Fp.of(self.p, self.value - self._coerce(other))

    def __rsub__(self, other):
        return Fp.of(self.p, self._coerce(other) - self.value)

    def __mul__(self, other):
        return Fp.of(self.p, self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return Fp.of(self.p, -self.value)

    def inverse(self):
        return Fp(self.p, inverse_mod(self.value, self.p))

    def __truediv__(self, other):
        return self * Fp.of(self.p, self._coerce(other)).inverse()

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return Fp(self.p, pow(self.value, exponent, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __str__(self):
        return str(self.value)


def field_elements(p):
    return [Fp(p, v) for v in range(p)]


def units(p):
    '''
    The nonzero elements F_p^x in increasing order
    '''
    return [Fp(p, v) for v in range(1, p)]
