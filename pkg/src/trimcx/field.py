"""Coefficient fields: a prime field F_p (default) or the rationals.

Scalars are plain Python ints (reduced into ``[0, p)``) or ``Fraction``
values; the field object knows how to normalize and invert them and how to
build numpy arrays for the elimination kernels.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

DEFAULT_CHARACTERISTIC = 32003

# p**2 must fit in int64 for the vectorized row operations.
_MAX_PRIME = 3_037_000_493


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The field Z/pZ."""

    __slots__ = ("p",)

    def __init__(self, p: int = DEFAULT_CHARACTERISTIC):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if p > _MAX_PRIME:
            raise ValueError(f"characteristic {p} too large for int64 kernels")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    dtype = np.int64

    def __call__(self, value) -> int:
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def array(self, data) -> np.ndarray:
        return np.asarray(data, dtype=np.int64) % self.p

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        return arr % self.p

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[-1] * (self.p - 1) ** 2 < 2**63:
            return (a @ b) % self.p
        return ((a.astype(object) @ b.astype(object)) % self.p).astype(np.int64)

    def random_element(self, rng, nonzero: bool = False) -> int:
        lo = 1 if nonzero else 0
        return rng.randrange(lo, self.p)

    def lift(self, a: int) -> int:
        """Symmetric representative in (-p/2, p/2], used for printing."""
        return a - self.p if a > self.p // 2 else a

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class RationalField:
    """The rationals, with exact ``Fraction`` arithmetic (slow path)."""

    __slots__ = ()

    characteristic = 0
    dtype = object

    def __call__(self, value) -> Fraction:
        return Fraction(value)

    def inv(self, a) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def neg(self, a) -> Fraction:
        return -Fraction(a)

    def zeros(self, shape) -> np.ndarray:
        arr = np.empty(shape, dtype=object)
        arr.fill(Fraction(0))
        return arr

    def array(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        if arr.size:
            flat = arr.reshape(-1)
            for i, v in enumerate(flat):
                flat[i] = Fraction(v)
        return arr

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        return arr

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return a @ b

    def random_element(self, rng, nonzero: bool = False) -> Fraction:
        while True:
            v = rng.randint(-50, 50)
            if v or not nonzero:
                return Fraction(v)

    def lift(self, a):
        return a

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "RationalField()"


def make_field(characteristic: int = DEFAULT_CHARACTERISTIC):
    """Field of the given characteristic; 0 selects the rationals."""
    if characteristic == 0:
        return RationalField()
    return PrimeField(characteristic)


DEFAULT_FIELD = PrimeField(DEFAULT_CHARACTERISTIC)
