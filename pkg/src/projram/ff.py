"""Prime fields F_p for p < 2**31.

Hot code paths work on plain ``int`` residues and call ``% p`` directly;
:class:`FieldElement` is the checked value type used at API boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

DEFAULT_PRIMES = (32003, 1000003, 2147483629)
MAX_PRIME = 2**31


class FieldMismatchError(ValueError):
    """Raised when two operands live over different primes."""


def _is_prime(n: int) -> bool:
    from sympy.ntheory import isprime  # deterministic below 2**64; imported lazily for startup time

    return isprime(n)


@lru_cache(maxsize=None)
def _certify(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool):
        raise TypeError(f"prime must be an int, got {type(p).__name__}")
    if not 2 < p < MAX_PRIME:
        raise ValueError(f"prime must satisfy 2 < p < 2**31, got {p}")
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


@dataclass(frozen=True)
class Prime:
    """A certified odd prime below 2**31."""

    p: int

    def __post_init__(self):
        _certify(self.p)

    def __int__(self):
        return self.p

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value % self.p, self.p)


def check_prime(p) -> int:
    """Return ``p`` as an int after certifying it."""
    return _certify(int(p))


@dataclass(frozen=True, slots=True)
class FieldElement:
    value: int
    p: int

    def __post_init__(self):
        if not 0 <= self.value < self.p:
            raise ValueError(f"{self.value} is not a canonical residue mod {self.p}")

    @classmethod
    def of(cls, value: int, p) -> "FieldElement":
        p = check_prime(p)
        return cls(value % p, p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise FieldMismatchError(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement((self.value + v) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement((self.value - v) % self.p, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement((v - self.value) % self.p, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.value * v % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value % self.p, self.p)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self * FieldElement(inv_mod(v, self.p), self.p)

    def __pow__(self, e: int):
        if e < 0:
            return FieldElement(inv_mod(self.value, self.p), self.p) ** (-e)
        return FieldElement(pow(self.value, e, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def inverse(self) -> "FieldElement":
        return FieldElement(inv_mod(self.value, self.p), self.p)

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def inv_mod(x: int, p: int) -> int:
    if x % p == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(x, -1, p)


def ff_add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + _same(x, y)


def ff_sub(x: FieldElement, y: FieldElement) -> FieldElement:
    return x - _same(x, y)


def ff_mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * _same(x, y)


def ff_inv(x: FieldElement) -> FieldElement:
    return x.inverse()


def _same(x: FieldElement, y: FieldElement) -> FieldElement:
    if not isinstance(x, FieldElement) or not isinstance(y, FieldElement):
        raise TypeError("ff_* operations take FieldElement operands")
    if x.p != y.p:
        raise FieldMismatchError(f"F_{x.p} vs F_{y.p}")
    return y


def sqrt_mod(a: int, p: int) -> int | None:
    """The least square root of ``a`` mod ``p``, or None for non-residues."""
    from sympy.ntheory import sqrt_mod as _sqrt_mod

    return _sqrt_mod(a % p, p)
