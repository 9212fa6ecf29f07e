"""Packed monomial keys.

A monomial is packed into one non-negative int whose natural integer order
*is* the monomial order, so sorting, heaps and ``max`` need no key
function. Every exponent lives in an 8-bit field (bit 7 is a guard, so
exponents stay <= 127) and a 16-bit total-degree field rides along:

* degrevlex: ``[deg | 127 - e_last | ... | 127 - e_first]`` (high to low)
* lex:       ``[e_first | ... | e_last | deg]``

Multiplication is ``a + b - OFF`` and the quotient of ``b`` by a divisor
``a`` is ``b - a + OFF``, where ``OFF`` is 127 in every degrevlex exponent
field. Fields never borrow from each other because the degree cap keeps all
exponent sums <= 127.
"""

from __future__ import annotations

MAX_DEGREE = 127


class ExponentOverflowError(OverflowError):
    pass


class MonomialEncoding:
    def __init__(self, nvars: int, kind: str = "degrevlex", priority=None):
        if kind not in ("degrevlex", "lex"):
            raise ValueError(kind)
        self.nvars = nvars
        self.kind = kind
        self.priority = tuple(range(nvars)) if priority is None else tuple(priority)
        if sorted(self.priority) != list(range(nvars)):
            raise ValueError("priority must be a permutation of the variables")
        nfields = nvars + 2
        self.nlimbs = (nfields + 7) // 8
        self.bits = 64 * self.nlimbs
        # shift of the field holding variable i (declaration index)
        self.shift = [0] * nvars
        if kind == "degrevlex":
            self.deg_shift = 8 * nvars
            for rank, var in enumerate(self.priority):
                # most significant variable in priority goes lowest
                self.shift[var] = 8 * rank
        else:
            self.deg_shift = 0
            for rank, var in enumerate(self.priority):
                self.shift[var] = 16 + 8 * (nvars - 1 - rank)
        self.field_mask = 0
        self.guard = 0
        for s in self.shift:
            self.field_mask |= 0xFF << s
            self.guard |= 0x80 << s
        self.off = 0
        if kind == "degrevlex":
            for s in self.shift:
                self.off |= MAX_DEGREE << s
        self.deg_mask = 0xFFFF << self.deg_shift
        self.ones = self.off // MAX_DEGREE if kind == "degrevlex" else sum(1 << s for s in self.shift)
        self.nbytes = self.bits // 8
        self.one = self.encode((0,) * nvars)

    def encode(self, exps) -> int:
        deg = sum(exps)
        if deg > MAX_DEGREE or any(e < 0 for e in exps):
            raise ExponentOverflowError(f"total degree {deg} exceeds {MAX_DEGREE}")
        key = deg << self.deg_shift
        if self.kind == "degrevlex":
            for e, s in zip(exps, self.shift):
                key |= (MAX_DEGREE - e) << s
        else:
            for e, s in zip(exps, self.shift):
                key |= e << s
        return key

    def decode(self, key: int) -> tuple:
        if self.kind == "degrevlex":
            return tuple(MAX_DEGREE - ((key >> s) & 0xFF) for s in self.shift)
        return tuple((key >> s) & 0xFF for s in self.shift)

    def degree(self, key: int) -> int:
        return (key >> self.deg_shift) & 0xFFFF

    def mul(self, a: int, b: int) -> int:
        out = a + b - self.off
        if self.degree(out) > MAX_DEGREE:
            raise ExponentOverflowError("monomial degree overflow")
        return out

    def quotient(self, b: int, a: int) -> int:
        return b - a + self.off

    def divides(self, a: int, b: int) -> bool:
        fm, h = self.field_mask, self.guard
        if self.kind == "degrevlex":
            x, y = a & fm, b & fm
        else:
            x, y = b & fm, a & fm
        return ((x | h) - y) & h == h

    def packed(self, key: int) -> int:
        """Plain exponents in their fields, degree field cleared."""
        if self.kind == "degrevlex":
            return self.off - (key & self.field_mask)
        return key & self.field_mask

    def unpack(self, e: int) -> int:
        deg = sum(e.to_bytes(self.nbytes, "little"))
        if deg > MAX_DEGREE:
            raise ExponentOverflowError(f"total degree {deg} exceeds {MAX_DEGREE}")
        if self.kind == "degrevlex":
            return (deg << self.deg_shift) | (self.off - e)
        return (deg << self.deg_shift) | e

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.packed(a), self.packed(b)
        h = self.guard
        ge = ((ea | h) - eb) & h
        sel = (ge >> 7) * 0xFF
        return self.unpack((ea & sel) | (eb & ~sel & self.field_mask))

    def support(self, key: int) -> int:
        """Guard bit set in the field of every variable with positive exponent."""
        return ((self.packed(key) | self.guard) - self.ones) & self.guard

    def coprime(self, a: int, b: int) -> bool:
        return not (self.support(a) & self.support(b))

    def pure_power(self, key: int):
        """``(variable, exponent)`` if ``key`` is a pure power, else None."""
        e = self.decode(key)
        nz = [i for i, k in enumerate(e) if k]
        if len(nz) == 1:
            return nz[0], e[nz[0]]
        return None
