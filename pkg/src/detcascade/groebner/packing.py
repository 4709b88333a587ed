"""Integer packing of monomials.

A monomial is one Python int whose natural ordering is the monomial order.
The low ``8 * n`` bits hold the exponent vector (or its digit complement for
degree-compatible orders), the high bits hold the degree rows.  Products are
additions, quotients subtractions, and divisibility is a single borrow test.
Exponents must stay below 128.
"""

from __future__ import annotations

FIELD = 8
VALUE_MAX = (1 << (FIELD - 1)) - 1
DEG_BITS = 20


class ExponentOverflow(ArithmeticError):
    pass


class Packer:
    def __init__(self, nvars: int, weights, order: str):
        self.n = nvars
        self.weights = tuple(weights)
        self.order = order
        self.L = FIELD * nvars
        self.low_mask = (1 << self.L) - 1
        if order == "lex":
            self.pos = [nvars - 1 - i for i in range(nvars)]
            self.complement = False
            self.block = 0
        elif order == "grevlex":
            self.pos = list(range(nvars))
            self.complement = True
            self.block = 0
        elif order.startswith("block:"):
            self.pos = list(range(nvars))
            self.complement = True
            self.block = int(order.split(":", 1)[1])
        else:
            raise ValueError(order)
        self.m_all = sum(VALUE_MAX << (FIELD * p) for p in self.pos)
        self.guard = sum(1 << (FIELD * p + FIELD - 1) for p in self.pos)
        self.shift = [FIELD * p for p in self.pos]
        self.one = self.pack((0,) * nvars)

    # exps <-> key
    def packE(self, e) -> int:
        E = 0
        for x, s in zip(e, self.shift):
            if x > VALUE_MAX:
                raise ExponentOverflow(f"exponent {x} exceeds {VALUE_MAX}")
            E |= x << s
        return E

    def pack(self, e) -> int:
        E = self.packE(e)
        if not self.complement:
            return E
        key = (sum(w * x for w, x in zip(self.weights, e)) << self.L) | (self.m_all - E)
        if self.block:
            bdeg = sum(w * x for w, x in zip(self.weights[: self.block], e[: self.block]))
            key |= bdeg << (self.L + DEG_BITS)
        return key

    def exps_of(self, key: int) -> int:
        if self.complement:
            return self.m_all - (key & self.low_mask)
        return key

    def unpack(self, key: int) -> tuple:
        E = self.exps_of(key)
        return tuple((E >> s) & 0xFF for s in self.shift)

    def mul(self, a: int, b: int) -> int:
        return a + b - self.one

    def divides(self, Ea: int, Eb: int) -> bool:
        g = self.guard
        return ((Eb + g - Ea) & g) == g

    def lcm(self, ka: int, kb: int) -> int:
        a = self.unpack(ka)
        b = self.unpack(kb)
        return self.pack(tuple(max(x, y) for x, y in zip(a, b)))

    def support(self, E: int) -> int:
        # adding 127 to every field sets its guard bit iff the field is nonzero
        return (E + self.m_all) & self.guard

    def coprime(self, Ea: int, Eb: int) -> bool:
        return not (self.support(Ea) & self.support(Eb))

    def wdeg(self, key: int) -> int:
        if self.complement:
            return (key >> self.L) & ((1 << DEG_BITS) - 1)
        return sum(w * x for w, x in zip(self.weights, self.unpack(key)))
