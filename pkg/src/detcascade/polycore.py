"""Exact coefficient fields, weighted polynomial rings and small dense linear algebra.

Polynomials are stored as ``{exponent tuple: coefficient}`` maps.  Over a
prime field the coefficients are plain ``int`` in ``[0, p)``; over the
rationals they are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from sympy import isprime

DEFAULT_PRIME = 1073741789
MASK64 = (1 << 64) - 1


class RingMismatchError(ValueError):
    pass


class EmptyKernelError(ValueError):
    """Raised when a matrix has trivial kernel, so no Plücker point exists."""


# --------------------------------------------------------------------------
# coefficient fields


@dataclass(frozen=True)
class CoeffField:
    kind: str = "prime"
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if self.kind == "prime":
            if self.p < 2 or not isprime(self.p):
                raise ValueError(f"modulus {self.p} is not prime")
        elif self.kind == "rationals":
            object.__setattr__(self, "p", 0)
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> CoeffField:
        return cls("prime", p)

    @classmethod
    def rationals(cls) -> CoeffField:
        return cls("rationals", 0)

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    def __call__(self, x):
        if self.p:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def zero(self):
        return 0 if self.p else Fraction(0)

    def one(self):
        return 1 if self.p else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def neg(self, a):
        return -a % self.p if self.p else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_int(self, a) -> int:
        """Symmetric integer lift (prime field) or exact integer (rationals)."""
        if self.p:
            return a - self.p if a > self.p // 2 else a
        if a.denominator != 1:
            raise ValueError(f"{a} is not an integer")
        return int(a)

    def describe(self) -> str:
        return f"GF({self.p})" if self.p else "QQ"


# --------------------------------------------------------------------------
# deterministic pseudorandom numbers


class SplitMix64:
    """SplitMix64 stream; the reproducibility contract of every random form."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next() % n


def derive_seed(seed: int, *labels: int) -> int:
    """Child seed for a sub-draw (matrix entry, border form, ...)."""
    s = seed & MASK64
    for lab in labels:
        s = SplitMix64(s ^ ((lab + 1) * 0xD1B54A32D192ED03 & MASK64)).next()
    return s


# --------------------------------------------------------------------------
# rings


ORDERS = ("grevlex", "lex")


def _normalize_order(order) -> str:
    if isinstance(order, tuple):
        kind, k = order
        return f"{kind}:{int(k)}"
    if order in ORDERS:
        return order
    if isinstance(order, str) and order.startswith("block:"):
        int(order.split(":", 1)[1])
        return order
    raise ValueError(f"unknown monomial order {order!r}")


def order_key(order: str, weights: Sequence[int]):
    """Return a sort key on exponent tuples; larger key = larger monomial."""
    if order == "lex":
        return lambda e: e
    if order == "grevlex":
        return lambda e: (sum(w * x for w, x in zip(weights, e)), tuple(-x for x in reversed(e)))
    k = int(order.split(":", 1)[1])
    return lambda e: (
        sum(w * x for w, x in zip(weights[:k], e[:k])),
        sum(w * x for w, x in zip(weights, e)),
        tuple(-x for x in reversed(e)),
    )


@dataclass(frozen=True)
class PolyRing:
    variables: tuple
    weights: tuple
    order: str = "grevlex"
    field: CoeffField = field(default_factory=CoeffField)

    def __post_init__(self):
        if not self.variables:
            raise ValueError("empty variable list")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")
        if len(self.weights) != len(self.variables) or any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive, one per variable")
        object.__setattr__(self, "order", _normalize_order(self.order))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def key(self):
        return order_key(self.order, self.weights)

    def index(self, name: str) -> int:
        return self.variables.index(name)

    def wdeg(self, e: Sequence[int]) -> int:
        return sum(w * x for w, x in zip(self.weights, e))

    def gen(self, name_or_index) -> Polynomial:
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one()})

    @property
    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(self.nvars))

    def const(self, c) -> Polynomial:
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def with_order(self, order) -> PolyRing:
        return PolyRing(self.variables, self.weights, order, self.field)

    def with_field(self, fld: CoeffField) -> PolyRing:
        return PolyRing(self.variables, self.weights, self.order, fld)

    def monomials(self, degree: int) -> list:
        """Exponent tuples of weighted degree ``degree``, descending in ring order."""
        out = []

        def rec(i, left, acc):
            if i == self.nvars - 1:
                w = self.weights[i]
                if left % w == 0:
                    out.append(tuple(acc + [left // w]))
                return
            for x in range(left // self.weights[i], -1, -1):
                rec(i + 1, left - x * self.weights[i], acc + [x])

        rec(0, degree, [])
        out.sort(key=self.key, reverse=True)
        return out

    def describe(self) -> dict:
        return {
            "variables": list(self.variables),
            "weights": list(self.weights),
            "order": self.order,
            "field": self.field.describe(),
        }


def make_ring(variables: Iterable[str], weights: Sequence[int] | None = None,
              order="grevlex", field: CoeffField | None = None) -> PolyRing:
    variables = tuple(variables)
    weights = tuple(weights) if weights is not None else (1,) * len(variables)
    return PolyRing(variables, weights, order, field or CoeffField())


def projective_ring(n: int, prefix: str = "x", start: int = 0, **kw) -> PolyRing:
    """Coordinate ring of P^n with variables prefix{start}..prefix{start+n}."""
    return make_ring([f"{prefix}{i}" for i in range(start, start + n + 1)], **kw)


# --------------------------------------------------------------------------
# polynomials


class Polynomial:
    __slots__ = ("ring", "terms", "_sorted", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple, object]):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}
        self._sorted = None
        self._hash = None

    # -- structure
    def sorted_terms(self) -> list:
        if self._sorted is None:
            self._sorted = sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)
        return self._sorted

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.ring.wdeg(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({self.ring.wdeg(e) for e in self.terms}) <= 1

    def lead_monomial(self) -> tuple:
        return self.sorted_terms()[0][0]

    def lead_coeff(self):
        return self.sorted_terms()[0][1]

    def coeff(self, e: tuple):
        return self.terms.get(tuple(e), self.ring.field.zero())

    def support_vars(self) -> set:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        fld = self.ring.field
        inv = fld.inv(self.lead_coeff())
        return Polynomial(self.ring, {e: fld.mul(c, inv) for e, c in self.terms.items()})

    # -- arithmetic
    def _check(self, other: Polynomial):
        if other.ring != self.ring:
            raise RingMismatchError("operands live in different rings")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        fld = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = fld.add(out[e], c) if e in out else c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        fld = self.ring.field
        return Polynomial(self.ring, {e: fld.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other) -> Polynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Polynomial:
        return self._coerce(other) - self

    def __mul__(self, other) -> Polynomial:
        fld = self.ring.field
        if not isinstance(other, Polynomial):
            c = fld(other)
            return Polynomial(self.ring, {e: fld.mul(a, c) for e, a in self.terms.items()})
        self._check(other)
        out: dict = {}
        p = fld.p
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items()}
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative exponent")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self.terms.items())))
        return self._hash

    def evaluate(self, point: Sequence):
        fld = self.ring.field
        total = fld.zero()
        for e, c in self.terms.items():
            t = c
            for v, x in zip(point, e):
                if x:
                    t = fld.mul(t, pow(v, x, fld.p) if fld.p else v ** x)
            total = fld.add(total, t)
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            c = self.ring.field.to_int(c) if self.ring.field.p else c
            mono = "*".join(
                v if x == 1 else f"{v}^{x}" for v, x in zip(self.ring.variables, e) if x
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def poly_op(kind: str, f: Polynomial, g=None) -> Polynomial:
    if kind == "add":
        return f + g
    if kind == "mul":
        return f * g
    if kind == "pow":
        return f ** int(g)
    if kind == "negate":
        return -f
    raise ValueError(f"unknown operation {kind!r}")


def random_form(ring: PolyRing, degree: int, seed: int) -> Polynomial:
    """Seeded form of weighted degree ``degree``.

    Coefficients are consecutive SplitMix64 draws reduced mod p, assigned to
    the monomials of that degree in descending ring order.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if not ring.field.is_prime:
        raise ValueError("random forms require a prime field")
    monos = ring.monomials(degree)
    if not monos:
        raise ValueError(f"no monomials of weighted degree {degree}")
    rng = SplitMix64(seed)
    p = ring.field.p
    return Polynomial(ring, {e: rng.below(p) for e in monos})


def random_linear_forms(ring: PolyRing, count: int, seed: int) -> list:
    return [random_form(ring, 1, derive_seed(seed, i)) for i in range(count)]


def substitute(f: Polynomial, assignment: Mapping[str, Polynomial], target: PolyRing | None = None) -> Polynomial:
    """Compose ``f`` with ``assignment`` (variable name -> polynomial).

    Unassigned variables are mapped to the variable of the same name in the
    target ring; that fails if the target ring lacks it.
    """
    if target is None:
        if assignment:
            target = next(iter(assignment.values())).ring
        else:
            target = f.ring
    for g in assignment.values():
        if g.ring != target:
            raise RingMismatchError("assignment values must share one target ring")
    images = []
    for i, name in enumerate(f.ring.variables):
        if name in assignment:
            images.append(assignment[name])
        elif any(e[i] for e in f.terms):
            if name not in target.variables:
                raise ValueError(f"variable {name!r} unassigned and absent from target ring")
            images.append(target.gen(name))
        else:
            images.append(None)
    powers: dict = {}

    def power(i, k):
        if (i, k) not in powers:
            powers[(i, k)] = images[i] ** k
        return powers[(i, k)]

    fld = target.field
    out = target.zero()
    for e, c in f.terms.items():
        t = target.const(c if fld == f.ring.field else fld(f.ring.field.to_int(c)))
        for i, x in enumerate(e):
            if x:
                t = t * power(i, x)
        out = out + t
    return out


# --------------------------------------------------------------------------
# dense linear algebra over a coefficient field


@dataclass(frozen=True)
class FieldMatrix:
    entries: tuple
    field: CoeffField = field(default_factory=CoeffField)

    @classmethod
    def of(cls, rows, fld: CoeffField | None = None) -> FieldMatrix:
        fld = fld or CoeffField()
        return cls(tuple(tuple(fld(x) for x in row) for row in rows), fld)

    @property
    def shape(self) -> tuple:
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    def transpose(self) -> FieldMatrix:
        return FieldMatrix(tuple(zip(*self.entries)), self.field)

    def rows(self) -> list:
        return [list(r) for r in self.entries]

    def matvec(self, v: Sequence) -> list:
        f = self.field
        out = []
        for row in self.entries:
            s = f.zero()
            for a, b in zip(row, v):
                s = f.add(s, f.mul(a, b))
            out.append(s)
        return out

    def rank(self) -> int:
        return len(rref(self.rows(), self.field)[1])


def rref(rows: list, fld: CoeffField) -> tuple:
    """Reduced row echelon form in place; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = fld.inv(m[r][c])
        m[r] = [fld.mul(x, inv) for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [fld.sub(a, fld.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def kernel_basis(M: FieldMatrix) -> list:
    """Echelonized kernel basis: one vector per free column, unit there."""
    fld = M.field
    nrows, ncols = M.shape
    m, pivots = rref(M.rows(), fld)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [fld.zero()] * ncols
        v[fcol] = fld.one()
        for i, pc in enumerate(pivots):
            v[pc] = fld.neg(m[i][fcol])
        basis.append(v)
    return basis


def determinant(rows: list, fld: CoeffField):
    m = [list(r) for r in rows]
    n = len(m)
    det = fld.one()
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return fld.zero()
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = fld.neg(det)
        det = fld.mul(det, m[c][c])
        inv = fld.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c]:
                f = fld.mul(m[i][c], inv)
                m[i] = [fld.sub(a, fld.mul(f, b)) for a, b in zip(m[i], m[c])]
    return det


def maximal_minors(rows: list, fld: CoeffField) -> list:
    """All k x k minors of a k x n matrix, columns in lexicographic order."""
    k = len(rows)
    n = len(rows[0])
    return [
        determinant([[r[c] for c in cols] for r in rows], fld)
        for cols in itertools.combinations(range(n), k)
    ]


def normalize_projective(v: list, fld: CoeffField) -> list:
    lead = next((x for x in v if x), None)
    if lead is None:
        return list(v)
    inv = fld.inv(lead)
    return [fld.mul(x, inv) for x in v]


def kernel_and_pluecker(M: FieldMatrix) -> tuple:
    """Kernel basis of ``M`` and the Plücker vector of the kernel.

    The Plücker vector lists the maximal minors of the basis matrix over
    lexicographically ordered column subsets, scaled so its first nonzero
    coordinate is 1.
    """
    basis = kernel_basis(M)
    if not basis:
        raise EmptyKernelError("kernel is zero-dimensional")
    return basis, normalize_projective(maximal_minors(basis, M.field), M.field)


def diff(f: Polynomial, i: int) -> Polynomial:
    """Partial derivative with respect to the i-th variable."""
    fld = f.ring.field
    out = {}
    for e, c in f.terms.items():
        if e[i]:
            d = list(e)
            d[i] -= 1
            out[tuple(d)] = fld.mul(c, fld(e[i]))
    return Polynomial(f.ring, out)


def minor_table(entries: Sequence[Sequence[Polynomial]], k: int) -> dict:
    """All k x k minors keyed by (row tuple, column tuple).

    Computed by first-row Laplace expansion on top of the (k-1)-minors, so
    each size is built once from the previous one.
    """
    nrows = len(entries)
    ncols = len(entries[0]) if nrows else 0
    if not 1 <= k <= min(nrows, ncols):
        raise ValueError(f"minor size {k} out of range for a {nrows}x{ncols} matrix")
    prev = {((i,), (j,)): entries[i][j] for i in range(nrows) for j in range(ncols)}
    for size in range(2, k + 1):
        cur = {}
        for rows in itertools.combinations(range(nrows), size):
            top, rest = rows[0], rows[1:]
            for cols in itertools.combinations(range(ncols), size):
                acc = None
                for pos, c in enumerate(cols):
                    a = entries[top][c]
                    if not a:
                        continue
                    sub = prev[(rest, cols[:pos] + cols[pos + 1:])]
                    if not sub:
                        continue
                    t = a * sub
                    if pos % 2:
                        t = -t
                    acc = t if acc is None else acc + t
                cur[(rows, cols)] = acc if acc is not None else entries[0][0].ring.zero()
        prev = cur
    return prev


def all_minors(entries: Sequence[Sequence[Polynomial]], k: int) -> list:
    """Distinct nonzero k x k minors in lexicographic (rows, cols) order."""
    out = []
    seen = set()
    for m in minor_table(entries, k).values():
        if m and m not in seen:
            seen.add(m)
            out.append(m)
    return out
