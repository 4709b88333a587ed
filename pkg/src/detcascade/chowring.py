"""Intersection rings and Chern class calculus.

Rings are finitely presented graded algebras over the rationals with an
explicit additive basis:

* :class:`GrassmannRing` -- Schubert classes on G(r, n), the variety of
  r-dimensional subspaces of an n-dimensional space.  ``sigma_i = c_i(Q)`` for
  the universal quotient Q of rank n - r and ``c_i(R) = (-1)^i sigma_{1^i}``
  for the universal subbundle R.
* :class:`ProjectiveBundle` -- P(E) of lines in E over a base ring, presented
  by ``h^rk + c_1(E) h^(rk-1) + ... + c_rk(E) = 0`` with ``h = c_1(O(1))``;
  integration sends ``h^(rk-1)`` to the base point class.
* :class:`TruncatedPolyRing` -- a free graded polynomial ring cut off above a
  fixed degree, for presentations given by generators and relations.

Bundles are handled through their Chern classes; tensor operations go
through power sums (Newton's identities). Schur functions use the root
convention: ``s_lambda(E)`` is the Schur polynomial of the Chern roots, so
``s_(k)`` is the complete symmetric function and ``s_(1^k) = c_k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Sequence

__all__ = [
    "BundleClass",
    "ChowClass",
    "GrassmannRing",
    "PointRing",
    "ProjectiveBundle",
    "TruncatedPolyRing",
    "bundle_calc",
    "chow_a1",
    "chow_rank_window",
    "euler_ci",
    "euler_determinantal",
    "determinantal_data",
    "grassmann_ring",
    "lascoux_expand",
    "node_count",
    "porteous_degree",
    "porteous_routes",
    "projective_space",
    "relation10_residue",
    "schur_q",
    "schur_s",
]


# --------------------------------------------------------------------------
# partitions


def _clean(lam: Sequence[int]) -> tuple:
    lam = tuple(int(x) for x in lam)
    if any(x < 0 for x in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"{lam} is not a partition")
    return tuple(x for x in lam if x)


def conjugate(lam: Sequence[int]) -> tuple:
    lam = _clean(lam)
    return tuple(sum(1 for x in lam if x > i) for i in range(lam[0])) if lam else ()


def partitions_in_box(rows: int, cols: int) -> list:
    """Partitions with at most ``rows`` parts, each at most ``cols``, by size."""
    out = []

    def rec(prefix, left_rows, cap):
        out.append(tuple(prefix))
        if left_rows == 0:
            return
        for x in range(1, cap + 1):
            rec(prefix + [x], left_rows - 1, x)

    rec([], rows, cols)
    out.sort(key=lambda p: (sum(p), tuple(-x for x in p)))
    return out


def partitions_of(k: int, max_len: int | None = None, max_part: int | None = None) -> list:
    out = []

    def rec(prefix, left, cap):
        if left == 0:
            out.append(tuple(prefix))
            return
        if max_len is not None and len(prefix) == max_len:
            return
        for x in range(min(left, cap), 0, -1):
            rec(prefix + [x], left - x, x)

    rec([], k, max_part if max_part is not None else k)
    return out


def _contained(a: tuple, b: tuple) -> bool:
    return len(a) <= len(b) and all(x <= y for x, y in zip(a, b))


# --------------------------------------------------------------------------
# classes


class ChowClass:
    """A rational combination of basis labels of a ring."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring, coords=None):
        self.ring = ring
        self.coords = {k: Fraction(v) for k, v in (coords or {}).items() if v}

    def _lift(self, other) -> ChowClass:
        if isinstance(other, ChowClass):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("classes live in different rings")
            return other
        return self.ring.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.coords)
        for k, v in other.coords.items():
            out[k] = out.get(k, 0) + v
        return ChowClass(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return ChowClass(self.ring, {k: -v for k, v in self.coords.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def mul(self, other, upto: int | None = None) -> ChowClass:
        """Product, dropping every term of degree above ``upto``."""
        if not isinstance(other, ChowClass):
            c = Fraction(other)
            return ChowClass(self.ring, {k: v * c for k, v in self.coords.items()})
        other = self._lift(other)
        ring = self.ring
        deg = ring.degree
        out: dict = {}
        for a, x in self.coords.items():
            da = deg(a)
            for b, y in other.coords.items():
                if upto is not None and da + deg(b) > upto:
                    continue
                for k, v in ring.mul_basis(a, b).items():
                    out[k] = out.get(k, 0) + x * y * v
        return ChowClass(ring, out)

    def __mul__(self, other):
        return self.mul(other)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = Fraction(c)
        return ChowClass(self.ring, {k: v / c for k, v in self.coords.items()})

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.scalar(other)
        if not isinstance(other, ChowClass):
            return NotImplemented
        return self.ring == other.ring and self.coords == other.coords

    def __hash__(self):
        return hash(frozenset(self.coords.items()))

    def __bool__(self):
        return bool(self.coords)

    def part(self, d: int) -> ChowClass:
        deg = self.ring.degree
        return ChowClass(self.ring, {k: v for k, v in self.coords.items() if deg(k) == d})

    def truncate(self, d: int) -> ChowClass:
        deg = self.ring.degree
        return ChowClass(self.ring, {k: v for k, v in self.coords.items() if deg(k) <= d})

    def is_homogeneous(self) -> bool:
        return len({self.ring.degree(k) for k in self.coords}) <= 1

    def integrate(self) -> Fraction:
        return self.ring.integrate(self)

    def to_json(self) -> dict:
        return {
            "ring": self.ring.describe(),
            "coords": {self.ring.label_text(k): str(v) for k, v in sorted(self.coords.items(), key=str)},
        }

    def __repr__(self):
        if not self.coords:
            return "0"
        return " + ".join(f"{v}*{self.ring.label_text(k)}" for k, v in sorted(self.coords.items(), key=str))


class _Ring:
    top_degree: int

    def scalar(self, c) -> ChowClass:
        return ChowClass(self, {self.one_label: Fraction(c)})

    def one(self) -> ChowClass:
        return self.scalar(1)

    def zero(self) -> ChowClass:
        return ChowClass(self, {})

    def label_text(self, label) -> str:
        return str(label)

    def integrate(self, x: ChowClass) -> Fraction:
        raise NotImplementedError(f"{type(self).__name__} has no integration")


class PointRing(_Ring):
    """The Chow ring of a point."""

    one_label = ()
    top_degree = 0
    basis = [()]

    def degree(self, label) -> int:
        return 0

    def mul_basis(self, a, b) -> dict:
        return {(): 1}

    def integrate(self, x: ChowClass) -> Fraction:
        return x.coords.get((), Fraction(0))

    def describe(self) -> dict:
        return {"kind": "point"}

    def __eq__(self, other):
        return isinstance(other, PointRing)

    def __hash__(self):
        return hash("point")


class GrassmannRing(_Ring):
    """Schubert calculus on G(r, n) (r-planes in n-space)."""

    def __init__(self, r: int, n: int):
        if not 0 < r < n:
            raise ValueError(f"G({r}, {n}) needs 0 < r < n")
        self.r, self.n = r, n
        self.k = n - r  # rank of the quotient
        self.basis = partitions_in_box(r, self.k)
        self.one_label = ()
        self.top_degree = r * self.k
        self.point = (self.k,) * r
        self._table: dict = {}

    def __eq__(self, other):
        return isinstance(other, GrassmannRing) and (self.r, self.n) == (other.r, other.n)

    def __hash__(self):
        return hash(("G", self.r, self.n))

    def describe(self) -> dict:
        return {"kind": "grassmannian", "r": self.r, "n": self.n}

    def label_text(self, label) -> str:
        return "s[" + ",".join(map(str, label)) + "]"

    def degree(self, label) -> int:
        return sum(label)

    def pieri(self, i: int, lam: tuple) -> list:
        """Partitions mu in the box with mu/lam a horizontal strip of size i."""
        if i == 0:
            return [lam]
        r, k = self.r, self.k
        lam = lam + (0,) * (r - len(lam))
        out = []

        def rec(j, left, acc):
            if j == r:
                if left == 0:
                    out.append(tuple(x for x in acc if x))
                return
            hi = k if j == 0 else lam[j - 1]
            for x in range(lam[j], min(hi, lam[j] + left) + 1):
                rec(j + 1, left - (x - lam[j]), acc + [x])

        rec(0, i, [])
        return out

    def _special_times(self, i: int, x: dict) -> dict:
        out: dict = {}
        for lam, c in x.items():
            for mu in self.pieri(i, lam):
                out[mu] = out.get(mu, 0) + c
        return out

    def mul_basis(self, a: tuple, b: tuple) -> dict:
        key = (a, b) if (len(a), a) <= (len(b), b) else (b, a)
        hit = self._table.get(key)
        if hit is not None:
            return hit
        lam, mu = key[1], key[0]
        if sum(lam) + sum(mu) > self.top_degree:
            self._table[key] = {}
            return {}
        # Giambelli: sigma_mu = det(sigma_{mu_i + j - i})
        L = len(mu)
        out: dict = {}
        for perm in itertools.permutations(range(L)):
            idx = [mu[i] + perm[i] - i for i in range(L)]
            if any(t < 0 or t > self.k for t in idx):
                continue
            sign = _perm_sign(perm)
            x = {lam: 1}
            for t in idx:
                x = self._special_times(t, x)
                if not x:
                    break
            for nu, c in x.items():
                out[nu] = out.get(nu, 0) + sign * c
        out = {nu: c for nu, c in out.items() if c}
        self._table[key] = out
        return out

    def sigma(self, lam: Sequence[int] = ()) -> ChowClass:
        lam = _clean(lam)
        if not _contained(lam, self.point):
            return self.zero()
        return ChowClass(self, {lam: 1})

    def integrate(self, x: ChowClass) -> Fraction:
        return x.coords.get(self.point, Fraction(0))

    def sub_bundle(self) -> BundleClass:
        """The universal subbundle R of rank r."""
        return BundleClass(self, self.r, tuple((-1) ** i * self.sigma((1,) * i) for i in range(1, self.r + 1)))

    def quotient_bundle(self) -> BundleClass:
        """The universal quotient bundle Q of rank n - r."""
        return BundleClass(self, self.k, tuple(self.sigma((i,)) for i in range(1, self.k + 1)))

    def tangent_bundle(self) -> BundleClass:
        return bundle_calc("tensor", bundle_calc("dual", self.sub_bundle()), self.quotient_bundle())

    def degree_in_pluecker(self) -> int:
        return int(self.integrate(self.sigma((1,)) ** self.top_degree))


def _perm_sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def grassmann_ring(r: int, n: int) -> GrassmannRing:
    return _grassmann_cached(r, n)


@lru_cache(maxsize=None)
def _grassmann_cached(r: int, n: int) -> GrassmannRing:
    return GrassmannRing(r, n)


class ProjectiveBundle(_Ring):
    """P(E) of lines in a bundle E over a base ring; h = c_1(O(1))."""

    def __init__(self, E: BundleClass):
        if E.rank < 1:
            raise ValueError("projective bundle of a bundle of rank < 1")
        self.base = E.ring
        self.E = E
        self.rk = E.rank
        self.one_label = (self.base.one_label, 0)
        self.top_degree = self.base.top_degree + self.rk - 1
        self._hpow: dict = {}
        self._id = id(self)

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return self._id

    def describe(self) -> dict:
        return {"kind": "projective_bundle", "base": self.base.describe(), "rank": self.rk}

    def label_text(self, label) -> str:
        b, j = label
        return f"{self.base.label_text(b)}*h^{j}"

    def degree(self, label) -> int:
        return self.base.degree(label[0]) + label[1]

    def pull(self, x: ChowClass) -> ChowClass:
        return ChowClass(self, {(k, 0): v for k, v in x.coords.items()})

    def h(self) -> ChowClass:
        return self.h_power(1)

    def h_power(self, k: int) -> ChowClass:
        hit = self._hpow.get(k)
        if hit is not None:
            return hit
        if k > self.top_degree:
            out = self.zero()
        elif k < self.rk:
            out = ChowClass(self, {(self.base.one_label, k): 1})
        else:
            out = self.zero()
            for i in range(1, self.rk + 1):
                c = self.E.c(i)
                if not c:
                    continue
                prev = self.h_power(k - i)
                out = out - self._base_times(c, prev)
        self._hpow[k] = out
        return out

    def _base_times(self, c: ChowClass, x: ChowClass) -> ChowClass:
        base = self.base
        out: dict = {}
        for a, u in c.coords.items():
            for (b, j), v in x.coords.items():
                for k, w in base.mul_basis(a, b).items():
                    key = (k, j)
                    out[key] = out.get(key, 0) + u * v * w
        return ChowClass(self, out)

    def mul_basis(self, a, b) -> dict:
        (x, i), (y, j) = a, b
        prod_ = self.base.mul_basis(x, y)
        if i + j < self.rk:
            return {(k, i + j): v for k, v in prod_.items()}
        hp = self.h_power(i + j)
        return self._base_times(ChowClass(self.base, prod_), hp).coords

    def integrate(self, x: ChowClass) -> Fraction:
        top = self.rk - 1
        return self.base.integrate(ChowClass(self.base, {b: v for (b, j), v in x.coords.items() if j == top}))


def projective_space(N: int) -> ProjectiveBundle:
    """The Chow ring of P^N as P(C^(N+1)) over a point."""
    pt = PointRing()
    return ProjectiveBundle(BundleClass(pt, N + 1, ()))


class TruncatedPolyRing(_Ring):
    """Free commutative algebra on graded generators, cut off above ``top``."""

    def __init__(self, names: Sequence[str], degrees: Sequence[int] | None = None, top: int = 1):
        self.names = tuple(names)
        self.degrees = tuple(degrees) if degrees is not None else (1,) * len(self.names)
        if len(self.degrees) != len(self.names) or any(d <= 0 for d in self.degrees):
            raise ValueError("one positive degree per generator")
        self.top_degree = top
        self.one_label = (0,) * len(self.names)

    def __eq__(self, other):
        return (isinstance(other, TruncatedPolyRing)
                and (self.names, self.degrees, self.top_degree) == (other.names, other.degrees, other.top_degree))

    def __hash__(self):
        return hash((self.names, self.degrees, self.top_degree))

    def describe(self) -> dict:
        return {"kind": "polynomial-quotient", "generators": list(self.names),
                "degrees": list(self.degrees), "top": self.top_degree}

    def label_text(self, label) -> str:
        parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(self.names, label) if e]
        return "*".join(parts) or "1"

    def degree(self, label) -> int:
        return sum(d * e for d, e in zip(self.degrees, label))

    def mul_basis(self, a, b) -> dict:
        e = tuple(x + y for x, y in zip(a, b))
        return {e: 1} if self.degree(e) <= self.top_degree else {}

    def gen(self, name: str) -> ChowClass:
        i = self.names.index(name)
        e = [0] * len(self.names)
        e[i] = 1
        return ChowClass(self, {tuple(e): 1}) if self.degrees[i] <= self.top_degree else self.zero()

    def coefficient(self, x: ChowClass, name: str) -> Fraction:
        i = self.names.index(name)
        e = tuple(1 if j == i else 0 for j in range(len(self.names)))
        return x.coords.get(e, Fraction(0))


# --------------------------------------------------------------------------
# bundles


@dataclass(frozen=True)
class BundleClass:
    """Chern data of a (possibly virtual) bundle: rank and c_1, c_2, ...

    For an honest bundle ``chern`` has length ``rank``; virtual bundles carry
    Chern classes up to the ring's top degree.
    """

    ring: object
    rank: int
    chern: tuple
    virtual: bool = False

    def c(self, i: int) -> ChowClass:
        if i == 0:
            return self.ring.one()
        if 1 <= i <= len(self.chern):
            return self.chern[i - 1]
        return self.ring.zero()

    def total(self) -> ChowClass:
        out = self.ring.one()
        for x in self.chern:
            out = out + x
        return out

    def pullback(self, f) -> BundleClass:
        """Chern classes mapped through ``f`` (a function on classes), e.g. into a projective bundle."""
        ring = f(self.ring.one()).ring
        return BundleClass(ring, self.rank, tuple(f(x) for x in self.chern), self.virtual)


def trivial_bundle(ring, rank: int) -> BundleClass:
    return BundleClass(ring, rank, ())


def line_bundle(c1: ChowClass) -> BundleClass:
    return BundleClass(c1.ring, 1, (c1,))


def _limit(ring) -> int:
    return ring.top_degree


def power_sums(E: BundleClass, upto: int | None = None) -> list:
    """p_0 .. p_upto of the Chern roots (p_0 = rank)."""
    D = _limit(E.ring) if upto is None else upto
    p = [E.ring.scalar(E.rank)]
    for k in range(1, D + 1):
        acc = E.c(k) * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            ci = E.c(i)
            if ci:
                acc = acc + ci.mul(p[k - i], upto=D) * ((-1) ** (i - 1))
        p.append(acc)
    return p


def from_power_sums(ring, rank: int, p: list, virtual: bool = False) -> BundleClass:
    D = len(p) - 1
    cap = D if virtual else min(rank, D)
    e = [ring.one()]
    for k in range(1, cap + 1):
        acc = ring.zero()
        for i in range(1, k + 1):
            if e[k - i]:
                acc = acc + e[k - i].mul(p[i], upto=D) * ((-1) ** (i - 1))
        e.append(acc / k)
    chern = tuple(e[1:])
    while chern and not chern[-1] and virtual:
        chern = chern[:-1]
    return BundleClass(ring, rank, chern, virtual)


def bundle_calc(op: str, E: BundleClass, arg=None) -> BundleClass:
    """Chern classes of a bundle built from ``E``.

    ops: dual, twist_by_line (arg: c_1 of the line bundle), sym2, wedge2,
    tensor_line_halftwist (arg: h; tensor with M where 2 c_1(M) = h),
    tensor (arg: second bundle), sum (arg: second bundle), difference
    (arg: second bundle, virtual result).
    """
    ring = E.ring
    D = _limit(ring)
    if op == "dual":
        return BundleClass(ring, E.rank, tuple(x * ((-1) ** i) for i, x in enumerate(E.chern, 1)), E.virtual)
    if op in ("twist_by_line", "tensor_line_halftwist"):
        ell = arg if op == "twist_by_line" else arg / 2
        return _twist(E, ell)
    if op == "sum":
        total = E.total().mul(arg.total(), upto=D)
        return _from_total(ring, E.rank + arg.rank, total, E.virtual or arg.virtual)
    if op == "difference":
        pe, pf = power_sums(E), power_sums(arg)
        return from_power_sums(ring, E.rank - arg.rank, [a - b for a, b in zip(pe, pf)], virtual=True)
    if op == "tensor":
        pe, pf = power_sums(E), power_sums(arg)
        q = [_binomial_convolution(pe, pf, k, D) for k in range(D + 1)]
        return from_power_sums(ring, E.rank * arg.rank, q, E.virtual or arg.virtual)
    if op in ("sym2", "wedge2"):
        # roots x_i + x_j over pairs i <= j (sym2) or i < j (wedge2)
        p = power_sums(E)
        sign = 1 if op == "sym2" else -1
        q = [(_binomial_convolution(p, p, k, D) + p[k] * (sign * 2 ** k)) / 2 for k in range(D + 1)]
        r = E.rank
        rank = r * (r + 1) // 2 if op == "sym2" else r * (r - 1) // 2
        return from_power_sums(ring, rank, q, E.virtual)
    raise ValueError(f"unknown bundle operation {op!r}")


def _binomial_convolution(p: list, q: list, k: int, D: int) -> ChowClass:
    """sum_a binom(k, a) p_a q_(k-a): the k-th power sum of all pairwise root sums."""
    acc = p[0].ring.zero()
    for a in range(k + 1):
        acc = acc + p[a].mul(q[k - a], upto=D) * comb(k, a)
    return acc


def _twist(E: BundleClass, ell: ChowClass) -> BundleClass:
    """c_k(E x L) = sum_i c_i(E) binom(r - i, k - i) l^(k - i)."""
    ring = E.ring
    if E.virtual:
        p = power_sums(E)
        lp = power_sums(line_bundle(ell))
        D = _limit(ring)
        q = []
        for k in range(len(p)):
            acc = ring.zero()
            for j in range(k + 1):
                acc = acc + p[j].mul(lp[1] ** (k - j) if k - j else ring.one(), upto=D) * comb(k, j)
            q.append(acc)
        return from_power_sums(ring, E.rank, q, virtual=True)
    r = E.rank
    powers = [ring.one()]
    for _ in range(r):
        powers.append(powers[-1] * ell)
    chern = []
    for k in range(1, r + 1):
        acc = ring.zero()
        for i in range(0, k + 1):
            ci = E.c(i)
            if ci:
                acc = acc + ci * powers[k - i] * comb(r - i, k - i)
        chern.append(acc)
    return BundleClass(ring, r, tuple(chern))


def _from_total(ring, rank: int, total: ChowClass, virtual: bool) -> BundleClass:
    D = _limit(ring)
    cap = D if virtual else min(rank, D)
    return BundleClass(ring, rank, tuple(total.part(k) for k in range(1, cap + 1)), virtual)


def _det(m: list) -> ChowClass:
    n = len(m)
    if n == 1:
        return m[0][0]
    out = None
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        t = m[0][j] * _det(minor)
        if j % 2:
            t = -t
        out = t if out is None else out + t
    return out if out is not None else m[0][0].ring.zero()


def schur_s(I: Sequence[int], E: BundleClass) -> ChowClass:
    """s_I of the Chern roots: det(c_{I'_i + j - i}) over the conjugate partition."""
    I = _clean(I)
    ring = E.ring
    if not I:
        return ring.one()
    lc = conjugate(I)
    L = len(lc)
    m = [[E.c(lc[i] + j - i) if lc[i] + j - i >= 0 else ring.zero() for j in range(L)] for i in range(L)]
    return _det(m)


def complete_classes(E: BundleClass, upto: int | None = None) -> list:
    """h_0 .. h_upto: complete symmetric functions of the roots (1 / c_{-t})."""
    ring = E.ring
    D = _limit(ring) if upto is None else upto
    h = [ring.one()]
    for k in range(1, D + 1):
        acc = ring.zero()
        for i in range(1, k + 1):
            ci = E.c(i)
            if ci:
                acc = acc + ci.mul(h[k - i], upto=D) * ((-1) ** (i + 1))
        h.append(acc)
    return h


def _q_one_row(E: BundleClass, upto: int) -> list:
    ring = E.ring
    h = complete_classes(E, upto)
    q = []
    for k in range(upto + 1):
        acc = ring.zero()
        for i in range(k + 1):
            ci = E.c(i)
            if ci:
                acc = acc + ci.mul(h[k - i], upto=upto)
        q.append(acc)
    return q


def schur_q(I: Sequence[int], E: BundleClass) -> ChowClass:
    """Schur Q-function of the roots for a strict partition I.

    One-row classes come from prod (1 + x t) / (1 - x t); two-row classes from
    Q_(a,b) = q_a q_b + 2 sum_i (-1)^i q_(a+i) q_(b-i); longer ones are
    Pfaffians of the two-row classes.
    """
    I = _clean(I)
    if any(a == b for a, b in zip(I, I[1:])):
        raise ValueError(f"{I} is not a strict partition")
    ring = E.ring
    if not I:
        return ring.one()
    D = max(_limit(ring), sum(I))
    q = _q_one_row(E, D)

    def qk(k):
        return q[k] if 0 <= k < len(q) else ring.zero()

    def two(a, b):
        acc = qk(a) * qk(b)
        for i in range(1, b + 1):
            acc = acc + qk(a + i) * qk(b - i) * (2 * (-1) ** i)
        return acc

    parts = list(I) + ([0] if len(I) % 2 else [])
    n = len(parts)
    M = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            M[i][j] = two(parts[i], parts[j]) if parts[j] else qk(parts[i])
    return _pf(M, tuple(range(n)), ring)


def _pf(M, idx: tuple, ring) -> ChowClass:
    if not idx:
        return ring.one()
    i0 = idx[0]
    out = ring.zero()
    for pos in range(1, len(idx)):
        j = idx[pos]
        rest = idx[1:pos] + idx[pos + 1:]
        t = M[i0][j] * _pf(M, rest, ring)
        out = out + (t if pos % 2 else -t)
    return out


def lascoux_expand(I: Sequence[int], rank: int) -> dict:
    """Coefficients d_IJ with s_I(E x L) = sum_J d_IJ s_J(E) c_1(L)^{|I|-|J|}.

    d_IJ = det(binom(I_i + rank - i, J_j + rank - j)) for J inside I; empty
    when I has more than ``rank`` parts (then s_I vanishes on rank-``rank`` E).
    """
    I = _clean(I)
    r = rank
    if len(I) > r:
        return {}
    Ip = I + (0,) * (r - len(I))
    out = {}
    for k in range(sum(I) + 1):
        for J in partitions_of(k, max_len=r):
            if not _contained(J, I):
                continue
            Jp = J + (0,) * (r - len(J))
            mat = [[comb(Ip[i] + r - 1 - i, Jp[j] + r - 1 - j) for j in range(r)] for i in range(r)]
            d = _int_det(mat)
            if d:
                out[J] = d
    return out


def _int_det(mat: list) -> int:
    n = len(mat)
    if n == 0:
        return 1
    a = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    assert det.denominator == 1
    return int(det)


# --------------------------------------------------------------------------
# degrees and Euler characteristics


def porteous_routes(m: int, n: int, r: int) -> tuple:
    """(product formula, Thom-Porteous integration) for the rank <= r locus of m x n."""
    # r = 0 is excluded: the zero matrix is not a point of P^(mn-1)
    if not (m >= 1 and n >= 1 and 1 <= r < min(m, n)):
        raise ValueError(f"need 1 <= r < min(m, n), got {(m, n, r)}")
    a, b = max(m, n), min(m, n)
    prod_val = Fraction(1)
    for i in range(b - r):
        prod_val *= Fraction(factorial(a + i) * factorial(i), factorial(r + i) * factorial(a - r + i))
    assert prod_val.denominator == 1
    # Thom-Porteous: class det(c_{n-r+j-i}(V(1) - W)) of size m - r in P^{mn-1}
    P = projective_space(m * n - 1)
    H = P.h()
    F = _twist(trivial_bundle(P, n), H)
    E = trivial_bundle(P, m)
    virt = bundle_calc("difference", F, E)
    size = m - r
    mat = [[virt.c(n - r + j - i) if n - r + j - i >= 0 else P.zero() for j in range(size)] for i in range(size)]
    cls = _det(mat)
    dim = m * n - 1 - (m - r) * (n - r)
    integral = P.integrate(cls * P.h_power(dim))
    return int(prod_val), int(integral)


def porteous_degree(m: int, n: int, r: int) -> int:
    """Degree of the locus of m x n matrices of rank <= r in P^{mn-1}."""
    a, b = porteous_routes(m, n, r)
    if a != b:
        raise ArithmeticError(f"Porteous routes disagree: {a} vs {b}")
    return a


def euler_ci(ambient_dim: int, degrees: Sequence[int]) -> int:
    """Topological Euler characteristic of a complete intersection in P^N."""
    N = ambient_dim
    dim = N - len(degrees)
    if dim < 0:
        raise ValueError("negative-dimensional complete intersection")
    # coefficient of h^dim in (1+h)^(N+1) / prod(1 + d h)
    series = [Fraction(comb(N + 1, k)) for k in range(dim + 1)]
    for d in degrees:
        inv = [Fraction((-d) ** k) for k in range(dim + 1)]
        series = [sum(series[i] * inv[k - i] for i in range(k + 1)) for k in range(dim + 1)]
    return int(series[dim] * prod(degrees))


_DETERMINANTAL = {
    # case: (grassmannian (r, n), bundle recipe, hyperplane cuts)
    "generic44_P7": ((2, 4), "dualQ_x4", 8),
    "skew77_P6": ((4, 7), "wedge2R", 14),
    "sym55_P9": ((2, 5), "sym2R", 5),
}


def _resolution_bundle(G: GrassmannRing, recipe: str) -> BundleClass:
    if recipe == "dualQ_x4":
        return bundle_calc("tensor", bundle_calc("dual", G.quotient_bundle()), trivial_bundle(G, 4))
    if recipe == "wedge2R":
        return bundle_calc("wedge2", G.sub_bundle())
    if recipe == "sym2R":
        return bundle_calc("sym2", G.sub_bundle())
    raise ValueError(recipe)


def determinantal_data(case: str) -> dict:
    """Euler characteristic and degree of a generic linear section threefold.

    The section misses the smaller rank locus, so it is the zero locus of
    ``cuts`` sections of O(1) on the projective bundle resolution P(E) over a
    Grassmannian, with c(T_P(E)) = c(T_G) c(E x O(1)).
    """
    if case not in _DETERMINANTAL:
        raise ValueError(f"unknown determinantal case {case!r}")
    (r, n), recipe, cuts = _DETERMINANTAL[case]
    G = grassmann_ring(r, n)
    E = _resolution_bundle(G, recipe)
    P = ProjectiveBundle(E)
    dim = P.top_degree - cuts
    if dim != 3:
        raise AssertionError(f"{case}: section has dimension {dim}")
    h = P.h()
    TG = G.tangent_bundle()
    cT = P.pull(G.one())
    for x in TG.chern[:dim]:
        cT = cT + P.pull(x)
    E1 = _twist(E.pullback(P.pull), h)
    cE = E1.total().truncate(dim)
    normal_inv = P.zero()
    for k in range(dim + 1):
        normal_inv = normal_inv + h ** k * (comb(cuts + k - 1, k) * (-1) ** k)
    total = cT.mul(cE, upto=dim).mul(normal_inv, upto=dim)
    top = total.part(dim)
    hc = P.h_power(cuts)
    chi = P.integrate(top * hc)
    deg = P.integrate(P.h_power(dim) * hc)
    for v in (chi, deg):
        if v.denominator != 1:
            raise ArithmeticError("non-integral integral")
    return {"case": case, "chi": int(chi), "degree": int(deg), "grassmannian": (r, n),
            "bundle_rank": E.rank, "cuts": cuts}


def euler_determinantal(case: str) -> int:
    return determinantal_data(case)["chi"]


def node_count(chi_small_resolution_side: int, chi_smooth_side: int) -> int:
    """(chi(resolution) - chi(smoothing)) / 2; an odd difference is an error."""
    d = chi_small_resolution_side - chi_smooth_side
    if d % 2:
        raise ValueError(f"odd Euler characteristic difference {d}")
    return d // 2


# --------------------------------------------------------------------------
# Chow groups of determinantal varieties


def _snf_diagonal(rows: list) -> list:
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    if not rows:
        return []
    S = smith_normal_form(Matrix(rows), domain=ZZ)
    return [int(abs(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0]


def chow_a1(case: str, m: int, n: int, r: int) -> tuple:
    """Rank of the degree-1 Chow group of the rank <= r locus and its presentation.

    Degree-1 generators are those of the projective bundle P' (Grassmannian
    classes and h); the single relation comes from weight-one partitions.
    Returns (rank, presentation) with the Smith normal form diagonal and the
    torsion orders.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    if case == "generic":
        names = [nm for nm, ok in (("s1Q", 0 < m - r < m), ("s1R", 0 < r < n)) if ok] + ["h"]
        T = TruncatedPolyRing(names, top=1)
        cR = T.gen("s1R") if "s1R" in names else T.zero()
        cQ = T.gen("s1Q") if "s1Q" in names else T.zero()
        R = BundleClass(T, r, (cR,) + (T.zero(),) * (r - 1))
        Q = BundleClass(T, r, (cQ,) + (T.zero(),) * (r - 1))
        rel = schur_s((1,), Q) - schur_s((1,), bundle_calc("twist_by_line", R, T.gen("h")))
    elif case in ("symmetric", "partially-symmetric"):
        if case == "symmetric" and m != n:
            raise ValueError("symmetric case needs m = n")
        names = ["s1R"] + (["x"] if case == "partially-symmetric" else []) + ["h"]
        T = TruncatedPolyRing(names, top=1)
        R = BundleClass(T, r, (T.gen("s1R"),) + (T.zero(),) * (r - 1))
        rel = schur_q((1,), bundle_calc("tensor_line_halftwist", R, T.gen("h")))
    else:
        raise ValueError(f"unknown case {case!r}")
    coeffs = [T.coefficient(rel, nm) for nm in names]
    if any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError("non-integral degree-1 relation")
    row = [int(c) for c in coeffs]
    diag = _snf_diagonal([row]) if any(row) else []
    rank = len(names) - len(diag)
    return rank, {"generators": names, "relations": [row], "snf": diag,
                  "torsion": [d for d in diag if d > 1]}


def _frac_rank(rows: list, ncols: int) -> int:
    """Rank over Q of sparse rows (dict col -> Fraction)."""
    pivots: dict = {}
    rank = 0
    for row in rows:
        v = dict(row)
        while v:
            col = min(v)
            if col in pivots:
                prow = pivots[col]
                f = v[col]
                for k, x in prow.items():
                    nv = v.get(k, 0) - f * x
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
            else:
                inv = 1 / v[col]
                pivots[col] = {k: x * inv for k, x in v.items()}
                rank += 1
                break
    return rank


def chow_rank_window(m: int, n: int, r: int, extra: int = 2) -> dict:
    """Rank over Q of the Chow group of the open stratum of rank exactly r.

    The group is the quotient of A(G_r(V))[h] by the ideal of the classes
    s_I(R x L) over partitions I with at most r parts and I_1 > m - r (those
    are the s_I(Q) vanishing on G_{m-r}(W)), expanded by the Lascoux
    coefficients.  Graded dimensions are computed by exact linear algebra up
    to dim P' and ``extra`` degrees beyond, which must contribute nothing.
    """
    if not (m >= n > r >= 1):
        raise ValueError("need m >= n > r >= 1")
    G = grassmann_ring(r, n)
    k = n - r
    bound = r * (m - r) + r * k + r * r - 1
    top = bound + extra
    box = G.basis

    def s_R(J):
        # s_J(R) = (-1)^|J| sigma_J in the Schubert basis
        return (-1) ** sum(J) if _contained(J, G.point) else 0

    rels = []
    for size in range(m - r + 1, top + 1):
        for I in partitions_of(size, max_len=r):
            if I[0] <= m - r:
                continue
            vec = {}
            for J, d in lascoux_expand(I, r).items():
                sg = s_R(J)
                if sg:
                    vec[(J, size - sum(J))] = d * sg
            if vec:
                rels.append((size, vec))
    dims = []
    total = 0
    for deg in range(top + 1):
        cols = [(J, deg - sum(J)) for J in box if sum(J) <= deg]
        index = {c: i for i, c in enumerate(cols)}
        rows = []
        for size, vec in rels:
            if size > deg:
                continue
            shift = deg - size
            for K in box:
                i = shift - sum(K)
                if i < 0:
                    continue
                row: dict = {}
                for (J, j), c in vec.items():
                    for nu, w in G.mul_basis(K, J).items():
                        col = index[(nu, j + i)]
                        row[col] = row.get(col, 0) + Fraction(c * w)
                row = {a: b for a, b in row.items() if b}
                if row:
                    rows.append(row)
        q = len(cols) - _frac_rank(rows, len(cols))
        dims.append(q)
        if deg <= bound:
            total += q
    stable = all(q == 0 for q in dims[bound + 1:])
    lower, upper = comb(n, r), comb(n, r) * (m - r + 1)
    return {"m": m, "n": n, "r": r, "lower": lower, "upper": upper, "rank": total,
            "graded": dims[: bound + 1], "bound": bound, "stable": stable,
            "within": lower <= total <= upper}


@dataclass(frozen=True)
class Residue:
    polynomial: object
    below_threshold: bool

    @property
    def is_zero(self) -> bool:
        return self.polynomial.is_zero()


def kernel_twist_classes(m: int, n: int):
    """c(K(-1)) on the rank n-1 stratum from 0 -> K(-1) -> W(-1) -> V -> C -> 0.

    Returns (classes c_0..c_{m+1}, ring) in A(P^{n-1})[h, c] terms, as
    polynomials over Q in h and c (c = c_1(C), c^n = 0 is left to the caller).
    """
    top = m + 2
    T = TruncatedPolyRing(("h", "c"), top=top)
    h, c = T.gen("h"), T.gen("c")
    Wm = _twist(trivial_bundle(T, m), -h)
    C = line_bundle(c)
    V = trivial_bundle(T, n)
    K = bundle_calc("difference", bundle_calc("sum", Wm, C), V)
    return [K.c(a) for a in range(top + 1)], T


def relation10_residue(m: int, n: int, a: int) -> Residue:
    """Normal form of binom(m, m-a) h^a - binom(m, m-a+1) h^(a-1) c on the rank n-1 stratum.

    The presentation is Q[h, c] modulo c^n and the classes c_b(K(-1)) for b
    above rank K = m - n + 1, reduced by a Gröbner basis over Q.
    """
    from .groebner import groebner_basis, normal_form
    from .ideal import IdealData
    from .polycore import CoeffField, make_ring

    if not (m >= n >= 2):
        raise ValueError("need m >= n >= 2")
    if a < 0:
        raise ValueError("need a >= 0")
    ring = make_ring(("h", "c"), field=CoeffField.rationals())
    hh, cc = ring.gens
    classes, T = kernel_twist_classes(m, n)

    def to_poly(x: ChowClass):
        return sum((ring.const(v) * hh ** e[0] * cc ** e[1] for e, v in x.coords.items()), ring.zero())

    rank_k = m - n + 1
    gens = [cc ** n] + [to_poly(classes[b]) for b in range(rank_k + 1, len(classes))]
    G = groebner_basis(IdealData.of(gens, ring))
    def binom(k):
        return comb(m, k) if 0 <= k <= m else 0

    lhs = ring.const(binom(m - a)) * hh ** a
    if a >= 1:
        lhs = lhs - ring.const(binom(m - a + 1)) * hh ** (a - 1) * cc
    return Residue(normal_form(lhs, G), a < m - n + 2)
