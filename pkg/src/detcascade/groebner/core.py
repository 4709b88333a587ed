from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ..ideal import IdealData
from ..polycore import Polynomial, PolyRing, RingMismatchError, all_minors, diff, make_ring, random_form
from .engine import Budget, _make_elem, buchberger, normal_form as _packed_nf
from .hilbert import HilbertData, hilbert_from_lead
from .packing import Packer


def _same_base(a: PolyRing, b: PolyRing) -> bool:
    return a.variables == b.variables and a.weights == b.weights and a.field == b.field


def _pack(f: Polynomial, pk: Packer) -> dict:
    return {pk.pack(e): c for e, c in f.terms.items()}


def _unpack(d: dict, pk: Packer, ring: PolyRing) -> Polynomial:
    return Polynomial(ring, {pk.unpack(k): c for k, c in d.items()})


@dataclass(frozen=True, eq=False)
class GroebnerResult:
    ring: PolyRing
    basis: tuple
    lead_ideal: tuple
    stats: dict = field(default_factory=dict)
    _reducers: list = field(default=None, repr=False, compare=False)

    @property
    def order(self) -> str:
        return self.ring.order

    @property
    def packer(self) -> Packer:
        return Packer(self.ring.nvars, self.ring.weights, self.ring.order)

    def reducers(self) -> list:
        if self._reducers is None:
            pk = self.packer
            red = [_make_elem(_pack(g, pk), pk, self.ring.field.p, 0) for g in self.basis]
            object.__setattr__(self, "_reducers", red)
        return self._reducers

    def normal_form(self, f: Polynomial) -> Polynomial:
        if not _same_base(f.ring, self.ring):
            raise RingMismatchError("polynomial and basis live in different rings")
        pk = self.packer
        nf = _packed_nf(_pack(f, pk), self.reducers(), pk, self.ring.field.p)
        return _unpack(nf, pk, self.ring)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    @property
    def is_unit(self) -> bool:
        return any(sum(e) == 0 for e in self.lead_ideal)

    def ideal(self, label: str = "") -> IdealData:
        return IdealData(self.basis, self.ring, label)


def groebner_basis(I: IdealData, order=None, budget: Budget | None = None, cache=None) -> GroebnerResult:
    """Reduced Gröbner basis of ``I`` under ``order`` (default: the ring's order)."""
    ring = I.ring if order is None else I.ring.with_order(order)
    gens = [Polynomial(ring, g.terms) for g in I.generators]
    key = None
    if cache is not None:
        key = cache.key(ring, gens)
        hit = cache.get(key, ring)
        if hit is not None:
            basis = tuple(hit)
            return GroebnerResult(ring, basis, tuple(g.lead_monomial() for g in basis),
                                  {"cached": True})
    pk = Packer(ring.nvars, ring.weights, ring.order)
    packed = [_pack(g, pk) for g in gens]
    red, stats = buchberger(packed, pk, ring.field.p, budget)
    basis = tuple(_unpack(d, pk, ring) for d in red)
    if cache is not None:
        cache.put(key, ring, basis)
    return GroebnerResult(ring, basis, tuple(g.lead_monomial() for g in basis),
                          dict(stats.as_dict(), cached=False))


def _gb(x, budget=None, cache=None) -> GroebnerResult:
    return x if isinstance(x, GroebnerResult) else groebner_basis(x, budget=budget, cache=cache)


def hilbert_data(G) -> HilbertData:
    G = _gb(G)
    return hilbert_from_lead(G.lead_ideal, G.ring.nvars, G.ring.weights)


def normal_form(f: Polynomial, G) -> Polynomial:
    return _gb(G).normal_form(f)


def ideal_membership(f: Polynomial, G) -> bool:
    return _gb(G).contains(f)


def ideal_containment(I: IdealData, J, budget=None, cache=None) -> bool:
    """True iff every generator of ``I`` lies in ``J``."""
    G = _gb(J, budget, cache)
    if not _same_base(I.ring, G.ring):
        raise RingMismatchError("ideals live in different rings")
    return all(G.contains(g) for g in I.generators)


def ideal_equal(I: IdealData, J: IdealData, budget=None, cache=None) -> bool:
    return ideal_containment(I, J, budget, cache) and ideal_containment(J, I, budget, cache)


def ideal_sum(I: IdealData, J: IdealData, label: str = "") -> IdealData:
    if not _same_base(I.ring, J.ring):
        raise RingMismatchError("ideals live in different rings")
    gens = list(I.generators) + [Polynomial(I.ring, g.terms) for g in J.generators]
    return IdealData(tuple(gens), I.ring, label or f"{I.label}+{J.label}")


def _embed(f: Polynomial, ring: PolyRing, index) -> Polynomial:
    n = ring.nvars
    out = {}
    for e, c in f.terms.items():
        v = [0] * n
        for i, x in zip(index, e):
            v[i] = x
        out[tuple(v)] = c
    return Polynomial(ring, out)


def eliminate(I: IdealData, kill: Iterable[str], budget=None, cache=None) -> IdealData:
    """Generators of I intersected with the subring without the ``kill`` variables."""
    kill = list(kill)
    ring = I.ring
    keep = [v for v in ring.variables if v not in kill]
    if not keep:
        raise ValueError("cannot eliminate every variable")
    names = kill + keep
    w = {v: ring.weights[ring.index(v)] for v in ring.variables}
    big = make_ring(names, [w[v] for v in names], ("block", len(kill)), ring.field)
    index = [names.index(v) for v in ring.variables]
    G = groebner_basis(IdealData(tuple(_embed(g, big, index) for g in I.generators), big),
                       budget=budget, cache=cache)
    sub = make_ring(keep, [w[v] for v in keep], ring.order, ring.field)
    k = len(kill)
    gens = [
        Polynomial(sub, {e[k:]: c for e, c in g.terms.items()})
        for g in G.basis
        if all(not any(e[:k]) for e in g.terms)
    ]
    return IdealData(tuple(gens), sub, f"elim({I.label})")


def _fresh(ring: PolyRing, stem: str) -> str:
    name = stem
    while name in ring.variables:
        name += "_"
    return name


def ideal_intersection(I: IdealData, J: IdealData, budget=None, cache=None) -> IdealData:
    """I ∩ J by eliminating t from t*I + (z - t)*J, then setting z = 1.

    The auxiliary z keeps the computation homogeneous when I and J are; any
    f in the intersection gives z*f = t*f + (z - t)*f, so nothing is lost.
    """
    if not _same_base(I.ring, J.ring):
        raise RingMismatchError("ideals live in different rings")
    ring = I.ring
    tname = _fresh(ring, "_t")
    zname = _fresh(ring, "_z")
    names = [tname, zname] + list(ring.variables)
    big = make_ring(names, [1, 1] + list(ring.weights), ring.order, ring.field)
    index = list(range(2, len(names)))
    t, z = big.gen(0), big.gen(1)
    gens = [t * _embed(f, big, index) for f in I.generators]
    gens += [(z - t) * _embed(g, big, index) for g in J.generators]
    E = eliminate(IdealData(tuple(gens), big), [tname], budget, cache)
    out = []
    for g in E.generators:
        terms: dict = {}
        fld = ring.field
        for e, c in g.terms.items():
            k = e[1:]
            terms[k] = fld.add(terms[k], c) if k in terms else c
        out.append(Polynomial(ring, terms))
    return IdealData(tuple(out), ring, f"({I.label})∩({J.label})")


def exact_divide(h: Polynomial, g: Polynomial) -> Polynomial:
    """h / g for a multiple h of g; raises if the division leaves a remainder."""
    ring = h.ring
    fld = ring.field
    lm, lc = g.lead_monomial(), g.lead_coeff()
    q = ring.zero()
    r = h
    while r:
        e, c = r.sorted_terms()[0]
        d = tuple(a - b for a, b in zip(e, lm))
        if any(x < 0 for x in d):
            raise ArithmeticError("inexact division")
        t = Polynomial(ring, {d: fld.div(c, lc)})
        q = q + t
        r = r - t * g
    return q


def _colon_element(I: IdealData, g: Polynomial, budget=None, cache=None) -> IdealData:
    """(I : g) for a single element g."""
    ring = I.ring
    g = Polynomial(ring, g.terms)
    if not (I.is_homogeneous() and g.is_homogeneous() and ring.order == "grevlex"):
        inter = ideal_intersection(I, IdealData((g,), ring), budget, cache)
        return IdealData(tuple(exact_divide(h, g) for h in inter.generators), ring)
    # adjoin y = g as a smallest variable of weight deg g; for a homogeneous
    # ideal and reverse-lex tie-breaking y divides an element of the reduced
    # basis iff it divides its leading term, so (I' : y) is read off the basis
    yname = _fresh(ring, "_y")
    names = list(ring.variables) + [yname]
    big = make_ring(names, list(ring.weights) + [g.degree()], "grevlex", ring.field)
    index = list(range(ring.nvars))
    y = big.gen(ring.nvars)
    gens = [_embed(f, big, index) for f in I.generators] + [y - _embed(g, big, index)]
    G = groebner_basis(IdealData(tuple(gens), big), budget=budget, cache=cache)
    n = ring.nvars
    out = []
    for b in G.basis:
        if all(e[n] for e in b.terms):
            b = Polynomial(big, {e[:n] + (e[n] - 1,): c for e, c in b.terms.items()})
        out.append(b)
    # back substitution y -> g
    gpow = {0: ring.one()}
    res = []
    for b in out:
        acc = ring.zero()
        for e, c in b.terms.items():
            k = e[n]
            if k not in gpow:
                gpow[k] = g ** k
            acc = acc + Polynomial(ring, {e[:n]: c}) * gpow[k]
        res.append(acc)
    return IdealData(tuple(res), ring)


def _combinations(J: IdealData, seed: int = 0x51CA) -> list:
    """Seeded elements of a homogeneous J that usually have the same colon.

    First a combination of the lowest-degree generators, then (when degrees
    differ) one of all generators lifted to the top degree by random forms.
    """
    from ..polycore import SplitMix64

    if not J.is_homogeneous():
        return []
    ring = J.ring
    rng = SplitMix64(seed)
    fld = ring.field
    degs = [g.degree() for g in J.generators]
    low, top = min(degs), max(degs)

    def coeff():
        return rng.below(fld.p) if fld.p else Fraction(rng.below(1 << 16) + 1)

    acc = ring.zero()
    for g, d in zip(J.generators, degs):
        if d == low:
            acc = acc + g * coeff()
    out = [acc] if acc else []
    if top != low:
        lifted = ring.zero()
        for g, d in zip(J.generators, degs):
            m = random_form(ring, top - d, rng.next()) if d < top else ring.const(coeff())
            lifted = lifted + g * m
        if lifted:
            out.append(lifted)
    return out


def ideal_quotient(I: IdealData, J: IdealData, budget=None, cache=None) -> IdealData:
    """(I : J).

    For several generators the colon by a seeded combination h of them is
    tried first: (I : J) is always contained in (I : h), and equality is
    certified by checking (I : h) * J inside I.  Otherwise (I : J) is the
    intersection of the colons by the generators.
    """
    if not _same_base(I.ring, J.ring):
        raise RingMismatchError("ideals live in different rings")
    ring = I.ring
    label = f"({I.label}):({J.label})"
    if not J.generators:
        return IdealData((ring.one(),), ring, label)
    if len(J.generators) == 1:
        C = _colon_element(I, J.generators[0], budget, cache)
        return IdealData(groebner_basis(C, budget=budget, cache=cache).basis, ring, label)
    GI = None
    for h in _combinations(J):
        S = groebner_basis(_colon_element(I, h, budget, cache), budget=budget, cache=cache)
        GI = GI or groebner_basis(I, budget=budget, cache=cache)
        if all(GI.contains(s * g) for s in S.basis for g in J.generators):
            return IdealData(S.basis, ring, label)
    result = None
    for g in J.generators:
        colon = _colon_element(I, g, budget, cache)
        result = colon if result is None else ideal_intersection(result, colon, budget, cache)
    return IdealData(groebner_basis(result, budget=budget, cache=cache).basis, ring, label)


def jacobian_ideal(I: IdealData, codim: int) -> IdealData:
    """I plus all codim x codim minors of the Jacobian matrix of its generators."""
    ring = I.ring
    jac = [[diff(f, i) for i in range(ring.nvars)] for f in I.generators]
    minors = all_minors(jac, codim)
    return IdealData(tuple(I.generators) + tuple(minors), ring, f"jac({I.label})")
