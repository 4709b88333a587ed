"""Counting the distinct points of a zero-dimensional projective scheme.

The scheme is cut down to an affine chart by a seeded generic hyperplane
``l = 1``.  Its coordinate ring is then a finite-dimensional algebra; the
distinct points are the distinct eigenvalues of multiplication by a
generic linear form, i.e. the degree of the squarefree part of its minimal
polynomial.
"""

from __future__ import annotations

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_sqf_part

from ..ideal import IdealData
from ..polycore import Polynomial, derive_seed, random_form
from .engine import Budget
from .hilbert import hilbert_from_lead


class SeedDisagreement(RuntimeError):
    """Two independent seeds produced different point counts."""


def _standard_monomials(lead, nvars: int, limit: int = 100_000) -> list:
    """Monomials outside the lead ideal; raises when the quotient is infinite."""
    lead = [tuple(e) for e in lead]

    def outside(e):
        return not any(all(a <= b for a, b in zip(g, e)) for g in lead)

    for i in range(nvars):
        if not any(g[i] and sum(g) == g[i] for g in lead):
            raise ValueError("affine chart is not zero-dimensional")
    out = []
    frontier = [(0,) * nvars]
    seen = set(frontier)
    while frontier:
        nxt = []
        for e in frontier:
            if not outside(e):
                continue
            out.append(e)
            if len(out) > limit:
                raise ValueError("standard monomial basis too large")
            for i in range(nvars):
                f = e[:i] + (e[i] + 1,) + e[i + 1:]
                if f not in seen:
                    seen.add(f)
                    nxt.append(f)
        frontier = nxt
    return out


def _krylov_minpoly(columns: list, n: int, p: int, start: list) -> list:
    """Minimal polynomial (ascending coeffs, monic) of ``start`` under the matrix."""

    def apply(v):
        out = [0] * n
        for j, x in enumerate(v):
            if x:
                for i, c in columns[j]:
                    out[i] = (out[i] + x * c) % p
        return out

    # echelon rows (pivot, vector, combination of powers giving the vector)
    pivots: list = []
    v = start
    for k in range(n + 1):
        w = list(v)
        comb = [0] * (n + 1)
        comb[k] = 1
        for col, row, rc in pivots:
            c = w[col]
            if c:
                w = [(x - c * y) % p for x, y in zip(w, row)]
                comb = [(x - c * y) % p for x, y in zip(comb, rc)]
        piv = next((i for i, x in enumerate(w) if x), None)
        if piv is None:
            return comb[: k + 1]
        inv = pow(w[piv], -1, p)
        pivots.append((piv, [x * inv % p for x in w], [x * inv % p for x in comb]))
        v = apply(v)
    raise AssertionError("Krylov sequence failed to terminate")


def zero_dim_data(I, seed: int, budget: Budget | None = None) -> dict:
    """Length and distinct point count of a zero-dimensional projective scheme.

    ``I`` is an :class:`IdealData` or an already computed Gröbner basis.
    """
    from .core import _gb, groebner_basis

    G = _gb(I, budget)
    ring = G.ring
    p = ring.field.p
    if not p:
        raise ValueError("point counting needs a prime field")
    hd = hilbert_from_lead(G.lead_ideal, ring.nvars, ring.weights)
    if hd.dimension != 0:
        raise ValueError(f"scheme has dimension {hd.dimension}, expected 0")
    ell = random_form(ring, 1, derive_seed(seed, 1))
    chart = IdealData(tuple(G.basis) + (ell - 1,), ring)
    A = groebner_basis(chart, budget=budget)
    if A.is_unit:
        # the hyperplane met a point at infinity of every chart: impossible for
        # a generic l, so the seed is degenerate
        raise SeedDisagreement("hyperplane chart is empty")
    basis = _standard_monomials(A.lead_ideal, ring.nvars)
    n = len(basis)
    index = {e: i for i, e in enumerate(basis)}
    u = random_form(ring, 1, derive_seed(seed, 2))
    columns = []
    for e in basis:
        mono = Polynomial(ring, {e: 1})
        nf = A.normal_form(u * mono)
        columns.append([(index[m], c) for m, c in nf.terms.items()])
    start = [derive_seed(seed, 3, i) % p for i in range(n)]
    mp = _krylov_minpoly(columns, n, p, start)
    desc = [int(c) for c in reversed(mp)]
    sqf = gf_sqf_part(desc, p, ZZ)
    return {"length": n, "hilbert_degree": hd.degree, "minpoly_degree": len(mp) - 1,
            "distinct": len(sqf) - 1}


def distinct_point_count(I, seed: int = 0, budget: Budget | None = None) -> int:
    """Number of distinct points; two derived seeds must agree."""
    from .core import _gb

    G = _gb(I, budget)
    a = zero_dim_data(G, derive_seed(seed, 101), budget)["distinct"]
    b = zero_dim_data(G, derive_seed(seed, 202), budget)["distinct"]
    if a != b:
        raise SeedDisagreement(f"seeds disagree: {a} vs {b}")
    return a
