"""Hilbert series numerators of monomial ideals (pivot recursion)."""

from __future__ import annotations

from dataclasses import dataclass


def _minimalize(gens: list) -> list:
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _polymul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _polyadd(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _trim(a: list) -> list:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def hilbert_numerator(gens, weights) -> list:
    """Coefficients (ascending powers of t) of N(t) with HS = N(t) / prod(1 - t^w_i)."""
    weights = tuple(weights)

    def deg(m):
        return sum(w * x for w, x in zip(weights, m))

    def rec(gs: list) -> list:
        gs = _minimalize(gs)
        if not gs:
            return [1]
        if any(sum(g) == 0 for g in gs):
            return [0]
        supports = [frozenset(i for i, x in enumerate(g) if x) for g in gs]
        pairwise_coprime = True
        seen = set()
        for s in supports:
            if seen & s:
                pairwise_coprime = False
                break
            seen |= s
        if pairwise_coprime:
            out = [1]
            for g in gs:
                d = deg(g)
                f = [0] * (d + 1)
                f[0] = 1
                f[d] -= 1
                out = _polymul(out, f)
            return out
        counts = [0] * len(weights)
        for s in supports:
            for i in s:
                counts[i] += 1
        var = max(range(len(weights)), key=lambda i: counts[i])
        # the pivot x^e must lie outside the ideal: stay below any pure power of x
        pure = min((g[var] for g in gs if sum(g) == g[var]), default=None)
        exps = sorted(g[var] for g in gs if g[var] and (pure is None or g[var] < pure))
        e = exps[(len(exps) - 1) // 2]
        pivot = tuple(e if i == var else 0 for i in range(len(weights)))
        with_pivot = rec(gs + [pivot])
        colon = [tuple(max(x - e, 0) if i == var else x for i, x in enumerate(g)) for g in gs]
        shifted = [0] * (deg(pivot)) + rec(colon)
        return _trim(_polyadd(with_pivot, shifted))

    return _trim(rec([tuple(g) for g in gens]))


@dataclass(frozen=True)
class HilbertData:
    """Projective dimension (-1 = empty) and degree; degree is None when empty."""

    dimension: int
    degree: int | None
    hilbert_numerator: tuple
    nvars: int

    @property
    def is_empty(self) -> bool:
        return self.dimension < 0

    def as_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "degree": self.degree,
            "hilbert_numerator": list(self.hilbert_numerator),
        }


def krull_dimension(gens, nvars: int) -> int:
    """Largest set of variables containing no generator's support (-1 for the unit ideal)."""
    gens = _minimalize([tuple(g) for g in gens])
    if any(sum(g) == 0 for g in gens):
        return -1
    supports = [frozenset(i for i, x in enumerate(g) if x) for g in gens]
    best = 0
    # branch on a generator: its support must meet the complement of the free set
    def rec(free_allowed: frozenset, remaining: list):
        nonlocal best
        if not remaining:
            best = max(best, len(free_allowed))
            return
        if len(free_allowed) <= best:
            return
        s = remaining[0]
        for v in s:
            if v in free_allowed:
                nf = free_allowed - {v}
                rec(nf, [t for t in remaining[1:] if t <= nf])
    rec(frozenset(range(nvars)), [s for s in supports])
    return best


def hilbert_from_lead(lead, nvars: int, weights=None) -> HilbertData:
    weights = tuple(weights) if weights else (1,) * nvars
    num = hilbert_numerator(lead, weights)
    if num == [0]:
        return HilbertData(-1, None, (0,), nvars)
    if any(w != 1 for w in weights):
        kd = krull_dimension(lead, nvars)
        return HilbertData(kd - 1, None, tuple(num), nvars)
    # divide by (1 - t) while N(1) == 0: synthetic division
    k = list(num)
    c = 0
    while sum(k) == 0:
        q = []
        acc = 0
        for a in k[:-1]:
            acc += a
            q.append(acc)
        k = q or [0]
        c += 1
    dim = nvars - c
    return HilbertData(dim - 1, sum(k) if dim > 0 else None, tuple(num), nvars)
