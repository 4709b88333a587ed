"""Buchberger's algorithm with the sugar strategy and Gebauer-Möller pair criteria."""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .packing import Packer


class GroebnerCapExceeded(RuntimeError):
    """A configured degree, pair or time cap was hit; there is no partial answer."""

    def __init__(self, reason: str, stats: dict):
        super().__init__(reason)
        self.reason = reason
        self.stats = stats


@dataclass
class Budget:
    max_degree: int | None = None
    max_pairs: int | None = None
    seconds: float | None = None
    # absolute time.perf_counter() value shared by every run using this budget
    deadline: float | None = None

    @classmethod
    def until(cls, seconds: float, **kw) -> "Budget":
        return cls(deadline=time.perf_counter() + seconds, **kw)


@dataclass
class _Elem:
    lt: int
    E: int
    sup: int
    tail: list
    sugar: int
    deg: int

    def terms(self) -> dict:
        d = {self.lt: 1}
        d.update(self.tail)
        return d


@dataclass
class EngineStats:
    pairs_created: int = 0
    pairs_reduced: int = 0
    zero_reductions: int = 0
    gm_discarded: int = 0
    max_sugar: int = 0
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def normal_form(f: dict, reducers: list, pk: Packer, p: int, full: bool = True) -> dict:
    """Reduction of ``f`` (key -> coeff) by monic ``reducers``.

    With ``full=False`` only leading terms are reduced: the result is returned
    as soon as its leading term is irreducible.
    """
    f = dict(f)
    heap = [-k for k in f]
    heapq.heapify(heap)
    out = {}
    guard = pk.guard
    comp = pk.complement
    m_all = pk.m_all
    low = pk.low_mask
    pop = heapq.heappop
    push = heapq.heappush
    while heap:
        k = -pop(heap)
        c = f.pop(k, None)
        if c is None:
            continue
        E = m_all - (k & low) if comp else k
        for r in reducers:
            if ((E + guard - r.E) & guard) == guard:
                break
        else:
            out[k] = c
            if not full:
                out.update(f)
                return out
            continue
        q = k - r.lt
        get = f.get
        if p:
            for kg, cg in r.tail:
                kk = kg + q
                old = get(kk)
                if old is None:
                    f[kk] = (-c * cg) % p
                    push(heap, -kk)
                else:
                    v = (old - c * cg) % p
                    if v:
                        f[kk] = v
                    else:
                        del f[kk]
        else:
            for kg, cg in r.tail:
                kk = kg + q
                old = get(kk)
                if old is None:
                    f[kk] = -c * cg
                    push(heap, -kk)
                else:
                    v = old - c * cg
                    if v:
                        f[kk] = v
                    else:
                        del f[kk]
    return out


def _make_elem(f: dict, pk: Packer, p: int, sugar: int) -> _Elem:
    lt = max(f)
    lc = f[lt]
    if p:
        inv = pow(lc, -1, p)
        tail = sorted(((k, c * inv % p) for k, c in f.items() if k != lt), reverse=True)
    else:
        inv = 1 / Fraction(lc)
        tail = sorted(((k, c * inv) for k, c in f.items() if k != lt), reverse=True)
    E = pk.exps_of(lt)
    return _Elem(lt, E, pk.support(E), tail, sugar, pk.wdeg(lt))


def buchberger(gens: list, pk: Packer, p: int, budget: Budget | None = None) -> tuple:
    """Reduced Gröbner basis of packed polynomials ``gens`` (key -> coeff dicts).

    Returns (list of monic dicts sorted by leading term, EngineStats).
    """
    budget = budget or Budget()
    stats = EngineStats()
    t0 = time.perf_counter()
    elems: list = []
    G: list = []
    pairs: dict = {}
    queue: list = []
    seq = itertools.count()

    def sugar_of(f):
        return max(pk.wdeg(k) for k in f)

    for g in gens:
        if g:
            s = sugar_of(g)
            heapq.heappush(queue, (s, max(g), next(seq), "gen", g))

    def add_pair(i, j):
        a, b = elems[i], elems[j]
        L = pk.lcm(a.lt, b.lt)
        dl = pk.wdeg(L)
        s = max(a.sugar - a.deg, b.sugar - b.deg) + dl
        pid = next(seq)
        pairs[pid] = (i, j, L, pk.exps_of(L))
        stats.pairs_created += 1
        heapq.heappush(queue, (s, L, pid, "pair", None))

    def update(h):
        eh = elems[h]
        cand = []
        for g in G:
            eg = elems[g]
            L = pk.lcm(eh.lt, eg.lt)
            cand.append((g, L, pk.exps_of(L), not (eh.sup & eg.sup)))
        kept = []
        for idx, (g, L, LE, cop) in enumerate(cand):
            if cop:
                kept.append((g, L, LE, cop))
                continue
            dominated = False
            for g2, L2, LE2, _ in itertools.chain(cand[idx + 1:], kept):
                if pk.divides(LE2, LE):
                    dominated = True
                    break
            if not dominated:
                kept.append((g, L, LE, cop))
            else:
                stats.gm_discarded += 1
        # old pairs killed by the chain criterion
        for pid, (i, j, L, LE) in list(pairs.items()):
            if pk.divides(eh.E, LE):
                Lih = pk.lcm(elems[i].lt, eh.lt)
                Ljh = pk.lcm(elems[j].lt, eh.lt)
                if Lih != L and Ljh != L:
                    del pairs[pid]
                    stats.gm_discarded += 1
        for g, L, LE, cop in kept:
            if cop:
                stats.gm_discarded += 1
                continue
            add_pair(g, h)
        G[:] = [g for g in G if not pk.divides(eh.E, elems[g].E)]
        G.append(h)

    def check_budget(sugar):
        if budget.max_degree is not None and sugar > budget.max_degree:
            raise GroebnerCapExceeded(f"degree cap {budget.max_degree} exceeded", stats.as_dict())
        if budget.max_pairs is not None and stats.pairs_reduced > budget.max_pairs:
            raise GroebnerCapExceeded(f"pair cap {budget.max_pairs} exceeded", stats.as_dict())
        if budget.seconds is not None and time.perf_counter() - t0 > budget.seconds:
            raise GroebnerCapExceeded(f"time cap {budget.seconds}s exceeded", stats.as_dict())
        if budget.deadline is not None and time.perf_counter() > budget.deadline:
            raise GroebnerCapExceeded("step deadline passed", stats.as_dict())

    while queue:
        sugar, L, pid, kind, payload = heapq.heappop(queue)
        if kind == "pair":
            if pid not in pairs:
                continue
            i, j, L, LE = pairs.pop(pid)
            a, b = elems[i], elems[j]
            qa = L - a.lt
            qb = L - b.lt
            s = {}
            for k, c in a.tail:
                s[k + qa] = c
            for k, c in b.tail:
                kk = k + qb
                v = s.get(kk, 0) - c
                if p:
                    v %= p
                if v:
                    s[kk] = v
                else:
                    s.pop(kk, None)
            f = s
        else:
            f = payload
        check_budget(sugar)
        stats.pairs_reduced += 1
        stats.max_sugar = max(stats.max_sugar, sugar)
        h = normal_form(f, [elems[g] for g in G], pk, p) if f else {}
        if not h:
            stats.zero_reductions += 1
            continue
        elems.append(_make_elem(h, pk, p, sugar))
        update(len(elems) - 1)

    basis = sorted((elems[g] for g in G), key=lambda e: e.lt)
    reduced = []
    for idx, e in enumerate(basis):
        others = [o for o in basis if o is not e]
        tail = normal_form(dict(e.tail), others, pk, p)
        d = {e.lt: 1 if p else Fraction(1)}
        d.update(tail)
        reduced.append(d)
    stats.seconds = time.perf_counter() - t0
    return reduced, stats
