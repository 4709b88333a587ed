"""Structured matrices of linear forms and their minor and Pfaffian ideals.

Every builder returns a :class:`FormMatrix` whose symmetry tag is checked
entrywise when the matrix is created.  Entries that a pattern forces to be
equal are the same ``Polynomial`` object, not copies.
"""

from __future__ import annotations

import itertools
import json
from math import comb as comb_n
from dataclasses import dataclass, field
from typing import Sequence

from .ideal import IdealData
from .polycore import (
    CoeffField,
    FieldMatrix,
    Polynomial,
    PolyRing,
    derive_seed,
    kernel_and_pluecker,
    minor_table,
    normalize_projective,
    random_form,
)

__all__ = [
    "DSYM_OPERATIONS",
    "DSYM_REFERENCE",
    "FormMatrix",
    "IdealData",
    "StructureError",
    "apply_dsym_operation",
    "border_extra_symmetric",
    "border_symmetric",
    "build_double_symmetric",
    "build_extra_symmetric",
    "build_generic",
    "build_partially_symmetric",
    "build_symmetric",
    "double_symmetric_blocks",
    "dsym_operation_report",
    "from_blocks",
    "is_double_symmetric",
    "local_parametrization",
    "local_parametrization_residues",
    "minor_ideal",
    "persym_transpose",
    "pfaffian",
    "pfaffian_ideal",
    "random_rank2",
    "rotate90",
    "segre_pluecker_check",
    "split_extra_symmetric",
    "sym_skew_split",
]

TAGS = (
    "generic",
    "symmetric",
    "partially-symmetric",
    "skew",
    "extra-symmetric",
    "double-symmetric",
    "bordered",
)


class StructureError(ValueError):
    """A matrix does not have the entry pattern its tag promises."""


# index sets of the 4x6 double-symmetric pattern: entry (i, j) holds l_k
DOUBLE_SYMMETRIC_4x6 = (
    (1, 2, 3, 4, 5, 8),
    (2, 6, 4, 7, 8, 10),
    (3, 4, 5, 8, 9, 11),
    (4, 7, 8, 10, 11, 12),
)


def _check_degree_one(entries) -> None:
    for row in entries:
        for e in row:
            if e and (e.degree() != 1 or not e.is_homogeneous()):
                raise StructureError(f"entry {e!r} is not a linear form")


def _is_symmetric(a) -> bool:
    n = len(a)
    return all(len(r) == n for r in a) and all(a[i][j] == a[j][i] for i in range(n) for j in range(i))


def _is_skew(a) -> bool:
    n = len(a)
    if any(len(r) != n for r in a):
        return False
    return all(not a[i][i] for i in range(n)) and all(
        a[i][j] == -a[j][i] for i in range(n) for j in range(i)
    )


def _is_persymmetric(a) -> bool:
    n = len(a)
    return all(a[i][j] == a[n - 1 - j][n - 1 - i] for i in range(n) for j in range(n))


def _pattern_ok(entries, pattern) -> bool:
    seen = {}
    for i, row in enumerate(entries):
        for j, e in enumerate(row):
            k = pattern[i][j]
            if k in seen and seen[k] != e:
                return False
            seen.setdefault(k, e)
    return True


def _verify(entries, tag: str) -> None:
    if tag == "symmetric" and not _is_symmetric(entries):
        raise StructureError("matrix is not symmetric")
    if tag == "skew" and not _is_skew(entries):
        raise StructureError("matrix is not skew-symmetric")
    if tag == "extra-symmetric":
        if not _is_skew(entries):
            raise StructureError("extra-symmetric matrix is not skew-symmetric")
        if not _is_persymmetric(entries):
            raise StructureError("extra-symmetric matrix is not symmetric about the anti-diagonal")
    if tag == "partially-symmetric":
        rows = len(entries)
        if not _is_symmetric([r[:rows] for r in entries]):
            raise StructureError("square part of a partially symmetric matrix is not symmetric")
    if tag == "double-symmetric":
        shape = (len(entries), len(entries[0]))
        if shape not in ((4, 6), (3, 5)):
            raise StructureError(f"no double-symmetric pattern of shape {shape}")
        if not _pattern_ok(entries, DOUBLE_SYMMETRIC_4x6):
            raise StructureError("double-symmetric repetition pattern violated")


@dataclass(frozen=True, eq=False)
class FormMatrix:
    entries: tuple
    ring: PolyRing
    tag: str = "generic"
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        entries = tuple(tuple(r) for r in self.entries)
        if not entries or not entries[0] or len({len(r) for r in entries}) != 1:
            raise StructureError("entries must form a nonempty rectangle")
        if self.tag not in TAGS:
            raise ValueError(f"unknown symmetry tag {self.tag!r}")
        for row in entries:
            for e in row:
                if e.ring != self.ring:
                    raise StructureError("entry outside the matrix ring")
        _check_degree_one(entries)
        _verify(entries, self.tag)
        object.__setattr__(self, "entries", entries)

    @property
    def shape(self) -> tuple:
        return len(self.entries), len(self.entries[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list:
        return [list(r) for r in self.entries]

    def transpose(self, tag: str | None = None) -> FormMatrix:
        t = tuple(zip(*self.entries))
        return FormMatrix(t, self.ring, tag or _transpose_tag(self.tag), {"from": "transpose"})

    def submatrix(self, rows, cols, tag: str = "generic") -> FormMatrix:
        return FormMatrix(
            tuple(tuple(self.entries[i][j] for j in cols) for i in rows), self.ring, tag,
            {"from": "submatrix", "rows": list(rows), "cols": list(cols)},
        )

    def delete_row(self, i: int, tag: str | None = None) -> FormMatrix:
        m, n = self.shape
        i %= m
        if tag is None:
            tag = "partially-symmetric" if self.tag == "symmetric" and i == m - 1 else "generic"
        return self.submatrix([k for k in range(m) if k != i], range(n), tag)

    def delete_col(self, j: int, tag: str = "generic") -> FormMatrix:
        m, n = self.shape
        j %= n
        return self.submatrix(range(m), [k for k in range(n) if k != j], tag)

    def map(self, fn, tag: str = "generic") -> FormMatrix:
        return FormMatrix(tuple(tuple(fn(e) for e in r) for r in self.entries), self.ring, tag)

    def __add__(self, other: FormMatrix) -> FormMatrix:
        if self.shape != other.shape:
            raise StructureError("shape mismatch")
        return FormMatrix(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
            self.ring,
        )

    def specialize(self, point: Sequence) -> FieldMatrix:
        fld = self.ring.field
        return FieldMatrix.of([[e.evaluate(point) for e in r] for r in self.entries], fld)

    def to_json(self) -> dict:
        fld = self.ring.field
        return {
            "shape": list(self.shape),
            "symmetry_tag": self.tag,
            "provenance": self.provenance,
            "ring": self.ring.describe(),
            "entries": [
                [
                    {",".join(map(str, e)): (fld.to_int(c) if fld.p else str(c))
                     for e, c in sorted(p.terms.items())}
                    for p in r
                ]
                for r in self.entries
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _transpose_tag(tag: str) -> str:
    return tag if tag in ("symmetric", "generic") else "generic"


def from_json(data: dict, ring: PolyRing) -> FormMatrix:
    """Rebuild a matrix from :meth:`FormMatrix.to_json` output."""
    fld = ring.field
    entries = [
        [Polynomial(ring, {tuple(int(x) for x in k.split(",")): fld(v) for k, v in cell.items()})
         for cell in row]
        for row in data["entries"]
    ]
    return FormMatrix(tuple(map(tuple, entries)), ring, data["symmetry_tag"], data.get("provenance", {}))


# --------------------------------------------------------------------------
# builders


def _linear(ring: PolyRing, seed: int, *labels) -> Polynomial:
    return random_form(ring, 1, derive_seed(seed, *labels))


def build_generic(rows: int, cols: int, ring: PolyRing, seed: int) -> FormMatrix:
    entries = tuple(tuple(_linear(ring, seed, i, j) for j in range(cols)) for i in range(rows))
    return FormMatrix(entries, ring, "generic", {"recipe": "generic", "seed": seed, "shape": [rows, cols]})


def build_symmetric(n: int, ring: PolyRing, seed: int) -> FormMatrix:
    upper = {(i, j): _linear(ring, seed, i, j) for i in range(n) for j in range(i, n)}
    entries = tuple(tuple(upper[min(i, j), max(i, j)] for j in range(n)) for i in range(n))
    return FormMatrix(entries, ring, "symmetric", {"recipe": "symmetric", "seed": seed, "n": n})


def border_symmetric(M: FormMatrix, corner: Polynomial, border: Sequence[Polynomial]) -> FormMatrix:
    """[[corner, border], [border^t, M]] for a symmetric M."""
    n = M.shape[0]
    if M.tag != "symmetric" or len(border) != n:
        raise StructureError("border_symmetric needs a symmetric matrix and one form per column")
    top = (corner,) + tuple(border)
    rows = [top] + [(border[i],) + M.entries[i] for i in range(n)]
    return FormMatrix(tuple(rows), M.ring, "symmetric", {"recipe": "border_symmetric", "base": M.provenance})


def build_partially_symmetric(n: int, ring: PolyRing, seed: int, border: tuple | None = None,
                              base: FormMatrix | None = None) -> FormMatrix:
    """Symmetric n x n matrix (optionally bordered) with its last row removed.

    ``border = (corner, forms)`` places the symmetric ``base`` (or a fresh
    symmetric matrix of size n) in the lower right of a bordered symmetric
    matrix first.
    """
    sym = base if base is not None else build_symmetric(n, ring, seed)
    if border is not None:
        corner, forms = border
        sym = border_symmetric(sym, corner, forms)
    P = sym.delete_row(-1)
    return FormMatrix(P.entries, ring, "partially-symmetric",
                      {"recipe": "partially_symmetric", "seed": seed, "n": sym.shape[0],
                       "bordered": border is not None})


def sym_skew_split(M: FormMatrix) -> tuple:
    """(S, A) with S = (M + M^t)/2 symmetric, A = (M - M^t)/2 skew."""
    m, n = M.shape
    if m != n:
        raise StructureError("sym_skew_split needs a square matrix")
    fld = M.ring.field
    if fld.p == 2:
        raise ValueError("characteristic 2")
    half = fld.inv(fld(2))
    e = M.entries
    S = tuple(tuple((e[i][j] + e[j][i]) * half if i != j else e[i][i] for j in range(n)) for i in range(n))
    A = tuple(tuple((e[i][j] - e[j][i]) * half for j in range(n)) for i in range(n))
    # share the mirrored entries
    S = tuple(tuple(S[min(i, j)][max(i, j)] for j in range(n)) for i in range(n))
    return (FormMatrix(S, M.ring, "symmetric", {"from": "sym_part"}),
            FormMatrix(A, M.ring, "skew", {"from": "skew_part"}))


def _rotate(entries, clockwise: bool = True) -> tuple:
    m, n = len(entries), len(entries[0])
    if clockwise:
        # 1-based (i, j) -> (j, m + 1 - i)
        return tuple(tuple(entries[m - 1 - k][j] for k in range(m)) for j in range(n))
    return tuple(tuple(entries[k][n - 1 - j] for k in range(m)) for j in range(n))


def rotate90(M: FormMatrix, clockwise: bool = True) -> FormMatrix:
    """Quarter turn: entry (i, j) of an m x n matrix goes to (j, m + 1 - i), 1-based."""
    return FormMatrix(_rotate(M.entries, clockwise), M.ring, "generic", {"from": "rotate90"})


def persym_transpose(M: FormMatrix) -> FormMatrix:
    """Reflection in the anti-diagonal (two quarter turns, then transpose)."""
    if M.shape[0] != M.shape[1]:
        raise StructureError("persym_transpose needs a square matrix")
    half = _rotate(_rotate(M.entries))
    tag = {"skew": "skew", "symmetric": "symmetric"}.get(M.tag, "generic")
    return FormMatrix(tuple(zip(*half)), M.ring, tag, {"from": "persym_transpose"})


def build_extra_symmetric(A: FormMatrix, S: FormMatrix, clockwise: bool = True) -> FormMatrix:
    """6x6 matrix [[A, S^r], [-(S^r)^t, persym(A)]], skew and persymmetric."""
    if A.shape != (3, 3) or S.shape != (3, 3):
        raise StructureError("blocks must be 3x3")
    if not _is_skew(A.entries) or not _is_symmetric(S.entries):
        raise StructureError("need A skew and S symmetric")
    Sr = _rotate(S.entries, clockwise)
    Ap = persym_transpose(A).entries
    rows = []
    for i in range(3):
        rows.append(A.entries[i] + Sr[i])
    for i in range(3):
        rows.append(tuple(-Sr[j][i] for j in range(3)) + Ap[i])
    return FormMatrix(tuple(rows), A.ring, "extra-symmetric",
                      {"recipe": "extra_symmetric", "rotation": "clockwise" if clockwise else "counterclockwise"})


def border_extra_symmetric(B: FormMatrix, t: Sequence[Polynomial]) -> tuple:
    """Border a 6x6 extra-symmetric B by t1..t7 to an 8x8 extra-symmetric C.

    Returns (C, C1) with C1 the skew 7x7 matrix obtained by dropping the last
    row and column of C.
    """
    if B.tag != "extra-symmetric" or B.shape != (6, 6):
        raise StructureError("need a 6x6 extra-symmetric matrix")
    if len(t) != 7:
        raise StructureError("need exactly seven border forms")
    zero = B.ring.zero()
    t = list(t)
    top = (zero,) + tuple(t[:6]) + (t[6],)
    mid = [(-t[i],) + B.entries[i] + (t[5 - i],) for i in range(6)]
    bottom = (-t[6],) + tuple(-t[5 - i] for i in range(6)) + (zero,)
    C = FormMatrix(tuple([top] + mid + [bottom]), B.ring, "extra-symmetric", {"recipe": "border_extra_symmetric"})
    C1 = C.submatrix(range(7), range(7), "skew")
    return C, C1


def split_extra_symmetric(C: FormMatrix, clockwise: bool = True) -> tuple:
    """Inverse of the block description: (A~, S~) with C = [[A~, S~^r], ...]."""
    n = C.shape[0]
    if C.tag != "extra-symmetric" or n % 2:
        raise StructureError("need an even extra-symmetric matrix")
    k = n // 2
    At = tuple(tuple(C.entries[i][j] for j in range(k)) for i in range(k))
    Sr = tuple(tuple(C.entries[i][j] for j in range(k, n)) for i in range(k))
    St = _rotate(_rotate(_rotate(Sr, clockwise), clockwise), clockwise)
    return (FormMatrix(At, C.ring, "skew", {"from": "split_extra_symmetric"}),
            FormMatrix(St, C.ring, "symmetric", {"from": "split_extra_symmetric"}))


def build_double_symmetric(l, size: str = "4x6", ring: PolyRing | None = None) -> FormMatrix:
    """Double-symmetric matrix on the forms l1..l12 (4x6) or l1..l9 (3x5).

    ``l`` is a sequence of forms, or an integer seed for random forms in ``ring``.
    """
    shape = {"4x6": (4, 6), "3x5": (3, 5)}.get(size)
    if shape is None:
        raise StructureError(f"unknown double-symmetric size {size!r}")
    need = 12 if shape == (4, 6) else 9
    if isinstance(l, int):
        if ring is None:
            raise ValueError("ring required for seeded forms")
        seed = l
        l = [_linear(ring, seed, k) for k in range(need)]
        prov = {"recipe": "double_symmetric", "seed": seed, "size": size}
    else:
        prov = {"recipe": "double_symmetric", "size": size}
    l = list(l)
    if len(l) < need:
        raise StructureError(f"need {need} forms, got {len(l)}")
    rows, cols = shape
    entries = tuple(tuple(l[DOUBLE_SYMMETRIC_4x6[i][j] - 1] for j in range(cols)) for i in range(rows))
    return FormMatrix(entries, l[0].ring, "double-symmetric", prov)


def double_symmetric_blocks(Q) -> tuple:
    """(A, B, C, D) 2x2 blocks of a 4x6 matrix laid out as [[A, B, C], [B, C, D]]."""
    e = Q.entries if isinstance(Q, FormMatrix) else Q

    def blk(r, c):
        return ((e[r][c], e[r][c + 1]), (e[r + 1][c], e[r + 1][c + 1]))

    return blk(0, 0), blk(0, 2), blk(0, 4), blk(2, 4)


def from_blocks(A, B, C, D) -> tuple:
    top = [A[i] + B[i] + C[i] for i in range(2)]
    bot = [B[i] + C[i] + D[i] for i in range(2)]
    return tuple(tuple(r) for r in top + bot)


def is_double_symmetric(entries) -> bool:
    """Blocks in [[A, B, C], [B, C, D]] layout, each a symmetric 2x2 matrix."""
    e = entries
    if len(e) != 4 or any(len(r) != 6 for r in e):
        return False
    A, B, C, D = double_symmetric_blocks(e)
    rebuilt = from_blocks(A, B, C, D)
    if any(rebuilt[i][j] != e[i][j] for i in range(4) for j in range(6)):
        return False
    return all(X[0][1] == X[1][0] for X in (A, B, C, D))


# --------------------------------------------------------------------------
# Pfaffians and ideals


def _pf_table(a, rows: tuple, cache: dict):
    if rows in cache:
        return cache[rows]
    if not rows:
        val = None  # stands for the constant 1
    else:
        i0 = rows[0]
        val = 0
        first = True
        for pos in range(1, len(rows)):
            j = rows[pos]
            entry = a[i0][j]
            if not entry:
                continue
            rest = rows[1:pos] + rows[pos + 1:]
            sub = _pf_table(a, rest, cache)
            if sub is not None and not sub:
                continue
            t = entry if sub is None else entry * sub
            if pos % 2 == 0:
                t = -t
            val = t if first else val + t
            first = False
        if first:
            val = a[i0][rows[1]].ring.zero()
    cache[rows] = val
    return val


def pfaffian(M, rows: Sequence[int] | None = None) -> Polynomial:
    """Pfaffian of the principal submatrix on ``rows`` (first-row expansion).

    Normalized so that pf([[0, a], [-a, 0]]) = a.
    """
    a = M.entries if isinstance(M, FormMatrix) else M
    n = len(a)
    if not _is_skew(a):
        raise StructureError("Pfaffian of a non-skew matrix")
    rows = tuple(range(n)) if rows is None else tuple(sorted(rows))
    if len(rows) % 2:
        raise ValueError("Pfaffian needs an even number of rows")
    ring = a[0][0].ring
    v = _pf_table(a, rows, {})
    return ring.one() if v is None else v


def pfaffian_ideal(M: FormMatrix, size: int, label: str = "") -> IdealData:
    """All principal size x size Pfaffians (size even)."""
    n = M.shape[0]
    if size % 2 or not 2 <= size <= n:
        raise ValueError(f"Pfaffian size {size} out of range for {n}x{n}")
    if not _is_skew(M.entries):
        raise StructureError("Pfaffian ideal of a non-skew matrix")
    cache: dict = {}
    gens = []
    for rows in itertools.combinations(range(n), size):
        gens.append(_pf_table(M.entries, rows, cache))
    return IdealData(tuple(gens), M.ring, label or f"Pf{size}")


def minor_ideal(M: FormMatrix, k: int, label: str = "") -> IdealData:
    m, n = M.shape
    if not 1 <= k <= min(m, n):
        raise ValueError(f"minor size {k} out of range for {m}x{n}")
    return IdealData(tuple(minor_table(M.entries, k).values()), M.ring, label or f"I{k}")


# --------------------------------------------------------------------------
# Segre / Plücker


def _perm_sign(seq) -> int:
    s = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def segre_pluecker_check(M: FieldMatrix) -> bool:
    """Check that the 2x2 minors of a rank-2 matrix are the Segre product of
    the Plücker points of its kernel and cokernel.

    Index correspondence: a minor on rows I and columns J is compared with
    sign(I, I^c) sign(J, J^c) q[I^c] p[J^c], where p, q are the Plücker
    vectors (lexicographic subsets) of ker M and ker M^t.
    """
    m, n = M.shape
    if m != n:
        raise ValueError("square matrix required")
    if M.rank() != 2:
        raise ValueError("matrix must have rank exactly 2")
    fld = M.field
    _, p = kernel_and_pluecker(M)
    _, q = kernel_and_pluecker(M.transpose())
    k = n - 2
    subsets = list(itertools.combinations(range(n), k))
    pidx = {s: i for i, s in enumerate(subsets)}
    pairs = list(itertools.combinations(range(n), 2))
    minors = []
    segre = []
    rows = M.rows()
    for I in pairs:
        Ic = tuple(x for x in range(n) if x not in I)
        sI = _perm_sign(I + Ic)
        for J in pairs:
            Jc = tuple(x for x in range(n) if x not in J)
            sJ = _perm_sign(J + Jc)
            a, b = I
            c, d = J
            minors.append(fld.sub(fld.mul(rows[a][c], rows[b][d]), fld.mul(rows[a][d], rows[b][c])))
            segre.append(fld(sI * sJ * fld.to_int(fld.mul(q[pidx[Ic]], p[pidx[Jc]]))))
    if not any(minors) or not any(segre):
        return False
    return normalize_projective(minors, fld) == normalize_projective(segre, fld)


def random_rank2(n: int, fld: CoeffField, seed: int) -> FieldMatrix:
    """Product of seeded n x 2 and 2 x n matrices, retried until the rank is 2."""
    from .polycore import SplitMix64

    rng = SplitMix64(seed)
    p = fld.p
    while True:
        U = [[rng.below(p) for _ in range(2)] for _ in range(n)]
        V = [[rng.below(p) for _ in range(n)] for _ in range(2)]
        rows = [[(U[i][0] * V[0][j] + U[i][1] * V[1][j]) % p for j in range(n)] for i in range(n)]
        M = FieldMatrix.of(rows, fld)
        if M.rank() == 2:
            return M


# --------------------------------------------------------------------------
# Operations on 4x6 double-symmetric matrices

DSYM_OPERATIONS = ("shear", "central", "block", "swap")
# rank preserving shear of the block Hankel sequence, checked alongside
DSYM_REFERENCE = ("binomial",)


def _sym_op(X, r, s, t):
    (a, b), (_, c) = X
    return ((a, r * b + t * a), (b + s * a, r * c + s * b + s * s * a))


def apply_dsym_operation(Q, op: str, params: Sequence = ()) -> tuple:
    """Image of a 4x6 double-symmetric matrix under one of :data:`DSYM_OPERATIONS`.

    shear (param s) maps the blocks as
    (A, B, C, D) -> (A, sA+B, (s^2+s)A+sB+sC, 2(s^3+s^2)A+(2s^2+s)B+2sC);
    central reverses rows and columns; block (params r, s, t) acts on every
    symmetric block by [[a, b], [b, c]] -> [[a, rb+ta], [b+sa, rc+sb+s^2 a]];
    swap exchanges rows 1,2 and 3,4 together with columns 1,2, 3,4 and 5,6;
    binomial (param s) maps the blocks to (A, sA+B, s^2A+2sB+C, s^3A+3s^2B+3sC+D).
    The result is a plain entry tuple; it need not be double-symmetric.
    """
    e = Q.entries if isinstance(Q, FormMatrix) else tuple(tuple(r) for r in Q)
    if op == "shear":
        (s,) = params
        A, B, C, D = double_symmetric_blocks(e)

        def comb(*pairs):
            return tuple(tuple(sum(k * X[i][j] for k, X in pairs) for j in range(2)) for i in range(2))

        blocks = (A, comb((s, A), (1, B)), comb((s * s + s, A), (s, B), (s, C)),
                  comb((2 * (s ** 3 + s * s), A), (2 * s * s + s, B), (2 * s, C)))
        return from_blocks(*blocks)
    if op == "binomial":
        (s,) = params
        seq = double_symmetric_blocks(e)
        blocks = []
        for k in range(4):
            blocks.append(tuple(tuple(sum(comb_n(k, i) * s ** (k - i) * seq[i][a][b] for i in range(k + 1))
                                      for b in range(2)) for a in range(2)))
        return from_blocks(*blocks)
    if op == "central":
        return tuple(tuple(reversed(row)) for row in reversed(e))
    if op == "block":
        r, s, t = params
        A, B, C, D = (_sym_op(X, r, s, t) for X in double_symmetric_blocks(e))
        return from_blocks(A, B, C, D)
    if op == "swap":
        rows = (1, 0, 3, 2)
        cols = (1, 0, 3, 2, 5, 4)
        return tuple(tuple(e[i][j] for j in cols) for i in rows)
    raise ValueError(f"unknown operation {op!r}")


def dsym_operation_report(ring: PolyRing, seed: int, budget=None) -> dict:
    """Check each operation on the universal double-symmetric matrix.

    ``ring`` must have at least 12 variables; its first 12 are l1..l12.  For
    every operation, with seeded parameters, reports whether the image keeps
    the double-symmetric pattern and whether its (k+1)-minors stay in the ideal
    of the rank <= k locus for k = 1, 2.
    """
    from .groebner import groebner_basis, ideal_containment

    Q = build_double_symmetric(ring.gens[:12])
    loci = {k: groebner_basis(minor_ideal(Q, k + 1), budget=budget) for k in (1, 2)}
    fld = ring.field
    out = {}
    for n, op in enumerate(DSYM_OPERATIONS + DSYM_REFERENCE):
        nparams = {"shear": 1, "binomial": 1, "block": 3}.get(op, 0)
        params = [fld(derive_seed(seed, n, i) % (fld.p or 1_000_003)) for i in range(nparams)]
        img = apply_dsym_operation(Q, op, params)
        row = {"pattern": is_double_symmetric(img), "params": [int(x) for x in params]}
        for k, Gk in loci.items():
            minors = IdealData(tuple(minor_table(img, k + 1).values()), ring)
            row[f"rank{k}"] = ideal_containment(minors, Gk)
        out[op] = row
    return out


def local_parametrization(field: CoeffField | None = None) -> tuple:
    """The (x, r)-family of rank 2 double-symmetric matrices near a rank 1 point.

    Entries live in a ring with variables x, r, d.  Returns (entries, ring).
    """
    from .polycore import make_ring

    ring = make_ring(("x", "r", "d"), field=field or CoeffField.rationals())
    x, r, d = ring.gens
    z, one = ring.zero(), ring.one()
    e = (
        (x, z, z, x * r, one, d * x * r),
        (z, x ** 2 * r ** 2, x * r, d * x ** 2 * r ** 2, d * x * r, d ** 2 * x ** 2 * r ** 2 + x * r ** 2),
        (z, x * r, one, d * x * r, d, d ** 2 * x * r + r),
        (x * r, d * x ** 2 * r ** 2, d * x * r, d ** 2 * x ** 2 * r ** 2 + x * r ** 2, d ** 2 * x * r + r,
         d ** 3 * x ** 2 * r ** 2 + 2 * d * x * r ** 2),
    )
    return e, ring


def local_parametrization_residues(field: CoeffField | None = None) -> list:
    """Nonzero 3x3 minors of the local parametrization (empty when it lies in T_2)."""
    e, _ = local_parametrization(field)
    return [f for f in minor_table(e, 3).values() if f]
