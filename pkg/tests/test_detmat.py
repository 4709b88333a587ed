import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from detcascade import detmat as dm
from detcascade.groebner import groebner_basis, hilbert_data, ideal_containment, ideal_equal
from detcascade.polycore import CoeffField, FieldMatrix, derive_seed, determinant, projective_ring, random_form

seeds = st.integers(0, 2 ** 64 - 1)


def _point(R, seed):
    return [derive_seed(seed, 77, i) % R.field.p for i in range(R.nvars)]


def test_generic_matrix_is_seeded_and_linear():
    R = projective_ring(4)
    M = dm.build_generic(3, 4, R, 5)
    assert M.shape == (3, 4)
    assert all(e.degree() == 1 for r in M.entries for e in r)
    assert M[1, 2] == dm.build_generic(3, 4, R, 5)[1, 2]
    assert M.provenance["seed"] == 5


def test_structure_is_enforced():
    R = projective_ring(2)
    x, y, z = R.gens
    with pytest.raises(dm.StructureError):
        dm.FormMatrix(((x, y), (z, x)), R, "symmetric")
    with pytest.raises(dm.StructureError):
        dm.FormMatrix(((x * x, y), (y, x)), R)
    with pytest.raises(dm.StructureError):
        dm.FormMatrix(((x, y), (y,)), R)


def test_json_roundtrip():
    R = projective_ring(3)
    M = dm.build_symmetric(3, R, 2)
    back = dm.from_json(M.to_json(), R)
    assert back.entries == M.entries and back.tag == "symmetric"


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_sym_skew_split_recovers(seed):
    R = projective_ring(6)
    M = dm.build_generic(3, 3, R, seed)
    S, A = dm.sym_skew_split(M)
    assert all((S + A)[i, j] == M[i, j] for i in range(3) for j in range(3))
    assert S.tag == "symmetric" and A.tag == "skew"


def test_rotation_and_persym():
    R = projective_ring(8)
    g = R.gens
    M = dm.FormMatrix(tuple(tuple(g[3 * i + j] for j in range(3)) for i in range(3)), R)
    cw = dm.rotate90(M)
    # 1-based (i, j) -> (j, m + 1 - i)
    assert cw[0, 2] == M[0, 0] and cw[2, 2] == M[0, 2] and cw[0, 0] == M[2, 0]
    back = dm.rotate90(dm.rotate90(dm.rotate90(cw)))
    assert back.entries == M.entries
    ccw = dm.rotate90(M, clockwise=False)
    assert dm.rotate90(ccw).entries == M.entries
    pt = dm.persym_transpose(M)
    assert pt[0, 0] == M[2, 2] and pt[0, 2] == M[0, 2]


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_extra_symmetric_structure(seed):
    R = projective_ring(6)
    S, A = dm.sym_skew_split(dm.build_generic(3, 3, R, seed))
    B = dm.build_extra_symmetric(A, S)
    e = B.entries
    assert all(e[i][j] == -e[j][i] for i in range(6) for j in range(6))
    assert all(e[i][j] == e[5 - j][5 - i] for i in range(6) for j in range(6))
    t = [random_form(R, 1, derive_seed(seed, i)) for i in range(7)]
    C, C1 = dm.border_extra_symmetric(B, t)
    assert C.shape == (8, 8) and C1.shape == (7, 7)
    At, St = dm.split_extra_symmetric(C)
    assert St[0, 0] == t[6]


@pytest.mark.parametrize("clockwise", [True, False])
def test_pf4_of_b_versus_minors(clockwise):
    R = projective_ring(6)
    M = dm.build_generic(3, 3, R, 11)
    S, A = dm.sym_skew_split(M)
    B = dm.build_extra_symmetric(A, S, clockwise=clockwise)
    same = ideal_equal(dm.pfaffian_ideal(B, 4), dm.minor_ideal(M, 2))
    # only the clockwise quarter turn of S reproduces the 2x2 minors of M
    assert same is clockwise


@settings(max_examples=15, deadline=None)
@given(seeds, st.sampled_from([2, 4, 6]))
def test_pfaffian_squared_is_determinant(seed, n):
    R = projective_ring(3)
    gf = R.field
    up = {(i, j): random_form(R, 1, derive_seed(seed, i, j)) for i in range(n) for j in range(i + 1, n)}
    z = R.zero()
    e = tuple(tuple(up[i, j] if i < j else (-up[j, i] if i > j else z) for j in range(n)) for i in range(n))
    M = dm.FormMatrix(e, R, "skew")
    pt = _point(R, seed)
    pf = dm.pfaffian(M).evaluate(pt)
    det = determinant([[x.evaluate(pt) for x in row] for row in e], gf)
    assert gf.mul(pf, pf) == det


def test_pfaffian_of_2x2():
    R = projective_ring(1)
    x, y = R.gens
    M = dm.FormMatrix(((R.zero(), x), (-x, R.zero())), R, "skew")
    assert dm.pfaffian(M) == x


def test_minor_ideal_counts():
    R = projective_ring(7)
    M = dm.build_generic(4, 4, R, 3)
    assert len(dm.minor_ideal(M, 3).generators) == 16
    H = hilbert_data(groebner_basis(dm.minor_ideal(M, 2)))
    # 4x4 rank one matrices: Segre P3 x P3 cut by 8 hyperplanes is empty in P7
    assert H.is_empty or H.dimension <= 0


def test_determinantal_degree_matches_product_formula():
    # rank one 3x3 in P8 with independent entries: Segre P2 x P2, degree 6
    R = projective_ring(8)
    g = R.gens
    M = dm.FormMatrix(tuple(tuple(g[3 * i + j] for j in range(3)) for i in range(3)), R)
    H = hilbert_data(groebner_basis(dm.minor_ideal(M, 2)))
    assert (H.dimension, H.degree) == (4, 6)


def test_partially_symmetric():
    R = projective_ring(7)
    N = dm.build_partially_symmetric(4, R, 1)
    assert N.shape == (3, 4) and N.tag == "partially-symmetric"
    s = [random_form(R, 1, 10 + i) for i in range(4)]
    K = dm.build_partially_symmetric(4, R, 1, border=(random_form(R, 1, 9), s))
    assert K.shape == (4, 5)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_segre_pluecker_holds_for_rank2(seed):
    M = dm.random_rank2(4, CoeffField.prime(), seed)
    assert M.rank() == 2
    assert dm.segre_pluecker_check(M)


def test_segre_pluecker_rejects_wrong_rank():
    gf = CoeffField.prime()
    I = FieldMatrix.of([[1 if i == j else 0 for j in range(4)] for i in range(4)], gf)
    with pytest.raises(ValueError):
        dm.segre_pluecker_check(I)


def test_double_symmetric_layout():
    R = projective_ring(11, "l", 1)
    Q = dm.build_double_symmetric(R.gens)
    assert Q.shape == (4, 6) and dm.is_double_symmetric(Q.entries)
    A, B, C, D = dm.double_symmetric_blocks(Q)
    assert dm.from_blocks(A, B, C, D) == Q.entries
    assert all(X[0][1] == X[1][0] for X in (A, B, C, D))
    R3 = dm.build_double_symmetric(projective_ring(8, "l", 1).gens, "3x5")
    assert R3.shape == (3, 5)
    with pytest.raises(dm.StructureError):
        dm.build_double_symmetric(R.gens[:5])


def test_rank_loci_of_double_symmetric():
    R = projective_ring(11, "l", 1)
    Q = dm.build_double_symmetric(R.gens)
    H1 = hilbert_data(groebner_basis(dm.minor_ideal(Q, 2)))
    H2 = hilbert_data(groebner_basis(dm.minor_ideal(Q, 3)))
    assert (H1.dimension, H1.degree) == (2, 12)
    assert (H2.dimension, H2.degree) == (5, 35)


def test_operations_on_double_symmetric():
    R = projective_ring(11, "l", 1)
    Q = dm.build_double_symmetric(R.gens)
    for op in ("central", "swap"):
        assert dm.is_double_symmetric(dm.apply_dsym_operation(Q, op))
    assert dm.is_double_symmetric(dm.apply_dsym_operation(Q, "binomial", [R.field(3)]))
    assert dm.is_double_symmetric(dm.apply_dsym_operation(Q, "shear", [R.field(3)]))
    # generic block parameters break the symmetry of the 2x2 blocks
    assert not dm.is_double_symmetric(dm.apply_dsym_operation(Q, "block", [R.field(2), R.field(3), R.field(5)]))
    with pytest.raises(ValueError):
        dm.apply_dsym_operation(Q, "nope")


def test_operation_report():
    rep = dm.dsym_operation_report(projective_ring(11, "l", 1), 42)
    assert set(rep) == set(dm.DSYM_OPERATIONS + dm.DSYM_REFERENCE)
    assert rep["central"]["rank1"] and rep["central"]["rank2"]
    assert rep["binomial"]["pattern"] and rep["binomial"]["rank2"]
    assert rep["shear"]["pattern"] and not rep["shear"]["rank2"]
    assert not rep["block"]["pattern"]


def test_local_parametrization_lies_in_rank_two_locus():
    assert dm.local_parametrization_residues() == []
    e, ring = dm.local_parametrization()
    # sympy oracle: the numeric matrix at a sample point has rank exactly 2
    x, r, d = sympy.Rational(2), sympy.Rational(3), sympy.Rational(5)
    num = sympy.Matrix([[sympy.sympify(str(c).replace("^", "**")).subs({"x": x, "r": r, "d": d}) for c in row]
                        for row in e])
    assert num.rank() == 2


def test_containment_d_in_x():
    R = projective_ring(6)
    M = dm.build_generic(3, 3, R, 42)
    S, A = dm.sym_skew_split(M)
    B = dm.build_extra_symmetric(A, S)
    C, C1 = dm.border_extra_symmetric(B, [random_form(R, 1, i) for i in range(7)])
    assert ideal_containment(dm.pfaffian_ideal(C1, 6), groebner_basis(dm.minor_ideal(M, 2)))
