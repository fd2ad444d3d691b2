import random

import pytest

from fermatmf.field import omega_field
from fermatmf.matrix import (
    MatrixError,
    PolyMatrix,
    adjugate,
    assemble_gorenstein_skew,
    block,
    determinant,
    field_nullspace,
    field_rref,
    format_matrix,
    parse_matrix,
    pfaffian,
    pfaffian_adjoint,
    pfaffian_vector,
    verify_matrix_factorization,
)
from fermatmf.poly import Polynomial, fermat_cubic, parse

F = omega_field()


def x(i):
    return Polynomial.variable(F, i)


def _random_entry(rng, degree=1):
    w = F.gen("w")
    p = Polynomial.zero(F)
    for _ in range(rng.randint(1, 3)):
        exps = [0, 0, 0, 0]
        for _ in range(rng.randint(0, degree)):
            exps[rng.randint(0, 3)] += 1
        coeff = F(rng.randint(-3, 3)) + F(rng.randint(-1, 1)) * w
        p = p + Polynomial(F, {tuple(exps): coeff})
    return p


def _random_skew(rng, n, degree=1):
    zero = Polynomial.zero(F)
    rows = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            e = _random_entry(rng, degree)
            rows[i][j] = e
            rows[j][i] = -e
    return PolyMatrix(F, rows)


def _random_square(rng, n, degree=1):
    return PolyMatrix(F, [[_random_entry(rng, degree) for _ in range(n)]
                          for _ in range(n)])


def test_pfaffian_2x2_base_case():
    a = x(1) + 2 * x(2)
    M = PolyMatrix(F, [[0, a], [-a, 0]])
    assert pfaffian(M) == a


def test_pfaffian_generic_4x4():
    a12, a13, a14 = x(1), x(2), x(3)
    a23, a24, a34 = x(4), x(1) * x(2), Polynomial.constant(F, F.gen("w"))
    M = PolyMatrix(F, [
        [0, a12, a13, a14],
        [-a12, 0, a23, a24],
        [-a13, -a23, 0, a34],
        [-a14, -a24, -a34, 0],
    ])
    assert pfaffian(M) == a12 * a34 - a13 * a24 + a14 * a23


def test_pfaffian_preconditions():
    with pytest.raises(MatrixError):
        pfaffian(PolyMatrix(F, [[0, 1, 2], [-1, 0, 3], [-2, -3, 0]]))  # odd
    with pytest.raises(MatrixError):
        pfaffian(PolyMatrix(F, [[0, 1], [1, 0]]))  # not skew
    with pytest.raises(MatrixError):
        pfaffian_vector(PolyMatrix(F, [[0, 1], [-1, 0]]))  # even


def test_pfaffian_adjoint_2x2_sign():
    a = x(3)
    M = PolyMatrix(F, [[0, a], [-a, 0]])
    adj = pfaffian_adjoint(M)
    assert adj == PolyMatrix(F, [[0, -1], [1, 0]])
    assert M * adj == PolyMatrix.identity(F, 2, scale=pfaffian(M))


def test_pfaffian_squares_to_determinant():
    rng = random.Random(101)
    for n in (2, 4, 6):
        for _ in range(8):
            M = _random_skew(rng, n)
            assert pfaffian(M) ** 2 == determinant(M)


def test_pfaffian_adjoint_identity_random():
    rng = random.Random(103)
    for n in (2, 4, 6):
        for _ in range(6):
            M = _random_skew(rng, n)
            adj = pfaffian_adjoint(M)
            expected = PolyMatrix.identity(F, n, scale=pfaffian(M))
            assert M * adj == expected
            assert adj * M == expected


def test_pfaffian_vector_block_support():
    rng = random.Random(107)
    inner = _random_skew(rng, 4)
    zero = Polynomial.zero(F)
    rows = [[zero] * 5 for _ in range(5)]
    for i in range(4):
        for j in range(4):
            rows[i + 1][j + 1] = inner.entries[i][j]
    d2 = PolyMatrix(F, rows)
    vec = pfaffian_vector(d2)
    assert vec[0] == pfaffian(inner)
    assert vec[1:] == [zero] * 4


def test_pfaffian_vector_annihilates():
    rng = random.Random(109)
    for _ in range(10):
        d2 = _random_skew(rng, 5)
        vec = pfaffian_vector(d2)
        row = PolyMatrix(F, [vec])
        assert (row * d2).is_zero()


def test_assemble_gorenstein_skew():
    zero5 = PolyMatrix.zeros(F, 5)
    v = [x(1), Polynomial.zero(F), Polynomial.zero(F),
         Polynomial.zero(F), Polynomial.zero(F)]
    M = assemble_gorenstein_skew(zero5, v)
    assert M.nrows == M.ncols == 6
    assert M[0, 5] == x(1)
    assert M[5, 0] == -x(1)
    assert M.is_skew()
    rng = random.Random(113)
    for _ in range(20):
        d2 = _random_skew(rng, 5)
        col = [_random_entry(rng) for _ in range(5)]
        out = assemble_gorenstein_skew(d2, col)
        assert out.is_skew()
        assert out.submatrix(range(5), range(5)) == d2


def test_determinant_scaled_identity():
    M = PolyMatrix.identity(F, 4, scale=x(1))
    assert determinant(M) == x(1) ** 4


def test_determinant_transpose_invariance():
    rng = random.Random(127)
    for n in (2, 3, 4):
        for _ in range(10):
            M = _random_square(rng, n)
            assert determinant(M.transpose()) == determinant(M)


def test_adjugate_identity_and_oracle():
    assert adjugate(PolyMatrix.identity(F, 3)) == PolyMatrix.identity(F, 3)
    rng = random.Random(131)
    for _ in range(100):
        M = _random_square(rng, 4)
        d = determinant(M)
        expected = PolyMatrix.identity(F, 4, scale=d)
        assert M * adjugate(M) == expected
        assert adjugate(M) * M == expected


def test_block_assembly():
    alpha = _random_square(random.Random(137), 3)
    zero3 = PolyMatrix.zeros(F, 3)
    big = block([[zero3, -alpha.transpose()], [alpha, zero3]])
    assert big.nrows == big.ncols == 6
    assert big.submatrix(range(3, 6), range(3)) == alpha
    assert big.is_skew() == alpha.is_skew() is False or big.is_skew()
    with pytest.raises(MatrixError):
        block([[zero3, PolyMatrix.zeros(F, 2)]])


def test_matrix_products_and_transpose():
    M = PolyMatrix(F, [[x(1), x(2)], [0, x(3)]])
    assert PolyMatrix.identity(F, 2) * M == M
    assert M.transpose().transpose() == M
    N = M * M
    assert N[0, 0] == x(1) ** 2
    assert N[0, 1] == x(1) * x(2) + x(2) * x(3)


def test_verify_matrix_factorization_success_and_failure():
    f = fermat_cubic(F)
    phi = PolyMatrix(F, [[x(1), x(2)], [x(2) ** 2, -(x(1) ** 2) + x(1) * x(2)]])
    # make an honest 2x2 example instead: phi * adj(phi) = det(phi) Id
    phi = PolyMatrix(F, [[x(1), -x(2)], [x(2) ** 2, x(1) ** 2]])
    psi = adjugate(phi)
    d = determinant(phi)
    result = verify_matrix_factorization(phi, psi, d)
    assert result.ok
    assert result.verified
    assert result.size == 2
    # now perturb one entry; residuals must localize the damage
    bad = PolyMatrix(F, [[x(1), -x(2)], [x(2) ** 2, x(1) ** 2 + x(3)]])
    failure = verify_matrix_factorization(bad, psi, d)
    assert not failure.ok
    assert failure.residuals
    touched = {(i, j) for _, i, j, _ in failure.residuals}
    assert any(1 in pair for pair in touched)


def test_matrix_text_round_trip():
    text = "x1, x2^2 + w; 0, -1/2*x3*x4"
    M = parse_matrix(F, text)
    assert M.nrows == 2 and M.ncols == 2
    assert M[0, 1] == x(2) ** 2 + F.gen("w")
    again = parse_matrix(F, format_matrix(M))
    assert again == M


def test_nonsquare_guards():
    M = PolyMatrix(F, [[x(1), x(2)]])
    with pytest.raises(MatrixError):
        determinant(M)
    with pytest.raises(MatrixError):
        adjugate(M)


def test_field_rref_hand_example():
    reduced, pivots = field_rref([[1, 2, 3], [2, 4, 8]], F)
    assert pivots == (0, 2)
    assert reduced == ((F(1), F(2), F(0)), (F(0), F(0), F(1)))


def test_field_nullspace_kills_the_rows():
    rows = [[1, 2, 3], [2, 4, 8]]
    basis = field_nullspace(rows, F, 3)
    assert len(basis) == 1
    assert basis[0] == (F(-2), F(1), F(0))
    w = F.gen("w")
    basis = field_nullspace([[F(1), w]], F, 2)
    assert basis == [(-w, F(1))]


def test_field_nullspace_empty_system_is_everything():
    assert field_nullspace([], F, 2) == [(F(1), F(0)), (F(0), F(1))]
    with pytest.raises(MatrixError):
        field_rref([], F)
