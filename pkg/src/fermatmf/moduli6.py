"""The moduli layer for the skew 6x6 pencils Lambda = x4*Gamma + alpha block.

Expanding the Pfaffian of the pencil over a curve point [a:b:1] and matching
it against x1^3 + x2^3 + x3^3 + x4^3 yields ten equations in the fifteen
Gamma parameters.  Six are linear in the Gamma2 entries and admit printed
closed-form solutions; the other four are the residual system.  This module
evaluates all ten exactly, solves the linear part in both branches, samples
certified points deterministically, applies the three group actions, and
splits the pencil into 3x3 blocks when both skew corners vanish.

Certification is always the pair of exact identities det(Lambda) = f^2 and
Pf(Lambda) = f; the Pfaffian sign convention is +f, and a sign-flip
conjugation is provided for the other sheet.
"""

from __future__ import annotations

import random

from .families import (
    CurvePoint,
    GammaBlock,
    build_curve_alpha,
    build_six_gen,
    transport_matrices,
)
from .matrix import (
    PolyMatrix,
    adjugate,
    block,
    determinant,
    field_rref,
    pfaffian,
)
from .poly import fermat_cubic
from .equiv import enumerate_classes, scalar_equivalence


class ModuliError(ValueError):
    """Raised when a pencil operation gets arguments outside its chart."""


def _affine_field(lam):
    if not isinstance(lam, CurvePoint):
        raise ModuliError("expected a curve point")
    if lam.chart != 3:
        raise ModuliError("the equation system lives in the chart [a:b:1]")
    return lam.field


# -- the ten coefficient equations -----------------------------------------------

def equation_values(lam, gamma):
    """Values of the ten coefficient equations of Pf(Lambda) - f at a point.

    The order is the interreduced one: three Gamma2 traces, two more linear
    ones mixing in the curve constants, the two quadratic residuals, the
    sixth linear equation, and the two higher residuals.  A pencil satisfies
    Pf(Lambda) = f exactly when all ten vanish.
    """
    field = _affine_field(lam)
    if gamma.field is not field:
        raise ModuliError("gamma and point live over different fields")
    a, b, e = lam.a, lam.b, lam.e
    (a1, a2, a3, a4, a5, a6, a7, a8, a9, a10, a11, a12, a13, a14,
     a15) = (gamma.a(i) for i in range(1, 16))
    i1 = a9 - a11 + a13
    i2 = a8 + a10 - a15
    i3 = a7 + a12 + a14
    i4 = (a * a10 - e * a11 + b * a12 + 2 * e * a13 + 2 * b * a14
          - 2 * a * a15 + a10 + a15)
    i5 = (2 * e * a10 + 2 * b * a11 - 2 * a * a12 - b * a13 - a * a14
          - e * a15 + a12 + 2 * a14)
    i6 = (a3 * a4 - a2 * a5 + a1 * a6 + a11 * a11 + a10 * a12 - a11 * a13
          + a13 * a13 - a10 * a14 - 2 * a12 * a15 - a14 * a15)
    i7 = (a1 * a4 + a3 * a5 + a2 * a6 - a10 * a10 + a11 * a12 + a12 * a13
          + 2 * a11 * a14 - a13 * a14 + a10 * a15 - a15 * a15)
    i8 = (2 * e * e * a12 + 2 * a * b * a12 - 3 * b * b * a13
          + 2 * e * e * a14 - a * b * a14 - 3 * e * b * a15 - 6 * e * a11
          - b * a12 + 12 * e * a13 + 2 * b * a14 - 6 * a * a15)
    i9 = (a3 * a5 * a10 - a2 * a6 * a10 - a2 * a5 * a11 - a1 * a6 * a11
          + a1 * a5 * a12 + a3 * a6 * a12 - a2 * a5 * a13
          + 2 * a1 * a6 * a13 + a13 ** 3 + a2 * a4 * a14 + a3 * a6 * a14
          + a10 * a11 * a14 + a12 * a12 * a14 - 2 * a10 * a13 * a14
          + a12 * a14 * a14 + a3 * a5 * a15 + 2 * a2 * a6 * a15
          + a11 * a14 * a15 - 2 * a13 * a14 * a15 - a15 ** 3 - 1)
    i10 = (2 * e * a2 * a4 - 2 * e * a1 * a5 + 2 * b * a2 * a5
           - 2 * a * a3 * a5 + 2 * b * a1 * a6 - 4 * a * a2 * a6
           - 2 * b * a11 * a11 + 2 * a * a11 * a12 + 2 * e * a12 * a12
           + 5 * b * a11 * a13 - 4 * a * a12 * a13 - 2 * b * a13 * a13
           - 2 * b * a10 * a14 - a * a11 * a14 + 2 * a * a13 * a14
           - 2 * e * a14 * a14 + 3 * e * a11 * a15 - 6 * e * a13 * a15
           - 2 * b * a14 * a15 + 6 * a * a15 * a15 + 4 * a3 * a5
           + 2 * a2 * a6 - a11 * a12 + 2 * a12 * a13 + 2 * a11 * a14
           - 4 * a13 * a14 - 6 * a15 * a15)
    return (i1, i2, i3, i4, i5, i6, i7, i8, i9, i10)


_LINEAR_SLOTS = (0, 1, 2, 3, 4, 7)
_RESIDUAL_SLOTS = (5, 6, 8, 9)


def _linear_values(lam, gamma):
    vals = equation_values(lam, gamma)
    return tuple(vals[i] for i in _LINEAR_SLOTS)


def residual_equations(lam, gamma):
    """The four residual equation values at (lam, gamma).

    Together with the six linear equations these vanish exactly when
    Pf(Lambda) = f.  At gamma = 0 the last-but-one value is -1: the x4^3
    slot of the expansion never vanishes without Gamma2.
    """
    vals = equation_values(lam, gamma)
    return tuple(vals[i] for i in _RESIDUAL_SLOTS)


# -- the linear system in the Gamma2 entries -------------------------------------

def gamma2_solve(lam, free):
    """Solve the six Gamma2-linear equations from three free values.

    For b = 0 the free values are (a11, a12, a13) and the printed solution
    sets a7 = -a12*(a^2+1), a8 = a10 = a15 = 0, a9 = a11 - a13 and
    a14 = a^2*a12.  For b != 0 they are (a7, a11, a15) with the six
    remaining entries given by the printed fractions (a+1 and b never
    vanish away from the excluded point).  The result is a GammaBlock with
    both skew corners zero; it is re-checked against the linear system
    before being returned.
    """
    field = _affine_field(lam)
    free = tuple(field(v) for v in free)
    if len(free) != 3:
        raise ModuliError("the linear system has three free values")
    a, b = lam.a, lam.b
    if not b:
        a11, a12, a13 = free
        a7 = -a12 * (a * a + 1)
        a8 = a10 = a15 = field(0)
        a9 = a11 - a13
        a14 = a * a * a12
    else:
        a7, a11, a15 = free
        q = b / (a + 1)
        s = (a - 1) / (b * (a + 1))
        a8 = -q * a7 + a15
        a9 = -s * a7 - (a * a / (b * b)) * a15
        a10 = q * a7
        a12 = (-((a * a + 3) / ((a + 1) ** 2)) * a7 + q * a11 - s * a15)
        a13 = s * a7 + a11 + (a * a / (b * b)) * a15
        a14 = ((2 * (field(1) - a) / ((a + 1) ** 2)) * a7 - q * a11
               + s * a15)
    gamma = GammaBlock(field, (0, 0, 0, 0, 0, 0,
                               a7, a8, a9, a10, a11, a12, a13, a14, a15))
    if any(_linear_values(lam, gamma)):
        raise ModuliError("printed solution fails its own linear system")
    return gamma


def linear_system_nullity(lam):
    """(rank, nullity) of the six linear equations in the nine Gamma2 entries.

    The matrix is read off by evaluating the equations on the nine unit
    blocks, so it always agrees with equation_values.
    """
    field = _affine_field(lam)
    columns = []
    for j in range(7, 16):
        values = [0] * 15
        values[j - 1] = 1
        columns.append(_linear_values(lam, GammaBlock(field, values)))
    rows = [[columns[j][i] for j in range(9)] for i in range(6)]
    _, pivots = field_rref(rows, field)
    rank = len(pivots)
    return rank, 9 - rank


# -- certified points ------------------------------------------------------------

class ModuliPoint:
    """A curve point together with a Gamma block, certified on construction.

    ``certified`` is computed, never supplied: it holds exactly when
    det(Lambda) = f^2 and Pf(Lambda) = f for the assembled pencil.
    """

    __slots__ = ("lam", "gamma", "certified")

    def __init__(self, lam, gamma):
        field = _affine_field(lam)
        if gamma.field is not field:
            raise ModuliError("gamma and point live over different fields")
        mat = build_six_gen(lam, gamma)
        f = fermat_cubic(field)
        certified = pfaffian(mat) == f and determinant(mat) == f * f
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "certified", certified)

    def __setattr__(self, *_):
        raise AttributeError("ModuliPoint is immutable")

    @property
    def field(self):
        return self.lam.field

    def matrix(self):
        return build_six_gen(self.lam, self.gamma)

    def __eq__(self, other):
        if not isinstance(other, ModuliPoint):
            return NotImplemented
        return self.lam == other.lam and self.gamma == other.gamma

    def __hash__(self):
        return hash((self.lam, self.gamma))

    def to_json(self):
        return {
            "lambda": {"a": str(self.lam.a), "b": str(self.lam.b)},
            "gamma": [str(self.gamma.a(i)) for i in range(1, 16)],
            "certified": self.certified,
        }

    def __repr__(self):
        flag = "certified" if self.certified else "uncertified"
        return "ModuliPoint(%r, %s)" % (self.lam, flag)


# -- sampling --------------------------------------------------------------------

_DRAW_BOUND = 4
_CANDIDATE_CACHE = {}


def _structured_gamma2(lam):
    """Gamma2 blocks coming from linear determinant-f extensions of alpha.

    Scans the three-generator catalog for matrices whose x4 = 0 restriction
    is constant-equivalent to alpha over the point; each hit F yields
    D = U*F*V^-1 with D = alpha + x4*Gamma2 and det D = f, so Gamma2 joined
    with any skew corner Gamma1 certifies.  The scan is cached per point.
    """
    key = (id(lam.field), lam.coords)
    cached = _CANDIDATE_CACHE.get(key)
    if cached is not None:
        return cached
    field = lam.field
    alpha = build_curve_alpha(lam).phi
    f = fermat_cubic(field)
    found = []
    seen = set()
    for fid in enumerate_classes("rank2_3gen", field).representatives:
        mat = fid.build().phi
        restricted = mat.map_entries(lambda p: p.restrict(4, 0))
        verdict = scalar_equivalence(restricted, alpha)
        if verdict.outcome != "equivalent_with_witness":
            continue
        U, V = verdict.witness
        inverse = adjugate(V) * determinant(V).constant_term().inv()
        lifted = U * mat * inverse
        if determinant(lifted) != f:
            continue
        gamma2 = tuple(lifted[i, j].coefficient((0, 0, 0, 1))
                       for i in range(3) for j in range(3))
        if gamma2 in seen:
            continue
        seen.add(gamma2)
        found.append(gamma2)
    _CANDIDATE_CACHE[key] = tuple(found)
    return _CANDIDATE_CACHE[key]


def _solve_gamma3(lam, corner, gamma2):
    """A particular (a4, a5, a6) killing the first three residuals, or None.

    With everything else fixed the residual system is affine-linear in the
    Gamma3 entries; the first three equations are solved with free unknowns
    pinned to zero and the caller re-checks all four on the assembled block.
    """
    field = lam.field
    def residuals(a4, a5, a6):
        gamma = GammaBlock(field, corner + (a4, a5, a6) + gamma2)
        return residual_equations(lam, gamma)[:3]

    base = residuals(0, 0, 0)
    units = (residuals(1, 0, 0), residuals(0, 1, 0), residuals(0, 0, 1))
    rows = []
    for k in range(3):
        rows.append([units[0][k] - base[k], units[1][k] - base[k],
                     units[2][k] - base[k], -base[k]])
    reduced, pivots = field_rref(rows, field, ncols=4)
    if 3 in pivots:
        return None
    solution = [field(0)] * 3
    for row, pivot in zip(reduced, pivots):
        solution[pivot] = row[3]
    return tuple(solution)


def sample_moduli_point(lam, seed, budget):
    """Search for a certified point over lam, deterministically in seed.

    Every attempt draws a skew corner (a1, a2, a3) from the seeded stream.
    Odd attempts draw three free values as well and take the Gamma2 block
    from gamma2_solve; even attempts cycle through the structured catalog
    blocks, which certify whenever the residual solve goes through.  Each
    candidate solves three residual equations for (a4, a5, a6), checks the
    fourth, and is certified exactly before being returned.  Exhausting the
    budget returns None.
    """
    field = _affine_field(lam)
    rng = random.Random(seed)
    structured = _structured_gamma2(lam)
    for attempt in range(1, budget + 1):
        corner = tuple(field(rng.randint(-_DRAW_BOUND, _DRAW_BOUND))
                       for _ in range(3))
        if structured and attempt % 2 == 0:
            gamma2 = structured[(attempt // 2 - 1) % len(structured)]
        else:
            free = tuple(rng.randint(-_DRAW_BOUND, _DRAW_BOUND)
                         for _ in range(3))
            solved = gamma2_solve(lam, free)
            gamma2 = tuple(solved.a(i) for i in range(7, 16))
        gamma3 = _solve_gamma3(lam, corner, gamma2)
        if gamma3 is None:
            continue
        gamma = GammaBlock(field, corner + gamma3 + gamma2)
        if any(residual_equations(lam, gamma)):
            continue
        point = ModuliPoint(lam, gamma)
        if point.certified:
            return point
    return None


# -- group actions ---------------------------------------------------------------

def _scaling_matrix(field, k):
    top = PolyMatrix.identity(field, 3, scale=k)
    bottom = PolyMatrix.identity(field, 3, scale=k.inv())
    zero3 = PolyMatrix.zeros(field, 3)
    return block([[top, zero3], [zero3, bottom]])


def group_action(kind, lam, mat, k=None, coeffs=None):
    """Apply one of the three pencil actions and return the moved matrix.

    kind "Uk" conjugates by diag(k, k, k, 1/k, 1/k, 1/k) and needs k != 0;
    on a pencil this keeps Gamma2, scales Gamma1 by k^2 and Gamma3 by 1/k^2.
    kind "S2" moves the pencil to one over the reversed point via the
    transport pair (U, V) of the curve alpha.  kind "H" acts only over
    self-dual points [1:b:1] and conjugates by the block matrix built from
    coeffs = (K1, K2, K3, K4) with K1*K4 - K2*K3 = 1.
    """
    field = _affine_field(lam)
    if not isinstance(mat, PolyMatrix):
        raise ModuliError("the action applies to a 6x6 matrix")
    if mat.nrows != 6 or mat.ncols != 6:
        raise ModuliError("the action applies to a 6x6 matrix")
    if kind == "Uk":
        if k is None:
            raise ModuliError("kind Uk needs the scale k")
        k = field(k)
        if not k:
            raise ModuliError("k must be invertible")
        U = _scaling_matrix(field, k)
        return U * mat * U.transpose()
    if kind == "S2":
        U, V = transport_matrices(lam)
        vdet = determinant(V).constant_term()
        if not vdet:
            raise ModuliError("transport is not invertible")
        left = block([[PolyMatrix.zeros(field, 3),
                       PolyMatrix.identity(field, 3)],
                      [-U, PolyMatrix.zeros(field, 3)]])
        right = block([[PolyMatrix.identity(field, 3),
                        PolyMatrix.zeros(field, 3)],
                       [PolyMatrix.zeros(field, 3),
                        adjugate(V) * vdet.inv()]])
        return left * mat * right
    if kind == "H":
        if lam.a != field(1):
            raise ModuliError("kind H needs a self-dual point [1:b:1]")
        if coeffs is None:
            raise ModuliError("kind H needs coeffs = (K1, K2, K3, K4)")
        k1, k2, k3, k4 = (field(c) for c in coeffs)
        if k1 * k4 - k2 * k3 != field(1):
            raise ModuliError("coeffs must satisfy K1*K4 - K2*K3 = 1")
        U, _ = transport_matrices(lam)
        udet = determinant(U).constant_term()
        if not udet:
            raise ModuliError("transport is not invertible")
        uinv = adjugate(U) * udet.inv()
        H = block([[PolyMatrix.identity(field, 3, scale=k4), -k3 * uinv],
                   [(-k2) * U, PolyMatrix.identity(field, 3, scale=k1)]])
        if not determinant(H).constant_term():
            raise ModuliError("the H matrix is not invertible")
        return H * mat * H.transpose()
    raise ModuliError("unknown action kind %r" % (kind,))


def pfaffian_sign_flip(mat):
    """Conjugate by the odd swap of the first two rows.

    This negates the Pfaffian while preserving skewness and the
    determinant, moving between the two sheets det = f^2, Pf = +/-f.
    """
    if not mat.is_square or mat.nrows % 2:
        raise ModuliError("the sign flip needs an even square matrix")
    field = mat.field
    rows = []
    for i in range(mat.nrows):
        j = {0: 1, 1: 0}.get(i, i)
        rows.append([1 if c == j else 0 for c in range(mat.nrows)])
    P = PolyMatrix(field, rows)
    return P * mat * P.transpose()


# -- decomposition ---------------------------------------------------------------

def decompose_if_gamma_zero(mat):
    """Split a pencil with both skew corners zero into its 3x3 blocks.

    Returns (P, top, bottom) where P is the witness swapping the two row
    halves, P*mat is block-diagonal with the returned blocks, and
    bottom = -top^t.  Returns None when either corner carries an x4 term.
    Raises on input that is not a skew 6x6 matrix of linear forms.
    """
    if not isinstance(mat, PolyMatrix) or mat.nrows != 6 or mat.ncols != 6:
        raise ModuliError("expected a skew 6x6 pencil")
    if not mat.is_skew():
        raise ModuliError("expected a skew 6x6 pencil")
    for i in range(6):
        for j in range(6):
            entry = mat[i, j]
            if entry != entry.linear_part():
                raise ModuliError("pencil entries must be linear forms")
    x4 = (0, 0, 0, 1)
    for i in range(3):
        for j in range(3):
            if mat[i, j].coefficient(x4) or mat[i + 3, j + 3].coefficient(x4):
                return None
    field = mat.field
    zero3 = PolyMatrix.zeros(field, 3)
    eye3 = PolyMatrix.identity(field, 3)
    P = block([[zero3, eye3], [eye3, zero3]])
    moved = P * mat
    top = moved.submatrix(range(3), range(3))
    bottom = moved.submatrix(range(3, 6), range(3, 6))
    if moved != block([[top, zero3], [zero3, bottom]]):
        raise ModuliError("pencil did not split into diagonal blocks")
    return P, top, bottom
