"""The acceptance sweep: one test per end-to-end guarantee.

Each test_criterion_* function checks one package-level promise -- the
Pfaffian calculus, the full catalog identity sweep, the class counts,
pairwise distinctness, skewness, the linear layer and the sampling of
the six-generated pencil, the transport identities, the five-points
presentation, and the group-action laws.  Every comparison is exact; no
tolerance appears anywhere.  The expensive distinctness sweeps are
cached at module level so the census test can reuse them.
"""

import itertools
import random
from pathlib import Path

from fermatmf.equiv import enumerate_classes, pairwise_distinctness
from fermatmf.families import (
    CurvePoint,
    FamilyId,
    GammaBlock,
    RootData,
    SigmaPerm,
    SurfacePoint,
    build_curve_alpha,
    build_orientable_4gen,
    build_rank1_3gen,
    build_six_gen,
    chart_transport,
    five_points_example,
    transport_matrices,
)
from fermatmf.field import omega_field, sextic_field, special_roots
from fermatmf.matrix import (
    PolyMatrix,
    block,
    determinant,
    field_rref,
    pfaffian,
    pfaffian_adjoint,
    pfaffian_vector,
)
from fermatmf.moduli6 import (
    ModuliPoint,
    decompose_if_gamma_zero,
    equation_values,
    gamma2_solve,
    group_action,
    linear_system_nullity,
    pfaffian_sign_flip,
    sample_moduli_point,
)
from fermatmf.poly import Polynomial, fermat_cubic

F = omega_field()
W = F.gen("w")
ROOTS = special_roots(F)
CUBE_ROOTS = ROOTS.roots_of_minus_one
PRIMITIVE = ROOTS.primitive_cube_roots
FQ = fermat_cubic(F)
LAM = CurvePoint.affine(F, 0, -1)
ERRATA = Path(__file__).resolve().parent.parent / "ERRATA.md"


def x(i):
    return Polynomial.variable(F, i)


# -- 1: pfaffian calculus --------------------------------------------------------

def _random_skew(rng, size):
    rows = [[Polynomial.zero(F)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            entry = Polynomial.zero(F)
            for _ in range(2):
                c = F(rng.randint(-3, 3)) + F(rng.randint(-1, 1)) * W
                v = rng.randint(0, 4)
                entry = entry + (Polynomial.constant(F, c) if v == 0 else c * x(v))
            rows[i][j] = entry
            rows[j][i] = -entry
    return PolyMatrix(F, rows)


def test_criterion_01_pfaffian_calculus():
    rng = random.Random(271828)
    sizes = (2, 4, 6)
    for trial in range(200):
        M = _random_skew(rng, sizes[trial % 3])
        pf = pfaffian(M)
        assert pf * pf == determinant(M)
        assert M * pfaffian_adjoint(M) == PolyMatrix.identity(F, M.nrows, scale=pf)


# -- 2: catalog identity sweep ---------------------------------------------------

def _product_checked(mf):
    goal = PolyMatrix.identity(mf.phi.field, mf.size, scale=mf.f)
    assert mf.phi * mf.psi == goal
    assert mf.psi * mf.phi == goal
    return 1


def _lambda_sample():
    points = [SurfacePoint(F, (-1, t, -t, 1))
              for t in (0, 1, -1, 2, -2, 3, -3, 4,
                        W, -W, W + 1, -W - 1, 2 * W, F(1) / 2)]
    for c in (F(-1), -W, -(W * W)):
        points.append(SurfacePoint(F, (c, 0, 1, 0)))
        points.append(SurfacePoint(F, (0, c, 1, 0)))
        points.append(SurfacePoint(F, (c, 1, 0, 0)))
    return points


def test_criterion_02_catalog_identity_sweep():
    total = 0
    for catalog, expected in (("nonorientable_4gen", 432),
                              ("nonorientable_5gen", 162)):
        reps = enumerate_classes(catalog, F).representatives
        assert len(reps) == expected
        for fid in reps:
            total += _product_checked(fid.build())
    for kind in ("phi_sigma", "psi_sigma"):
        for sigma in SigmaPerm.all():
            for a, b in itertools.product(CUBE_ROOTS, repeat=2):
                for u in PRIMITIVE:
                    total += _product_checked(build_orientable_4gen(
                        kind, sigma=sigma, r=RootData(F, a=a, b=b, u=u)))
    for kind in ("alpha3", "beta3"):
        for b, c, d in itertools.product(CUBE_ROOTS, repeat=3):
            for eps in PRIMITIVE:
                total += _product_checked(build_rank1_3gen(
                    kind, RootData(F, a=b * c * d / eps, b=b, c=c, d=d, eps=eps)))
    for a, b, c in itertools.permutations(CUBE_ROOTS, 3):
        for eps in PRIMITIVE:
            total += _product_checked(
                build_rank1_3gen("eta3", RootData(F, a=a, b=b, c=c, eps=eps)))
    for a, b, c in itertools.permutations(CUBE_ROOTS, 3):
        total += _product_checked(
            build_rank1_3gen("theta3", RootData(F, a=a, b=b, c=c)))
    points = _lambda_sample()
    assert len(points) >= 20
    assert {pt.chart for pt in points} == {2, 3, 4}
    for pt in points:
        for kind in ("phi_lambda", "psi_lambda"):
            total += _product_checked(build_orientable_4gen(kind, lam=pt))
    assert total == 432 + 162 + 108 + 126 + 2 * len(points)
    # display corrections live next to the package, not in it
    assert ERRATA.is_file() and ERRATA.read_text().strip()


# -- 3: class counts -------------------------------------------------------------

def test_criterion_03_class_counts():
    threes = enumerate_classes("rank2_3gen", F)
    assert threes.count == 72
    census = {}
    for fid in threes.representatives:
        census[fid.name] = census.get(fid.name, 0) + 1
    assert census == {"alpha3": 27, "beta3": 27, "eta3": 12, "theta3": 6}
    # every representative is the canonical member of its twist orbit
    for fid in threes.representatives:
        if fid.name in ("alpha3", "beta3"):
            p = fid.params
            twin = FamilyId(F, fid.name, {
                "b": p["b"] * p["eps"], "c": p["c"] * p["eps"],
                "d": p["d"] * p["eps"], "eps": p["eps"] * p["eps"]})
            assert min(fid, twin, key=str) == fid
    assert enumerate_classes("nonorientable_4gen", F).count == 432
    assert enumerate_classes("nonorientable_5gen", F).count == 162


# -- 4: pairwise distinctness ----------------------------------------------------

_DISTINCTNESS = {}


def _distinctness(catalog):
    if catalog not in _DISTINCTNESS:
        ids = enumerate_classes(catalog, F).representatives
        mats = [fid.build().phi for fid in ids]
        _DISTINCTNESS[catalog] = (ids, pairwise_distinctness(mats, catalog=catalog))
    return _DISTINCTNESS[catalog]


def _verdict_census(report):
    claimed = sum(1 for rec in report.evidence
                  if rec["outcome"] == "equivalent_with_witness")
    return claimed, len(report.inconclusive)


def test_criterion_04_distinctness():
    _, five = _distinctness("nonorientable_5gen")
    assert _verdict_census(five) == (0, 0)
    _, four = _distinctness("nonorientable_4gen")
    assert _verdict_census(four) == (0, 0)


def test_the_inconclusive_four_generated_pairs_are_the_u_swap_partners():
    # The 432-entry list double-counts: phi_t at u and psi_(t+2 mod 4) at
    # u^2 present the same module (their full matrices are constant
    # equivalent, see the witness test in test_equiv), so the sweep finds
    # exactly these 216 reduced-equivalent pairs and nothing else.
    ids, report = _distinctness("nonorientable_4gen")
    assert _verdict_census(report) == (0, 216)
    records = {tuple(rec["pair"]): rec for rec in report.evidence}
    partner_t = {1: 3, 2: 4, 3: 1, 4: 2}
    for i, j in report.inconclusive:
        assert records[(i, j)]["method"] == "scalar_test"
        left, right = ids[i], ids[j]
        assert {left.name, right.name} == {"phi_t_sigma", "psi_t_sigma"}
        phi, psi = (left, right) if left.name == "phi_t_sigma" else (right, left)
        assert psi.params["t"] == partner_t[phi.params["t"]]
        assert psi.params["sigma"] == phi.params["sigma"]
        assert psi.params["a"] == phi.params["a"]
        assert psi.params["b"] == phi.params["b"]
        assert psi.params["u"] == phi.params["u"] * phi.params["u"]


# -- 5: skewness -----------------------------------------------------------------

def test_criterion_05_skewness():
    for pt in (SurfacePoint(F, (-1, 1, -1, 1)),
               SurfacePoint(F, (-W, 0, 1, 0)),
               SurfacePoint(F, (-1, 1, 0, 0))):
        for kind in ("phi_lambda", "psi_lambda"):
            mf = build_orientable_4gen(kind, lam=pt)
            assert mf.phi.is_skew() and mf.psi.is_skew()
    r = RootData(F, a=-1, b=-W, u=W)
    for sigma in SigmaPerm.all():
        for kind in ("phi_sigma", "psi_sigma"):
            mf = build_orientable_4gen(kind, sigma=sigma, r=r)
            assert mf.phi.is_skew() and mf.psi.is_skew()
    rng = random.Random(5)
    for lam in (LAM, CurvePoint.affine(F, -W, 0)):
        for _ in range(10):
            gamma = GammaBlock(
                F, [F(rng.randint(-4, 4)) + F(rng.randint(-1, 1)) * W
                    for _ in range(15)])
            assert build_six_gen(lam, gamma).is_skew()


# -- 6: the linear layer of the pencil equations ---------------------------------

def test_criterion_06_linear_layer():
    sx = sextic_field()
    g = sx.gen("g")
    b_zero = [CurvePoint.affine(F, -W, 0), CurvePoint.affine(F, -(W * W), 0)]
    # b = 0 forces a^3 = -1 with [-1:0:1] excluded, so these two points
    # are the entire branch, in any tower
    assert {p.a for p in b_zero} == {r for r in CUBE_ROOTS if r != F(-1)}
    b_nonzero = [CurvePoint.affine(F, 0, -1),
                 CurvePoint.affine(F, 0, -W),
                 CurvePoint.affine(F, 0, -(W * W)),
                 CurvePoint.affine(sx, 1, g)]
    self_dual = b_nonzero[-1]
    assert self_dual.b * self_dual.b * self_dual.b == sx(-2)
    assert self_dual.dual() == self_dual
    rng = random.Random(66)
    for lam in b_zero + b_nonzero:
        field = lam.field
        for _ in range(3):
            free = tuple(field(rng.randint(-6, 6)) for _ in range(3))
            vals = equation_values(lam, gamma2_solve(lam, free))
            for k in (0, 1, 2, 3, 4, 7):  # the six linear slots of the ten
                assert not vals[k]
        assert linear_system_nullity(lam) == (6, 3)


# -- 7: sampling the moduli ------------------------------------------------------

def test_criterion_07_moduli_sampling():
    certified = []
    for seed in range(1, 11):
        point = sample_moduli_point(LAM, seed, 1000)
        if point is None:
            continue
        assert point.certified
        mat = point.matrix()
        assert determinant(mat) == FQ * FQ
        assert pfaffian(mat) == FQ
        certified.append(seed)
    assert certified


# -- 8: transport identities -----------------------------------------------------

def test_criterion_08_transport_identities():
    sx = sextic_field()
    g, ws = sx.gen("g"), sx.gen("w")
    cases = [
        # the a != 0 display: three self-dual points with b^3 = -2 plus
        # the two b = 0 points
        CurvePoint.affine(sx, 1, g),
        CurvePoint.affine(sx, 1, g * ws),
        CurvePoint.affine(sx, 1, g * ws * ws),
        CurvePoint.affine(F, -W, 0),
        CurvePoint.affine(F, -(W * W), 0),
        # the a = 0 display
        CurvePoint.affine(F, 0, -1),
        CurvePoint.affine(F, 0, -W),
        CurvePoint.affine(F, 0, -(W * W)),
    ]
    for lam in cases:
        U, V = transport_matrices(lam)
        alpha = build_curve_alpha(lam).phi
        dual = build_curve_alpha(lam.dual()).phi
        assert U * alpha.transpose() == dual * V
    for l1 in (F(-1), -W, -(W * W)):
        lam = CurvePoint.at_infinity(F, l1)
        T = chart_transport(lam)
        alpha = build_curve_alpha(lam).phi
        zero3 = PolyMatrix.zeros(F, 3)
        source = block([[zero3, -alpha.transpose()], [alpha, zero3]])
        moved = T * source * T.transpose()
        assert moved == build_six_gen(CurvePoint.affine(F, 0, l1.inv()),
                                      GammaBlock.zero(F))
        assert determinant(moved) == determinant(source)


# -- 9: the five-points presentation ---------------------------------------------

_QUADRIC_EXPS = tuple(sorted(
    (e for e in itertools.product(range(3), repeat=4) if sum(e) == 2),
    reverse=True))


def _coefficient_span(polys, field):
    rows = [[p.coefficient(e) for e in _QUADRIC_EXPS] for p in polys]
    reduced, pivots = field_rref(rows, field)
    return tuple(tuple(row) for row in reduced[:len(pivots)])


def test_criterion_09_five_points_presentation():
    A, quadrics, points = five_points_example()
    assert A.is_skew()
    for i in range(6):
        assert not A[i, i]
    pf = pfaffian(A)
    assert pf * pf == determinant(A)
    assert determinant(A) == FQ * FQ
    assert len(points) == 5
    for p in points:
        assert FQ.eval(p.coords) == F(0)
    checks = 0
    for q in quadrics:
        for p in points:
            assert q.eval(p.coords) == F(0)
            checks += 1
    assert checks == 25
    vec = pfaffian_vector(A.submatrix(range(5), range(5)))
    for q in vec:
        for p in points:
            assert q.eval(p.coords) == F(0)
    printed = _coefficient_span(quadrics, F)
    derived = _coefficient_span(vec, F)
    # reported, not asserted: the presented basis of A is not pinned down
    print("five-points span comparison: printed dim %d, sub-pfaffian dim %d, "
          "spans equal: %s" % (len(printed), len(derived), printed == derived))


# -- 10: action laws -------------------------------------------------------------

def _corner_free_point():
    # theta(-1, -w, -w^2)^t is alpha + x4*Gamma2 over [-w:0:1] on the nose
    lam = CurvePoint.affine(F, -W, 0)
    theta = build_rank1_3gen("theta3", RootData(F, a=-1, b=-W, c=-(W * W))).phi
    diff = theta.transpose() - build_curve_alpha(lam).phi
    gamma2 = tuple(diff[i, j].coefficient((0, 0, 0, 1)) for i in range(3)
                   for j in range(3))
    return lam, ModuliPoint(lam, GammaBlock(F, (0, 0, 0, 0, 0, 0) + gamma2))


def test_criterion_10_action_laws():
    rng = random.Random(10)
    for _ in range(20):
        k = F(0)
        while not k:
            k = F(rng.randint(-3, 3)) + F(rng.randint(-2, 2)) * W
        gamma = GammaBlock(F, [F(rng.randint(-4, 4)) for _ in range(15)])
        moved = group_action("Uk", LAM, build_six_gen(LAM, gamma), k=k)
        k2 = k * k
        expected = GammaBlock(
            F, tuple(v * k2 for v in gamma.values[:3])
            + tuple(v * k2.inv() for v in gamma.values[3:6])
            + gamma.values[6:])
        assert moved == build_six_gen(LAM, expected)
    lam, point = _corner_free_point()
    assert point.certified
    mat = point.matrix()
    _, top, bottom = decompose_if_gamma_zero(mat)
    assert determinant(top) == FQ
    assert determinant(bottom) == -FQ
    _, ftop, fbottom = decompose_if_gamma_zero(pfaffian_sign_flip(mat))
    assert determinant(ftop) in (FQ, -FQ)
    assert determinant(fbottom) in (FQ, -FQ)
    for corner in ((1,) + (0,) * 14, (0, 0, 0, 1) + (0,) * 11):
        undecomposable = build_six_gen(lam, GammaBlock(F, corner))
        assert decompose_if_gamma_zero(undecomposable) is None
