"""Constructors for the catalog of matrix factorizations over the Fermat cubic.

Every named family lives here: the 3x3 curve and surface forms, the orientable
and non-orientable 4x4 pairs, the five 5x5 pairs with their un-normalized
variants, the ideals they present, and the 6x6 skew pencil x4*Gamma + alpha
block together with its transport matrices.  Constructors validate their
parameters eagerly and certify the factorization identity before returning;
a print discrepancy that breaks phi*psi = f*Id is treated as a defect of the
source display, fixed here, and documented in ERRATA.md.
"""

from __future__ import annotations

import itertools

from .field import TowerError, omega_field
from .matrix import (
    PolyMatrix,
    adjugate,
    block,
    determinant,
    field_nullspace,
    verify_matrix_factorization,
)
from .poly import Polynomial, fermat_cubic, fermat_cubic3, parse_scalar


class FamilyError(ValueError):
    """Raised when family parameters violate their defining constraints."""


# -- parameter types ------------------------------------------------------------

class SigmaPerm:
    """A permutation (i j s) of {2,3,4} with i < j; exactly three are legal."""

    __slots__ = ("i", "j", "s")
    _LEGAL = ((2, 3, 4), (2, 4, 3), (3, 4, 2))

    def __init__(self, i, j, s):
        if (i, j, s) not in self._LEGAL:
            raise FamilyError(
                "sigma must be one of (2,3,4), (2,4,3), (3,4,2); got (%r,%r,%r)"
                % (i, j, s))
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "s", s)

    def __setattr__(self, *_):
        raise AttributeError("SigmaPerm is immutable")

    @classmethod
    def all(cls):
        return tuple(cls(*t) for t in cls._LEGAL)

    @classmethod
    def from_string(cls, text):
        """Parse "234"-style digit triples."""
        if len(text) != 3 or not text.isdigit():
            raise FamilyError("sigma string must be three digits, got %r" % (text,))
        return cls(int(text[0]), int(text[1]), int(text[2]))

    def __iter__(self):
        return iter((self.i, self.j, self.s))

    def __eq__(self, other):
        if not isinstance(other, SigmaPerm):
            return NotImplemented
        return (self.i, self.j, self.s) == (other.i, other.j, other.s)

    def __hash__(self):
        return hash((self.i, self.j, self.s))

    def __repr__(self):
        return "SigmaPerm(%d, %d, %d)" % (self.i, self.j, self.s)


class RootData:
    """Field constants parameterizing the families.

    ``a`` and ``b`` are cube roots of -1 and ``u`` is a primitive cube root of
    unity; the optional ``c``, ``d``, ``eps`` serve the three-generated
    families.  Each supplied value is validated on its own, and the joint
    constraint b*c*d = eps*a is enforced once all five of a,b,c,d,eps are
    present.
    """

    __slots__ = ("field", "a", "b", "u", "c", "d", "eps")

    def __init__(self, field, a=None, b=None, u=None, c=None, d=None, eps=None):
        def cube_root_of_minus_one(name, value):
            if value is None:
                return None
            value = field(value)
            if value ** 3 != -1:
                raise FamilyError("%s must satisfy %s^3 = -1" % (name, name))
            return value

        object.__setattr__(self, "field", field)
        object.__setattr__(self, "a", cube_root_of_minus_one("a", a))
        object.__setattr__(self, "b", cube_root_of_minus_one("b", b))
        object.__setattr__(self, "c", cube_root_of_minus_one("c", c))
        object.__setattr__(self, "d", cube_root_of_minus_one("d", d))
        if u is not None:
            u = field(u)
            if u * u + u + 1 != 0:
                raise FamilyError("u must satisfy u^2 + u + 1 = 0")
        object.__setattr__(self, "u", u)
        if eps is not None:
            eps = field(eps)
            if eps ** 3 != 1 or eps == 1:
                raise FamilyError("eps must be a primitive cube root of unity")
        object.__setattr__(self, "eps", eps)
        present = (self.a, self.b, self.c, self.d, self.eps)
        if all(v is not None for v in present):
            if self.b * self.c * self.d != self.eps * self.a:
                raise FamilyError("constraint b*c*d = eps*a violated")

    def __setattr__(self, *_):
        raise AttributeError("RootData is immutable")

    def require(self, *names):
        for name in names:
            if getattr(self, name) is None:
                raise FamilyError("missing root parameter %r" % name)

    def __repr__(self):
        parts = ["%s=%s" % (n, getattr(self, n))
                 for n in ("a", "b", "u", "c", "d", "eps")
                 if getattr(self, n) is not None]
        return "RootData(%s)" % ", ".join(parts)


class SurfacePoint:
    """A point of V(f) in projective 3-space, kept in one of the three charts
    [l1:l2:l3:1], [l1:l2:1:0], [l1:1:0:0].

    ``chart`` is the 1-based index of the trailing unit coordinate (4, 3, or 2).
    """

    __slots__ = ("field", "coords", "chart")

    def __init__(self, field, coords):
        coords = tuple(field(c) for c in coords)
        if len(coords) != 4:
            raise FamilyError("a surface point needs 4 coordinates")
        if coords[3] == 1:
            chart = 4
        elif coords[3] == 0 and coords[2] == 1:
            chart = 3
        elif coords[3] == 0 and coords[2] == 0 and coords[1] == 1:
            chart = 2
        else:
            raise FamilyError(
                "coordinates fit none of the charts [l1:l2:l3:1], "
                "[l1:l2:1:0], [l1:1:0:0]")
        if sum((c ** 3 for c in coords), field(0)) != 0:
            raise FamilyError("point does not lie on the surface f = 0")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "chart", chart)

    def __setattr__(self, *_):
        raise AttributeError("SurfacePoint is immutable")

    def __eq__(self, other):
        if not isinstance(other, SurfacePoint):
            return NotImplemented
        return self.field is other.field and self.coords == other.coords

    def __hash__(self):
        return hash((id(self.field), self.coords))

    def __repr__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"


P0_COORDS = (-1, 0, 1)


class CurvePoint:
    """A point of the plane curve V(f3) in chart [a:b:1] or [l1:1:0], with the
    excluded point P0 = [-1:0:1] rejected.

    In the affine chart the auxiliary constant ``e`` = b^2/(a+1) is derived
    (a = -1 only happens at P0, so the quotient always exists) and satisfies
    e*b = -(a^2 - a + 1) and e*(a+1) = b^2.
    """

    __slots__ = ("field", "coords", "chart", "e")

    def __init__(self, field, coords):
        coords = tuple(field(c) for c in coords)
        if len(coords) != 3:
            raise FamilyError("a curve point needs 3 coordinates")
        if coords[2] == 1:
            chart = 3
        elif coords[2] == 0 and coords[1] == 1:
            chart = 2
        else:
            raise FamilyError(
                "coordinates fit neither chart [a:b:1] nor [l1:1:0]")
        if sum((c ** 3 for c in coords), field(0)) != 0:
            raise FamilyError("point does not lie on the curve f3 = 0")
        if coords == tuple(field(c) for c in P0_COORDS):
            raise FamilyError("the point [-1:0:1] is excluded")
        e = None
        if chart == 3:
            a, b = coords[0], coords[1]
            e = b * b / (a + 1)
            if e * b != -(a * a - a + 1) or e * (a + 1) != b * b:
                raise FamilyError("inconsistent auxiliary constant e")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "e", e)

    def __setattr__(self, *_):
        raise AttributeError("CurvePoint is immutable")

    @classmethod
    def affine(cls, field, a, b):
        return cls(field, (a, b, 1))

    @classmethod
    def at_infinity(cls, field, l1):
        return cls(field, (l1, 1, 0))

    @property
    def a(self):
        if self.chart != 3:
            raise FamilyError("a/b coordinates need the chart [a:b:1]")
        return self.coords[0]

    @property
    def b(self):
        if self.chart != 3:
            raise FamilyError("a/b coordinates need the chart [a:b:1]")
        return self.coords[1]

    @property
    def l1(self):
        if self.chart != 2:
            raise FamilyError("l1 needs the chart [l1:1:0]")
        return self.coords[0]

    def dual(self):
        """The point with reversed coordinates, renormalized into a chart."""
        first, second, third = self.coords
        if third == 1:  # [a:b:1] -> [1:b:a]
            if first:
                return CurvePoint.affine(self.field, first.inv(),
                                         second / first)
            return CurvePoint.at_infinity(self.field, second.inv())
        # [l1:1:0] -> [0:1:l1] -> [0:1/l1:1]
        return CurvePoint.affine(self.field, 0, first.inv())

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        return self.field is other.field and self.coords == other.coords

    def __hash__(self):
        return hash((id(self.field), self.coords))

    def __repr__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"


class FormSet:
    """The named linear and quadratic forms feeding the matrix displays.

    Sigma data fills w1, w2 (linear), v1, v2 (quadratic) and the four linear
    factors v1p, v1pp, v2p, v2pp with v1 = v1p*v1pp, v2 = v2p*v2pp; lambda
    data fills p1..p3 (linear) and q1..q3 (quadratic).  Unused slots are None.
    """

    _SLOTS = ("w1", "w2", "v1", "v2", "v1p", "v1pp", "v2p", "v2pp",
              "p1", "p2", "p3", "q1", "q2", "q3")
    __slots__ = ("field",) + _SLOTS

    def __init__(self, field, **forms):
        object.__setattr__(self, "field", field)
        for name in self._SLOTS:
            object.__setattr__(self, name, forms.pop(name, None))
        if forms:
            raise FamilyError("unknown form names: %s" % sorted(forms))

    def __setattr__(self, *_):
        raise AttributeError("FormSet is immutable")

    def __repr__(self):
        names = [n for n in self._SLOTS if getattr(self, n) is not None]
        return "FormSet(%s)" % ", ".join(names)


class GammaBlock:
    """The fifteen constants a1..a15 packed into the skew 6x6 block

        Gamma = [[Gamma1, -Gamma2^t], [Gamma2, Gamma3]]

    where Gamma1 = (0 a1 a2; -a1 0 a3; -a2 -a3 0), Gamma3 = (0 a4 a5; -a4 0
    a6; -a5 -a6 0) and Gamma2 holds a7..a15 row-major.
    """

    __slots__ = ("field", "values")

    def __init__(self, field, values):
        values = tuple(field(v) for v in values)
        if len(values) != 15:
            raise FamilyError("GammaBlock needs 15 values, got %d" % len(values))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "values", values)

    def __setattr__(self, *_):
        raise AttributeError("GammaBlock is immutable")

    @classmethod
    def zero(cls, field):
        return cls(field, (0,) * 15)

    def a(self, index):
        """1-based access: a(1) .. a(15)."""
        if not 1 <= index <= 15:
            raise FamilyError("index out of range: %d" % index)
        return self.values[index - 1]

    def _skew3(self, p, q, r):
        return PolyMatrix(self.field, [[0, p, q], [-p, 0, r], [-q, -r, 0]])

    def gamma1(self):
        return self._skew3(self.a(1), self.a(2), self.a(3))

    def gamma3(self):
        return self._skew3(self.a(4), self.a(5), self.a(6))

    def gamma2(self):
        v = self.values
        return PolyMatrix(self.field, [v[6:9], v[9:12], v[12:15]])

    def matrix(self):
        g2 = self.gamma2()
        return block([[self.gamma1(), -g2.transpose()],
                      [g2, self.gamma3()]])

    def gamma1_is_zero(self):
        return not any(self.values[0:3])

    def gamma3_is_zero(self):
        return not any(self.values[3:6])

    def __eq__(self, other):
        if not isinstance(other, GammaBlock):
            return NotImplemented
        return self.field is other.field and self.values == other.values

    def __hash__(self):
        return hash((id(self.field), self.values))

    def __repr__(self):
        return "GammaBlock(%s)" % ", ".join(str(v) for v in self.values)


# -- form builders --------------------------------------------------------------

def _variables(field):
    return tuple(Polynomial.variable(field, k) for k in range(1, 5))


def building_blocks(sigma, r):
    """The eight sigma-forms w1, w2, v1, v2 and the linear factors of v1, v2.

    Checks the splitting identity f = w1*v1 + w2*v2 and the factorizations
    v_t = v_t' * v_t'' before returning.
    """
    if not isinstance(sigma, SigmaPerm):
        raise FamilyError("sigma must be a SigmaPerm")
    r.require("a", "b", "u")
    field = r.field
    x = _variables(field)
    x1, xi, xj, xs = x[0], x[sigma.i - 1], x[sigma.j - 1], x[sigma.s - 1]
    a, b, u = r.a, r.b, r.u
    w1 = x1 - a * xs
    w2 = xi - b * xj
    v1 = x1 * x1 + a * x1 * xs + (a * a) * xs * xs
    v2 = xi * xi + b * xi * xj + (b * b) * xj * xj
    v1p = x1 - (u * a) * xs
    v1pp = x1 + ((1 + u) * a) * xs
    v2p = xi - (u * b) * xj
    v2pp = xi + ((1 + u) * b) * xj
    if w1 * v1 + w2 * v2 != fermat_cubic(field):
        raise FamilyError("splitting identity w1*v1 + w2*v2 = f failed")
    if v1 != v1p * v1pp or v2 != v2p * v2pp:
        raise FamilyError("factor identity v = v'*v'' failed")
    return FormSet(field, w1=w1, w2=w2, v1=v1, v2=v2,
                   v1p=v1p, v1pp=v1pp, v2p=v2p, v2pp=v2pp)


def point_forms(lam):
    """The linear/quadratic pairs p_i, q_i of a surface point, chart by chart;
    always f = p1*q1 + p2*q2 + p3*q3."""
    field = lam.field
    x1, x2, x3, x4 = _variables(field)

    def pair(var, coeff, unit):
        p = var - coeff * unit
        q = var * var + coeff * var * unit + (coeff * coeff) * unit * unit
        return p, q

    l = lam.coords
    if lam.chart == 4:
        p1, q1 = pair(x1, l[0], x4)
        p2, q2 = pair(x2, l[1], x4)
        p3, q3 = pair(x3, l[2], x4)
    elif lam.chart == 3:
        p1, q1 = pair(x1, l[0], x3)
        p2, q2 = pair(x2, l[1], x3)
        p3, q3 = x4, x4 * x4
    else:
        p1, q1 = pair(x1, l[0], x2)
        p2, q2 = x3, x3 * x3
        p3, q3 = x4, x4 * x4
    if p1 * q1 + p2 * q2 + p3 * q3 != fermat_cubic(field):
        raise FamilyError("splitting identity sum(p_i*q_i) = f failed")
    return FormSet(field, p1=p1, p2=p2, p3=p3, q1=q1, q2=q2, q3=q3)


# -- three-generated families ----------------------------------------------------

def _certify(phi, psi, f, name):
    result = verify_matrix_factorization(phi, psi, f)
    if not result.ok:
        raise FamilyError("%s failed the factorization identity: %r"
                          % (name, result))
    return result


def build_rank1_3gen(kind, r):
    """One of the four 3x3 families alpha3, beta3, eta3, theta3, paired with
    its adjugate (so the certified product is f*Id3).

    alpha3/beta3 take (a,b,c,d,eps) with b*c*d = eps*a; eta3 takes (a,b,c)
    pairwise-distinct cube roots of -1 plus eps; theta3 takes just (a,b,c).
    """
    field = r.field
    x1, x2, x3, x4 = _variables(field)
    if kind in ("alpha3", "beta3"):
        r.require("a", "b", "c", "d", "eps")
        a, b, c, d, eps = r.a, r.b, r.c, r.d, r.eps
        if b * c * d != eps * a:
            raise FamilyError("constraint b*c*d = eps*a violated")
        phi = PolyMatrix(field, [
            [0,
             x1 - a * x4,
             x2 - b * x3],
            [x1 - c * x2,
             -(b * b) * x3 - (a * b * c * c * eps * eps) * x4,
             (b * b * c * c) * x3 - (a * b * c * eps * eps) * x4],
            [x3 - d * x4,
             (c * c) * x2 + (b * c * c) * x3 + (a * c) * x4,
             -x1 - c * x2 - a * x4],
        ])
        if kind == "beta3":
            phi = phi.transpose()
    elif kind in ("eta3", "theta3"):
        r.require("a", "b", "c")
        a, b, c = r.a, r.b, r.c
        if a == b or a == c or b == c:
            raise FamilyError("(a, b, c) must be pairwise distinct")
        if kind == "eta3":
            r.require("eps")
            eps = r.eps
            phi = PolyMatrix(field, [
                [0, x1 + x2, x3 - a * x4],
                [x1 + eps * x2, -x3 + c * x4, 0],
                [x3 - b * x4, 0, -x1 - (eps * eps) * x2],
            ])
        else:
            phi = PolyMatrix(field, [
                [0, x1 + x3, x2 - a * x4],
                [x1 - (a * a * b) * x3, -x2 + c * x4, 0],
                [x2 - b * x4, 0, -x1 + (a * b * b) * x3],
            ])
    else:
        raise FamilyError("unknown 3x3 kind %r" % (kind,))
    return _certify(phi, adjugate(phi), fermat_cubic(field), kind)


def _curve_alpha_matrix(lam):
    field = lam.field
    x1, x2, x3, _ = _variables(field)
    if lam.chart == 3:
        a, b, e = lam.a, lam.b, lam.e
        return PolyMatrix(field, [
            [0, x1 - a * x3, x2 - b * x3],
            [x1 + x3, -x2 - b * x3, -e * x3],
            [x2, e * x3, (field(1) - a) * x3 - x1],
        ])
    l1 = lam.l1
    return PolyMatrix(field, [
        [0, x1 - l1 * x2, x3],
        [x1 + x3, -l1 * x1, l1 * x1 + (l1 * l1) * x2],
        [x2, x3 - x1, -x1],
    ])


def build_curve_alpha(lam):
    """The 3x3 alpha matrix of a curve point (either chart), certified with
    its adjugate against f3 = x1^3 + x2^3 + x3^3."""
    phi = _curve_alpha_matrix(lam)
    return _certify(phi, adjugate(phi), fermat_cubic3(lam.field),
                    "curve_alpha")


# -- orientable four-generated families ------------------------------------------

def build_orientable_4gen(kind, lam=None, sigma=None, r=None, beta=None):
    """The skew 4x4 pairs: phi_lambda/psi_lambda from a surface point, or
    phi_sigma/psi_sigma from sigma-data.

    The beta slot of the sigma pair defaults to x_j*x_s, the normal form of
    the catalog; a custom polynomial may be substituted for experimentation.
    """
    if kind in ("phi_lambda", "psi_lambda"):
        if lam is None:
            raise FamilyError("%s needs a surface point" % kind)
        fs = point_forms(lam)
        field = lam.field
        p1, p2, p3 = fs.p1, fs.p2, fs.p3
        q1, q2, q3 = fs.q1, fs.q2, fs.q3
        phi = PolyMatrix(field, [
            [0, p3, -p2, -q1],
            [-p3, 0, -p1, q2],
            [p2, p1, 0, q3],
            [q1, -q2, -q3, 0],
        ])
        psi = PolyMatrix(field, [
            [0, -q3, q2, p1],
            [q3, 0, q1, -p2],
            [-q2, -q1, 0, -p3],
            [-p1, p2, p3, 0],
        ])
    elif kind in ("phi_sigma", "psi_sigma"):
        if sigma is None or r is None:
            raise FamilyError("%s needs sigma and roots" % kind)
        fs = building_blocks(sigma, r)
        field = r.field
        if beta is None:
            x = _variables(field)
            beta = x[sigma.j - 1] * x[sigma.s - 1]
        elif not isinstance(beta, Polynomial):
            beta = Polynomial.constant(field, field(beta))
        w1, w2, v1, v2 = fs.w1, fs.w2, fs.v1, fs.v2
        phi = PolyMatrix(field, [
            [0, w1, -v2, 0],
            [-w1, 0, -beta, w2],
            [v2, beta, 0, v1],
            [0, -w2, -v1, 0],
        ])
        psi = PolyMatrix(field, [
            [0, -v1, w2, beta],
            [v1, 0, 0, -v2],
            [-w2, 0, 0, -w1],
            [-beta, v2, w1, 0],
        ])
    else:
        raise FamilyError("unknown orientable 4x4 kind %r" % (kind,))
    if kind.startswith("psi"):
        phi, psi = psi, phi
    return _certify(phi, psi, fermat_cubic(phi.field), kind)


# -- non-orientable four-generated families --------------------------------------

def build_nonorientable_4gen(t, kind, sigma, r):
    """The pair (phi_t_sigma, psi_t_sigma) for t = 1..4; kind selects which of
    the two is returned as the primary matrix."""
    if t not in (1, 2, 3, 4):
        raise FamilyError("t must be 1..4, got %r" % (t,))
    if kind not in ("phi", "psi"):
        raise FamilyError("kind must be 'phi' or 'psi', got %r" % (kind,))
    fs = building_blocks(sigma, r)
    field = r.field
    x = _variables(field)
    xj, xs = x[sigma.j - 1], x[sigma.s - 1]
    w1, w2, v1, v2 = fs.w1, fs.w2, fs.v1, fs.v2
    v1p, v1pp, v2p, v2pp = fs.v1p, fs.v1pp, fs.v2p, fs.v2pp
    if t == 1:
        phi = PolyMatrix(field, [
            [0, w1, -v2pp, 0],
            [-w1, 0, -xs, w2],
            [v2, xs * v2p, 0, v1],
            [0, -w2 * v2p, -v1, 0],
        ])
        psi = PolyMatrix(field, [
            [0, -v1, w2, xs],
            [v1, 0, 0, -v2pp],
            [-w2 * v2p, 0, 0, -w1],
            [-xs * v2p, v2, w1, 0],
        ])
    elif t == 2:
        phi = PolyMatrix(field, [
            [0, w2, -v1p, 0],
            [-w2, 0, -xj, w1],
            [v1, xj * v1pp, 0, v2],
            [0, -w1 * v1pp, -v2, 0],
        ])
        psi = PolyMatrix(field, [
            [0, -v2, w1, xj],
            [v2, 0, 0, -v1p],
            [-w1 * v1pp, 0, 0, -w2],
            [-xj * v1pp, v1, w2, 0],
        ])
    elif t == 3:
        phi = PolyMatrix(field, [
            [0, v1, -v2p, 0],
            [-v1, 0, -xs, w2],
            [v2, xs * v2pp, 0, w1],
            [0, -w2 * v2pp, -w1, 0],
        ])
        psi = PolyMatrix(field, [
            [0, -w1, w2, xs],
            [w1, 0, 0, -v2p],
            [-w2 * v2pp, 0, 0, -v1],
            [-xs * v2pp, v2, v1, 0],
        ])
    else:
        phi = PolyMatrix(field, [
            [0, v2, -v1pp, 0],
            [-v2, 0, -xj, w1],
            [v1, xj * v1p, 0, w2],
            [0, -w1 * v1p, -w2, 0],
        ])
        psi = PolyMatrix(field, [
            [0, -w2, w1, xj],
            [w2, 0, 0, -v1pp],
            [-w1 * v1p, 0, 0, -v2],
            [-xj * v1p, v1, v2, 0],
        ])
    if kind == "psi":
        phi, psi = psi, phi
    return _certify(phi, psi, fermat_cubic(field),
                    "%s_%d_sigma" % (kind, t))


# -- five-generated families -----------------------------------------------------

def build_5gen(kind, sigma, r, normalized=True):
    """The 5x5 pairs: rho/omega, mu/nu, mubar/nubar.

    ``normalized`` selects the final displays; with ``normalized=False`` the
    un-normalized pairs rho1/omega1 and mu1/nu1 are produced instead (there
    is no un-normalized mubar display, so that combination is rejected).
    Both omega variants carry +w1*v2'' in their [3,2] entry; the sign is
    forced by the product identity (see ERRATA.md).
    """
    if kind not in ("rho", "mu", "mubar"):
        raise FamilyError("kind must be rho, mu or mubar, got %r" % (kind,))
    fs = building_blocks(sigma, r)
    field = r.field
    x = _variables(field)
    xj, xs = x[sigma.j - 1], x[sigma.s - 1]
    w1, w2, v1, v2 = fs.w1, fs.w2, fs.v1, fs.v2
    v1p, v1pp, v2p, v2pp = fs.v1p, fs.v1pp, fs.v2p, fs.v2pp
    if normalized:
        if kind == "rho":
            phi = PolyMatrix(field, [
                [0, w1, -v2p, -xj, 0],
                [v1p, w2, 0, 0, -xj * v1pp],
                [-v2pp, 0, v1pp, 0, 0],
                [0, 0, 0, v1p, v2],
                [0, 0, 0, -w2, w1 * v1pp],
            ])
            psi = PolyMatrix(field, [
                [-w2 * v1pp, w1 * v1pp, -w2 * v2p, 0, xj * v1pp],
                [v1, v2, v1p * v2p, xj * v1pp, 0],
                [-w2 * v2pp, w1 * v2pp, w1 * v1p, 0, xj * v2pp],
                [0, 0, 0, w1 * v1pp, -v2],
                [0, 0, 0, w2, v1p],
            ])
        elif kind == "mu":
            phi = PolyMatrix(field, [
                [0, w1, v2pp, 0, 0],
                [-v1p, w2, 0, 0, xj],
                [v2p, 0, -v1pp, xj, 0],
                [0, 0, 0, -v1p, -v2p],
                [0, 0, 0, w2 * v2pp, -v1pp * w1],
            ])
            psi = PolyMatrix(field, [
                [v1pp * w2, -v1pp * w1, v2pp * w2, 0, -xj],
                [v1, v2, v2pp * v1p, xj * v2pp, 0],
                [v2p * w2, -v2p * w1, -v1p * w1, -xj * w1, 0],
                [0, 0, 0, -v1pp * w1, v2p],
                [0, 0, 0, -v2pp * w2, -v1p],
            ])
        else:
            phi = PolyMatrix(field, [
                [0, w2, v1p, 0, 0],
                [-v2pp, w1, 0, 0, xs],
                [v1pp, 0, -v2p, xs, 0],
                [0, 0, 0, -v2pp, -v1pp],
                [0, 0, 0, w1 * v1p, -v2p * w2],
            ])
            psi = PolyMatrix(field, [
                [v2p * w1, -v2p * w2, v1p * w1, 0, -xs],
                [v2, v1, v1p * v2pp, xs * v1p, 0],
                [v1pp * w1, -v1pp * w2, -v2pp * w2, -xs * w2, 0],
                [0, 0, 0, -v2p * w2, v1pp],
                [0, 0, 0, -v1p * w1, -v2pp],
            ])
    else:
        if kind == "rho":
            phi = PolyMatrix(field, [
                [0, -v2pp, -v2p, w1, 0],
                [v1p, 0, 0, w2, -v2pp * v1pp],
                [-v2pp, 0, v1pp, 0, 0],
                [0, v1p, 0, 0, v2],
                [0, -w2, 0, 0, w1 * v1pp],
            ])
            psi = PolyMatrix(field, [
                [-w2 * v1pp, w1 * v1pp, -w2 * v2p, 0, v1pp * v2pp],
                [0, 0, 0, w1 * v1pp, -v2],
                [-w2 * v2pp, w1 * v2pp, w1 * v1p, 0, v2pp * v2pp],
                [v1, v2, v1p * v2p, v1pp * v2pp, 0],
                [0, 0, 0, w2, v1p],
            ])
        elif kind == "mu":
            phi = PolyMatrix(field, [
                [v2pp, 0, 0, 0, w1],
                [0, v2pp, -v1p, 0, w2],
                [-v1pp, 0, v2p, v2pp, 0],
                [0, -v2p, 0, -v1p, 0],
                [0, -v1pp * w1, 0, w2 * v2pp, 0],
            ])
            psi = PolyMatrix(field, [
                [v2p * w2, -v2p * w1, -v1p * w1, -v2pp * w1, 0],
                [0, 0, 0, -v2pp * w2, -v1p],
                [v1pp * w2, -v1pp * w1, w2 * v2pp, 0, -v2pp],
                [0, 0, 0, -v1pp * w1, v2p],
                [v1, v2, v2pp * v1p, v2pp * v2pp, 0],
            ])
        else:
            raise FamilyError("mubar has no un-normalized display")
    return _certify(phi, psi, fermat_cubic(field),
                    "%s%s" % (kind, "" if normalized else "1"))


# -- ideals ----------------------------------------------------------------------

def build_ideal(kind, lam=None, sigma=None, r=None, beta=None):
    """Generator lists (in display order) for the presented ideals.

    Kinds: I_lambda; I_sigma_beta; I_1_sigma..I_4_sigma; J_1_sigma, J_2_sigma;
    T_1_sigma..T_8_sigma.
    """
    if kind == "I_lambda":
        if lam is None:
            raise FamilyError("I_lambda needs a surface point")
        fs = point_forms(lam)
        return [fs.p1, fs.p2, fs.p3]
    if sigma is None or r is None:
        raise FamilyError("%s needs sigma and roots" % kind)
    fs = building_blocks(sigma, r)
    field = r.field
    x = _variables(field)
    xj, xs = x[sigma.j - 1], x[sigma.s - 1]
    w1, w2, v1, v2 = fs.w1, fs.w2, fs.v1, fs.v2
    v1p, v1pp, v2p, v2pp = fs.v1p, fs.v1pp, fs.v2p, fs.v2pp
    if kind == "I_sigma_beta":
        if beta is None:
            beta = xj * xs
        return [w1, v2, beta]
    table = {
        "I_1_sigma": [xs * v2p, v2, w1],
        "I_2_sigma": [xj * v1pp, v1, w2],
        "I_3_sigma": [xs * v2pp, v2, v1],
        "I_4_sigma": [xj * v1p, v1, v2],
        "J_1_sigma": [v1, v2, v1p * v2p, v1pp * v2pp],
        "J_2_sigma": [v1, v2, v1p * v2pp, v1pp * v2p],
        "T_1_sigma": [v1, v2, v1p * v2pp, v2pp * v2pp],
        "T_2_sigma": [v1, v2, v1pp * v2pp, v2pp * v2pp],
        "T_3_sigma": [v1, v2, v1pp * v2p, v2p * v2p],
        "T_4_sigma": [v1, v2, v1p * v2p, v2p * v2p],
        "T_5_sigma": [v1, v2, v1p * v2pp, v1p * v1p],
        "T_6_sigma": [v1, v2, v1p * v2p, v1p * v1p],
        "T_7_sigma": [v1, v2, v1pp * v2pp, v1pp * v1pp],
        "T_8_sigma": [v1, v2, v1pp * v2p, v1pp * v1pp],
    }
    if kind not in table:
        raise FamilyError("unknown ideal kind %r" % (kind,))
    return table[kind]


# -- the six-generated pencil ----------------------------------------------------

def build_six_gen(lam, gamma):
    """The skew 6x6 pencil Lambda = x4*Gamma + [[0, -alpha^t], [alpha, 0]]
    over a curve point in chart [a:b:1]."""
    if lam.chart != 3:
        raise FamilyError("the 6x6 pencil needs the chart [a:b:1]")
    field = lam.field
    if gamma.field is not field:
        raise TowerError("gamma and point live over different fields")
    alpha = _curve_alpha_matrix(lam)
    zero3 = PolyMatrix.zeros(field, 3)
    alpha_block = block([[zero3, -alpha.transpose()], [alpha, zero3]])
    x4 = Polynomial.variable(field, 4)
    return gamma.matrix() * x4 + alpha_block


def _const_inverse(M):
    det = determinant(M).constant_term()
    if not det:
        raise FamilyError("matrix is not invertible")
    return adjugate(M) * det.inv()


def transport_matrices(lam):
    """Constant matrices (U, V) with U * alpha_lam^t = alpha_dual * V, where
    the dual point reverses the coordinates of lam.

    Two displays cover the chart [a:b:1]: one for a != 0 (V = U^t) and one
    for a = 0, whose dual lands in the chart [l1:1:0].  The identity is
    re-checked here before returning.
    """
    if lam.chart != 3:
        raise FamilyError("transport needs the chart [a:b:1]")
    field = lam.field
    a, b = lam.a, lam.b
    if a:
        U = PolyMatrix(field, [
            [b * b, b * (a + 1), -(a + 1) ** 2],
            [-(a + 1) ** 2, b * b, -b * (a + 1)],
            [b * (a + 1), (a + 1) ** 2, b * b],
        ])
        V = U.transpose()
    else:
        U = PolyMatrix(field, [
            [-b * b, -b, 1],
            [-2 * b, 1, b * b],
            [2 * b * b, 2 * b, 1],
        ])
        V = PolyMatrix(field, [
            [1, -2 * b, 2 * b * b],
            [-b, -b * b, -1],
            [-b, -b * b, 2],
        ])
    alpha = _curve_alpha_matrix(lam)
    alpha_dual = _curve_alpha_matrix(lam.dual())
    if U * alpha.transpose() != alpha_dual * V:
        raise FamilyError("transport identity U*alpha^t = alpha'*V failed")
    if not determinant(U).constant_term() or not determinant(V).constant_term():
        raise FamilyError("transport matrices must be invertible")
    return U, V


_LINEAR_EXPS = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0))


def chart_transport(lam):
    """A constant 6x6 block matrix U = [[0, T1], [T2, 0]] carrying the pencil
    over the chart-[l1:1:0] point lam to the pencil over [0:b:1], b = 1/l1,
    via Lambda -> U * Lambda * U^t.

    The blocks are derived from the exact solution space of the intertwining
    equation X * alpha_lam^t = alpha_target * Y rather than taken from fixed
    closed forms (see ERRATA.md for why): any solution with X and Y both
    invertible yields T2 = -X and T1 = (Y^t)^(-1), and the resulting U is
    re-checked against the pencil identity before being returned.
    """
    if lam.chart != 2:
        raise FamilyError("chart transport starts from the chart [l1:1:0]")
    field = lam.field
    target = CurvePoint.affine(field, 0, lam.l1.inv())
    alpha_t = _curve_alpha_matrix(lam).transpose()
    alpha_target = _curve_alpha_matrix(target)
    # Unknown vector: X row-major (9) then Y row-major (9).
    rows = []
    for i in range(3):
        for j in range(3):
            for exps in _LINEAR_EXPS:
                row = [field(0)] * 18
                for k in range(3):
                    row[3 * i + k] = alpha_t[k, j].coefficient(exps)
                    row[9 + 3 * k + j] = -alpha_target[i, k].coefficient(exps)
                rows.append(row)
    basis = field_nullspace(rows, field, 18)
    if not basis:
        raise FamilyError("no intertwining transport exists")

    def combination(coeffs):
        vec = [field(0)] * 18
        for c, bvec in zip(coeffs, basis):
            if c:
                vec = [w + c * v for w, v in zip(vec, bvec)]
        return vec

    tried = 0
    for coeffs in itertools.product((0, 1, -1, 2, -2, 3), repeat=len(basis)):
        if not any(coeffs):
            continue
        tried += 1
        if tried > 5000:
            break
        vec = combination(coeffs)
        X = PolyMatrix(field, [vec[0:3], vec[3:6], vec[6:9]])
        Y = PolyMatrix(field, [vec[9:12], vec[12:15], vec[15:18]])
        if not determinant(X).constant_term() or not determinant(Y).constant_term():
            continue
        T2 = -X
        T1 = _const_inverse(Y.transpose())
        zero3 = PolyMatrix.zeros(field, 3)
        U = block([[zero3, T1], [T2, zero3]])
        lam0 = build_six_gen(target, GammaBlock.zero(field))
        source0 = _chart2_alpha_block(lam)
        if U * source0 * U.transpose() != lam0:
            raise FamilyError("derived transport failed the pencil identity")
        return U
    raise FamilyError("no invertible intertwining transport found")


def _chart2_alpha_block(lam):
    field = lam.field
    alpha = _curve_alpha_matrix(lam)
    zero3 = PolyMatrix.zeros(field, 3)
    return block([[zero3, -alpha.transpose()], [alpha, zero3]])


# -- the five-general-points example ---------------------------------------------

def five_points_example(field=None):
    """The worked 6x6 skew presentation attached to five general surface
    points: returns (A, quadrics, points).

    ``field`` must contain a root w of w^2 + w + 1 and defaults to Q(w).
    A is skew with linear entries, the five quadrics vanish at all five
    points, and the points are returned normalized into the standard charts.
    The first row and column carry a factor w^2/6 relative to the source
    display, which puts the Pfaffian at exactly f rather than a unit
    multiple of it (see ERRATA.md).
    """
    if field is None:
        field = omega_field()
    u = field.gen("w")
    x1, x2, x3, x4 = _variables(field)

    def lin(c1, c2, c3, c4):
        return c1 * x1 + c2 * x2 + c3 * x3 + c4 * x4

    zero = field(0)
    f7 = field(1) / 7
    upper = {
        (0, 1): lin(zero, zero, -3 * u - 2, 2 * u - 1),
        (0, 2): lin(-u, -2 * u + 1, u + 1, u),
        (0, 3): lin(u - 2, field(-1), -3 * u - 4, 2 * u - 1),
        (0, 4): lin(zero, zero, u + 1, -u),
        (0, 5): lin(-u, u + 1, f7 * u + 3 * f7, -3 * f7 * u - 2 * f7),
        (1, 2): lin(u - 2, field(-1), field(1), -u + 2),
        (1, 3): lin(3 * u + 2, 2 * u + 3, 4 * u, field(1)),
        (1, 4): lin(zero, zero, -3 * u - 1, u - 2),
        (1, 5): lin(-u - 2, -u + 1, -u - 1, u),
        (2, 3): lin(zero, zero, field(-3), zero),
        (2, 4): lin(zero, zero, u + 1, zero),
        (2, 5): lin(zero, zero, -6 * f7 * u - 4 * f7, field(1)),
        (3, 4): lin(zero, zero, -3 * u - 1, zero),
        (3, 5): lin(zero, zero, -u, u),
        (4, 5): lin(field(-1), -u, zero, zero),
    }
    # As displayed, Pf = 6*w*f; scaling row and column 1 by w^2/6 is the
    # conjugation diag(w^2/6, 1, ..., 1) * A * diag(...)^t and makes
    # Pf(A) = f and det(A) = f^2 hold on the nose.
    unit = u * u / field(6)
    for key in list(upper):
        if 0 in key:
            upper[key] = unit * upper[key]
    zero_poly = Polynomial.zero(field)
    rows = [[zero_poly] * 6 for _ in range(6)]
    for (i, j), entry in upper.items():
        rows[i][j] = entry
        rows[j][i] = -entry
    A = PolyMatrix(field, rows)
    quadrics = [
        x2 * x4 + u * x3 * x4,
        -u * x2 * x3 + u * x3 * x4,
        x1 * x4 + x4 * x4 - (1 - u) * x3 * x4,
        u * (x1 + x3) * x3 + 2 * x3 * x4,
        -x3 * x4 - x1 * x1 + u * x1 * x2 - (u * u) * x2 * x2
        + x3 * x3 + x4 * x4,
    ]
    w2 = u * u
    points = [
        SurfacePoint(field, (-1, 0, 0, 1)),
        SurfacePoint(field, (-1, 0, 1, 0)),
        SurfacePoint(field, (-1, 1, 0, 0)),
        SurfacePoint(field, (-w2, 1, 0, 0)),
        SurfacePoint(field, (-w2, 1, -w2, 1)),
    ]
    return A, quadrics, points


# -- canonical addressing --------------------------------------------------------

# partner names of the 5x5 kinds: (underlying kind, swap matrices?)
_FIVE_GEN_NAMES = {
    "rho": ("rho", False), "omega": ("rho", True),
    "mu": ("mu", False), "nu": ("mu", True),
    "mubar": ("mubar", False), "nubar": ("mubar", True),
}

_ID_KEYS = {
    "alpha3": ("b", "c", "d", "eps"),
    "beta3": ("b", "c", "d", "eps"),
    "eta3": ("a", "b", "c", "eps"),
    "theta3": ("a", "b", "c"),
    "curve_alpha": ("lam",),
    "phi_lambda": ("lam",),
    "psi_lambda": ("lam",),
    "phi_sigma": ("sigma", "a", "b", "u"),
    "psi_sigma": ("sigma", "a", "b", "u"),
    "phi_t_sigma": ("t", "sigma", "a", "b", "u"),
    "psi_t_sigma": ("t", "sigma", "a", "b", "u"),
    "rho": ("sigma", "a", "b", "u", "normalized"),
    "omega": ("sigma", "a", "b", "u", "normalized"),
    "mu": ("sigma", "a", "b", "u", "normalized"),
    "nu": ("sigma", "a", "b", "u", "normalized"),
    "mubar": ("sigma", "a", "b", "u", "normalized"),
    "nubar": ("sigma", "a", "b", "u", "normalized"),
    "six_gen": ("lam", "gamma"),
}

_OPTIONAL_KEYS = {"normalized"}


def _format_scalar(value):
    return str(value).replace(" ", "")


class FamilyId:
    """Canonical string address of one catalog member, e.g.

        phi_t_sigma:t=1,sigma=234,a=-1,b=-w,u=w

    The value grammar reuses field literals; multi-component values (points,
    gamma constants) join their components with ``:``.  Formatting is
    canonical, so equal ids have equal strings.
    """

    __slots__ = ("field", "name", "params")

    def __init__(self, field, name, params):
        if name not in _ID_KEYS:
            raise FamilyError("unknown family name %r" % (name,))
        required = [k for k in _ID_KEYS[name] if k not in _OPTIONAL_KEYS]
        missing = [k for k in required if k not in params]
        if missing:
            raise FamilyError("missing parameters for %s: %s" % (name, missing))
        extra = [k for k in params if k not in _ID_KEYS[name]]
        if extra:
            raise FamilyError("unknown parameters for %s: %s" % (name, sorted(extra)))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "params", dict(params))

    def __setattr__(self, *_):
        raise AttributeError("FamilyId is immutable")

    @classmethod
    def parse(cls, field, text):
        name, _, rest = text.partition(":")
        name = name.strip()
        params = {}
        if rest.strip():
            for pair in rest.split(","):
                key, eq, raw = pair.partition("=")
                if not eq:
                    raise FamilyError("expected key=value, got %r" % (pair,))
                key = key.strip()
                raw = raw.strip()
                if key in params:
                    raise FamilyError("duplicate parameter %r" % (key,))
                params[key] = cls._parse_value(field, name, key, raw)
        return cls(field, name, params)

    @staticmethod
    def _parse_value(field, name, key, raw):
        if key == "t":
            if raw not in ("1", "2", "3", "4"):
                raise FamilyError("t must be 1..4, got %r" % (raw,))
            return int(raw)
        if key == "sigma":
            return SigmaPerm.from_string(raw)
        if key == "normalized":
            if raw not in ("0", "1"):
                raise FamilyError("normalized must be 0 or 1, got %r" % (raw,))
            return raw == "1"
        if key == "lam":
            coords = [parse_scalar(field, part) for part in raw.split(":")]
            if len(coords) == 4:
                return SurfacePoint(field, coords)
            if len(coords) == 3:
                return CurvePoint(field, coords)
            raise FamilyError("lam needs 3 or 4 ':'-separated coordinates")
        if key == "gamma":
            values = [parse_scalar(field, part) for part in raw.split(":")]
            return GammaBlock(field, values)
        return parse_scalar(field, raw)

    @staticmethod
    def _format_value(key, value):
        if key == "t":
            return str(value)
        if key == "sigma":
            return "%d%d%d" % (value.i, value.j, value.s)
        if key == "normalized":
            return "1" if value else "0"
        if key == "lam":
            return ":".join(_format_scalar(c) for c in value.coords)
        if key == "gamma":
            return ":".join(_format_scalar(v) for v in value.values)
        return _format_scalar(value)

    def __str__(self):
        pieces = []
        for key in _ID_KEYS[self.name]:
            if key not in self.params:
                continue
            if key == "normalized" and self.params[key]:
                continue  # the default; omitted for canonical form
            pieces.append("%s=%s" % (key, self._format_value(key, self.params[key])))
        return "%s:%s" % (self.name, ",".join(pieces))

    __repr__ = __str__

    def __eq__(self, other):
        if not isinstance(other, FamilyId):
            return NotImplemented
        return self.field is other.field and str(self) == str(other)

    def __hash__(self):
        return hash((id(self.field), str(self)))

    def build(self):
        """Construct the addressed object: a MatrixFactorization for every
        matrix family, a PolyMatrix for six_gen."""
        field = self.field
        name = self.name
        p = self.params
        if name in ("alpha3", "beta3"):
            a = p["b"] * p["c"] * p["d"] / p["eps"]
            r = RootData(field, a=a, b=p["b"], c=p["c"], d=p["d"], eps=p["eps"])
            return build_rank1_3gen(name, r)
        if name == "eta3":
            r = RootData(field, a=p["a"], b=p["b"], c=p["c"], eps=p["eps"])
            return build_rank1_3gen(name, r)
        if name == "theta3":
            r = RootData(field, a=p["a"], b=p["b"], c=p["c"])
            return build_rank1_3gen(name, r)
        if name == "curve_alpha":
            return build_curve_alpha(self._curve_point())
        if name in ("phi_lambda", "psi_lambda"):
            lam = p["lam"]
            if not isinstance(lam, SurfacePoint):
                raise FamilyError("%s needs a 4-coordinate point" % name)
            return build_orientable_4gen(name, lam=lam)
        if name in ("phi_sigma", "psi_sigma"):
            r = RootData(field, a=p["a"], b=p["b"], u=p["u"])
            return build_orientable_4gen(name, sigma=p["sigma"], r=r)
        if name in ("phi_t_sigma", "psi_t_sigma"):
            r = RootData(field, a=p["a"], b=p["b"], u=p["u"])
            return build_nonorientable_4gen(p["t"], name[:3], p["sigma"], r)
        if name in _FIVE_GEN_NAMES:
            kind, swap = _FIVE_GEN_NAMES[name]
            r = RootData(field, a=p["a"], b=p["b"], u=p["u"])
            mf = build_5gen(kind, p["sigma"], r,
                            normalized=p.get("normalized", True))
            if swap:
                return verify_matrix_factorization(mf.psi, mf.phi, mf.f)
            return mf
        # six_gen
        return build_six_gen(self._curve_point(), p["gamma"])

    def _curve_point(self):
        lam = self.params["lam"]
        if not isinstance(lam, CurvePoint):
            raise FamilyError("%s needs a 3-coordinate point" % self.name)
        return lam
