"""Exact arithmetic in towers of algebraic extensions of the rationals.

A tower is a chain Q = K0 < K1 < ... < Kr where each step adjoins one
generator modulo a monic defining polynomial whose coefficients live one
level down.  An element of level k is stored as a tuple of level-(k-1)
elements (a Fraction at the base), always fully reduced, so equal elements
have identical nested representations.

The two towers the catalog actually needs are ``omega_field()`` -- Q(w)
with w^2 + w + 1 = 0 -- and ``sextic_field()``, which further adjoins a
cube root ``g`` of -2 for the self-dual curve points.  Irreducibility of
the defining polynomials is trusted; a reducible modulus is detected late,
when some nonzero element fails to invert, and reported as such rather
than silently mis-computing.
"""

from __future__ import annotations

from fractions import Fraction


class TowerError(Exception):
    """Malformed tower description or mixed-field operands."""


class UnsupportedFieldError(TowerError):
    """The field does not contain the roots an operation requires."""


class NotInvertibleError(ArithmeticError):
    """A nonzero element had no inverse, so some defining polynomial of
    the tower is not irreducible over the level below it."""


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TowerError("expected an integer or Fraction, got %r" % (x,))


_TOWER_CACHE = {}


class NumberField:
    """A tower of simple extensions of Q, interned by its description.

    ``levels`` is a tuple of (generator name, modulus) pairs where each
    modulus is an ascending coefficient tuple over the previous level,
    monic of degree >= 2.
    """

    def __new__(cls, levels=()):
        levels = tuple(levels)
        cached = _TOWER_CACHE.get(levels)
        if cached is not None:
            return cached
        self = super().__new__(cls)
        self.levels = levels
        self.names = tuple(name for name, _ in levels)
        self.degree = 1
        for _, modulus in levels:
            self.degree *= len(modulus) - 1
        # moduli with coefficients lifted to values one level down
        self._moduli = tuple(
            tuple(self._lift(c, k) for c in modulus)
            for k, (_name, modulus) in enumerate(levels))
        self._inv_cache = {}
        _TOWER_CACHE[levels] = self
        return self

    def __repr__(self):
        if not self.levels:
            return "NumberField(Q)"
        return "NumberField(Q(%s))" % ", ".join(self.names)

    # -- level-value helpers ------------------------------------------------
    # A "value at level k" is a Fraction for k == 0 and otherwise a tuple of
    # deg_k values at level k-1.  All helpers keep values reduced.

    def _deg(self, k):
        return len(self.levels[k - 1][1]) - 1

    def _zero(self, k):
        if k == 0:
            return Fraction(0)
        return (self._zero(k - 1),) * self._deg(k)

    def _one(self, k):
        if k == 0:
            return Fraction(1)
        return (self._one(k - 1),) + (self._zero(k - 1),) * (self._deg(k) - 1)

    def _lift(self, q, k):
        # embed a rational as a constant of level k
        if k == 0:
            return q
        return (self._lift(q, k - 1),) + (self._zero(k - 1),) * (self._deg(k) - 1)

    def _is_zero(self, v, k):
        if k == 0:
            return v == 0
        return all(self._is_zero(c, k - 1) for c in v)

    def _vadd(self, v, w, k):
        if k == 0:
            return v + w
        return tuple(self._vadd(a, b, k - 1) for a, b in zip(v, w))

    def _vneg(self, v, k):
        if k == 0:
            return -v
        return tuple(self._vneg(c, k - 1) for c in v)

    def _vsub(self, v, w, k):
        return self._vadd(v, self._vneg(w, k), k)

    def _vmul(self, v, w, k):
        if k == 0:
            return v * w
        d = self._deg(k)
        prod = [self._zero(k - 1)] * (2 * d - 1)
        for i, a in enumerate(v):
            if self._is_zero(a, k - 1):
                continue
            for j, b in enumerate(w):
                prod[i + j] = self._vadd(prod[i + j], self._vmul(a, b, k - 1), k - 1)
        return self._vreduce(prod, k)

    def _vreduce(self, coeffs, k):
        # reduce an ascending coefficient list modulo the level-k modulus
        # (monic), returning a canonical tuple of length deg_k
        d = self._deg(k)
        modulus = self._moduli[k - 1]
        coeffs = list(coeffs)
        for i in range(len(coeffs) - 1, d - 1, -1):
            top = coeffs[i]
            if not self._is_zero(top, k - 1):
                for j in range(d):
                    coeffs[i - d + j] = self._vsub(
                        coeffs[i - d + j], self._vmul(top, modulus[j], k - 1), k - 1)
            del coeffs[i]
        while len(coeffs) < d:
            coeffs.append(self._zero(k - 1))
        return tuple(coeffs)

    def _vinv(self, v, k):
        if k == 0:
            if v == 0:
                raise ZeroDivisionError("division by zero")
            return 1 / v
        if self._is_zero(v, k):
            raise ZeroDivisionError("division by zero")
        # Extended Euclid on (v, modulus) over level k-1, tracking only the
        # cofactor of v:  old_r == old_t * v  (mod modulus)  at every step.
        modulus = list(self._moduli[k - 1])
        old_r, r = _ptrim(list(v), self, k - 1), modulus
        old_t, t = [self._one(k - 1)], []
        while r:
            q, rem = self._pdivmod(old_r, r, k - 1)
            old_r, r = r, rem
            old_t, t = t, _psub(old_t, _pmul(q, t, self, k - 1), self, k - 1)
        # old_r is the gcd; a unit iff the modulus was irreducible
        if len(old_r) != 1:
            raise NotInvertibleError(
                "nonzero element is not invertible: the defining polynomial "
                "of %r is not irreducible" % (self.levels[k - 1][0],))
        scale = self._vinv(old_r[0], k - 1)
        inv = [self._vmul(c, scale, k - 1) for c in old_t]
        return self._vreduce(inv, k)

    def _pdivmod(self, num, den, k):
        # division of ascending coefficient lists over the level-k field
        if not den:
            raise ZeroDivisionError("polynomial division by zero")
        lead_inv = self._vinv(den[-1], k)
        num = list(num)
        q = [self._zero(k)] * max(0, len(num) - len(den) + 1)
        while len(num) >= len(den):
            c = self._vmul(num[-1], lead_inv, k)
            shift = len(num) - len(den)
            q[shift] = c
            for i, dc in enumerate(den):
                num[shift + i] = self._vsub(num[shift + i], self._vmul(c, dc, k), k)
            num.pop()
            num = _ptrim(num, self, k)
        return q, num

    # -- public construction ------------------------------------------------

    def zero(self):
        return FieldElement(self, self._zero(len(self.levels)))

    def one(self):
        return FieldElement(self, self._one(len(self.levels)))

    def gen(self, name):
        """The tower generator with the given name, as an element."""
        for i, gen_name in enumerate(self.names):
            if gen_name == name:
                k = i + 1
                v = (self._zero(k - 1), self._one(k - 1)) + \
                    (self._zero(k - 1),) * (self._deg(k) - 2)
                for j in range(k + 1, len(self.levels) + 1):
                    v = (v,) + (self._zero(j - 1),) * (self._deg(j) - 1)
                return FieldElement(self, v)
        raise TowerError("no generator named %r in %r" % (name, self))

    def __call__(self, x):
        if isinstance(x, FieldElement):
            if x.field is not self:
                raise TowerError("element of %r used in %r" % (x.field, self))
            return x
        return FieldElement(self, self._lift(_as_fraction(x), len(self.levels)))

    def coerce_value(self, x):
        return self(x).value

    def inv_value(self, v):
        cached = self._inv_cache.get(v)
        if cached is None:
            cached = self._vinv(v, len(self.levels))
            self._inv_cache[v] = cached
        return cached


def _ptrim(coeffs, field, k):
    while coeffs and field._is_zero(coeffs[-1], k):
        coeffs.pop()
    return coeffs


def _pmul(p, q, field, k):
    if not p or not q:
        return []
    out = [field._zero(k)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = field._vadd(out[i + j], field._vmul(a, b, k), k)
    return _ptrim(out, field, k)


def _psub(p, q, field, k):
    n = max(len(p), len(q))
    p = list(p) + [field._zero(k)] * (n - len(p))
    for i, c in enumerate(q):
        p[i] = field._vsub(p[i], c, k)
    return _ptrim(p, field, k)


class FieldElement:
    """An exact element of a NumberField; immutable and canonical."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, *_):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise TowerError("operands from different fields")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field._lift(_as_fraction(other), len(self.field.levels))
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        k = len(self.field.levels)
        return FieldElement(self.field, self.field._vadd(self.value, v, k))

    __radd__ = __add__

    def __neg__(self):
        k = len(self.field.levels)
        return FieldElement(self.field, self.field._vneg(self.value, k))

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        k = len(self.field.levels)
        return FieldElement(self.field, self.field._vsub(self.value, v, k))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        k = len(self.field.levels)
        return FieldElement(self.field, self.field._vmul(self.value, v, k))

    __rmul__ = __mul__

    def inv(self):
        return FieldElement(self.field, self.field.inv_value(self.value))

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        k = len(self.field.levels)
        return FieldElement(self.field,
                            self.field._vmul(self.value, self.field.inv_value(v), k))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        k = len(self.field.levels)
        return FieldElement(self.field,
                            self.field._vmul(v, self.field.inv_value(self.value), k))

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.coerce_value(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.value))

    def __bool__(self):
        return not self.field._is_zero(self.value, len(self.field.levels))

    def is_rational(self):
        v = self.value
        for k in range(len(self.field.levels), 0, -1):
            if any(self.field._is_zero(c, k - 1) is False for c in v[1:]):
                return False
            v = v[0]
        return True

    def as_rational(self):
        v = self.value
        for _ in range(len(self.field.levels)):
            v = v[0]
        return v

    def __str__(self):
        return _fmt_value(self.field, self.value, len(self.field.levels))

    __repr__ = __str__


def _fmt_value(field, v, k):
    """Render in the literal grammar: rationals, generator names, *, +, -."""
    if k == 0:
        return str(v)
    name = field.names[k - 1]
    terms = []
    for power in range(len(v) - 1, -1, -1):
        c = v[power]
        if field._is_zero(c, k - 1):
            continue
        cs = _fmt_value(field, c, k - 1)
        if power == 0:
            terms.append(cs)
            continue
        gen_part = "*".join([name] * power)
        if cs == "1":
            terms.append(gen_part)
        elif cs == "-1":
            terms.append("-" + gen_part)
        elif _needs_parens(cs):
            terms.append("(" + cs + ")*" + gen_part)
        else:
            terms.append(cs + "*" + gen_part)
    if not terms:
        return "0"
    out = terms[0]
    for term in terms[1:]:
        if term.startswith("-"):
            out += " - " + term[1:]
        else:
            out += " + " + term
    return out


def _needs_parens(s):
    return "+" in s or "-" in s[1:]


def rationals():
    """The bare rationals (empty tower)."""
    return NumberField()


def make_tower(spec):
    """Build a NumberField from (name, ascending coefficients) pairs.

    Coefficients are integers or Fractions; each polynomial must be monic
    of degree at least 2.  Irreducibility is trusted, not checked.
    """
    levels = []
    seen = set()
    for name, coeffs in spec:
        if name in seen:
            raise TowerError("duplicate generator name %r" % name)
        seen.add(name)
        coeffs = tuple(_as_fraction(c) for c in coeffs)
        if len(coeffs) < 3:
            raise TowerError("defining polynomial for %r has degree < 2" % name)
        if coeffs[-1] != 1:
            raise TowerError("defining polynomial for %r is not monic" % name)
        levels.append((name, coeffs))
    return NumberField(tuple(levels))


def omega_field():
    """Q(w) with w^2 + w + 1 = 0: the field of every small-matrix family."""
    return make_tower([("w", (1, 1, 1))])


def sextic_field():
    """Q(w, g) with w^2 + w + 1 = 0 and g^3 = -2, degree 6 over Q.

    Hosts the self-dual curve points [1:b:1] with b^3 = -2 (the three such
    b are g, g*w and g*w*w).
    """
    return make_tower([("w", (1, 1, 1)), ("g", (2, 0, 0, 1))])


class RootTable:
    """The cube roots that parameterize the families."""

    def __init__(self, omega, roots_of_minus_one, primitive_cube_roots):
        self.omega = omega
        self.roots_of_minus_one = roots_of_minus_one
        self.primitive_cube_roots = primitive_cube_roots


def special_roots(field):
    """Cube roots of -1 and primitive cube roots of unity in ``field``.

    The field must contain w (a primitive cube root of unity); the three
    cube roots of -1 are then -1, -w, -w*w.
    """
    if not field.levels or field.levels[0] != ("w", (Fraction(1), Fraction(1), Fraction(1))):
        raise UnsupportedFieldError("field %r does not contain w" % (field,))
    w = field.gen("w")
    one = field.one()
    return RootTable(
        omega=w,
        roots_of_minus_one=(-one, -w, -w * w),
        primitive_cube_roots=(w, w * w),
    )
