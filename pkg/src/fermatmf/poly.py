"""Sparse exact multivariate polynomials in x1, x2, x3, x4 over a NumberField.

Monomials are exponent 4-tuples; a polynomial is a finite table mapping
monomials to nonzero field elements, so equal polynomials have identical
tables.  All printing uses graded lexicographic order with x1 > x2 > x3 > x4,
which keeps reports and fixtures diffable.
"""

from __future__ import annotations

from fractions import Fraction

from .field import FieldElement, TowerError

NVARS = 4
ZERO_EXP = (0,) * NVARS


def grlex_key(exps):
    """Sort key for graded lexicographic order, x1 > x2 > x3 > x4."""
    return (sum(exps), exps)


class ParseError(ValueError):
    """Syntax error in the polynomial grammar; carries the position."""

    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


class UnknownVariableError(ParseError):
    pass


class Polynomial:
    """An immutable sparse polynomial over a fixed NumberField."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        table = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != NVARS or any(e < 0 or not isinstance(e, int) for e in exps):
                    raise ValueError("bad monomial %r" % (exps,))
                coeff = field(coeff)
                if coeff:
                    prev = table.get(exps)
                    table[exps] = coeff if prev is None else prev + coeff
                    if not table[exps]:
                        del table[exps]
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", table)

    def __setattr__(self, *_):
        raise AttributeError("Polynomial is immutable")

    # -- construction helpers ----------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def one(cls, field):
        return cls(field, {ZERO_EXP: field.one()})

    @classmethod
    def constant(cls, field, c):
        return cls(field, {ZERO_EXP: field(c)})

    @classmethod
    def variable(cls, field, index):
        """x_index for index in 1..4."""
        if not 1 <= index <= NVARS:
            raise ValueError("variable index out of range: %r" % (index,))
        exps = tuple(1 if i == index - 1 else 0 for i in range(NVARS))
        return cls(field, {exps: field.one()})

    # -- ring structure ------------------------------------------------------

    def _coerce_scalar(self, other):
        if isinstance(other, Polynomial):
            if other.field is not self.field:
                raise TowerError("polynomials over different fields")
            return None
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        s = self._coerce_scalar(other)
        if s is NotImplemented:
            return NotImplemented
        if s is not None:
            other = Polynomial.constant(self.field, s)
        table = dict(self.terms)
        for exps, coeff in other.terms.items():
            prev = table.get(exps)
            total = coeff if prev is None else prev + coeff
            if total:
                table[exps] = total
            elif prev is not None:
                del table[exps]
        out = Polynomial(self.field)
        object.__setattr__(out, "terms", table)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Polynomial(self.field)
        object.__setattr__(out, "terms",
                           {e: -c for e, c in self.terms.items()})
        return out

    def __sub__(self, other):
        s = self._coerce_scalar(other)
        if s is NotImplemented:
            return NotImplemented
        if s is not None:
            other = Polynomial.constant(self.field, s)
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        s = self._coerce_scalar(other)
        if s is NotImplemented:
            return NotImplemented
        if s is not None:
            if not s:
                return Polynomial(self.field)
            out = Polynomial(self.field)
            object.__setattr__(out, "terms",
                               {e: c * s for e, c in self.terms.items()})
            return out
        table = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                prev = table.get(exps)
                total = prod if prev is None else prev + prod
                if total:
                    table[exps] = total
                elif prev is not None:
                    del table[exps]
        out = Polynomial(self.field)
        object.__setattr__(out, "terms", table)
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Polynomial.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field is other.field and self.terms == other.terms
        if isinstance(other, (int, Fraction, FieldElement)):
            return self == Polynomial.constant(self.field, other)
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    # -- queries -------------------------------------------------------------

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.field.zero())

    def constant_term(self):
        return self.terms.get(ZERO_EXP, self.field.zero())

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_constant(self):
        return not self.terms or set(self.terms) == {ZERO_EXP}

    def is_homogeneous(self):
        """(True, common degree) or (False, None); zero counts as (True, None)."""
        if not self.terms:
            return True, None
        degrees = {sum(e) for e in self.terms}
        if len(degrees) == 1:
            return True, degrees.pop()
        return False, None

    def linear_part(self):
        """The sum of the degree-1 terms (everything else dropped)."""
        out = Polynomial(self.field)
        object.__setattr__(out, "terms",
                           {e: c for e, c in self.terms.items() if sum(e) == 1})
        return out

    def restrict(self, var, value):
        """Substitute ``value`` (a polynomial or scalar) for x_var."""
        if not 1 <= var <= NVARS:
            raise ValueError("variable index out of range: %r" % (var,))
        if not isinstance(value, Polynomial):
            value = Polynomial.constant(self.field, self.field(value))
        elif value.field is not self.field:
            raise TowerError("polynomials over different fields")
        i = var - 1
        result = Polynomial(self.field)
        powers = {0: Polynomial.one(self.field)}
        for exps, coeff in sorted(self.terms.items(), key=lambda t: grlex_key(t[0])):
            e = exps[i]
            if e not in powers:
                powers[e] = value ** e
            rest = exps[:i] + (0,) + exps[i + 1:]
            result = result + Polynomial(self.field, {rest: coeff}) * powers[e]
        return result

    def eval(self, point):
        """Exact value at a 4-tuple of field elements (or ints/Fractions)."""
        point = [self.field(c) for c in point]
        total = self.field.zero()
        for exps, coeff in self.terms.items():
            term = coeff
            for x, e in zip(point, exps):
                if e:
                    term = term * x ** e
            total = total + term
        return total

    def leading(self):
        """(monomial, coefficient) largest in graded lex; None for zero."""
        if not self.terms:
            return None
        exps = max(self.terms, key=grlex_key)
        return exps, self.terms[exps]

    def reduced_mod(self, modulus):
        """Remainder of division by a single polynomial, graded-lex leading term.

        Used to compare matrix entries modulo one relation (e.g. the cubic
        itself); with a single monic-leading divisor the remainder is
        canonical.
        """
        if modulus.field is not self.field:
            raise TowerError("polynomials over different fields")
        lead = modulus.leading()
        if lead is None:
            raise ZeroDivisionError("division by the zero polynomial")
        lexps, lcoeff = lead
        lcoeff_inv = lcoeff.inv()
        rest = modulus - Polynomial(self.field, {lexps: lcoeff})
        rem = self
        while True:
            target = None
            for exps in rem.terms:
                if all(a >= b for a, b in zip(exps, lexps)):
                    if target is None or grlex_key(exps) > grlex_key(target):
                        target = exps
            if target is None:
                return rem
            q = tuple(a - b for a, b in zip(target, lexps))
            factor = Polynomial(self.field, {q: rem.terms[target] * lcoeff_inv})
            rem = rem - factor * modulus

    # -- printing ------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exps in sorted(self.terms, key=grlex_key, reverse=True):
            coeff = self.terms[exps]
            vars_part = "*".join(
                "x%d" % (i + 1) if e == 1 else "x%d^%d" % (i + 1, e)
                for i, e in enumerate(exps) if e)
            cs = str(coeff)
            if not vars_part:
                pieces.append(cs)
            elif cs == "1":
                pieces.append(vars_part)
            elif cs == "-1":
                pieces.append("-" + vars_part)
            elif "+" in cs or "-" in cs[1:]:
                pieces.append("(" + cs + ")*" + vars_part)
            else:
                pieces.append(cs + "*" + vars_part)
        out = pieces[0]
        for piece in pieces[1:]:
            if piece.startswith("-"):
                out += " - " + piece[1:]
            else:
                out += " + " + piece
        return out

    __repr__ = __str__


def fermat_cubic(field):
    """f = x1^3 + x2^3 + x3^3 + x4^3."""
    one = field.one()
    return Polynomial(field, {(3, 0, 0, 0): one, (0, 3, 0, 0): one,
                              (0, 0, 3, 0): one, (0, 0, 0, 3): one})


def fermat_cubic3(field):
    """f3 = x1^3 + x2^3 + x3^3, the restriction of f to x4 = 0."""
    one = field.one()
    return Polynomial(field, {(3, 0, 0, 0): one, (0, 3, 0, 0): one,
                              (0, 0, 3, 0): one})


# -- parsing ------------------------------------------------------------------

_ATOM_STARTERS = ("(",)


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip_ws()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def error(self, message):
        raise ParseError(message, self.pos)

    def take_int(self):
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a number")
        return int(self.text[start:self.pos])

    def take_name(self):
        # a name is letters followed by digits, so "x1x2" splits into two
        # variable factors (the grammar's optional *)
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return self.text[start:self.pos], start


def parse(field, text):
    """Parse the polynomial grammar over ``field``.

    Variables are x1..x4; ``^`` takes integer powers; ``*`` may be omitted
    between variable/generator/parenthesized factors; coefficients are
    rationals ``p/q`` and the field's generator names.
    """
    toks = _Tokens(text)
    p = _parse_sum(field, toks)
    if toks.peek() is not None:
        toks.error("unexpected %r" % toks.peek())
    return p


def parse_scalar(field, text):
    """Parse a field-element literal (a degree-0 polynomial)."""
    p = parse(field, text)
    if not p.is_constant():
        raise ParseError("expected a constant, got %r" % text, 0)
    return p.constant_term()


def _parse_sum(field, toks):
    ch = toks.peek()
    negate = False
    if ch in ("+", "-"):
        toks.pos += 1
        negate = ch == "-"
    p = _parse_product(field, toks)
    if negate:
        p = -p
    while True:
        ch = toks.peek()
        if ch == "+":
            toks.pos += 1
            p = p + _parse_product(field, toks)
        elif ch == "-":
            toks.pos += 1
            p = p - _parse_product(field, toks)
        else:
            return p


def _parse_product(field, toks):
    p = _parse_power(field, toks)
    while True:
        ch = toks.peek()
        if ch == "*":
            toks.pos += 1
            p = p * _parse_power(field, toks)
        elif ch is not None and (ch.isalpha() or ch == "("):
            # the grammar allows omitting * before a variable-like factor
            p = p * _parse_power(field, toks)
        else:
            return p


def _parse_power(field, toks):
    p = _parse_atom(field, toks)
    while toks.peek() == "^":
        toks.pos += 1
        n = toks.take_int()
        p = p ** n
    return p


def _parse_atom(field, toks):
    ch = toks.peek()
    if ch is None:
        toks.error("unexpected end of input")
    if ch == "(":
        toks.pos += 1
        p = _parse_sum(field, toks)
        if toks.peek() != ")":
            toks.error("expected ')'")
        toks.pos += 1
        return p
    if ch == "-":
        toks.pos += 1
        return -_parse_atom(field, toks)
    if ch.isdigit():
        num = toks.take_int()
        if toks.peek() == "/":
            toks.pos += 1
            den = toks.take_int()
            if den == 0:
                toks.error("zero denominator")
            return Polynomial.constant(field, Fraction(num, den))
        return Polynomial.constant(field, num)
    if ch.isalpha():
        name, start = toks.take_name()
        if name and name[0] == "x":
            try:
                index = int(name[1:])
            except ValueError:
                index = None
            if index is None or not 1 <= index <= NVARS:
                raise UnknownVariableError("unknown variable %r" % name, start)
            return Polynomial.variable(field, index)
        if name in field.names:
            return Polynomial.constant(field, field.gen(name))
        raise UnknownVariableError("unknown name %r" % name, start)
    toks.error("unexpected %r" % ch)
