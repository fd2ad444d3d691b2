"""Dense small matrices over Polynomial: determinant, adjugate, Pfaffians,
and the matrix-factorization identity check.

Everything here is exact.  Sizes stay at 8 or below, so determinants use
cofactor-style expansion (memoized over column subsets) and Pfaffians use the
first-row expansion

    Pf(S) = sum over m >= 2 of (-1)^m * M[s1, sm] * Pf(S without s1, sm)

for an ordered index tuple S = (s1, ..., s2k), with Pf of the empty matrix
equal to 1.  This normalization gives Pf([[0, a], [-a, 0]]) = a and, on a
generic 4x4 skew matrix, a12*a34 - a13*a24 + a14*a23; the adjoint built from
(-1)^(i+j) * sgn(j-i) * Pf(M with rows and columns i, j deleted) then satisfies
M * adjoint = adjoint * M = Pf(M) * Id, which is the identity all callers rely
on.
"""

from __future__ import annotations

from fractions import Fraction

from .field import FieldElement, TowerError
from .poly import Polynomial, parse


class MatrixError(ValueError):
    pass


class PolyMatrix:
    """An immutable rectangular matrix of polynomials over one field."""

    __slots__ = ("field", "nrows", "ncols", "entries")

    def __init__(self, field, rows):
        entries = []
        width = None
        for row in rows:
            coerced = []
            for entry in row:
                if isinstance(entry, Polynomial):
                    if entry.field is not field:
                        raise TowerError("matrix entries over different fields")
                    coerced.append(entry)
                else:
                    coerced.append(Polynomial.constant(field, field(entry)))
            if width is None:
                width = len(coerced)
            elif len(coerced) != width:
                raise MatrixError("ragged rows")
            entries.append(tuple(coerced))
        if not entries or width == 0:
            raise MatrixError("empty matrix")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nrows", len(entries))
        object.__setattr__(self, "ncols", width)
        object.__setattr__(self, "entries", tuple(entries))

    def __setattr__(self, *_):
        raise AttributeError("PolyMatrix is immutable")

    @classmethod
    def zeros(cls, field, nrows, ncols=None):
        ncols = nrows if ncols is None else ncols
        zero = Polynomial.zero(field)
        return cls(field, [[zero] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, field, n, scale=1):
        diag = Polynomial.constant(field, field(1)) * scale \
            if not isinstance(scale, Polynomial) else scale
        zero = Polynomial.zero(field)
        return cls(field, [[diag if i == j else zero for j in range(n)]
                           for i in range(n)])

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    def rows(self):
        return self.entries

    def is_square(self):
        return self.nrows == self.ncols

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.field is other.field and self.entries == other.entries)

    def __add__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise MatrixError("dimension mismatch in addition")
        return PolyMatrix(self.field, [
            [a + b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return PolyMatrix(self.field, [[-a for a in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            if self.ncols != other.nrows:
                raise MatrixError("dimension mismatch in product")
            zero = Polynomial.zero(self.field)
            out = []
            for i in range(self.nrows):
                row = []
                for j in range(other.ncols):
                    acc = zero
                    for k in range(self.ncols):
                        a = self.entries[i][k]
                        if a:
                            acc = acc + a * other.entries[k][j]
                    row.append(acc)
                out.append(row)
            return PolyMatrix(self.field, out)
        if isinstance(other, (int, Fraction, FieldElement, Polynomial)):
            return PolyMatrix(self.field,
                              [[a * other for a in row] for row in self.entries])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement, Polynomial)):
            return self * other
        return NotImplemented

    def transpose(self):
        return PolyMatrix(self.field, [
            [self.entries[i][j] for i in range(self.nrows)]
            for j in range(self.ncols)])

    def map_entries(self, fn):
        return PolyMatrix(self.field, [[fn(a) for a in row] for row in self.entries])

    def submatrix(self, rows, cols):
        return PolyMatrix(self.field, [
            [self.entries[i][j] for j in cols] for i in rows])

    def is_skew(self):
        if not self.is_square():
            return False
        for i in range(self.nrows):
            for j in range(i, self.ncols):
                if self.entries[i][j] != -self.entries[j][i]:
                    return False
        return True

    def is_zero(self):
        return all(not a for row in self.entries for a in row)

    def __str__(self):
        return format_matrix(self)

    def __repr__(self):
        return "PolyMatrix(%d x %d)" % (self.nrows, self.ncols)


def block(grid):
    """Assemble a matrix from a 2-D grid of conformable PolyMatrix blocks."""
    if not grid or not grid[0]:
        raise MatrixError("empty block grid")
    field = grid[0][0].field
    rows = []
    for block_row in grid:
        height = block_row[0].nrows
        if any(b.nrows != height for b in block_row):
            raise MatrixError("block heights differ within a row")
        for i in range(height):
            row = []
            for b in block_row:
                row.extend(b.entries[i])
            rows.append(row)
    widths = {sum(b.ncols for b in block_row) for block_row in grid}
    if len(widths) != 1:
        raise MatrixError("block widths differ between rows")
    return PolyMatrix(field, rows)


def determinant(M):
    """Exact determinant by expansion along rows, memoized on column subsets."""
    if not M.is_square():
        raise MatrixError("determinant of a non-square matrix")
    n = M.nrows
    one = Polynomial.one(M.field)
    zero = Polynomial.zero(M.field)
    # D[mask] = det of the submatrix on the first popcount(mask) rows and
    # the column set encoded by mask, built up a row at a time
    table = {0: one}
    for mask in range(1, 1 << n):
        row = bin(mask).count("1") - 1
        acc = zero
        # expand along the last row: sign is (-1)^(row + position-in-subset)
        position = 0
        for j in range(n):
            bit = 1 << j
            if not mask & bit:
                continue
            a = M.entries[row][j]
            if a:
                term = a * table[mask ^ bit]
                acc = acc + (term if (row + position) % 2 == 0 else -term)
            position += 1
        table[mask] = acc
    return table[(1 << n) - 1]


def adjugate(M):
    """The matrix adj with M * adj = adj * M = det(M) * Id."""
    if not M.is_square():
        raise MatrixError("adjugate of a non-square matrix")
    n = M.nrows
    if n == 1:
        return PolyMatrix.identity(M.field, 1)
    indices = range(n)
    cof = [[None] * n for _ in range(n)]
    for i in indices:
        rows = [r for r in indices if r != i]
        for j in indices:
            cols = [c for c in indices if c != j]
            minor = determinant(M.submatrix(rows, cols))
            cof[j][i] = minor if (i + j) % 2 == 0 else -minor
    return PolyMatrix(M.field, cof)


def _require_skew(M, parity):
    if not M.is_square():
        raise MatrixError("Pfaffian calculus needs a square matrix")
    if M.nrows % 2 != parity:
        kind = "even" if parity == 0 else "odd"
        raise MatrixError("expected %s dimension, got %d" % (kind, M.nrows))
    if not M.is_skew():
        raise MatrixError("matrix is not skew-symmetric")


def _pf_recursive(M, indices, memo):
    if not indices:
        return Polynomial.one(M.field)
    value = memo.get(indices)
    if value is not None:
        return value
    zero = Polynomial.zero(M.field)
    s1 = indices[0]
    total = zero
    for p in range(1, len(indices)):
        a = M.entries[s1][indices[p]]
        if a:
            rest = indices[1:p] + indices[p + 1:]
            term = a * _pf_recursive(M, rest, memo)
            # position p of the partner is m = p + 1 in 1-based counting,
            # so the sign (-1)^m alternates starting from +
            total = total + (term if p % 2 == 1 else -term)
    memo[indices] = total
    return total


def pfaffian(M):
    """Pfaffian of an even skew matrix; Pf(M)^2 = det(M)."""
    _require_skew(M, 0)
    return _pf_recursive(M, tuple(range(M.nrows)), {})


def pfaffian_adjoint(M):
    """The skew analogue of the adjugate: M * out = out * M = Pf(M) * Id."""
    _require_skew(M, 0)
    n = M.nrows
    memo = {}
    zero = Polynomial.zero(M.field)
    out = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            rest = tuple(k for k in range(n) if k != i and k != j)
            sub = _pf_recursive(M, rest, memo)
            if (i + j) % 2 == 1:
                sub = -sub
            if j < i:
                sub = -sub
            out[i][j] = sub
    return PolyMatrix(M.field, out)


def pfaffian_vector(d2):
    """Alternating principal Pfaffians of an odd skew matrix.

    Entry i is (-1)^i * Pf(d2 with row and column i deleted); the output row
    annihilates d2 on either side.
    """
    _require_skew(d2, 1)
    n = d2.nrows
    memo = {}
    out = []
    for i in range(n):
        rest = tuple(k for k in range(n) if k != i)
        sub = _pf_recursive(d2, rest, memo)
        out.append(sub if i % 2 == 0 else -sub)
    return out


def assemble_gorenstein_skew(d2, v):
    """The (2s+2) x (2s+2) skew matrix [[d2, v], [-v^t, 0]].

    ``d2`` is skew of odd size and ``v`` a column with matching height.
    """
    _require_skew(d2, 1)
    if isinstance(v, PolyMatrix):
        if v.ncols != 1 or v.nrows != d2.nrows:
            raise MatrixError("column has wrong shape")
        column = [v.entries[i][0] for i in range(v.nrows)]
    else:
        column = list(v)
        if len(column) != d2.nrows:
            raise MatrixError("column has wrong length")
    field = d2.field
    zero = Polynomial.zero(field)
    rows = [list(row) + [column[i]] for i, row in enumerate(d2.entries)]
    rows.append([-c for c in column] + [zero])
    return PolyMatrix(field, rows)


class MatrixFactorization:
    """A verified pair (phi, psi) with phi*psi = psi*phi = f*Id."""

    __slots__ = ("phi", "psi", "f", "verified")
    ok = True

    def __init__(self, phi, psi, f):
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "verified", True)

    def __setattr__(self, *_):
        raise AttributeError("MatrixFactorization is immutable")

    @property
    def size(self):
        return self.phi.nrows

    def __repr__(self):
        return "MatrixFactorization(n=%d, verified)" % self.size


class VerificationFailure:
    """The nonzero residual entries of phi*psi - f*Id and psi*phi - f*Id."""

    ok = False

    def __init__(self, phi, psi, f, residuals):
        self.phi = phi
        self.psi = psi
        self.f = f
        self.residuals = residuals  # list of (product tag, i, j, polynomial)

    def __repr__(self):
        spots = ", ".join("%s[%d,%d]" % (tag, i, j)
                          for tag, i, j, _ in self.residuals[:4])
        more = "" if len(self.residuals) <= 4 else ", ..."
        return "VerificationFailure(%s%s)" % (spots, more)


def verify_matrix_factorization(phi, psi, f):
    """Check phi*psi = psi*phi = f*Id exactly.

    Returns a MatrixFactorization on success and a VerificationFailure
    listing every nonzero residual entry otherwise (failure is data, not an
    exception, so sweeps can localize print typos).
    """
    if not (phi.is_square() and psi.is_square()) or phi.nrows != psi.nrows:
        raise MatrixError("factors must be square of equal size")
    if phi.field is not psi.field or (isinstance(f, Polynomial) and f.field is not phi.field):
        raise TowerError("factors over different fields")
    n = phi.nrows
    target = PolyMatrix.identity(phi.field, n, scale=f)
    residuals = []
    for tag, product in (("phi*psi", phi * psi), ("psi*phi", psi * phi)):
        diff = product - target
        for i in range(n):
            for j in range(n):
                if diff.entries[i][j]:
                    residuals.append((tag, i, j, diff.entries[i][j]))
    if residuals:
        return VerificationFailure(phi, psi, f, residuals)
    return MatrixFactorization(phi, psi, f)


# -- exact linear algebra over the coefficient field ---------------------------

def field_rref(rows, field, ncols=None):
    """Reduced row echelon form of a matrix of field constants.

    ``rows`` is an iterable of equal-length sequences of FieldElement (ints
    and Fractions are coerced).  Returns ``(reduced rows, pivot columns)``;
    ``ncols`` is only needed when ``rows`` is empty.
    """
    mat = [[field(c) for c in row] for row in rows]
    if ncols is None:
        if not mat:
            raise MatrixError("ncols is required for an empty system")
        ncols = len(mat[0])
    if any(len(row) != ncols for row in mat):
        raise MatrixError("ragged rows")
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        scale = mat[rank][col].inv()
        mat[rank] = [scale * c for c in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                factor = mat[i][col]
                mat[i] = [c - factor * p for c, p in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
    return tuple(tuple(row) for row in mat), tuple(pivots)


def field_nullspace(rows, field, ncols):
    """Basis of the right kernel of a constant matrix, one vector per free
    column of the reduced form."""
    reduced, pivots = field_rref(rows, field, ncols)
    zero = field(0)
    one = field(1)
    basis = []
    for free_col in range(ncols):
        if free_col in pivots:
            continue
        vec = [zero] * ncols
        vec[free_col] = one
        for row_idx, pivot_col in enumerate(pivots):
            vec[pivot_col] = -reduced[row_idx][free_col]
        basis.append(tuple(vec))
    return basis


# -- text format ---------------------------------------------------------------

def parse_matrix(field, text):
    """Rows separated by ';', entries by ',', entries in the polynomial grammar."""
    rows = []
    for row_text in text.split(";"):
        if not row_text.strip():
            continue
        rows.append([parse(field, cell) for cell in row_text.split(",")])
    if not rows:
        raise MatrixError("no rows in matrix text")
    return PolyMatrix(field, rows)


def format_matrix(M):
    return ";\n".join(", ".join(str(a) for a in row) for row in M.entries)
