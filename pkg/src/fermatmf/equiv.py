"""Equivalence tests for presentation matrices.

A cokernel only sees its presentation matrix up to multiplication by
invertible matrices on either side, and multiplication by constants maps
linear parts to linear parts.  The tools here exploit the sound
direction of that observation: when even the mod-m^2 reductions admit no
constant intertwiner, the original modules differ.  Verdicts are
three-valued on purpose -- "inconclusive" is an honest answer and is
never upgraded to a claim.
"""

from __future__ import annotations

import itertools
import random

from .families import FamilyId, SigmaPerm
from .field import omega_field, special_roots
from .matrix import (MatrixError, PolyMatrix, determinant, field_nullspace,
                     field_rref, format_matrix)
from .poly import Polynomial, grlex_key

_LINEAR_EXPS = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))

# Solution spaces wider than this skip the symbolic determinant and fall
# back to seeded evaluation; see _decide_blocks.
_PARAM_LIMIT = 12
_WITNESS_VALUES = (0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6)
_SAMPLE_COUNT = 64
_SAMPLE_SEED = 271828
_SAMPLE_BOUND = 10 ** 6


class EquivError(ValueError):
    """Raised for malformed inputs to the equivalence toolkit."""


# -- domain types ---------------------------------------------------------------

class ReducedMatrix:
    """A matrix of linear forms: what is left of a presentation matrix
    after killing every term of degree two and higher."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        if not isinstance(matrix, PolyMatrix):
            raise EquivError("ReducedMatrix wraps a PolyMatrix")
        for row in matrix.rows():
            for entry in row:
                if entry != entry.linear_part():
                    raise EquivError("entry is not a linear form: %s" % (entry,))
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, *_):
        raise AttributeError("ReducedMatrix is immutable")

    @property
    def field(self):
        return self.matrix.field

    @property
    def nrows(self):
        return self.matrix.nrows

    @property
    def ncols(self):
        return self.matrix.ncols

    def __getitem__(self, key):
        return self.matrix[key]

    def __eq__(self, other):
        if not isinstance(other, ReducedMatrix):
            return NotImplemented
        return self.matrix == other.matrix

    def __repr__(self):
        return "ReducedMatrix(%d x %d)" % (self.nrows, self.ncols)


class EquivalenceVerdict:
    """Outcome of one decision, with the certifying constant matrices.

    ``witness`` is a tuple of constant matrices: (U, V) for an
    intertwining pair, (T,) for a skew symmetrizer.  Witnesses are
    re-verified before the verdict is built, so holding one means the
    defining identity has been checked exactly.
    """

    OUTCOMES = ("equivalent_with_witness", "not_equivalent", "inconclusive")

    __slots__ = ("outcome", "witness", "method", "detail")

    def __init__(self, outcome, witness=None, method="", detail=""):
        if outcome not in self.OUTCOMES:
            raise EquivError("unknown outcome %r" % (outcome,))
        if (outcome == "equivalent_with_witness") != (witness is not None):
            raise EquivError("exactly the equivalent outcome carries a witness")
        object.__setattr__(self, "outcome", outcome)
        object.__setattr__(self, "witness", witness)
        object.__setattr__(self, "method", method)
        object.__setattr__(self, "detail", detail)

    def __setattr__(self, *_):
        raise AttributeError("EquivalenceVerdict is immutable")

    def to_json(self, pair=None):
        out = {}
        if pair is not None:
            out["pair"] = list(pair)
        out["method"] = self.method
        out["outcome"] = self.outcome
        if self.witness is not None:
            out["witness"] = [_one_line(W) for W in self.witness]
        return out

    def __repr__(self):
        return "EquivalenceVerdict(%s, method=%s)" % (self.outcome, self.method)


class ClassReport:
    """A catalog sweep: who was enumerated and what separates them.

    ``evidence`` holds one record per compared pair, ``inconclusive``
    the pairs the sweep could not prove distinct -- literal duplicates
    and reduced-equivalent pairs land there too, never in a distinctness
    claim.  ``count`` always equals the number of representatives.
    """

    __slots__ = ("catalog", "representatives", "count", "evidence",
                 "inconclusive")

    def __init__(self, catalog, representatives, evidence=(), inconclusive=()):
        representatives = tuple(representatives)
        object.__setattr__(self, "catalog", catalog)
        object.__setattr__(self, "representatives", representatives)
        object.__setattr__(self, "count", len(representatives))
        object.__setattr__(self, "evidence", tuple(evidence))
        object.__setattr__(self, "inconclusive", tuple(inconclusive))

    def __setattr__(self, *_):
        raise AttributeError("ClassReport is immutable")

    def to_json(self):
        reps = []
        for rep in self.representatives:
            if isinstance(rep, PolyMatrix):
                reps.append(_one_line(rep))
            else:
                reps.append(str(rep))
        return {
            "catalog": self.catalog,
            "count": self.count,
            "representatives": reps,
            "evidence": [dict(record, pair=list(record["pair"]))
                         for record in self.evidence],
            "inconclusive": [list(pair) for pair in self.inconclusive],
        }

    def __repr__(self):
        return "ClassReport(%s, count=%d)" % (self.catalog, self.count)


def _one_line(M):
    return format_matrix(M).replace("\n", " ")


def _entry_matrix(M):
    if isinstance(M, ReducedMatrix):
        return M.matrix
    if isinstance(M, PolyMatrix):
        return M
    raise EquivError("expected a PolyMatrix or ReducedMatrix")


# -- reduction ------------------------------------------------------------------

def linear_reduction(M):
    """Entrywise linear part: the mod-m^2 picture of a presentation matrix."""
    return ReducedMatrix(_entry_matrix(M).map_entries(lambda p: p.linear_part()))


# -- polynomials in solution-space parameters -----------------------------------

class _ParamPoly:
    """Sparse polynomial in the parameters t_0..t_{k-1} of a solution
    space, coefficients in the ground field."""

    __slots__ = ("field", "nparams", "terms")

    def __init__(self, field, nparams, terms=None):
        table = {}
        if terms:
            for exps, coeff in terms.items():
                coeff = field(coeff)
                if coeff:
                    table[tuple(exps)] = coeff
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nparams", nparams)
        object.__setattr__(self, "terms", table)

    def __setattr__(self, *_):
        raise AttributeError("_ParamPoly is immutable")

    @classmethod
    def constant(cls, field, nparams, c):
        return cls(field, nparams, {(0,) * nparams: c})

    def _with_terms(self, table):
        out = _ParamPoly(self.field, self.nparams)
        object.__setattr__(out, "terms", table)
        return out

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        table = dict(self.terms)
        for exps, coeff in other.terms.items():
            total = table.get(exps, None)
            total = coeff if total is None else total + coeff
            if total:
                table[exps] = total
            elif exps in table:
                del table[exps]
        return self._with_terms(table)

    def __neg__(self):
        return self._with_terms({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        table = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                total = table.get(e, None)
                prod = c1 * c2
                total = prod if total is None else total + prod
                if total:
                    table[e] = total
                elif e in table:
                    del table[e]
        return self._with_terms(table)

    def substitute(self, index, value):
        """Fix parameter ``index`` to a field value."""
        table = {}
        for exps, coeff in self.terms.items():
            c = coeff * value ** exps[index] if exps[index] else coeff
            e = exps[:index] + (0,) + exps[index + 1:]
            total = table.get(e, None)
            total = c if total is None else total + c
            if total:
                table[e] = total
            elif e in table:
                del table[e]
        return self._with_terms(table)


def _param_det(field, nparams, grid):
    """Determinant of a square grid of _ParamPoly; same row expansion and
    memoization as matrix.determinant."""
    n = len(grid)
    table = {0: _ParamPoly.constant(field, nparams, 1)}
    for mask in range(1, 1 << n):
        row = bin(mask).count("1") - 1
        acc = _ParamPoly(field, nparams)
        position = 0
        for j in range(n):
            bit = 1 << j
            if not mask & bit:
                continue
            a = grid[row][j]
            if a:
                term = a * table[mask ^ bit]
                acc = acc + (term if (row + position) % 2 == 0 else -term)
            position += 1
        table[mask] = acc
    return table[(1 << n) - 1]


# -- the decision engine --------------------------------------------------------

def _combine(field, basis, values):
    total = [field.zero()] * len(basis[0])
    for value, vec in zip(values, basis):
        if value:
            total = [t + value * c for t, c in zip(total, vec)]
    return total


def _block_matrix(field, vec, offset, size):
    return PolyMatrix(field, [[vec[offset + i * size + j] for j in range(size)]
                              for i in range(size)])


def _pin_parameters(field, factors):
    """One value per parameter keeping every factor nonzero.

    Parameters are fixed one at a time.  Each factor is a determinant of
    a matrix whose entries are affine in the parameters, so its degree in
    any single parameter is at most the matrix size (6 at worst); two
    factors leave at most 12 bad values and the candidate list has 13.
    """
    nparams = factors[0].nparams
    current = list(factors)
    chosen = []
    for index in range(nparams):
        for raw in _WITNESS_VALUES:
            value = field(raw)
            attempt = [f.substitute(index, value) for f in current]
            if all(attempt):
                chosen.append(value)
                current = attempt
                break
        else:
            raise EquivError("witness search exhausted its candidate values")
    return chosen


def _decide_blocks(field, basis, blocks, verify):
    """Is there a solution whose designated square blocks are all invertible?

    ``basis`` spans the solution space as flat coefficient vectors;
    ``blocks`` lists (offset, size) of row-major square blocks inside a
    vector; ``verify`` re-checks a candidate witness exactly.  Up to
    _PARAM_LIMIT parameters the answer is symbolic (a determinant per
    block over the parameters); beyond that, 64 seeded draws decide, and
    an all-zero outcome is reported with its sampling method so callers
    can tell the two kinds of "no" apart.
    """
    k = len(basis)
    if k == 0:
        return EquivalenceVerdict(
            "not_equivalent", method="empty_solution_space",
            detail="only the zero solution intertwines the two matrices")
    if k <= _PARAM_LIMIT:
        factors = []
        for offset, size in blocks:
            grid = []
            for i in range(size):
                row = []
                for j in range(size):
                    terms = {}
                    for b, vec in enumerate(basis):
                        c = vec[offset + i * size + j]
                        if c:
                            terms[tuple(1 if t == b else 0
                                        for t in range(k))] = c
                    row.append(_ParamPoly(field, k, terms))
                grid.append(row)
            det = _param_det(field, k, grid)
            if not det:
                return EquivalenceVerdict(
                    "not_equivalent", method="determinant_polynomial",
                    detail="a block determinant vanishes identically on the "
                           "%d-parameter solution space" % k)
            factors.append(det)
        values = _pin_parameters(field, factors)
        vec = _combine(field, basis, values)
        witness = tuple(_block_matrix(field, vec, offset, size)
                        for offset, size in blocks)
        if not verify(witness):
            raise EquivError("internal witness check failed")
        return EquivalenceVerdict("equivalent_with_witness", witness=witness,
                                  method="determinant_polynomial")
    rng = random.Random(_SAMPLE_SEED)
    for _ in range(_SAMPLE_COUNT):
        values = [field(rng.randint(-_SAMPLE_BOUND, _SAMPLE_BOUND))
                  for _ in basis]
        vec = _combine(field, basis, values)
        mats = tuple(_block_matrix(field, vec, offset, size)
                     for offset, size in blocks)
        if all(determinant(W) for W in mats):
            if not verify(mats):
                raise EquivError("internal witness check failed")
            return EquivalenceVerdict("equivalent_with_witness", witness=mats,
                                      method="sampled_witness")
    return EquivalenceVerdict(
        "not_equivalent", method="sampled_determinant",
        detail="%d-parameter solution space; %d seeded draws from "
               "[-10^6, 10^6] all gave a singular block (degree of the "
               "determinant product is at most %d)"
               % (k, _SAMPLE_COUNT, 2 * max(size for _, size in blocks)))


# -- scalar equivalence ---------------------------------------------------------

def _intertwiner_basis(A, B):
    """Basis of {(U, V) constant : U*A = B*V}, each vector holding U then V
    flattened row-major."""
    m, n = A.nrows, A.ncols
    field = A.field
    nunknowns = m * m + n * n
    rows = []
    for i in range(m):
        for j in range(n):
            support = set()
            for k in range(m):
                support.update(A.entries[k][j].terms)
            for k in range(n):
                support.update(B.entries[i][k].terms)
            for exps in sorted(support, key=grlex_key):
                row = [field.zero()] * nunknowns
                for k in range(m):
                    row[i * m + k] = A.entries[k][j].coefficient(exps)
                for k in range(n):
                    col = m * m + k * n + j
                    row[col] = row[col] - B.entries[i][k].coefficient(exps)
                rows.append(row)
    return field_nullspace(rows, field, nunknowns)


def scalar_equivalence(A, B):
    """Look for invertible constant U, V with U*A = B*V.

    Works on any two matrices of the same shape over the same field; on
    mod-m^2 reductions the verdict is the usual notion of equivalence of
    linear presentations.  A not_equivalent answer from the symbolic
    path is exact; an equivalent answer always carries a re-checked
    witness pair.
    """
    A = _entry_matrix(A)
    B = _entry_matrix(B)
    if A.field is not B.field:
        raise EquivError("matrices over different fields")
    if (A.nrows, A.ncols) != (B.nrows, B.ncols):
        raise MatrixError("dimension mismatch: %dx%d vs %dx%d"
                          % (A.nrows, A.ncols, B.nrows, B.ncols))
    m, n = A.nrows, A.ncols
    basis = _intertwiner_basis(A, B)

    def verify(witness):
        U, V = witness
        if not (determinant(U) and determinant(V)):
            return False
        return U * A == B * V

    return _decide_blocks(A.field, basis, [(0, m), (m * m, n)], verify)


# -- skew symmetrizers ----------------------------------------------------------

def skew_symmetrizer_exists(M, modulus=None):
    """Is there an invertible constant T making T*M skew-symmetric?

    With ``modulus`` the condition is asked only modulo that single
    polynomial; since T is constant, reducing the entries of M first is
    the same as reducing T*M + (T*M)^t afterwards.  The verdict reuses
    the equivalence vocabulary: equivalent_with_witness means "exists",
    with witness (T,).
    """
    M = _entry_matrix(M)
    if not M.is_square():
        raise MatrixError("skew symmetrizer of a non-square matrix")
    field = M.field
    n = M.nrows
    if modulus is not None:
        M = M.map_entries(lambda p: p.reduced_mod(modulus))
    rows = []
    for i in range(n):
        for j in range(i, n):
            support = set()
            for k in range(n):
                support.update(M.entries[k][j].terms)
                support.update(M.entries[k][i].terms)
            for exps in sorted(support, key=grlex_key):
                row = [field.zero()] * (n * n)
                for k in range(n):
                    row[i * n + k] = row[i * n + k] \
                        + M.entries[k][j].coefficient(exps)
                    row[j * n + k] = row[j * n + k] \
                        + M.entries[k][i].coefficient(exps)
                rows.append(row)
    basis = field_nullspace(rows, field, n * n)

    def verify(witness):
        T, = witness
        if not determinant(T):
            return False
        P = T * M
        return (P + P.transpose()).is_zero()

    return _decide_blocks(field, basis, [(0, n)], verify)


# -- linear invariants ----------------------------------------------------------

def fitting_linear_span(M):
    """Reduced basis of the K-span of the linear parts of all entries."""
    M = _entry_matrix(M)
    field = M.field
    rows = []
    for row in M.rows():
        for entry in row:
            lin = entry.linear_part()
            if lin:
                rows.append([lin.coefficient(e) for e in _LINEAR_EXPS])
    if not rows:
        return ()
    reduced, pivots = field_rref(rows, field)
    basis = []
    for r in range(len(pivots)):
        terms = {e: c for e, c in zip(_LINEAR_EXPS, reduced[r]) if c}
        basis.append(Polynomial(field, terms))
    return tuple(basis)


# -- bounded-degree matrix equations --------------------------------------------

def _monomials_up_to(bound):
    exps = [e for e in itertools.product(range(bound + 1), repeat=4)
            if sum(e) <= bound]
    return sorted(exps, key=grlex_key)


def matrix_equation_solvable(W, V, C, degree_bound):
    """Decide W*A + B*V = C for unknown A, B of entry degree <= the bound.

    Pure linear algebra on the unknown coefficients.  Returns
    (True, (A, B)) with the identity re-checked exactly, or (False, None).
    """
    field = W.field
    if V.field is not field or C.field is not field:
        raise EquivError("matrices over different fields")
    if degree_bound < 0:
        raise EquivError("degree bound must be >= 0")
    if W.nrows != C.nrows or V.ncols != C.ncols:
        raise MatrixError("dimension mismatch in W*A + B*V = C")
    m, p = W.nrows, W.ncols
    q, r = V.nrows, V.ncols
    monos = _monomials_up_to(degree_bound)
    nm = len(monos)
    na = p * r * nm

    def a_index(k, j, t):
        return (k * r + j) * nm + t

    def b_index(i, l, t):
        return na + (i * q + l) * nm + t

    nunknowns = na + m * q * nm
    rows = []
    for i in range(m):
        for j in range(r):
            bucket = {}

            def add(col, exps, shift, coeff):
                e = tuple(x + y for x, y in zip(exps, shift))
                cols = bucket.setdefault(e, {})
                cols[col] = cols.get(col, field.zero()) + coeff

            for k in range(p):
                for exps, coeff in W.entries[i][k].terms.items():
                    for t, mu in enumerate(monos):
                        add(a_index(k, j, t), exps, mu, coeff)
            for l in range(q):
                for exps, coeff in V.entries[l][j].terms.items():
                    for t, mu in enumerate(monos):
                        add(b_index(i, l, t), exps, mu, coeff)
            support = set(bucket) | set(C.entries[i][j].terms)
            for e in sorted(support, key=grlex_key):
                row = [field.zero()] * (nunknowns + 1)
                for col, coeff in bucket.get(e, {}).items():
                    row[col] = coeff
                row[nunknowns] = C.entries[i][j].coefficient(e)
                rows.append(row)
    reduced, pivots = field_rref(rows, field, nunknowns + 1)
    if nunknowns in pivots:
        return False, None
    solution = [field.zero()] * nunknowns
    for row_idx, col in enumerate(pivots):
        solution[col] = reduced[row_idx][nunknowns]
    A = PolyMatrix(field, [
        [Polynomial(field, {mu: solution[a_index(k, j, t)]
                            for t, mu in enumerate(monos)})
         for j in range(r)] for k in range(p)])
    B = PolyMatrix(field, [
        [Polynomial(field, {mu: solution[b_index(i, l, t)]
                            for t, mu in enumerate(monos)})
         for l in range(q)] for i in range(m)])
    if W * A + B * V != C:
        raise EquivError("internal solution check failed")
    return True, (A, B)


# -- catalogs -------------------------------------------------------------------

def enumerate_classes(catalog, field=None):
    """Representatives of one catalog, as canonical ids sorted by string.

    rank2_3gen folds the twist (b,c,d,eps) ~ (b*eps, c*eps, d*eps, eps^2)
    into one representative per orbit; the other catalogs take every
    parameter tuple at face value.
    """
    if field is None:
        field = omega_field()
    roots = special_roots(field)
    minus = roots.roots_of_minus_one
    prim = roots.primitive_cube_roots
    ids = []
    if catalog == "rank2_3gen":
        for name in ("alpha3", "beta3"):
            seen = set()
            for b, c, d in itertools.product(minus, repeat=3):
                for eps in prim:
                    fid = FamilyId(field, name,
                                   {"b": b, "c": c, "d": d, "eps": eps})
                    twin = FamilyId(field, name,
                                    {"b": b * eps, "c": c * eps,
                                     "d": d * eps, "eps": eps * eps})
                    rep = min(fid, twin, key=str)
                    if str(rep) not in seen:
                        seen.add(str(rep))
                        ids.append(rep)
        for a, b, c in itertools.permutations(minus, 3):
            for eps in prim:
                ids.append(FamilyId(field, "eta3",
                                    {"a": a, "b": b, "c": c, "eps": eps}))
        for a, b, c in itertools.permutations(minus, 3):
            ids.append(FamilyId(field, "theta3", {"a": a, "b": b, "c": c}))
    elif catalog == "nonorientable_4gen":
        for name in ("phi_t_sigma", "psi_t_sigma"):
            for t in (1, 2, 3, 4):
                for sigma in SigmaPerm.all():
                    for a, b in itertools.product(minus, repeat=2):
                        for u in prim:
                            ids.append(FamilyId(field, name, {
                                "t": t, "sigma": sigma,
                                "a": a, "b": b, "u": u}))
    elif catalog == "nonorientable_5gen":
        for name in ("rho", "mu", "mubar"):
            for sigma in SigmaPerm.all():
                for a, b in itertools.product(minus, repeat=2):
                    for u in prim:
                        ids.append(FamilyId(field, name, {
                            "sigma": sigma, "a": a, "b": b, "u": u,
                            "normalized": True}))
    else:
        raise EquivError("unknown catalog %r" % (catalog,))
    ids.sort(key=str)
    return ClassReport(catalog, ids)


def _reduction_key(R):
    """Invariants of constant equivalence, used to split pairs cheaply.

    Writing the reduction as sum_v x_v A_v, an equivalence U*A*V acts by
    A_v -> U*A_v*V, so the ranks of the horizontal stack [A_1 .. A_4] and
    of the vertical stack are invariant; and every k x k minor of U*A*V
    is a constant combination of k x k minors of A (Cauchy-Binet on both
    sides), so the coefficient span of the k-minors is invariant too.
    """
    M = R.matrix
    field = M.field
    n, m = M.nrows, M.ncols
    coeff = []
    for exps in _LINEAR_EXPS:
        coeff.append([[M.entries[i][j].coefficient(exps) for j in range(m)]
                      for i in range(n)])
    horiz = [sum((coeff[v][i] for v in range(4)), []) for i in range(n)]
    vert = [coeff[v][i] for v in range(4) for i in range(n)]
    row_rank = len(field_rref(horiz, field)[1])
    col_rank = len(field_rref(vert, field)[1])
    spans = []
    for k in range(1, min(n, m)):
        minors = []
        for rows_idx in itertools.combinations(range(n), k):
            for cols_idx in itertools.combinations(range(m), k):
                minors.append(determinant(M.submatrix(rows_idx, cols_idx)))
        support = sorted({e for poly in minors for e in poly.terms},
                         key=grlex_key)
        if not support:
            spans.append((k, "zero"))
            continue
        mat = [[poly.coefficient(e) for e in support] for poly in minors]
        reduced, pivots = field_rref(mat, field)
        spans.append((k, tuple(support), pivots,
                      tuple(tuple(str(c) for c in reduced[row])
                            for row in range(len(pivots)))))
    return (row_rank, col_rank, tuple(spans))


def pairwise_distinctness(reps, budget=None, catalog=None):
    """Evidence that the listed matrices present pairwise distinct modules.

    Only the sound direction is claimed: "not_equivalent" comes either
    from differing invariants of the reductions (stack ranks, minor
    coefficient spans -- the reduced_shape method) or from an exact
    scalar_equivalence verdict on the reductions.  Pairs whose
    reductions turn out equivalent say nothing about the originals and
    are reported inconclusive, as are literal duplicates
    (identical_params) and pairs skipped once ``budget`` scalar tests
    have been spent.
    """
    reps = [(_entry_matrix(M)) for M in reps]
    tilde = [linear_reduction(M) for M in reps]
    group = {}
    gid = []
    for R in tilde:
        key = _reduction_key(R)
        gid.append(group.setdefault(key, len(group)))
    evidence = []
    inconclusive = []
    tests = 0
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            if reps[i] == reps[j]:
                record = {"pair": (i, j), "method": "identical_params",
                          "outcome": "equivalent_with_witness"}
                inconclusive.append((i, j))
            elif gid[i] != gid[j]:
                record = {"pair": (i, j), "method": "reduced_shape",
                          "outcome": "not_equivalent"}
            elif budget is not None and tests >= budget:
                record = {"pair": (i, j), "method": "over_budget",
                          "outcome": "inconclusive"}
                inconclusive.append((i, j))
            else:
                tests += 1
                verdict = scalar_equivalence(tilde[i], tilde[j])
                if verdict.outcome == "not_equivalent":
                    record = {"pair": (i, j), "method": "scalar_test",
                              "outcome": "not_equivalent"}
                else:
                    # equivalent reductions decide nothing about the
                    # originals; never count the pair distinct
                    record = {"pair": (i, j), "method": "scalar_test",
                              "outcome": "inconclusive"}
                    inconclusive.append((i, j))
            evidence.append(record)
    label = catalog if catalog is not None else "%d matrices" % len(reps)
    return ClassReport(label, reps, evidence, inconclusive)
