"""Exact linear algebra over the rationals: matrices, RREF, canonical subspaces.

Everything here is exact (``fractions.Fraction`` entries, arbitrary-precision
integers underneath); there is no tolerance anywhere in this module.
"""

from fractions import Fraction

from .errors import DimensionMismatch, NotSquare

ZERO = Fraction(0)
ONE = Fraction(1)


def _frac_rows(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


class Matrix:
    """Immutable rational matrix."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows):
        self.data = _frac_rows(rows)
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.rows else 0
        for row in self.data:
            if len(row) != self.cols:
                raise DimensionMismatch("ragged rows")

    @staticmethod
    def identity(n):
        return Matrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(r, c):
        return Matrix([[ZERO] * c for _ in range(r)])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        bt = list(zip(*other.data))
        return Matrix(
            [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in self.data]
        )

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in addition")
        return Matrix([[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in subtraction")
        return Matrix([[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def scale(self, c):
        c = Fraction(c)
        return Matrix([[c * x for x in row] for row in self.data])

    def trace(self):
        if self.rows != self.cols:
            raise NotSquare("trace of a non-square matrix")
        return sum(self.data[i][i] for i in range(self.rows))

    def transpose(self):
        return Matrix(list(zip(*self.data)))

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def power(self, k):
        if self.rows != self.cols:
            raise NotSquare("power of a non-square matrix")
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def flatten(self):
        return tuple(x for row in self.data for x in row)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        return f"Matrix({[[str(x) for x in row] for row in self.data]})"


def rref(rows):
    """Reduced row echelon form.  Returns (rref_rows, rank, pivot_columns).

    Accepts a Matrix or an iterable of rows; output rows are canonical:
    unit pivots, zeros above and below, zero rows dropped.
    """
    if isinstance(rows, Matrix):
        work = [list(row) for row in rows.data]
    else:
        work = [[Fraction(x) for x in row] for row in rows]
    if not work:
        return [], 0, []
    ncols = len(work[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = work[r][c]
        work[r] = [x / inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return [tuple(row) for row in work[:r]], r, pivots


def rref_matrix(m):
    """Matrix-in, matrix-out variant keeping the original row count."""
    reduced, rank_, _ = rref(m)
    ncols = m.cols
    padded = list(reduced) + [(ZERO,) * ncols] * (m.rows - rank_)
    return Matrix(padded), rank_


class Subspace:
    """Row space with a canonical RREF basis; equal subspaces compare equal."""

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient, basis=(), pivots=None):
        self.ambient = ambient
        if pivots is None:
            basis, _, pivots = rref(list(basis)) if basis else ([], 0, [])
        self.basis = tuple(tuple(Fraction(x) for x in row) for row in basis)
        self.pivots = tuple(pivots)

    @staticmethod
    def from_vectors(vectors, ambient):
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient {ambient}")
        basis, _, pivots = rref(vectors) if vectors else ([], 0, [])
        return Subspace(ambient, basis, pivots)

    @property
    def dim(self):
        return len(self.basis)

    def reduce(self, v):
        """Residual of v after elimination against the basis."""
        v = [Fraction(x) for x in v]
        if len(v) != self.ambient:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient {self.ambient}")
        for row, p in zip(self.basis, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, v):
        return all(x == 0 for x in self.reduce(v))

    def coordinates(self, v):
        """Coefficients of v in the RREF basis; raises if v is outside the span."""
        v = tuple(Fraction(x) for x in v)
        if len(v) != self.ambient:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient {self.ambient}")
        coords = tuple(v[p] for p in self.pivots)
        residual = [Fraction(x) for x in v]
        for coeff, row in zip(coords, self.basis):
            if coeff != 0:
                residual = [x - coeff * y for x, y in zip(residual, row)]
        if any(x != 0 for x in residual):
            raise DimensionMismatch("vector not in subspace")
        return coords

    def extend(self, v):
        """Subspace spanned by self and v (no-op if already contained)."""
        r = self.reduce(v)
        if all(x == 0 for x in r):
            return self
        basis, _, pivots = rref(list(self.basis) + [r])
        return Subspace(self.ambient, basis, pivots)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def membership(s, v):
    return s.contains(v)


def nullspace(rows, ncols):
    """Right nullspace {x : A x = 0} as a Subspace of dimension-ncols row vectors."""
    rows = [tuple(row) for row in rows]
    for row in rows:
        if len(row) != ncols:
            raise DimensionMismatch("row length mismatch")
    reduced, _, pivots = rref(rows) if rows else ([], 0, [])
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return Subspace.from_vectors(basis, ncols)


def solve_orthogonal(gram):
    """Nullspace of a square Gram matrix (the radical of the bilinear form)."""
    if gram.rows != gram.cols:
        raise NotSquare(f"{gram.rows}x{gram.cols} Gram matrix")
    return nullspace(gram.data, gram.cols)
