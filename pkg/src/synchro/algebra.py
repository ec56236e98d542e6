"""Matrix representation of the transition monoid and its algebra.

Words act on the hyperplane orthogonal to the all-ones vector, in the basis
b_i = q_i - q_{n-1} (last state as anchor).  Rank-1 transformations act as
the zero matrix, so the span of all action matrices is the contracted
algebra of the monoid with reset elements collapsed to zero.

Everything structural (algebra basis, radical, quotient, center) is exact
over the rationals; only the split into matrix components is numerical,
with fixed tolerances and residual diagnostics.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from random import Random

import numpy as np

from .automaton import (
    Transformation,
    letter_transformations,
    transformation_of,
)
from .errors import (
    DecompositionFailed,
    InvalidParameter,
    MonoidTooLarge,
    NotSynchronizing,
    ToleranceAmbiguity,
)
from .linalg import Matrix, Subspace, solve_orthogonal, nullspace

DEFAULT_MONOID_CAP = 200_000


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds for the component split."""

    cluster: float = 1e-6
    rank: float = 1e-8
    zero: float = 1e-8
    retry_limit: int = 16


class MonoidTable:
    """Enumerated transition monoid.

    elements[0] is the identity; `right[i][a]` is the index of elements[i]
    followed by letter a; `witness[i]` is the shortest word evaluating to
    elements[i] (lexicographically least among ties); `reset_flags[i]` marks
    the rank-1 elements.
    """

    __slots__ = ("automaton", "elements", "index", "right", "witness", "gens", "reset_flags")

    def __init__(self, automaton, elements, index, right, witness, gens):
        self.automaton = automaton
        self.elements = elements
        self.index = index
        self.right = right
        self.witness = witness
        self.gens = gens
        self.reset_flags = [t.rank == 1 for t in elements]

    def __len__(self):
        return len(self.elements)

    def mul(self, i, j):
        return self.index[self.elements[i].compose(self.elements[j]).image]

    def element_of_word(self, u):
        self.automaton.check_word(u)
        i = 0
        for a in u:
            i = self.right[i][a]
        return i

    def left_mul_letter(self, a, i):
        """Index of (letter a) followed by elements[i]."""
        return self.mul(self.gens[a], i)


def enumerate_monoid(a, cap=DEFAULT_MONOID_CAP):
    """BFS closure of the letters under composition.

    FIFO order with letters expanded in increasing order makes every witness
    the lexicographically least among that element's shortest words.
    """
    if cap < 1:
        raise InvalidParameter("cap must be at least 1")
    letters = letter_transformations(a)
    ident = Transformation.identity(a.n)
    elements = [ident]
    index = {ident.image: 0}
    witness = [()]
    right = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        row = []
        for x in range(a.m):
            t = elements[i].compose(letters[x])
            j = index.get(t.image)
            if j is None:
                j = len(elements)
                if j >= cap:
                    raise MonoidTooLarge(f"transition monoid exceeds cap {cap}")
                index[t.image] = j
                elements.append(t)
                witness.append(witness[i] + (x,))
                queue.append(j)
            row.append(j)
        right.append(tuple(row))
    gens = tuple(right[0][x] for x in range(a.m))
    return MonoidTable(a, elements, index, right, witness, gens)


def rep_matrix(a, t):
    """Right-action matrix of a transformation on the anchored difference basis."""
    if len(t.image) != a.n:
        raise InvalidParameter(f"transformation over {len(t.image)} states, automaton has {a.n}")
    s = a.n - 1
    anchor = t.image[s]
    rows = []
    for i in range(s):
        p = t.image[i]
        row = [0] * s
        if p != s:
            row[p] += 1
        if anchor != s:
            row[anchor] -= 1
        rows.append(row)
    return Matrix(rows)


class AlgebraData:
    """Rational span of all action matrices, with a canonical RREF basis."""

    __slots__ = ("automaton", "space", "mats", "dim")

    def __init__(self, automaton, space):
        self.automaton = automaton
        self.space = space
        s = automaton.n - 1
        self.mats = tuple(
            Matrix([row[i * s : (i + 1) * s] for i in range(s)]) for row in space.basis
        )
        self.dim = space.dim

    def coords(self, mat):
        return self.space.coordinates(mat.flatten())

    def matrix_of_coords(self, coords):
        s = self.automaton.n - 1
        acc = [[Fraction(0)] * s for _ in range(s)]
        for c, row in zip(coords, self.space.basis):
            if c:
                for i in range(s):
                    for j in range(s):
                        acc[i][j] += c * row[i * s + j]
        return Matrix(acc)

    def contains(self, mat):
        return self.space.contains(mat.flatten())


def algebra_of_automaton(a):
    """Span closure of the letter action matrices under right multiplication."""
    s = a.n - 1
    ambient = s * s
    gens = [rep_matrix(a, t) for t in letter_transformations(a)]
    ident = Matrix.identity(s)
    space = Subspace.from_vectors([ident.flatten()], ambient)
    pending = [ident]
    while pending:
        mat = pending.pop()
        for g in gens:
            prod = mat @ g
            if not space.contains(prod.flatten()):
                space = space.extend(prod.flatten())
                pending.append(prod)
    alg = AlgebraData(a, space)
    # multiplicative closure and unit membership are structural guarantees
    assert alg.contains(ident)
    for bi in alg.mats:
        for bj in alg.mats:
            assert alg.contains(bi @ bj), "algebra span not closed under products"
    return alg


def algebra_basis(mt, a=None):
    """Algebra of the monoid's action matrices (span closure over the generators)."""
    return algebra_of_automaton(a if a is not None else mt.automaton)


def _trace_of_product(x, y):
    return sum(
        x.data[i][j] * y.data[j][i] for i in range(x.rows) for j in range(x.cols)
    )


class RadicalData:
    """Nullspace of the trace form on the algebra, in algebra coordinates."""

    __slots__ = ("algebra", "space", "mats", "dim")

    def __init__(self, algebra, space):
        self.algebra = algebra
        self.space = space
        self.dim = space.dim
        self.mats = tuple(algebra.matrix_of_coords(row) for row in space.basis)

    def contains_coords(self, coords):
        return self.space.contains(coords)

    def contains_matrix(self, mat):
        return self.space.contains(self.algebra.coords(mat))


def radical(alg):
    """Largest nilpotent two-sided ideal, via the trace bilinear form.

    In characteristic zero the radical of a matrix subalgebra is exactly the
    kernel of (x, y) -> trace(xy) restricted to the algebra.
    """
    d = alg.dim
    gram = Matrix([[_trace_of_product(bi, bj) for bj in alg.mats] for bi in alg.mats])
    space = solve_orthogonal(gram) if d else Subspace.from_vectors([], 0)
    rad = RadicalData(alg, space)
    n = alg.automaton.n
    for x in rad.mats:
        assert x.power(max(n - 1, 1)).is_zero(), "radical element not nilpotent"
        for b in alg.mats:
            assert rad.contains_matrix(x @ b), "radical not a right ideal"
            assert rad.contains_matrix(b @ x), "radical not a left ideal"
    return rad


def is_semisimple(a):
    """True iff the trace-form radical of the action algebra is zero."""
    from .automaton import is_synchronizing

    if not is_synchronizing(a):
        raise NotSynchronizing("semisimplicity is defined for synchronizing automata")
    return radical(algebra_of_automaton(a)).dim == 0


def is_radical_word(a, u, alg=None, rad=None):
    """Exact membership of the word's action matrix in the radical."""
    a.check_word(u)
    if alg is None:
        alg = algebra_of_automaton(a)
    if rad is None:
        rad = radical(alg)
    return rad.contains_matrix(rep_matrix(a, transformation_of(a, u)))


def radical_element_flags(mt, alg, rad):
    """Radical membership per monoid element (exact)."""
    return [
        rad.contains_matrix(rep_matrix(mt.automaton, t)) for t in mt.elements
    ]


def shortest_radical_word(a, mt=None, alg=None, rad=None, cap=DEFAULT_MONOID_CAP):
    """Shortest word whose action matrix lies in the radical (reset words qualify)."""
    from .automaton import is_synchronizing

    if not is_synchronizing(a):
        raise NotSynchronizing("no radical word is guaranteed without synchronization")
    if mt is None:
        mt = enumerate_monoid(a, cap=cap)
    if alg is None:
        alg = algebra_of_automaton(a)
    if rad is None:
        rad = radical(alg)
    flags = radical_element_flags(mt, alg, rad)
    best = None
    for i, ok in enumerate(flags):
        if ok:
            w = mt.witness[i]
            if best is None or (len(w), w) < (len(best), best):
                best = w
    assert best is not None, "synchronizing automaton must have radical elements"
    return best


def shortest_radical_nonreset_word(a, mt=None, alg=None, rad=None, cap=DEFAULT_MONOID_CAP):
    """Shortest radical word of rank > 1, or None when every radical element is reset."""
    if mt is None:
        mt = enumerate_monoid(a, cap=cap)
    if alg is None:
        alg = algebra_of_automaton(a)
    if rad is None:
        rad = radical(alg)
    flags = radical_element_flags(mt, alg, rad)
    best = None
    for i, ok in enumerate(flags):
        if ok and not mt.reset_flags[i]:
            w = mt.witness[i]
            if best is None or (len(w), w) < (len(best), best):
                best = w
    return best


class SemisimpleQuotient:
    """Algebra modulo its radical, in the non-pivot complement coordinates.

    The projection drops the radical's pivot coordinates after elimination,
    so it is exact, canonical and an algebra morphism.
    """

    __slots__ = ("alg", "rad", "comp", "dim", "mats", "structure", "unit")

    def __init__(self, alg, rad):
        self.alg = alg
        self.rad = rad
        pivots = set(rad.space.pivots)
        self.comp = tuple(j for j in range(alg.dim) if j not in pivots)
        self.dim = len(self.comp)
        self.mats = tuple(alg.mats[j] for j in self.comp)
        self.structure = tuple(
            tuple(self.psi(alg.coords(ma @ mb)) for mb in self.mats) for ma in self.mats
        )
        s = alg.automaton.n - 1
        self.unit = self.psi(alg.coords(Matrix.identity(s))) if alg.dim else ()
        self._check_quotient()

    def psi(self, coords):
        """Project algebra coordinates onto the complement of the radical."""
        reduced = self.rad.space.reduce(coords)
        return tuple(reduced[j] for j in self.comp)

    def psi_of_matrix(self, mat):
        return self.psi(self.alg.coords(mat))

    def mul(self, x, y):
        acc = [Fraction(0)] * self.dim
        for a, xa in enumerate(x):
            if not xa:
                continue
            for b, yb in enumerate(y):
                if not yb:
                    continue
                sab = self.structure[a][b]
                f = xa * yb
                for c in range(self.dim):
                    if sab[c]:
                        acc[c] += f * sab[c]
        return tuple(acc)

    def lmul(self, x):
        """Matrix of left multiplication by x on the quotient."""
        rows = [
            [
                sum(xa * self.structure[a][b][c] for a, xa in enumerate(x) if xa)
                for b in range(self.dim)
            ]
            for c in range(self.dim)
        ]
        return Matrix(rows) if self.dim else Matrix([])

    def lmul_float(self, x):
        if not self.dim:
            return np.zeros((0, 0))
        return np.array(
            [[float(v) for v in row] for row in self.lmul(x).data], dtype=float
        )

    def _check_quotient(self):
        if not self.dim:
            return
        ident = Matrix.identity(self.dim)
        assert self.lmul(self.unit) == ident, "unit does not act as identity"
        # morphism on basis pairs of the full algebra
        psis = [self.psi(tuple(Fraction(int(i == j)) for j in range(self.alg.dim)))
                for i in range(self.alg.dim)]
        for i, mi in enumerate(self.alg.mats):
            li = self.lmul(psis[i])
            for j, mj in enumerate(self.alg.mats):
                lhs = self.psi(self.alg.coords(mi @ mj))
                rhs = tuple(
                    sum(li.data[c][b] * psis[j][b] for b in range(self.dim))
                    for c in range(self.dim)
                )
                assert lhs == rhs, "projection is not multiplicative"
        # the quotient must itself have zero trace-form radical
        ls = [self.lmul(tuple(Fraction(int(b == a)) for b in range(self.dim)))
              for a in range(self.dim)]
        gram = Matrix([[_trace_of_product(la, lb) for lb in ls] for la in ls])
        assert solve_orthogonal(gram).dim == 0, "quotient has nonzero radical"


def semisimple_quotient(alg, rad):
    return SemisimpleQuotient(alg, rad)


def center_basis(ss):
    """Exact basis of the center of the quotient algebra."""
    d = ss.dim
    if d == 0:
        return []
    rows = []
    for b in range(d):
        for c in range(d):
            rows.append(tuple(ss.structure[a][b][c] - ss.structure[b][a][c] for a in range(d)))
    return [tuple(row) for row in nullspace(rows, d).basis]


def center_dim(ss):
    """Number of simple components over the complex numbers."""
    return len(center_basis(ss))


@dataclass
class WedderburnData:
    """Numerical split of the quotient into matrix components."""

    ss: SemisimpleQuotient
    k: int
    dims: tuple
    idempotent_ops: list  # left-multiplication operators of the central idempotents
    idempotent_coords: list  # the idempotents as coordinate vectors
    lambdas: tuple
    residuals: dict
    tol: Tolerances
    seed: int

    @property
    def max_idempotent_residual(self):
        return max(self.residuals.get("idempotent", 0.0), self.residuals.get("sum", 0.0))


def _cluster(values, tol):
    """Union values within tol into connected clusters; returns lists of indices."""
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def wedderburn_decompose(ss, tol=None, seed=0):
    """Split the quotient via eigenvalue clustering of a random central element.

    Samples a rational central element with integer coefficients in [-9, 9],
    clusters the eigenvalues of its left-multiplication operator, and builds
    central idempotents by Lagrange interpolation.  Degenerate samples are
    detected by a wrong cluster count and retried.
    """
    tol = tol or Tolerances()
    d = ss.dim
    center = center_basis(ss)
    k = len(center)
    if d == 0:
        return WedderburnData(
            ss=ss, k=0, dims=(), idempotent_ops=[], idempotent_coords=[],
            lambdas=(), residuals={"idempotent": 0.0, "sum": 0.0, "attempts": 0},
            tol=tol, seed=seed,
        )
    rng = Random(seed)
    diagnostics = {}
    ident = np.eye(d)
    unit = np.array([float(x) for x in ss.unit])
    for attempt in range(1, tol.retry_limit + 1):
        coeffs = [rng.randint(-9, 9) for _ in range(k)]
        if all(c == 0 for c in coeffs):
            continue
        z = tuple(
            sum(Fraction(c) * row[j] for c, row in zip(coeffs, center))
            for j in range(d)
        )
        lz = ss.lmul_float(z)
        eigs = np.linalg.eigvals(lz)
        clusters = _cluster(list(eigs), tol.cluster)
        if len(clusters) != k:
            diagnostics = {"cluster_count": len(clusters), "expected": k}
            continue
        lams = sorted(
            (complex(np.mean([eigs[i] for i in grp])) for grp in clusters),
            key=lambda z_: (round(z_.real, 9), round(z_.imag, 9)),
        )
        lzc = lz.astype(complex)
        ops = []
        for i, li in enumerate(lams):
            e = np.eye(d, dtype=complex)
            for j, lj in enumerate(lams):
                if j != i:
                    e = e @ (lzc - lj * ident) / (li - lj)
            ops.append(e)
        r_idem = max(
            float(np.linalg.norm(ops[i] @ ops[j] - (ops[i] if i == j else 0)))
            for i in range(k)
            for j in range(k)
        )
        r_sum = float(np.linalg.norm(sum(ops) - ident))
        if r_idem >= tol.zero or r_sum >= tol.zero:
            diagnostics = {"idempotent": r_idem, "sum": r_sum}
            continue
        ranks = [int(np.linalg.matrix_rank(e, tol=tol.rank)) for e in ops]
        dims = []
        square = True
        for r in ranks:
            ni = isqrt(r)
            if ni * ni != r:
                square = False
                break
            dims.append(ni)
        if not square or sum(x * x for x in dims) != d:
            diagnostics = {"ranks": ranks, "dim": d}
            continue
        coords = [e @ unit.astype(complex) for e in ops]
        return WedderburnData(
            ss=ss, k=k, dims=tuple(dims), idempotent_ops=ops,
            idempotent_coords=coords, lambdas=tuple(lams),
            residuals={"idempotent": r_idem, "sum": r_sum, "attempts": attempt},
            tol=tol, seed=seed,
        )
    raise DecompositionFailed(
        f"no clean split after {tol.retry_limit} samples", residuals=diagnostics
    )


def psi_float(ss, coords):
    return np.array([float(x) for x in ss.psi(coords)])


def theta_support(ss, wd, t):
    """Component indices where the element's image is numerically nonzero.

    Cross-checked against exact radical membership: the support is empty iff
    the action matrix lies in the radical; disagreement raises.
    """
    a = ss.alg.automaton
    if isinstance(t, Transformation):
        mat = rep_matrix(a, t)
    else:
        mat = rep_matrix(a, transformation_of(a, t))
    coords = ss.alg.coords(mat)
    exact_zero = all(x == 0 for x in ss.psi(coords))
    if wd.k == 0:
        assert exact_zero
        return frozenset()
    v = psi_float(ss, coords).astype(complex)
    support = frozenset(
        i for i, e in enumerate(wd.idempotent_ops)
        if float(np.linalg.norm(e @ v)) > wd.tol.zero
    )
    if exact_zero != (not support):
        raise ToleranceAmbiguity(
            "numerical support disagrees with exact radical membership",
            distance=min(
                (float(np.linalg.norm(e @ v)) for e in wd.idempotent_ops), default=0.0
            ),
        )
    return support
