"""Component monoids, minimal ideals, supports, sections, cores and the
greedy reset-word synthesizer.

All word-level notions (two-sided word ideals, minima over words) are
computed at monoid-element level with shortest witnesses; this is sound
because ranks, images and component values factor through the transition
monoid.
"""

import heapq
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .algebra import (
    Tolerances,
    algebra_of_automaton,
    enumerate_monoid,
    radical,
    rep_matrix,
    semisimple_quotient,
    wedderburn_decompose,
)
from .automaton import former_rank, is_synchronizing, transformation_of
from .errors import (
    InvalidParameter,
    BoundViolation,
    NotSemisimple,
    NotSynchronizing,
    RepresentationFailure,
    ToleranceAmbiguity,
)


class ThetaTable:
    """Per-element component data for a whole monoid.

    Bundles the pipeline objects (monoid, quotient, split) with the exact
    quotient coordinates, their complex component projections, and the
    support of every monoid element.  Supports are cross-checked against
    exact radical membership (zero quotient coordinates) element by element.
    """

    __slots__ = ("mt", "ss", "wd", "k", "psi_exact", "comp_vecs", "supports")

    def __init__(self, mt, ss, wd):
        self.mt = mt
        self.ss = ss
        self.wd = wd
        self.k = wd.k
        a = mt.automaton
        self.psi_exact = [ss.psi_of_matrix(rep_matrix(a, t)) for t in mt.elements]
        size = len(mt.elements)
        if self.k == 0 or ss.dim == 0:
            self.comp_vecs = []
            self.supports = [frozenset()] * size
            for v in self.psi_exact:
                assert all(x == 0 for x in v)
            return
        vmat = np.array(
            [[float(x) for x in v] for v in self.psi_exact], dtype=complex
        )
        self.comp_vecs = [vmat @ e.T for e in wd.idempotent_ops]
        norms = np.array([np.linalg.norm(cv, axis=1) for cv in self.comp_vecs])
        tolz = wd.tol.zero
        supports = []
        for x in range(size):
            sup = frozenset(i for i in range(self.k) if norms[i, x] > tolz)
            exact_zero = all(c == 0 for c in self.psi_exact[x])
            if exact_zero != (not sup):
                raise ToleranceAmbiguity(
                    "support disagrees with exact radical membership",
                    distance=float(norms[:, x].max()),
                )
            supports.append(sup)
        self.supports = supports

    @property
    def automaton(self):
        return self.mt.automaton


def build_theta(a, cap=None, tol=None, seed=0):
    """Run the whole pipeline for one automaton and return its ThetaTable."""
    from .algebra import DEFAULT_MONOID_CAP

    mt = enumerate_monoid(a, cap=cap or DEFAULT_MONOID_CAP)
    alg = algebra_of_automaton(a)
    rad = radical(alg)
    ss = semisimple_quotient(alg, rad)
    wd = wedderburn_decompose(ss, tol=tol or Tolerances(), seed=seed)
    return ThetaTable(mt, ss, wd)


class ComponentMonoid:
    """Image of the monoid in one component, as classes of monoid elements.

    Classes are separated numerically with a guard band: distances below the
    zero tolerance mean equal, distances inside [tol, 2 tol) raise, anything
    above starts a new class.  The J-order is computed on classes through
    generator multiplication, and the unique minimal nonzero J-class above
    zero is identified (and its uniqueness asserted).
    """

    __slots__ = (
        "theta", "index", "class_of", "reps", "class_elements",
        "min_rank", "zero_class", "identity_class", "ideal_classes",
    )

    def __init__(self, theta, index):
        if not 0 <= index < theta.k:
            raise InvalidParameter(f"component {index} not in [0, {theta.k})")
        if not is_synchronizing(theta.automaton):
            raise NotSynchronizing("component monoids need a zero (reset) element")
        self.theta = theta
        self.index = index
        mt = theta.mt
        tolz = theta.wd.tol.zero
        vecs = theta.comp_vecs[index]
        class_of = []
        reps = []
        rep_vecs = None
        for x in range(len(mt.elements)):
            v = vecs[x]
            if reps is not None and len(reps):
                dists = np.linalg.norm(rep_vecs - v, axis=1)
                j = int(dists.argmin())
                dmin = float(dists[j])
                if dmin < tolz:
                    class_of.append(j)
                    continue
                if dmin < 2 * tolz:
                    raise ToleranceAmbiguity(
                        f"component {index}: element {x} sits in the guard band",
                        distance=dmin,
                    )
            class_of.append(len(reps))
            reps.append(x)
            rep_vecs = vecs[reps]
        self.class_of = class_of
        self.reps = reps
        nc = len(reps)
        self.class_elements = [[] for _ in range(nc)]
        self.min_rank = [None] * nc
        for x, c in enumerate(class_of):
            self.class_elements[c].append(x)
            r = mt.elements[x].rank
            if self.min_rank[c] is None or r < self.min_rank[c]:
                self.min_rank[c] = r
        zero = next((class_of[x] for x in range(len(mt.elements)) if mt.reset_flags[x]), None)
        assert zero is not None, "synchronizing automaton must have a reset element"
        self.zero_class = zero
        self.identity_class = class_of[0]
        self.ideal_classes = self._minimal_nonzero_j_class()

    def size(self):
        return len(self.reps)

    def product(self, ci, cj):
        """Product of two classes (via representatives)."""
        mt = self.theta.mt
        return self.class_of[mt.mul(self.reps[ci], self.reps[cj])]

    def _generator_edges(self):
        mt = self.theta.mt
        m = mt.automaton.m
        edges = [set() for _ in range(len(self.reps))]
        for c, r in enumerate(self.reps):
            for a in range(m):
                edges[c].add(self.class_of[mt.right[r][a]])
                edges[c].add(self.class_of[mt.left_mul_letter(a, r)])
        return edges

    def _minimal_nonzero_j_class(self):
        """Classes of the unique 0-minimal ideal, without the zero."""
        edges = self._generator_edges()
        nc = len(self.reps)
        sccs, scc_of = _condense(edges)
        # reachable strictly-lower SCC sets
        nscc = len(sccs)
        succ = [set() for _ in range(nscc)]
        for c in range(nc):
            for d in edges[c]:
                if scc_of[c] != scc_of[d]:
                    succ[scc_of[c]].add(scc_of[d])
        below = [None] * nscc
        order = _topo_order(succ)
        for s in reversed(order):
            acc = set()
            for t_ in succ[s]:
                acc.add(t_)
                acc |= below[t_]
            below[s] = acc
        zero_scc = scc_of[self.zero_class]
        assert sccs[zero_scc] == [self.zero_class], "zero class must be its own J-class"
        minimal = [
            s for s in range(nscc)
            if s != zero_scc and below[s] <= {zero_scc}
        ]
        assert len(minimal) == 1, (
            f"expected a unique minimal nonzero J-class, found {len(minimal)}"
        )
        return tuple(sorted(sccs[minimal[0]]))


def _condense(edges):
    """Iterative Tarjan SCC; returns (list of SCC member lists, node -> scc id)."""
    n = len(edges)
    index = [None] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    sccs = []
    scc_of = [None] * n
    counter = [0]
    for root in range(n):
        if index[root] is not None:
            continue
        work = [(root, iter(sorted(edges[root])))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] is None:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(sorted(edges[w]))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    scc_of[w] = len(sccs)
                    if w == v:
                        break
                sccs.append(sorted(comp))
    return sccs, scc_of


def _topo_order(succ):
    n = len(succ)
    seen = [False] * n
    order = []
    for root in range(n):
        if seen[root]:
            continue
        stack = [(root, iter(sorted(succ[root])))]
        seen[root] = True
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if not seen[w]:
                    seen[w] = True
                    stack.append((w, iter(sorted(succ[w]))))
                    advanced = True
                    break
            if not advanced:
                order.append(v)
                stack.pop()
    order.reverse()
    return order


def component_monoid(theta, index):
    return ComponentMonoid(theta, index)


@dataclass(frozen=True)
class IdealData:
    component: int
    classes: tuple  # class ids of the minimal ideal, without the zero
    rnk: int
    per_class: dict  # class id -> minimum transformation rank


def rnk_ideal(cm, mt=None):
    """Minimum transformation rank over the minimal nonzero ideal."""
    per_class = {g: cm.min_rank[g] for g in cm.ideal_classes}
    return IdealData(
        component=cm.index,
        classes=cm.ideal_classes,
        rnk=min(per_class.values()),
        per_class=per_class,
    )


def element_ideal(mt, e0):
    """Two-sided ideal of a monoid element, closed over the generators."""
    seen = {e0}
    stack = [e0]
    m = mt.automaton.m
    while stack:
        x = stack.pop()
        for a in range(m):
            for y in (mt.right[x][a], mt.left_mul_letter(a, x)):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return seen


@dataclass(frozen=True)
class MinimalSection:
    support: frozenset
    witness: tuple
    source: tuple


def _ideal_word_table(mt, e0, v):
    """Shortest (then lexicographically least) word through v per ideal element.

    Words counted are exactly those containing v as a factor: a left part
    realized by some monoid element's witness, then v, then letters appended
    on the right (every factorization is covered, so the minimum is exact).
    """
    v = tuple(v)
    seeds = {}
    for p in range(len(mt.elements)):
        y = mt.mul(p, e0)
        w = mt.witness[p] + v
        key = (len(w), w)
        if y not in seeds or key < seeds[y]:
            seeds[y] = key
    heap = [(l, w, y) for y, (l, w) in seeds.items()]
    heapq.heapify(heap)
    best = {}
    m = mt.automaton.m
    while heap:
        l, w, y = heapq.heappop(heap)
        if y in best:
            continue
        best[y] = w
        for a in range(m):
            z = mt.right[y][a]
            if z not in best:
                heapq.heappush(heap, (l + 1, w + (a,), z))
    return best


def minimal_section(theta, v):
    """A support-minimal nonempty support over the word ideal of v.

    Returns None when the whole ideal is radical (empty supports only).
    Deterministic choice: shortest witness first, then the witness word,
    then the sorted support tuple.
    """
    mt = theta.mt
    v = tuple(v)
    e0 = mt.element_of_word(v)
    ideal = element_ideal(mt, e0)
    nonempty = {}
    for x in ideal:
        sup = theta.supports[x]
        if sup:
            nonempty.setdefault(sup, []).append(x)
    if not nonempty:
        return None
    sups = list(nonempty)
    minimal = [s for s in sups if not any(t < s for t in sups)]
    words = _ideal_word_table(mt, e0, v)
    candidates = []
    for s in minimal:
        w = min((words[x] for x in nonempty[s]), key=lambda w_: (len(w_), w_))
        candidates.append((len(w), w, tuple(sorted(s)), s))
    _, w, _, s = min(candidates)
    return MinimalSection(support=s, witness=w, source=v)


@dataclass(frozen=True)
class CoreSet:
    indices: frozenset
    minimal: bool


def minimal_core(theta):
    """Smallest (then lexicographically first) core, with covering minimal sections.

    A subset T of components is a core when no monoid element has a nonempty
    support disjoint from T.  The covering family is built iteratively: pick
    the best word vanishing on the covered part of the core but not on all of
    it, take a minimal section of its ideal, repeat.
    """
    mt = theta.mt
    k = theta.k
    all_supports = {s for s in theta.supports if s}
    core_indices = None
    for size in range(k + 1):
        for t in combinations(range(k), size):
            tset = frozenset(t)
            if all(s & tset for s in all_supports):
                core_indices = tset
                break
        if core_indices is not None:
            break
    assert core_indices is not None, "the full component set is always a core"
    core = CoreSet(indices=core_indices, minimal=True)

    sections = []
    covered = frozenset()
    while not core_indices <= covered:
        covered_core = covered & core_indices
        todo = core_indices - covered
        cand = [
            x for x in range(len(mt.elements))
            if not (theta.supports[x] & covered_core) and (theta.supports[x] & todo)
        ]
        assert cand, "minimal core must admit a next section source"
        x0 = min(cand, key=lambda x: (len(mt.witness[x]), mt.witness[x]))
        sec = minimal_section(theta, mt.witness[x0])
        assert sec is not None
        assert not (sec.support & covered), "sections must be pairwise disjoint"
        assert sec.support & core_indices, "every nonempty support meets every core"
        sections.append(sec)
        covered |= sec.support
    return core, sections


@dataclass(frozen=True)
class SigmaClasses:
    component: int
    section: MinimalSection
    ideal_classes: tuple  # minimal-ideal class ids, zero last
    zero_class: int
    rep_elements: dict  # class id -> tuple of representative monoid elements
    rep_images: dict  # class id -> tuple of image masks
    sigma_of: dict  # class id -> sigma class index
    num_classes: int

    def zero_sigma_size(self):
        z = self.sigma_of[self.zero_class]
        return sum(1 for g in self.ideal_classes if self.sigma_of[g] == z)


def sigma_classes(theta, cm, section):
    """Transitive closure of the image-overlap relation on the minimal ideal.

    Representatives of a nonzero class are the ideal elements of that class
    with minimum transformation rank; the zero class takes every ideal
    element mapping to zero.  Two classes are related when some pair of
    representatives has image sets sharing at least two states.
    """
    if cm.index not in section.support:
        raise InvalidParameter(
            f"component {cm.index} not in the section support {sorted(section.support)}"
        )
    mt = theta.mt
    e0 = mt.element_of_word(section.witness)
    ideal = element_ideal(mt, e0)
    members = {g: [] for g in cm.ideal_classes}
    members[cm.zero_class] = []
    for x in ideal:
        c = cm.class_of[x]
        if c in members:
            members[c].append(x)
    rep_elements = {}
    rep_images = {}
    for g in cm.ideal_classes:
        if not members[g]:
            raise RepresentationFailure(
                f"class {g} of component {cm.index} has no representative in the ideal"
            )
        mr = min(mt.elements[x].rank for x in members[g])
        reps = tuple(x for x in members[g] if mt.elements[x].rank == mr)
        rep_elements[g] = reps
        rep_images[g] = tuple(mt.elements[x].image_mask() for x in reps)
    if not members[cm.zero_class]:
        raise RepresentationFailure(
            f"zero of component {cm.index} has no representative in the ideal"
        )
    rep_elements[cm.zero_class] = tuple(members[cm.zero_class])
    rep_images[cm.zero_class] = tuple(
        mt.elements[x].image_mask() for x in members[cm.zero_class]
    )

    classes = list(cm.ideal_classes) + [cm.zero_class]
    parent = {g: g for g in classes}

    def find(g):
        while parent[g] != g:
            parent[g] = parent[parent[g]]
            g = parent[g]
        return g

    for gi in range(len(classes)):
        for gj in range(gi + 1, len(classes)):
            g, f = classes[gi], classes[gj]
            if find(g) == find(f):
                continue
            if any(
                (mg & mf).bit_count() >= 2
                for mg in rep_images[g]
                for mf in rep_images[f]
            ):
                parent[find(f)] = find(g)
    roots = {}
    sigma_of = {}
    for g in classes:
        r = find(g)
        if r not in roots:
            roots[r] = len(roots)
        sigma_of[g] = roots[r]
    return SigmaClasses(
        component=cm.index,
        section=section,
        ideal_classes=tuple(classes),
        zero_class=cm.zero_class,
        rep_elements=rep_elements,
        rep_images=rep_images,
        sigma_of=sigma_of,
        num_classes=len(roots),
    )


@dataclass
class SynthCertificate:
    n: int
    length: int
    fr: int
    k: int
    dims: tuple
    rnk: tuple  # minimal-ideal rank per component
    core: tuple
    section_supports: tuple
    section_lengths: tuple
    section_bounds: tuple
    appends: tuple
    bound_component: int  # (n-1) * max over the core of D(2, rnk_i, n)
    bound_former: int  # (n-1) * D(2, Fr, n)
    checks: dict

    def violations(self):
        return [name for name, ok in self.checks.items() if not ok]


def synthesize_reset_word(a, tol=None, seed=0, cap=None, packing_budget=None):
    """Greedy reset word via sections: repeatedly append a word that kills a
    whole section of the accumulated support, then certify the length bounds.

    Raises BoundViolation if any certified inequality fails; the violation is
    never silently absorbed.
    """
    from .packing import packing_number

    if not is_synchronizing(a):
        raise NotSynchronizing("cannot synthesize a reset word")
    n = a.n
    if n == 1:
        cert = SynthCertificate(
            n=1, length=0, fr=0, k=0, dims=(), rnk=(), core=(),
            section_supports=(), section_lengths=(), section_bounds=(),
            appends=(), bound_component=0, bound_former=0,
            checks={"rank_one": True},
        )
        return (), cert
    theta = build_theta(a, cap=cap, tol=tol, seed=seed)
    if theta.ss.rad.dim != 0:
        raise NotSemisimple("synthesizer runs on semisimple automata only")
    mt = theta.mt
    wd = theta.wd
    core, sections = minimal_core(theta)
    cms = [ComponentMonoid(theta, i) for i in range(wd.k)]
    rnk = tuple(rnk_ideal(cm).rnk for cm in cms)
    dvals = {
        i: packing_number(2, rnk[i], n, budget=packing_budget) for i in range(wd.k)
    }

    section_words = []
    for sec in sections:
        cand = [
            x for x in range(len(mt.elements)) if not (theta.supports[x] & sec.support)
        ]
        w = min((mt.witness[x] for x in cand), key=lambda w_: (len(w_), w_))
        bound = min(wd.dims[i] * dvals[i] for i in sec.support)
        section_words.append((sec, w, bound))

    acc = 0
    word = ()
    appends = []
    used = set()
    while theta.supports[acc]:
        live = theta.supports[acc] & core.indices
        assert live, "nonempty support must meet the core"
        i_star = min(live)
        j = next(
            idx for idx, (sec, _, _) in enumerate(section_words) if i_star in sec.support
        )
        assert j not in used, "greedy must not reuse a section"
        used.add(j)
        sec, w, _ = section_words[j]
        word = word + w
        acc = mt.mul(acc, mt.element_of_word(w))
        appends.append(j)
        assert len(appends) <= n - 1, "append count exceeds the state bound"

    rank_one = mt.elements[acc].rank == 1 and transformation_of(a, word).rank == 1
    fr = former_rank(a)
    d_fr = packing_number(2, fr, n, budget=packing_budget)
    bound_component = (n - 1) * max(dvals[i] for i in core.indices) if core.indices else 0
    bound_former = (n - 1) * d_fr
    checks = {
        "rank_one": rank_one,
        "sections_within_bounds": all(
            len(w) <= b for _, w, b in section_words
        ),
        "length_component_bound": len(word) <= bound_component,
        "length_former_bound": len(word) <= bound_former,
        # n(n-1)^2 / (fr(fr-1)) compared exactly by cross-multiplication
        "length_ratio_bound": len(word) * fr * (fr - 1) <= n * (n - 1) ** 2,
    }
    cert = SynthCertificate(
        n=n, length=len(word), fr=fr, k=wd.k, dims=wd.dims, rnk=rnk,
        core=tuple(sorted(core.indices)),
        section_supports=tuple(tuple(sorted(s.support)) for s, _, _ in section_words),
        section_lengths=tuple(len(w) for _, w, _ in section_words),
        section_bounds=tuple(b for _, _, b in section_words),
        appends=tuple(appends),
        bound_component=bound_component,
        bound_former=bound_former,
        checks=checks,
    )
    bad = cert.violations()
    if bad:
        raise BoundViolation(f"certificate checks failed: {', '.join(bad)}")
    return word, cert
