"""Packing numbers D(t, r, n) at desk scale.

A family of r-subsets of an n-set covers no t-subset twice iff the blocks
pairwise intersect in at most t-1 points, so the exact value is a maximum
clique in the compatibility graph over all r-subsets.  The search is
branch-and-bound with a greedy-coloring bound, pruned further by the
combinatorial upper bounds, with a node budget.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from random import Random

from .automaton import reachable_images, states_of
from .errors import BudgetExceeded, InvalidParameter

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class PackingInstance:
    t: int
    r: int
    n: int

    def __post_init__(self):
        if not 1 <= self.t <= self.r <= self.n:
            raise InvalidParameter(f"need 1 <= t <= r <= n, got {self}")


@dataclass(frozen=True)
class PackingDesign:
    n: int
    r: int
    t: int
    blocks: tuple

    def is_valid(self):
        for b in self.blocks:
            if len(b) != self.r or len(set(b)) != self.r:
                return False
            if not all(0 <= x < self.n for x in b):
                return False
        sets = [set(b) for b in self.blocks]
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                if len(sets[i] & sets[j]) >= self.t:
                    return False
        return True

    def __len__(self):
        return len(self.blocks)


def upper_bounds(p):
    """Labeled upper bounds on D(t, r, n); inapplicable bounds are omitted."""
    bounds = [("binomial", comb(p.n, p.t) // comb(p.r, p.t))]
    if p.t == 2 and p.r * p.r > p.n:
        bounds.append(("ratio_small_n", ((p.r - 1) * p.n) // (p.r * p.r - p.n)))
    return bounds


def _canonical_blocks(n, r):
    return list(combinations(range(n), r))


def _block_mask(block):
    m = 0
    for x in block:
        m |= 1 << x
    return m


def _compat_adjacency(masks, t):
    adj = [0] * len(masks)
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if (masks[i] & masks[j]).bit_count() < t:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


class _Budget:
    __slots__ = ("left",)

    def __init__(self, nodes):
        self.left = nodes

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise _BudgetUp()


class _BudgetUp(Exception):
    pass


def _max_clique(adj, budget_nodes, stop_at=None, seed_order=None):
    """Maximum clique via coloring-bounded branch and bound.

    Returns (size, member list).  Raises _BudgetUp with state preserved in
    the closure caller; callers translate to BudgetExceeded.
    """
    nv = len(adj)
    if nv == 0:
        return 0, []
    order = seed_order if seed_order is not None else sorted(
        range(nv), key=lambda v: adj[v].bit_count(), reverse=True
    )
    # greedy seed clique for an initial lower bound
    best_members = []
    cand = (1 << nv) - 1
    for v in order:
        if cand >> v & 1:
            best_members.append(v)
            cand &= adj[v]
    best = [len(best_members), list(best_members)]
    budget = _Budget(budget_nodes)

    def color_order(cand):
        order_, bounds = [], []
        color = 0
        left = cand
        while left:
            color += 1
            avail = left
            while avail:
                v = (avail & -avail).bit_length() - 1
                order_.append(v)
                bounds.append(color)
                left &= ~(1 << v)
                avail &= ~(1 << v)
                avail &= ~adj[v]
        return order_, bounds

    chosen = []

    def expand(cand):
        budget.spend()
        if stop_at is not None and best[0] >= stop_at:
            return
        order_, bounds = color_order(cand)
        for i in range(len(order_) - 1, -1, -1):
            if len(chosen) + bounds[i] <= best[0]:
                return
            v = order_[i]
            chosen.append(v)
            sub = cand & adj[v]
            if sub:
                expand(sub)
            elif len(chosen) > best[0]:
                best[0] = len(chosen)
                best[1] = list(chosen)
            chosen.pop()
            cand &= ~(1 << v)
            if stop_at is not None and best[0] >= stop_at:
                return

    try:
        expand((1 << nv) - 1)
    except _BudgetUp:
        raise BudgetExceeded(
            "clique search budget exhausted", lower=best[0], upper=None
        ) from None
    return best[0], sorted(best[1])


def exact_packing(p, budget=None):
    """Exact D(t, r, n) with a witness design; deterministic block order."""
    budget = DEFAULT_BUDGET if budget is None else budget
    blocks = _canonical_blocks(p.n, p.r)
    if p.t == p.r:
        # distinct r-sets share at most r-1 = t-1 points: every block fits
        return len(blocks), PackingDesign(p.n, p.r, p.t, tuple(blocks))
    masks = [_block_mask(b) for b in blocks]
    adj = _compat_adjacency(masks, p.t)
    ub = min(v for _, v in upper_bounds(p))
    try:
        size, members = _max_clique(adj, budget, stop_at=ub)
    except BudgetExceeded as e:
        e.upper = ub
        raise
    design = PackingDesign(p.n, p.r, p.t, tuple(blocks[i] for i in members))
    assert design.is_valid()
    return size, design


@lru_cache(maxsize=None)
def _packing_number_default(t, r, n):
    value, _ = exact_packing(PackingInstance(t, r, n))
    return value


def packing_number(t, r, n, budget=None):
    """Cached exact packing number (default budget)."""
    if budget is None:
        return _packing_number_default(t, r, n)
    value, _ = exact_packing(PackingInstance(t, r, n), budget=budget)
    return value


def greedy_packing(p, seed=0):
    """Maximal (not maximum) design grown in seeded random order."""
    blocks = _canonical_blocks(p.n, p.r)
    Random(seed).shuffle(blocks)
    picked = []
    picked_sets = []
    for b in blocks:
        sb = set(b)
        if all(len(sb & q) < p.t for q in picked_sets):
            picked.append(b)
            picked_sets.append(sb)
    design = PackingDesign(p.n, p.r, p.t, tuple(sorted(picked)))
    assert design.is_valid()
    return design


def monotonicity_check(t, n, budget=None):
    """Verify D(t, r, n) is non-increasing in r over r = t..n."""
    values = [packing_number(t, r, n, budget=budget) for r in range(t, n + 1)]
    return all(x >= y for x, y in zip(values, values[1:]))


def observed_packing_family(a, r, budget=None):
    """Pairwise-intersection-<=1 family of reachable images of cardinality r.

    Exact maximum subfamily when there are at most 20 candidate images,
    greedy in canonical order otherwise.
    """
    n = a.n
    if r > n or r < 1:
        return PackingDesign(n, r, 2, ())
    masks = sorted(m for m in reachable_images(a) if m.bit_count() == r)
    blocks = [tuple(states_of(m)) for m in masks]
    if not blocks:
        return PackingDesign(n, r, 2, ())
    if len(blocks) <= 20:
        adj = _compat_adjacency(masks, 2)
        _, members = _max_clique(adj, DEFAULT_BUDGET if budget is None else budget)
        chosen = [blocks[i] for i in members]
    else:
        chosen = []
        chosen_sets = []
        for b in blocks:
            sb = set(b)
            if all(len(sb & q) <= 1 for q in chosen_sets):
                chosen.append(b)
                chosen_sets.append(sb)
    design = PackingDesign(n, r, 2, tuple(sorted(chosen)))
    assert design.is_valid()
    return design
