"""State partitions, automaton congruences, quotients and inductive synchronization."""

from .automaton import Automaton, is_synchronizing, rank, shortest_reset_word, transformation_of
from .errors import (
    InvalidPartition,
    InvalidState,
    NotACongruence,
    NotSynchronizing,
    Undefined,
)


class Partition:
    """Partition of the state set, encoded as a block id per state.

    Block ids are normalized to first-occurrence order, so equal partitions
    have equal encodings.
    """

    __slots__ = ("blocks", "num_blocks")

    def __init__(self, block_ids):
        ids = list(block_ids)
        if not ids:
            raise InvalidPartition("empty partition")
        relabel = {}
        norm = []
        for b in ids:
            if b not in relabel:
                relabel[b] = len(relabel)
            norm.append(relabel[b])
        self.blocks = tuple(norm)
        self.num_blocks = len(relabel)

    @staticmethod
    def identity(n):
        return Partition(range(n))

    @staticmethod
    def universal(n):
        return Partition([0] * n)

    @property
    def n(self):
        return len(self.blocks)

    def is_identity(self):
        return self.num_blocks == self.n

    def is_universal(self):
        return self.num_blocks == 1

    def same_block(self, p, q):
        return self.blocks[p] == self.blocks[q]

    def block_sets(self):
        sets = [set() for _ in range(self.num_blocks)]
        for q, b in enumerate(self.blocks):
            sets[b].add(q)
        return sets

    def meet(self, other):
        """Common refinement (blockwise intersection)."""
        if other.n != self.n:
            raise InvalidPartition("size mismatch")
        return Partition([(a, b) for a, b in zip(self.blocks, other.blocks)])

    def refines(self, other):
        """True if every block of self lies inside a block of other."""
        if other.n != self.n:
            raise InvalidPartition("size mismatch")
        image = {}
        for b_self, b_other in zip(self.blocks, other.blocks):
            if image.setdefault(b_self, b_other) != b_other:
                return False
        return True

    def __eq__(self, other):
        return isinstance(other, Partition) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"Partition({list(self.blocks)})"


def kernel_partition(t):
    """Ker of a transformation: states with equal images share a block."""
    return Partition(t.kernel_blocks())


def _check_partition(a, p):
    if not isinstance(p, Partition):
        raise InvalidPartition("expected a Partition")
    if p.n != a.n:
        raise InvalidPartition(f"partition over {p.n} states, automaton has {a.n}")


def is_congruence(a, p):
    _check_partition(a, p)
    for x in range(a.m):
        image_block = {}
        for q in range(a.n):
            b = p.blocks[q]
            ib = p.blocks[a.delta[q][x]]
            if image_block.setdefault(b, ib) != ib:
                return False
    return True


def principal_congruence(a, q1, q2):
    """Least congruence identifying q1 and q2 (union-find closure under letters)."""
    for q in (q1, q2):
        if not isinstance(q, int) or not 0 <= q < a.n:
            raise InvalidState(f"state {q!r} not in [0, {a.n})")
    parent = list(range(a.n))

    def find(q):
        while parent[q] != q:
            parent[q] = parent[parent[q]]
            q = parent[q]
        return q

    work = []

    def union(p, q):
        rp, rq = find(p), find(q)
        if rp != rq:
            parent[rq] = rp
            work.append((rp, rq))

    union(q1, q2)
    while work:
        p, q = work.pop()
        for x in range(a.m):
            union(a.delta[p][x], a.delta[q][x])
    return Partition([find(q) for q in range(a.n)])


def is_simple(a):
    """True iff the only congruences are the identity and the universal one."""
    if a.n < 2:
        raise Undefined("simplicity needs at least 2 states")
    for q1 in range(a.n):
        for q2 in range(q1 + 1, a.n):
            if not principal_congruence(a, q1, q2).is_universal():
                return False
    return True


def largest_congruence_below(a, p):
    """Coarsest congruence refining p, by iterated partition refinement."""
    _check_partition(a, p)
    current = p
    while True:
        refined = current
        for x in range(a.m):
            pullback = Partition([current.blocks[a.delta[q][x]] for q in range(a.n)])
            refined = refined.meet(pullback)
        if refined == current:
            return current
        current = refined


def quotient(a, c):
    """Quotient automaton and the state->block projection."""
    if not is_congruence(a, c):
        raise NotACongruence("partition is not preserved by the letters")
    reps = {}
    for q, b in enumerate(c.blocks):
        reps.setdefault(b, q)
    rows = [[c.blocks[a.delta[reps[b]][x]] for x in range(a.m)] for b in range(c.num_blocks)]
    return Automaton(rows), c.blocks


def inductive_synchronize(a):
    """Reset word built by quotienting along the kernel of a radical non-reset word.

    Falls back to plain subset BFS when the radical yields nothing to quotient
    by (semisimple case, or radical elements that are all reset).
    """
    if not is_synchronizing(a):
        raise NotSynchronizing("no reset word exists")

    word = _inductive_synchronize(a, depth=0)
    assert rank(a, word) == 1
    return word


def _inductive_synchronize(a, depth):
    from .algebra import shortest_radical_nonreset_word

    assert depth < a.n + 1, "state count must strictly decrease"
    if a.n == 1:
        return ()
    w = shortest_radical_nonreset_word(a)
    if w is None:
        return shortest_reset_word(a)
    sigma = largest_congruence_below(a, kernel_partition(transformation_of(a, w)))
    assert not sigma.is_identity(), "radical non-reset word must admit a non-trivial congruence"
    b, _ = quotient(a, sigma)
    u = _inductive_synchronize(b, depth + 1)
    return u + w
