"""Deterministic complete automata, word actions, ranks and reset-word search.

States are 0..n-1, letters are 0..m-1.  A word is a tuple of letter indices,
a state set is an int bitmask over the states.  All objects are immutable
after construction and safe to share between threads.
"""

from collections import deque
from random import Random

from .errors import CapExceeded, InvalidParameter, InvalidWord, ParseError, Undefined

Word = tuple  # tuple of letter indices


class Automaton:
    """Complete DFA transition structure (no initial/final states)."""

    __slots__ = ("n", "m", "delta")

    def __init__(self, delta):
        rows = tuple(tuple(row) for row in delta)
        if not rows:
            raise InvalidParameter("automaton needs at least one state")
        n = len(rows)
        m = len(rows[0])
        if m < 1:
            raise InvalidParameter("automaton needs at least one letter")
        for q, row in enumerate(rows):
            if len(row) != m:
                raise InvalidParameter(f"row {q} has {len(row)} entries, expected {m}")
            for p in row:
                if not isinstance(p, int) or not 0 <= p < n:
                    raise InvalidParameter(f"entry {p!r} in row {q} not a state in [0, {n})")
        self.n = n
        self.m = m
        self.delta = rows

    def step(self, q, a):
        return self.delta[q][a]

    def check_word(self, u):
        for a in u:
            if not isinstance(a, int) or not 0 <= a < self.m:
                raise InvalidWord(f"letter {a!r} not in [0, {self.m})")

    def __eq__(self, other):
        return isinstance(other, Automaton) and self.delta == other.delta

    def __hash__(self):
        return hash(self.delta)

    def __repr__(self):
        return f"Automaton(n={self.n}, m={self.m})"


class Transformation:
    """Total map on states induced by a word; rank is the image-set size."""

    __slots__ = ("image", "rank")

    def __init__(self, image):
        self.image = tuple(image)
        self.rank = len(set(self.image))

    def compose(self, other):
        """self followed by other (words act left to right)."""
        img = other.image
        return Transformation(tuple(img[q] for q in self.image))

    @staticmethod
    def identity(n):
        return Transformation(range(n))

    def image_mask(self):
        mask = 0
        for q in self.image:
            mask |= 1 << q
        return mask

    def kernel_blocks(self):
        """Block id per state: states with equal images share a block."""
        seen = {}
        blocks = []
        for q in self.image:
            if q not in seen:
                seen[q] = len(seen)
            blocks.append(seen[q])
        return tuple(blocks)

    def __eq__(self, other):
        return isinstance(other, Transformation) and self.image == other.image

    def __hash__(self):
        return hash(self.image)

    def __repr__(self):
        return f"Transformation({list(self.image)})"


def full_mask(n):
    return (1 << n) - 1


def mask_of(states):
    mask = 0
    for q in states:
        mask |= 1 << q
    return mask


def states_of(mask):
    states = []
    q = 0
    while mask:
        if mask & 1:
            states.append(q)
        mask >>= 1
        q += 1
    return states


def apply_word(a, mask, u):
    """Image of the state set `mask` under the word `u`."""
    a.check_word(u)
    for letter in u:
        row = tuple(a.delta[q][letter] for q in range(a.n))
        out = 0
        rest = mask
        q = 0
        while rest:
            if rest & 1:
                out |= 1 << row[q]
            rest >>= 1
            q += 1
        mask = out
    return mask


def transformation_of(a, u):
    a.check_word(u)
    image = list(range(a.n))
    for letter in u:
        image = [a.delta[q][letter] for q in image]
    return Transformation(image)


def rank(a, u):
    return transformation_of(a, u).rank


def letter_transformations(a):
    return [Transformation(a.delta[q][x] for q in range(a.n)) for x in range(a.m)]


def is_synchronizing(a):
    """Pair-merge criterion: synchronizing iff every state pair can be merged."""
    n = a.n
    if n == 1:
        return True
    # reverse reachability on unordered pairs, seeded by pairs that merge in one step
    pairs = [(p, q) for p in range(n) for q in range(p + 1, n)]
    idx = {pq: i for i, pq in enumerate(pairs)}
    preds = [[] for _ in pairs]
    mergeable = [False] * len(pairs)
    stack = []
    for i, (p, q) in enumerate(pairs):
        for x in range(a.m):
            p2, q2 = a.delta[p][x], a.delta[q][x]
            if p2 == q2:
                if not mergeable[i]:
                    mergeable[i] = True
                    stack.append(i)
            else:
                if p2 > q2:
                    p2, q2 = q2, p2
                preds[idx[(p2, q2)]].append(i)
    while stack:
        j = stack.pop()
        for i in preds[j]:
            if not mergeable[i]:
                mergeable[i] = True
                stack.append(i)
    return all(mergeable)


def _letter_rows(a):
    return [tuple(a.delta[q][x] for q in range(a.n)) for x in range(a.m)]


def _apply_row(row, mask):
    out = 0
    q = 0
    while mask:
        if mask & 1:
            out |= 1 << row[q]
        mask >>= 1
        q += 1
    return out


def shortest_reset_word(a, cap=24):
    """Minimum-length reset word, lexicographically least among ties; None if not synchronizing.

    BFS over the subset lattice from the full state set.  Expanding letters in
    increasing order from a FIFO queue yields, for every subset, the
    lexicographically least among its shortest generating words.
    """
    if a.n > cap:
        raise CapExceeded(f"subset search capped at {cap} states, got {a.n}")
    if a.n == 1:
        return ()
    if not is_synchronizing(a):
        return None
    rows = _letter_rows(a)
    start = full_mask(a.n)
    seen = {start: ()}
    queue = deque([start])
    while queue:
        mask = queue.popleft()
        word = seen[mask]
        for x in range(a.m):
            child = _apply_row(rows[x], mask)
            if child in seen:
                continue
            cword = word + (x,)
            if child & (child - 1) == 0:
                return cword
            seen[child] = cword
            queue.append(child)
    raise AssertionError("pair criterion says synchronizing but subset BFS found no reset word")


def reachable_images(a, cap=24):
    """All image sets Q.u over words u, as bitmasks (includes Q itself)."""
    if a.n > cap:
        raise CapExceeded(f"subset search capped at {cap} states, got {a.n}")
    rows = _letter_rows(a)
    start = full_mask(a.n)
    seen = {start}
    queue = deque([start])
    while queue:
        mask = queue.popleft()
        for x in range(a.m):
            child = _apply_row(rows[x], mask)
            if child not in seen:
                seen.add(child)
                queue.append(child)
    return seen


def former_rank(a, cap=24):
    """Minimum image size > 1 over all words; n for permutation-only automata."""
    if a.n == 1:
        raise Undefined("former rank needs at least 2 states")
    best = a.n
    for mask in reachable_images(a, cap=cap):
        size = mask.bit_count()
        if 1 < size < best:
            best = size
    return best


def cerny(n):
    """The classic slowly synchronizing series: letter 0 is the n-cycle,
    letter 1 sends state 0 to 1 and fixes the rest."""
    if n < 2:
        raise InvalidParameter("series defined for n >= 2")
    rows = [[(q + 1) % n, 1 if q == 0 else q] for q in range(n)]
    return Automaton(rows)


def random_automaton(n, m, seed):
    if n < 1 or m < 1:
        raise InvalidParameter("need n >= 1 and m >= 1")
    rng = Random(seed)
    rows = [[rng.randrange(n) for _ in range(m)] for _ in range(n)]
    return Automaton(rows)


def format_aut(a):
    lines = [f"{a.n} {a.m}"]
    lines.extend(" ".join(str(p) for p in row) for row in a.delta)
    return "\n".join(lines) + "\n"


def parse_aut(text):
    lines = text.splitlines()
    stripped = [(i + 1, ln.strip()) for i, ln in enumerate(lines) if ln.strip()]
    if not stripped:
        raise ParseError("empty input")
    lineno, header = stripped[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError("header must be 'n m'", line=lineno)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError("header must contain two integers", line=lineno) from None
    if n < 1 or m < 1:
        raise ParseError("need n >= 1 and m >= 1", line=lineno)
    if len(stripped) != n + 1:
        raise ParseError(f"expected {n} transition rows, found {len(stripped) - 1}")
    rows = []
    for lineno, line in stripped[1:]:
        cells = line.split()
        if len(cells) != m:
            raise ParseError(f"expected {m} entries, found {len(cells)}", line=lineno)
        row = []
        for cell in cells:
            try:
                p = int(cell)
            except ValueError:
                raise ParseError(f"bad entry {cell!r}", line=lineno) from None
            if not 0 <= p < n:
                raise ParseError(f"entry {p} not a state in [0, {n})", line=lineno)
            row.append(p)
        rows.append(row)
    return Automaton(rows)
