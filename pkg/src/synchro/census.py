"""Exhaustive and sampled automaton generation for batch experiments.

Exhaustive mode enumerates all transition tables for fixed (n, m) and keeps
one representative per isomorphism class (state relabeling plus letter
permutation); tables are visited in lexicographic order, so the first table
of each orbit is its lexicographic minimum and the reduction is canonical.
"""

from dataclasses import dataclass
from itertools import permutations, product

from .automaton import Automaton, random_automaton
from .errors import InvalidParameter


@dataclass(frozen=True)
class ExperimentConfig:
    n_low: int
    n_high: int
    letters: int = 2
    mode: str = "exhaustive"  # or "sampled"
    samples: int = 0
    seed: int = 0
    monoid_cap: int = 200_000
    tol_cluster: float = 1e-6
    tol_rank: float = 1e-8
    tol_zero: float = 1e-8
    reduce_isomorphs: bool = True
    enumeration_cap: int = 2_000_000

    def __post_init__(self):
        if self.mode not in ("exhaustive", "sampled"):
            raise InvalidParameter(f"unknown mode {self.mode!r}")
        if self.n_low < 1 or self.n_high < self.n_low:
            raise InvalidParameter("need 1 <= n_low <= n_high")
        if self.letters < 1:
            raise InvalidParameter("need at least one letter")
        if self.mode == "sampled" and self.samples < 1:
            raise InvalidParameter("sampled mode needs a positive sample count")


def table_orbit(delta, n, m, state_perms=None, letter_perms=None):
    """All tables isomorphic to delta under state/letter relabeling."""
    state_perms = state_perms or list(permutations(range(n)))
    letter_perms = letter_perms or list(permutations(range(m)))
    out = set()
    for sp in state_perms:
        inv = [0] * n
        for i, v in enumerate(sp):
            inv[v] = i
        for lp in letter_perms:
            out.add(
                tuple(tuple(sp[delta[inv[p]][lp[x]]] for x in range(m)) for p in range(n))
            )
    return out


def canonical_table(delta, n, m):
    return min(table_orbit(delta, n, m))


def enumerate_tables(n, m, reduce_isomorphs=True, cap=2_000_000):
    """Yield transition tables for all n-state m-letter automata.

    With reduction, yields the lexicographically least table of every
    isomorphism class exactly once.
    """
    total = n ** (n * m)
    if total > cap:
        raise InvalidParameter(
            f"exhaustive enumeration of {total} tables exceeds cap {cap}"
        )
    if not reduce_isomorphs:
        for flat in product(range(n), repeat=n * m):
            yield tuple(tuple(flat[q * m : (q + 1) * m]) for q in range(n))
        return
    sps = list(permutations(range(n)))
    lps = list(permutations(range(m)))
    seen = set()
    for flat in product(range(n), repeat=n * m):
        delta = tuple(tuple(flat[q * m : (q + 1) * m]) for q in range(n))
        if delta in seen:
            seen.discard(delta)
            continue
        yield delta
        orbit = table_orbit(delta, n, m, sps, lps)
        orbit.discard(delta)
        # only tables lexicographically after the representative still need marking
        seen |= {t for t in orbit if t > delta}


def iter_census(config):
    """Yield (row_seed, Automaton) pairs for an experiment configuration."""
    row = 0
    for n in range(config.n_low, config.n_high + 1):
        if config.mode == "exhaustive":
            for delta in enumerate_tables(
                n,
                config.letters,
                reduce_isomorphs=config.reduce_isomorphs,
                cap=config.enumeration_cap,
            ):
                yield config.seed + row, Automaton(delta)
                row += 1
        else:
            for i in range(config.samples):
                seed = config.seed * 1_000_003 + row
                yield seed, random_automaton(n, config.letters, seed)
                row += 1
