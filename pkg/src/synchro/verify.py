"""Executable acceptance checks.

Each criterion is a function returning a CriterionResult; the census-based
criteria share one cached analysis pass over the exhaustive isomorph-reduced
enumerations.  All tolerances are fixed here, not calibrated at run time.
"""

import time
from dataclasses import dataclass
from random import Random

from .algebra import (
    algebra_of_automaton,
    enumerate_monoid,
    radical,
    radical_element_flags,
    semisimple_quotient,
    shortest_radical_word,
    wedderburn_decompose,
)
from .automaton import (
    Automaton,
    cerny,
    former_rank,
    is_synchronizing,
    random_automaton,
    rank,
    shortest_reset_word,
    transformation_of,
)
from .census import enumerate_tables
from .congruence import is_simple, kernel_partition, largest_congruence_below
from .errors import BoundViolation, SynchroError
from .ideals import (
    ComponentMonoid,
    ThetaTable,
    minimal_core,
    minimal_section,
    rnk_ideal,
    sigma_classes,
    synthesize_reset_word,
)
from .packing import PackingInstance, exact_packing, packing_number, upper_bounds

RESIDUAL_LIMIT = 1e-8
STABILITY_SEEDS = 10
SECTION_TRIPLES = 1000
RADICAL_SAMPLES = 200


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    elapsed: float

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} criterion {self.number}: {self.name} — {self.detail} ({self.elapsed:.1f}s)"


_census_cache = {}


def census_records(n, m=2):
    """One analysis record per isomorphism class of n-state m-letter automata."""
    key = (n, m)
    if key in _census_cache:
        return _census_cache[key]
    records = []
    for delta in enumerate_tables(n, m):
        a = Automaton(delta)
        rec = {"delta": delta, "n": n, "synchronizing": is_synchronizing(a)}
        mt = enumerate_monoid(a)
        alg = algebra_of_automaton(a)
        rad = radical(alg)
        ss = semisimple_quotient(alg, rad)
        wd = wedderburn_decompose(ss, seed=0)
        theta = ThetaTable(mt, ss, wd)
        flags = radical_element_flags(mt, alg, rad)
        rec["agreement"] = all(
            (not theta.supports[x]) == flags[x] for x in range(len(mt.elements))
        )
        rec["residual"] = wd.max_idempotent_residual
        rec["nsq_ok"] = sum(d * d for d in wd.dims) == ss.dim
        dims_ref = tuple(sorted(wd.dims))
        rec["dims_stable"] = all(
            tuple(sorted(wedderburn_decompose(ss, seed=s).dims)) == dims_ref
            for s in range(1, STABILITY_SEEDS)
        )
        rec["semisimple"] = rad.dim == 0
        rec["k"] = wd.k
        rec["dims"] = wd.dims
        if not rec["synchronizing"]:
            records.append(rec)
            continue
        rec["reset_len"] = len(shortest_reset_word(a))
        rec["fr"] = former_rank(a) if n >= 2 else None
        cms = [ComponentMonoid(theta, i) for i in range(wd.k)]
        rec["rnks"] = [rnk_ideal(cm).rnk for cm in cms]
        if rec["semisimple"]:
            core, sections = minimal_core(theta)
            rec["core"] = sorted(core.indices)
            sigma = []
            for sec in sections:
                for i in sorted(sec.support):
                    sc = sigma_classes(theta, cms[i], sec)
                    sigma.append(
                        {
                            "component": i,
                            "classes": sc.num_classes,
                            "rnk": rec["rnks"][i],
                            "zero_singleton": sc.zero_sigma_size() == 1,
                        }
                    )
            rec["sigma"] = sigma
            try:
                word, cert = synthesize_reset_word(a, seed=0)
                rec["synth"] = {
                    "ok": True,
                    "length": cert.length,
                    "rank_one": cert.checks["rank_one"],
                    "bound_component": cert.bound_component,
                    "within": cert.length <= cert.bound_component,
                }
            except (BoundViolation, SynchroError, AssertionError) as e:
                rec["synth"] = {"ok": False, "error": str(e)}
        records.append(rec)
    _census_cache[key] = records
    return records


def _timed(number, name, fn):
    t0 = time.perf_counter()
    passed, detail = fn()
    return CriterionResult(number, name, passed, detail, time.perf_counter() - t0)


def criterion_1():
    def run():
        bad = []
        for n in range(3, 9):
            got = len(shortest_reset_word(cerny(n)))
            if got != (n - 1) ** 2:
                bad.append((n, got))
        return not bad, (
            f"violations {bad}" if bad else "reset length (n-1)^2 for n=3..8"
        )

    return _timed(1, "slowly synchronizing series lengths", run)


def criterion_2():
    def run():
        bad = []
        for n in range(3, 7):
            a = cerny(n)
            simple = is_simple(a)
            rad_dim = radical(algebra_of_automaton(a)).dim
            if not simple or rad_dim != 0:
                bad.append((n, simple, rad_dim))
        return not bad, (
            f"violations {bad}" if bad else "simple and radical dim 0 for n=3..6"
        )

    return _timed(2, "simple implies semisimple on the series", run)


def criterion_3():
    def run():
        checked = violations = 0
        for n in (3, 4):
            for rec in census_records(n):
                if not rec["synchronizing"] or not rec["semisimple"]:
                    continue
                fr = rec["fr"]
                checked += 1
                bound = (n - 1) * packing_number(2, fr, n)
                if rec["reset_len"] > bound:
                    violations += 1
                if rec["reset_len"] * fr * (fr - 1) > n * (n - 1) ** 2:
                    violations += 1
        return violations == 0, f"{checked} semisimple automata, {violations} violations"

    return _timed(3, "main bound on the binary census", run)


def criterion_4():
    def run():
        eq_checked = ineq_checked = violations = 0
        for n in (3, 4):
            for rec in census_records(n):
                if not rec["synchronizing"]:
                    continue
                fr = rec["fr"]
                rnks = rec["rnks"]
                if not rnks:
                    continue
                ineq_checked += 1
                if fr > min(rnks):
                    violations += 1
                if rec["semisimple"]:
                    eq_checked += 1
                    if min(rnks) != fr:
                        violations += 1
        return violations == 0, (
            f"{ineq_checked} automata (inequality), {eq_checked} (equality), "
            f"{violations} violations"
        )

    return _timed(4, "former rank against minimal ideal ranks", run)


def criterion_5(target=SECTION_TRIPLES):
    def run():
        rng = Random(20260810)
        checked = violations = 0
        while checked < target:
            n = rng.choice((3, 4, 5))
            a = random_automaton(n, 2, rng.randrange(1 << 30))
            if not is_synchronizing(a):
                continue
            try:
                theta = _theta_for(a)
            except SynchroError:
                continue
            for _ in range(6):
                if checked >= target:
                    break
                v1 = tuple(rng.randrange(a.m) for _ in range(rng.randrange(1, 2 * n)))
                v2 = tuple(rng.randrange(a.m) for _ in range(rng.randrange(1, 2 * n)))
                s1 = minimal_section(theta, v1)
                s2 = minimal_section(theta, v2)
                if s1 is None or s2 is None:
                    continue
                checked += 1
                if s1.support != s2.support and (s1.support & s2.support):
                    violations += 1
        return violations == 0, f"{checked} section pairs, {violations} violations"

    return _timed(5, "minimal sections equal or disjoint", run)


def _theta_for(a, seed=0):
    mt = enumerate_monoid(a)
    alg = algebra_of_automaton(a)
    rad = radical(alg)
    ss = semisimple_quotient(alg, rad)
    wd = wedderburn_decompose(ss, seed=seed)
    return ThetaTable(mt, ss, wd)


def criterion_6(target=RADICAL_SAMPLES):
    def run():
        rng = Random(20260810)
        checked = violations = 0
        while checked < target:
            n = rng.choice((3, 4, 5))
            a = random_automaton(n, 2, rng.randrange(1 << 30))
            if not is_synchronizing(a):
                continue
            alg = algebra_of_automaton(a)
            rad = radical(alg)
            if rad.dim == 0:
                continue
            mt = enumerate_monoid(a)
            u = shortest_radical_word(a, mt=mt, alg=alg, rad=rad)
            checked += 1
            if rank(a, u * (n - 1)) != 1:
                violations += 1
            if rank(a, u) > 1:
                sigma = largest_congruence_below(
                    a, kernel_partition(transformation_of(a, u))
                )
                if sigma.is_identity():
                    violations += 1
        return violations == 0, (
            f"{checked} non-semisimple automata, {violations} violations"
        )

    return _timed(6, "radical word laws", run)


def criterion_7():
    def run():
        checked = violations = 0
        for n in (3, 4):
            for rec in census_records(n):
                if not (rec["synchronizing"] and rec["semisimple"]):
                    continue
                for item in rec["sigma"]:
                    checked += 1
                    bound = packing_number(2, item["rnk"], n) + 1
                    if item["classes"] > bound or not item["zero_singleton"]:
                        violations += 1
        return violations == 0, f"{checked} (component, section) pairs, {violations} violations"

    return _timed(7, "sigma class counts within packing bounds", run)


def criterion_8():
    def run():
        bad = []
        for n in range(2, 9):
            v, _ = exact_packing(PackingInstance(2, 2, n))
            if v != n * (n - 1) // 2:
                bad.append(("pairs", n, v))
        v, _ = exact_packing(PackingInstance(2, 3, 7))
        if v != 7:
            bad.append(("fano", v))
        for n in range(1, 10):
            for r in range(1, n + 1):
                for t in range(1, r + 1):
                    p = PackingInstance(t, r, n)
                    v, design = exact_packing(p)
                    if not design.is_valid() or len(design) != v:
                        bad.append(("witness", t, r, n))
                    for name, ub in upper_bounds(p):
                        if v > ub:
                            bad.append((name, t, r, n, v, ub))
        return not bad, f"violations {bad}" if bad else "exact values and bounds agree up to n=9"

    return _timed(8, "packing numbers", run)


def criterion_9():
    def run():
        checked = disagreements = 0
        for n in (3, 4):
            for rec in census_records(n):
                checked += 1
                if not rec["agreement"]:
                    disagreements += 1
                if rec["residual"] >= RESIDUAL_LIMIT:
                    disagreements += 1
                if not rec["nsq_ok"] or not rec["dims_stable"]:
                    disagreements += 1
        return disagreements == 0, f"{checked} automata, {disagreements} disagreements"

    return _timed(9, "numerical split agrees with exact radical", run)


def criterion_10():
    def run():
        checked = violations = 0
        for n in (3, 4):
            for rec in census_records(n):
                if not (rec["synchronizing"] and rec["semisimple"]):
                    continue
                checked += 1
                s = rec["synth"]
                if not (s.get("ok") and s.get("rank_one") and s.get("within")):
                    violations += 1
        return violations == 0, f"{checked} semisimple automata, {violations} violations"

    return _timed(10, "constructive synthesizer with certificates", run)


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
}

QUICK = (1, 2, 8)


def verify_suite(level="quick", echo=print):
    """Run the acceptance criteria; returns the list of CriterionResult."""
    numbers = QUICK if level == "quick" else tuple(sorted(CRITERIA))
    results = []
    for num in numbers:
        res = CRITERIA[num]()
        results.append(res)
        if echo:
            echo(res.line())
    return results
