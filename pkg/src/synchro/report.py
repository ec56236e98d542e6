"""Per-automaton analysis reports and deterministic batch datasets.

A report either carries a populated field or an explicit skip reason; no
stage fails silently.  Serialized rows exclude wall-clock timings so that
identical (input, config, seed) yields byte-identical datasets.
"""

import csv
import hashlib
import io
import json
import os
import time
from dataclasses import dataclass, field

from .algebra import (
    Tolerances,
    algebra_of_automaton,
    enumerate_monoid,
    radical,
    semisimple_quotient,
    wedderburn_decompose,
)
from .automaton import (
    former_rank,
    format_aut,
    is_synchronizing,
    shortest_reset_word,
)
from .census import iter_census
from .congruence import is_simple
from .errors import (
    BoundViolation,
    CapExceeded,
    DecompositionFailed,
    MonoidTooLarge,
    SynchroError,
    ToleranceAmbiguity,
    Undefined,
)
from .ideals import (
    ComponentMonoid,
    ThetaTable,
    minimal_core,
    rnk_ideal,
    sigma_classes,
    synthesize_reset_word,
)
from .packing import packing_number

SCHEMA_VERSION = "1"

CSV_COLUMNS = [
    "digest", "n", "m", "synchronizing", "reset_len", "former_rank",
    "simple", "semisimple", "dim_R", "dim_rad", "k", "dims", "rnk",
    "core", "sections", "sigma_class_counts", "synth_len",
    "bound_2r", "bound_cubic", "bounds_ok",
    "residual_idempotent", "residual_sum", "seed", "skipped", "violations",
]


@dataclass(frozen=True)
class AnalyzeConfig:
    monoid_cap: int = 200_000
    tol: Tolerances = Tolerances()
    seed: int = 0
    subset_cap: int = 24
    packing_budget: int = None
    with_sigma: bool = True
    with_synthesis: bool = True


@dataclass
class AnalysisReport:
    digest: str
    n: int
    m: int
    schema: str = SCHEMA_VERSION
    synchronizing: bool = None
    reset_len: int = None
    former_rank: int = None
    simple: bool = None
    semisimple: bool = None
    algebra: dict = None
    ideals: dict = None
    bounds_ok: bool = None
    skipped: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def validate(self):
        """Re-check every recorded inequality; raises on silent inconsistency."""
        if self.ideals and self.semisimple and self.reset_len is not None:
            fr = self.ideals.get("fr")
            ok = True
            if self.ideals.get("bound_2r") is not None:
                ok = ok and self.reset_len <= self.ideals["bound_2r"]
            if fr and fr > 1:
                ok = ok and self.reset_len * fr * (fr - 1) <= self.n * (self.n - 1) ** 2
            recorded = self.bounds_ok if self.bounds_ok is not None else ok
            if ok != recorded and "bounds" not in self.violations:
                raise AssertionError("report inequalities inconsistent with flags")

    def to_dict(self, with_timings=False):
        self.validate()
        out = {
            "schema": self.schema,
            "digest": self.digest,
            "n": self.n,
            "m": self.m,
            "synchronizing": self.synchronizing,
            "reset_len": self.reset_len,
            "former_rank": self.former_rank,
            "simple": self.simple,
            "semisimple": self.semisimple,
            "algebra": self.algebra,
            "ideals": self.ideals,
            "bounds_ok": self.bounds_ok,
            "skipped": self.skipped,
            "violations": self.violations,
        }
        if with_timings:
            out["timings"] = self.timings
        return out

    def to_json(self, with_timings=False):
        return json.dumps(self.to_dict(with_timings=with_timings), sort_keys=True)


def automaton_digest(a):
    return hashlib.sha256(format_aut(a).encode()).hexdigest()[:16]


def analyze(a, config=None):
    """Run every stage on one automaton; unavailable stages are recorded as skips."""
    cfg = config or AnalyzeConfig()
    rep = AnalysisReport(digest=automaton_digest(a), n=a.n, m=a.m)
    t_all = time.perf_counter()

    rep.synchronizing = is_synchronizing(a)
    try:
        t0 = time.perf_counter()
        w = shortest_reset_word(a, cap=cfg.subset_cap)
        rep.timings["reset_bfs"] = time.perf_counter() - t0
        rep.reset_len = len(w) if w is not None else None
        if w is None:
            rep.skipped["reset_len"] = "not synchronizing"
    except CapExceeded as e:
        rep.skipped["reset_len"] = str(e)
    try:
        rep.former_rank = former_rank(a, cap=cfg.subset_cap)
    except Undefined as e:
        rep.skipped["former_rank"] = str(e)
    except CapExceeded as e:
        rep.skipped["former_rank"] = str(e)
    try:
        rep.simple = is_simple(a)
    except Undefined as e:
        rep.skipped["simple"] = str(e)

    if not rep.synchronizing:
        rep.skipped["algebra"] = "not synchronizing"
        rep.timings["total"] = time.perf_counter() - t_all
        return rep

    try:
        t0 = time.perf_counter()
        mt = enumerate_monoid(a, cap=cfg.monoid_cap)
        rep.timings["monoid"] = time.perf_counter() - t0
    except MonoidTooLarge as e:
        rep.skipped["algebra"] = str(e)
        rep.timings["total"] = time.perf_counter() - t_all
        return rep

    t0 = time.perf_counter()
    alg = algebra_of_automaton(a)
    rad = radical(alg)
    rep.semisimple = rad.dim == 0
    ss = semisimple_quotient(alg, rad)
    rep.timings["algebra"] = time.perf_counter() - t0
    try:
        t0 = time.perf_counter()
        wd = wedderburn_decompose(ss, tol=cfg.tol, seed=cfg.seed)
        rep.timings["wedderburn"] = time.perf_counter() - t0
    except DecompositionFailed as e:
        rep.algebra = {
            "dim_R": alg.dim, "dim_rad": rad.dim, "semisimple": rep.semisimple,
            "k": None, "dims": None, "residuals": e.residuals,
            "tolerances": vars(cfg.tol), "seed": cfg.seed,
        }
        rep.skipped["wedderburn"] = str(e)
        rep.timings["total"] = time.perf_counter() - t_all
        return rep
    rep.algebra = {
        "dim_R": alg.dim,
        "dim_rad": rad.dim,
        "semisimple": rep.semisimple,
        "k": wd.k,
        "dims": list(wd.dims),
        "residuals": {k: v for k, v in wd.residuals.items()},
        "tolerances": {
            "cluster": cfg.tol.cluster, "rank": cfg.tol.rank, "zero": cfg.tol.zero,
        },
        "seed": cfg.seed,
    }

    try:
        t0 = time.perf_counter()
        theta = ThetaTable(mt, ss, wd)
        core, sections = minimal_core(theta)
        cms = [ComponentMonoid(theta, i) for i in range(wd.k)]
        rnks = [rnk_ideal(cm).rnk for cm in cms]
        rep.timings["ideals"] = time.perf_counter() - t0
    except ToleranceAmbiguity as e:
        rep.skipped["ideals"] = f"undetermined: {e}"
        rep.timings["total"] = time.perf_counter() - t_all
        return rep

    fr = rep.former_rank
    ideals_frag = {
        "fr": fr,
        "rnk": rnks,
        "core": sorted(core.indices),
        "sections": [sorted(s.support) for s in sections],
        "sigma_class_counts": None,
        "synth_len": None,
        "bound_2r": None,
        "bound_cubic": None,
    }
    if fr is not None and fr >= 2:
        d_fr = packing_number(2, fr, a.n, budget=cfg.packing_budget)
        ideals_frag["bound_2r"] = (a.n - 1) * d_fr
        ideals_frag["bound_cubic"] = a.n * (a.n - 1) ** 2 / (fr * (fr - 1))

    if cfg.with_sigma:
        counts = []
        try:
            for sec in sections:
                for i in sorted(sec.support):
                    sc = sigma_classes(theta, cms[i], sec)
                    counts.append([i, sc.num_classes])
            ideals_frag["sigma_class_counts"] = counts
        except (SynchroError, AssertionError) as e:
            rep.skipped["sigma_class_counts"] = str(e)

    if cfg.with_synthesis and rep.semisimple:
        try:
            word, cert = synthesize_reset_word(
                a, tol=cfg.tol, seed=cfg.seed, cap=cfg.monoid_cap,
                packing_budget=cfg.packing_budget,
            )
            ideals_frag["synth_len"] = cert.length
        except BoundViolation as e:
            rep.violations.append(f"synthesis: {e}")
    elif not rep.semisimple:
        rep.skipped["synth_len"] = "not semisimple"

    rep.ideals = ideals_frag

    ok = True
    if rep.semisimple and rep.reset_len is not None and ideals_frag["bound_2r"] is not None:
        if rep.reset_len > ideals_frag["bound_2r"]:
            ok = False
            rep.violations.append("reset length exceeds (n-1)*D(2,Fr,n)")
        if rep.reset_len * fr * (fr - 1) > a.n * (a.n - 1) ** 2:
            ok = False
            rep.violations.append("reset length exceeds n(n-1)^2/(Fr(Fr-1))")
        if rnks and min(rnks) != fr:
            ok = False
            rep.violations.append("min component rank differs from former rank")
    if rnks and fr is not None and fr > min(rnks):
        ok = False
        rep.violations.append("former rank exceeds min component rank")
    rep.bounds_ok = ok

    rep.timings["total"] = time.perf_counter() - t_all
    return rep


def report_row(rep):
    """Flatten a report into the fixed CSV column set."""
    alg = rep.algebra or {}
    ide = rep.ideals or {}
    res = alg.get("residuals") or {}

    def enc(v):
        return json.dumps(v, separators=(",", ":")) if v is not None else ""

    return {
        "digest": rep.digest,
        "n": rep.n,
        "m": rep.m,
        "synchronizing": rep.synchronizing,
        "reset_len": rep.reset_len if rep.reset_len is not None else "",
        "former_rank": rep.former_rank if rep.former_rank is not None else "",
        "simple": rep.simple if rep.simple is not None else "",
        "semisimple": rep.semisimple if rep.semisimple is not None else "",
        "dim_R": alg.get("dim_R", ""),
        "dim_rad": alg.get("dim_rad", ""),
        "k": alg.get("k", ""),
        "dims": enc(alg.get("dims")),
        "rnk": enc(ide.get("rnk")),
        "core": enc(ide.get("core")),
        "sections": enc(ide.get("sections")),
        "sigma_class_counts": enc(ide.get("sigma_class_counts")),
        "synth_len": ide.get("synth_len", "") if ide.get("synth_len") is not None else "",
        "bound_2r": ide.get("bound_2r", "") if ide.get("bound_2r") is not None else "",
        "bound_cubic": ide.get("bound_cubic", "") if ide.get("bound_cubic") is not None else "",
        "bounds_ok": rep.bounds_ok if rep.bounds_ok is not None else "",
        "residual_idempotent": res.get("idempotent", ""),
        "residual_sum": res.get("sum", ""),
        "seed": (rep.algebra or {}).get("seed", ""),
        "skipped": enc(rep.skipped) if rep.skipped else "",
        "violations": enc(rep.violations) if rep.violations else "",
    }


def _analyze_row(args):
    delta, seed, monoid_cap, tol_kw = args
    from .automaton import Automaton

    cfg = AnalyzeConfig(monoid_cap=monoid_cap, tol=Tolerances(**tol_kw), seed=seed)
    rep = analyze(Automaton(delta), cfg)
    return report_row(rep)


def batch(config, out_path=None, fmt="csv", workers=None):
    """One report row per automaton, plus a violation-count summary.

    Deterministic for fixed (config, seed): rows are emitted in enumeration
    order and contain no timing data.  Worker count is capped by the
    SYNCHRO_THREADS environment variable.
    """
    if workers is None:
        workers = int(os.environ.get("SYNCHRO_THREADS", "1"))
    workers = max(1, workers)
    tol_kw = {
        "cluster": config.tol_cluster,
        "rank": config.tol_rank,
        "zero": config.tol_zero,
    }
    jobs = ((a.delta, seed, config.monoid_cap, dict(tol_kw))
            for seed, a in iter_census(config))
    if workers > 1:
        from multiprocessing import Pool

        with Pool(workers) as pool:
            rows = list(pool.imap(_analyze_row, jobs, chunksize=16))
    else:
        rows = [_analyze_row(job) for job in jobs]
    violations = sum(1 for r in rows if r["violations"])
    summary = {
        "rows": len(rows),
        "violations": violations,
        "schema": SCHEMA_VERSION,
    }
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        buf.write(f"# summary rows={summary['rows']} violations={summary['violations']}\n")
        payload = buf.getvalue()
    else:
        payload = json.dumps({"summary": summary, "rows": rows}, sort_keys=True, indent=1) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(payload)
    return rows, summary, payload
