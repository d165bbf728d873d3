"""Pairwise distinguishability harness over strongly-regular-graph families.

A family is a graph6 file plus its ``(n, k, lambda, mu)`` parameters; every
graph is validated on load.  Deterministic methods (``pwl``, ``swl``,
``cwl``, ``wl1``) call a pair indistinguishable when the stable histograms
match; network methods (``pcn``, ``cwn``) when the embedding distance falls
below epsilon, once per seed.  Complexes are lifted once per graph and shared
across pairs, seeds, and sweep cells.
"""

from __future__ import annotations

import itertools
import json
import os
import platform
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .complexes import (
    CapacityError,
    DEFAULT_MEMBER_CAP,
    lift_clique_complex,
    lift_path_complex,
    lift_ring_complex,
)
from .graphs import SimpleGraph, read_graph6_file
from .network import NetworkParams, embedding_distance, forward, init_features
from .refine import distinguishes, refine_pair, wl1_refine_pair
from .srg import is_strongly_regular

__all__ = [
    "METHODS",
    "NETWORK_METHODS",
    "FamilySpec",
    "RunConfig",
    "SeedOutcome",
    "FailureReport",
    "SweepResult",
    "TimingStats",
    "parse_manifest",
    "load_family",
    "run_family",
    "sweep",
    "time_lifting",
    "reports_to_csv",
    "reports_to_json",
]

METHODS = ("pwl", "swl", "cwl", "wl1", "pcn", "cwn")
NETWORK_METHODS = ("pcn", "cwn")


@dataclass(frozen=True)
class FamilySpec:
    """One named family: a graph6 file and its strongly-regular parameters."""

    name: str
    path: str
    n: int
    k: int
    lam: int
    mu: int


@dataclass(frozen=True)
class RunConfig:
    """Method selection plus every knob the engines accept."""

    method: str = "pcn"
    max_dim: int = 3
    max_ring: int = 4
    layers: int = 4
    seeds: tuple = tuple(range(10))
    epsilon: float = 0.01
    boundary_mode: str = "incidence"
    use_coboundary_features: bool = True
    init_mode: str = "sum"
    init_base: str = "ones"
    hidden_dim: int = 16
    embed_dim: int = 32
    member_cap: int = DEFAULT_MEMBER_CAP
    threads: int = 1
    use_cache: bool = True

    def validate(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.method in NETWORK_METHODS and not self.seeds:
            raise ValueError(f"method {self.method!r} needs a non-empty seed list")

    @property
    def structural_param(self) -> int:
        return self.max_ring if self.method in ("cwl", "cwn") else self.max_dim

    @property
    def is_network(self) -> bool:
        return self.method in NETWORK_METHODS


@dataclass(frozen=True)
class SeedOutcome:
    seed: Optional[int]
    pairs: int
    indistinguishable: int
    failure_rate: float
    forward_ms: float


@dataclass
class FailureReport:
    family: str
    method: str
    structural_param: int
    layers: Optional[int]
    pairs: int
    outcomes: list = field(default_factory=list)
    lift_ms: float = 0.0
    skipped: bool = False
    diagnostic: str = ""

    @property
    def rates(self) -> list:
        return [o.failure_rate for o in self.outcomes]

    def aggregate(self) -> dict:
        rates = self.rates
        if not rates:
            return {"mean": None, "std": None, "min": None, "max": None}
        arr = np.asarray(rates, dtype=np.float64)
        return {
            "mean": float(arr.mean()),
            "std": float(arr.std()),
            "min": float(arr.min()),
            "max": float(arr.max()),
        }

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "method": self.method,
            "structural_param": self.structural_param,
            "layers": self.layers,
            "pairs": self.pairs,
            "lift_ms": self.lift_ms,
            "skipped": self.skipped,
            "diagnostic": self.diagnostic,
            "aggregate": self.aggregate(),
            "outcomes": [
                {
                    "seed": o.seed,
                    "pairs": o.pairs,
                    "indistinguishable": o.indistinguishable,
                    "failure_rate": o.failure_rate,
                    "forward_ms": o.forward_ms,
                }
                for o in self.outcomes
            ],
        }


def parse_manifest(path) -> list:
    """Line-oriented family manifest: ``name path n k lambda mu``."""
    specs = []
    base = os.path.dirname(os.path.abspath(path))
    with open(path, "r", encoding="ascii") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 6:
                raise ValueError(
                    f"{path}:{lineno}: expected 'name path n k lambda mu'"
                )
            name, rel = parts[0], parts[1]
            file_path = rel if os.path.isabs(rel) else os.path.join(base, rel)
            n, k, lam, mu = (int(x) for x in parts[2:])
            specs.append(FamilySpec(name, file_path, n, k, lam, mu))
    return specs


def load_family(spec: FamilySpec, validate: bool = True) -> list:
    graphs = read_graph6_file(spec.path)
    if validate:
        for i, g in enumerate(graphs):
            if not is_strongly_regular(g, spec.n, spec.k, spec.lam, spec.mu):
                raise ValueError(
                    f"{spec.name}: graph {i} in {spec.path} fails the "
                    f"({spec.n},{spec.k},{spec.lam},{spec.mu}) parameter check"
                )
    return graphs


def _lift_for(cfg: RunConfig, g: SimpleGraph):
    if cfg.method in ("pwl", "pcn"):
        return lift_path_complex(
            g, cfg.max_dim, boundary_mode=cfg.boundary_mode,
            member_cap=cfg.member_cap,
        )
    if cfg.method == "swl":
        return lift_clique_complex(g, cfg.max_dim, member_cap=cfg.member_cap)
    if cfg.method in ("cwl", "cwn"):
        return lift_ring_complex(g, cfg.max_ring, member_cap=cfg.member_cap)
    return None  # wl1 works on the graph itself


class _LiftCache:
    """Shared complex cache keyed by family, lifting kind and parameters."""

    def __init__(self):
        self.store = {}

    def key(self, family: str, cfg: RunConfig):
        kind = "path" if cfg.method in ("pwl", "pcn") else (
            "simplex" if cfg.method == "swl" else "cell"
        )
        extra = cfg.boundary_mode if kind == "path" else ""
        return (family, kind, cfg.structural_param, extra)


def _map_jobs(fn, jobs, threads: int):
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, jobs))
    return [fn(job) for job in jobs]


def run_family(
    spec: FamilySpec,
    cfg: RunConfig,
    cache: Optional[_LiftCache] = None,
) -> FailureReport:
    """Failure rate of one method on every graph pair of one family."""
    cfg.validate()
    graphs = load_family(spec)
    pairs = list(itertools.combinations(range(len(graphs)), 2))
    layers = cfg.layers if cfg.is_network else None
    report = FailureReport(
        family=spec.name,
        method=cfg.method,
        structural_param=cfg.structural_param if cfg.method != "wl1" else 0,
        layers=layers,
        pairs=len(pairs),
    )
    complexes = None
    if cfg.method != "wl1":
        t0 = time.monotonic()
        cache_key = cache.key(spec.name, cfg) if (cache and cfg.use_cache) else None
        if cache_key is not None and cache_key in cache.store:
            complexes = cache.store[cache_key]
        else:
            try:
                complexes = [_lift_for(cfg, g) for g in graphs]
            except CapacityError as exc:
                report.skipped = True
                report.diagnostic = f"member cap exceeded while lifting: {exc}"
                return report
            if cache_key is not None:
                cache.store[cache_key] = complexes
        report.lift_ms = (time.monotonic() - t0) * 1000.0

    if cfg.is_network:
        max_dim = complexes[0].max_dim if complexes else cfg.max_dim
        feats = [
            init_features(c, cfg.hidden_dim, cfg.init_mode, cfg.init_base)
            for c in complexes
        ]
        for seed in cfg.seeds:
            params = NetworkParams.create(
                seed=seed,
                layers=cfg.layers,
                max_dim=max_dim,
                hidden_dim=cfg.hidden_dim,
                embed_dim=cfg.embed_dim,
                use_coboundary_features=cfg.use_coboundary_features,
            )
            t0 = time.monotonic()
            embeddings = _map_jobs(
                lambda i: forward(complexes[i], feats[i], params),
                list(range(len(graphs))),
                cfg.threads,
            )
            fwd_ms = (time.monotonic() - t0) * 1000.0
            bad = sum(
                embedding_distance(embeddings[i], embeddings[j]) < cfg.epsilon
                for i, j in pairs
            )
            rate = bad / len(pairs) if pairs else 0.0
            report.outcomes.append(
                SeedOutcome(seed, len(pairs), bad, rate, fwd_ms)
            )
        return report

    # deterministic methods: one outcome, seed None
    t0 = time.monotonic()

    def judge(pair):
        i, j = pair
        if cfg.method == "wl1":
            h1, h2, _ = wl1_refine_pair(graphs[i], graphs[j])
        else:
            h1, h2, _ = refine_pair(complexes[i], complexes[j])
        return not distinguishes(h1, h2)

    verdicts = _map_jobs(judge, pairs, cfg.threads)
    bad = sum(verdicts)
    rate = bad / len(pairs) if pairs else 0.0
    report.outcomes.append(
        SeedOutcome(None, len(pairs), bad, rate,
                    (time.monotonic() - t0) * 1000.0)
    )
    return report


@dataclass
class SweepResult:
    reports: list = field(default_factory=list)
    errors: list = field(default_factory=list)  # (family, method, message)

    def comparison_table(self) -> str:
        """Family x (method, layers) matrix of mean/std/min/max rates."""
        columns = sorted(
            {(r.method, r.structural_param, r.layers) for r in self.reports},
            key=lambda c: (c[0], c[1], c[2] if c[2] is not None else -1),
        )
        families = sorted({r.family for r in self.reports})
        by_cell = {
            (r.family, r.method, r.structural_param, r.layers): r
            for r in self.reports
        }

        def header(col):
            method, param, layers = col
            tag = f"{method}({param})"
            return f"{tag} L={layers}" if layers is not None else tag

        width = max([14] + [len(header(c)) + 2 for c in columns])
        lines = []
        head = " " * 26 + "".join(header(c).rjust(width) for c in columns)
        lines.append(head)
        for fam in families:
            for stat in ("mean", "std", "min", "max"):
                cells = []
                for col in columns:
                    r = by_cell.get((fam, col[0], col[1], col[2]))
                    if r is None:
                        cells.append("-".rjust(width))
                    elif r.skipped:
                        cells.append("skip".rjust(width))
                    else:
                        value = r.aggregate()[stat]
                        cells.append(f"{value:.5g}".rjust(width))
                label = fam if stat == "mean" else ""
                lines.append(f"{label:<20}{stat:>6}" + "".join(cells))
        return "\n".join(lines)


def sweep(specs, configs) -> SweepResult:
    """Run every (family, config) cell; one failing cell never aborts the rest."""
    result = SweepResult()
    cache = _LiftCache()
    for spec in specs:
        for cfg in configs:
            try:
                result.reports.append(run_family(spec, cfg, cache=cache))
            except Exception as exc:  # noqa: BLE001 - cell isolation is the contract
                result.errors.append((spec.name, cfg.method, str(exc)))
    return result


@dataclass
class TimingStats:
    label: str
    repeats: int
    seconds_mean: float
    seconds_std: float
    seconds_min: float
    seconds_max: float
    member_counts: list
    fingerprint: str

    def to_dict(self) -> dict:
        return self.__dict__.copy()


def _environment_fingerprint() -> str:
    cpu = platform.processor() or platform.machine()
    try:
        with open("/proc/cpuinfo", "r", encoding="utf-8") as handle:
            for line in handle:
                if line.lower().startswith("model name"):
                    cpu = line.split(":", 1)[1].strip()
                    break
    except OSError:
        pass
    return f"{cpu}; {os.cpu_count()} logical cpus; python {platform.python_version()}"


def time_lifting(graphs, cfg: RunConfig, repeats: int = 10) -> TimingStats:
    """Wall-clock statistics for lifting a graph list ``repeats`` times."""
    if repeats < 1:
        raise ValueError("repeats must be at least 1")
    samples = []
    counts = []
    for r in range(repeats):
        t0 = time.monotonic()
        lifted = [_lift_for(cfg, g) for g in graphs]
        samples.append(time.monotonic() - t0)
        if r == 0:
            counts = [c.counts() for c in lifted if c is not None]
    arr = np.asarray(samples)
    label = f"{cfg.method} param={cfg.structural_param} on {len(graphs)} graphs"
    return TimingStats(
        label=label,
        repeats=repeats,
        seconds_mean=float(arr.mean()),
        seconds_std=float(arr.std()),
        seconds_min=float(arr.min()),
        seconds_max=float(arr.max()),
        member_counts=counts,
        fingerprint=_environment_fingerprint(),
    )


# ---------------------------------------------------------------------------
# report emission
# ---------------------------------------------------------------------------

_CSV_FIELDS = (
    "family", "method", "max_dim", "layers", "seed", "failure_rate",
    "pairs", "indistinguishable", "lift_ms", "forward_ms",
)


def reports_to_csv(reports) -> str:
    import csv
    import io

    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_CSV_FIELDS)
    for r in reports:
        layers = "" if r.layers is None else r.layers
        if r.skipped:
            writer.writerow(
                [r.family, r.method, r.structural_param, layers,
                 "", "", "", "", "skipped", ""]
            )
            continue
        for o in r.outcomes:
            writer.writerow(
                [r.family, r.method, r.structural_param, layers,
                 "" if o.seed is None else o.seed,
                 f"{o.failure_rate:.10g}", o.pairs, o.indistinguishable,
                 f"{r.lift_ms:.3f}", f"{o.forward_ms:.3f}"]
            )
    return out.getvalue()


def reports_to_json(reports, errors=()) -> str:
    doc = {
        "reports": [r.to_dict() for r in reports],
        "errors": [
            {"family": f, "method": m, "message": msg} for f, m, msg in errors
        ],
        "environment": _environment_fingerprint(),
    }
    return json.dumps(doc, indent=2, sort_keys=True)
