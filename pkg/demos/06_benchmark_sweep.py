"""A small failure-rate sweep over the bundled corpus.

Runs the vertex test, deterministic path refinement, and the random-weight
network at two depths over the two complete families, then prints the
comparison matrix and the CSV emitted for external plotting.
"""

import pathlib

from pathcomplex.bench import RunConfig, parse_manifest, reports_to_csv, sweep

manifest = pathlib.Path(__file__).resolve().parents[1] / "data" / "srg" / "manifest.txt"
specs = [
    s for s in parse_manifest(manifest)
    if s.name in ("SR(16,6,2,2)", "SR(28,12,6,4)")
]

configs = [
    RunConfig(method="wl1", seeds=()),
    RunConfig(method="pwl", max_dim=3, seeds=()),
    RunConfig(method="pcn", max_dim=3, layers=3, seeds=tuple(range(5))),
    RunConfig(method="pcn", max_dim=3, layers=5, seeds=tuple(range(5))),
]

result = sweep(specs, configs)
print(result.comparison_table())
print()
print(reports_to_csv(result.reports))
