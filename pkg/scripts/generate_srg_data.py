"""Regenerate the bundled strongly-regular-graph corpus under data/srg/.

Every family is rebuilt from classical constructions and searches, validated
against its parameters, deduplicated by the stable refinement fingerprint,
and written as one graph6 file per family plus a manifest consumed by the
benchmark harness.
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from pathcomplex.graphs import encode_graph6  # noqa: E402
from pathcomplex.srg import build_families  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out",
        default=str(pathlib.Path(__file__).resolve().parents[1] / "data" / "srg"),
        help="output directory (default: data/srg next to this repo)",
    )
    parser.add_argument("--search-time", type=float, default=20.0,
                        help="seconds per switching-class search restart")
    parser.add_argument("--search-limit", type=int, default=6,
                        help="solutions per switching-class search restart")
    args = parser.parse_args()

    out_dir = pathlib.Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    families = build_families(
        search_time=args.search_time,
        search_limit=args.search_limit,
        verbose=True,
    )
    manifest_lines = []
    notes = ["# Generated strongly-regular-graph corpus", ""]
    for fam in families:
        filename = f"sr{fam.n}_{fam.k}_{fam.lam}_{fam.mu}.g6"
        with open(out_dir / filename, "w", encoding="ascii") as handle:
            for g in fam.graphs:
                handle.write(encode_graph6(g) + "\n")
        manifest_lines.append(
            f"{fam.name} {filename} {fam.n} {fam.k} {fam.lam} {fam.mu}"
        )
        status = "complete" if fam.complete else "partial"
        notes.append(f"- {fam.name}: {len(fam.graphs)} graphs ({status}). {fam.note}.")
        print(f"{fam.name}: {len(fam.graphs)} graphs -> {filename}")
    with open(out_dir / "manifest.txt", "w", encoding="ascii") as handle:
        handle.write("\n".join(manifest_lines) + "\n")
    with open(out_dir / "README.md", "w", encoding="ascii") as handle:
        handle.write("\n".join(notes) + "\n")
    print(f"corpus written to {out_dir}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
