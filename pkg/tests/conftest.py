import pathlib

import pytest

from pathcomplex.bench import parse_manifest

REPO_ROOT = pathlib.Path(__file__).resolve().parents[1]
SRG_MANIFEST = REPO_ROOT / "data" / "srg" / "manifest.txt"


@pytest.fixture(scope="session")
def srg_specs():
    if not SRG_MANIFEST.exists():
        pytest.skip(
            "SRG corpus missing; run scripts/generate_srg_data.py to rebuild it"
        )
    return {spec.name: spec for spec in parse_manifest(SRG_MANIFEST)}
