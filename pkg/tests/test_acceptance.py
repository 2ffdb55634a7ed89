"""End-to-end acceptance criteria at full ensemble sizes.

Each criterion prints one PASS/FAIL line in the pytest terminal summary.
"""

import subprocess
import sys

import pytest

from framedrag.acceptance import CRITERIA, compare_trees, run_acceptance

RUNTIME_LIMITS = {1: 180.0, 4: 300.0, 8: 300.0}
LINES = []


@pytest.fixture(scope="module")
def outcomes(tmp_path_factory):
    out = tmp_path_factory.mktemp("acceptance")
    results = {o.number: o for o in run_acceptance(out, quick=False, seed=0, echo=None)}
    for number in sorted(results):
        o = results[number]
        LINES.append(f"{o.line()}  {_brief(o.metrics)}")
    return results


def _brief(metrics, prefix=""):
    parts = []
    for k, v in metrics.items():
        if isinstance(v, dict) and not prefix:
            parts.append(_brief(v, f"{k}."))
        elif isinstance(v, float):
            parts.append(f"{prefix}{k}={v:.4g}")
        elif isinstance(v, (bool, int, str)):
            parts.append(f"{prefix}{k}={v}")
        elif isinstance(v, list) and v and all(isinstance(x, float) for x in v):
            parts.append(f"{prefix}{k}=[" + ", ".join(f"{x:.3g}" for x in v) + "]")
    return ", ".join(p for p in parts if p)


@pytest.mark.slow
@pytest.mark.parametrize("number", [c[0] for c in CRITERIA])
def test_criterion(outcomes, number):
    o = outcomes[number]
    assert o.passed, f"criterion {number} ({o.title}) failed: {o.metrics}"
    limit = RUNTIME_LIMITS.get(number)
    if limit is not None:
        assert o.seconds <= limit, f"criterion {number} took {o.seconds:.0f} s > {limit} s"


@pytest.mark.slow
def test_quick_acceptance_twice_is_byte_identical(tmp_path):
    dirs = []
    for name in ("first", "second"):
        out = tmp_path / name
        subprocess.run([sys.executable, "-m", "framedrag", "acceptance", "--quick",
                        "--seed", "0", "--out", str(out)], capture_output=True, check=False)
        assert (out / "manifest.json").exists()
        dirs.append(out)
    mismatches = compare_trees(*dirs)
    ok = not mismatches
    LINES.append(f"[{'PASS' if ok else 'FAIL'}] 10b. two `acceptance --quick` runs "
                 f"byte-identical ({len(mismatches)} mismatched files)")
    assert ok, mismatches
