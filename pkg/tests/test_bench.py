import importlib.util
from pathlib import Path

import pytest

from epglab._accel import HAVE_NUMBA

BENCH = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_search.py"


@pytest.mark.skipif(not HAVE_NUMBA, reason="needs numba")
def test_quick_benchmark_backends_agree(capsys):
    spec = importlib.util.spec_from_file_location("bench_search", BENCH)
    bench = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(bench)
    assert bench.main(["--quick"]) == 0
    out = capsys.readouterr().out
    assert "MISMATCH" not in out and "complete_bipartite" in out
