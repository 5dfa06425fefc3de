import time

from twistk.cpring import inject_fault
from twistk.selftest import run_selftest


def test_normal_depth_passes_within_budget():
    start = time.perf_counter()
    results = run_selftest("normal")
    assert time.perf_counter() - start < 60
    assert all(r.passed for r in results), [str(r) for r in results if not r.passed]


def test_deep_depth_passes():
    results = run_selftest("deep")
    assert all(r.passed for r in results), [str(r) for r in results if not r.passed]


def test_perturbed_structure_constant_is_caught():
    with inject_fault(2, 3, 4, 1):
        results = run_selftest("normal")
    failed = {r.name: r.detail for r in results if not r.passed}
    assert "structure constants" in failed
    assert "b2*b3" in failed["structure constants"]


def test_fault_is_scoped():
    with inject_fault(1, 1, 1, 5):
        pass
    assert all(r.passed for r in run_selftest("normal"))
