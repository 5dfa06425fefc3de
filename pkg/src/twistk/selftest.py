"""Aggregated invariant checks, runnable from the command line."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .cpring import (BetaPoly, fgl_identity_check, injectivity_witness,
                     product_rule_violation, truncate_ring)
from .kk import (composite_hat, decompose, eta_L_cp, evaluate_at_slope,
                 hopf_axiom_suite, membership, oracle_violation, p_poly,
                 random_test_element, recompose, symmetric_range, i_star)
from .tor import tor_graded
from .twist import free_presentation, kz3_presentation, s3_presentation, twisted_k

DEPTHS = {
    "normal": {"degree": 8, "fgl_order": 10, "power_order": 8, "samples": 60, "ring": 8},
    "deep": {"degree": 10, "fgl_order": 12, "power_order": 10, "samples": 200, "ring": 12},
}


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def __str__(self):
        return f"{'pass' if self.passed else 'FAIL'}  {self.name}: {self.detail} [{self.seconds:.2f}s]"


def _structure_constants(cfg) -> tuple[bool, str]:
    bad = product_rule_violation(cfg["ring"])
    if bad:
        i, j, n = bad
        return False, f"b{i}*b{j} disagrees with C(n,{i})C(n,{j}) at n={n}"
    try:
        truncate_ring(cfg["ring"])
    except ArithmeticError as exc:
        return False, str(exc)
    return True, f"indices <= {cfg['ring']}"


def _fgl(cfg) -> tuple[bool, str]:
    reports = [fgl_identity_check(None, cfg["fgl_order"])]
    reports += [fgl_identity_check(m, cfg["power_order"]) for m in range(1, 7)]
    failed = [r for r in reports if not r.passed]
    if failed:
        return False, str(failed[0])
    return True, f"{len(reports)} identities"


def _hopf(cfg) -> tuple[bool, str]:
    report = hopf_axiom_suite(cfg["degree"])
    failed = [r for r in report.results if not r.passed]
    if failed:
        return False, str(failed[0])
    return True, f"{len(report.results)} axioms through degree {cfg['degree']}"


def _composite(cfg) -> tuple[bool, str]:
    for k in range(1, cfg["degree"] + 1):
        if composite_hat(k) != p_poly(k):
            return False, f"composite at k={k} gives {composite_hat(k)}"
        got = decompose(i_star(BetaPoly.beta(k, m=k)))
        if set(got) != {k} or got[k] != 1:
            return False, f"decompose(i_*(t^{k} b{k})) = {got}"
    return True, f"k <= {cfg['degree']}"


def _oracle(cfg) -> tuple[bool, str]:
    rng = random.Random(7)
    ks = symmetric_range(25)
    for _ in range(cfg["samples"]):
        f = random_test_element(rng)
        ok, witness = membership(f)
        if ok:
            w = oracle_violation(f, ks)
            if w is not None:
                return False, f"member {f} fails the sampling oracle ({w})"
            if recompose(decompose(f)) != f:
                return False, f"decomposition of {f} does not round-trip"
        else:
            value = evaluate_at_slope(f, witness.k).coefficient({"t": witness.degree})
            if value != witness.value:
                return False, f"witness for {f} does not reproduce ({witness})"
    return True, f"{cfg['samples']} random elements"


def _injectivity(cfg) -> tuple[bool, str]:
    rng = random.Random(11)
    for _ in range(cfg["samples"]):
        x = BetaPoly({(rng.randint(-2, 2), rng.randint(0, 6)): rng.randint(-9, 9) or 1
                      for _ in range(rng.randint(1, 4))})
        if not x:
            continue
        i = rng.randint(0, 6)
        try:
            nonzero = injectivity_witness(i, x)
        except ArithmeticError as exc:
            return False, str(exc)
        if not nonzero:
            return False, f"b{i} * ({x}) = 0"
    return True, f"{cfg['samples']} random products"


def _tor_zero() -> tuple[bool, str]:
    catalog = [s3_presentation(n) for n in range(1, 13)]
    catalog += [kz3_presentation(), free_presentation([0, 0]), free_presentation([0, 1, 1])]
    for p in catalog:
        expected = twisted_k(p)
        got = tor_graded(p, 0, "free")[0]
        if got != expected:
            return False, f"Tor_0 = {got} but twisted K = {expected}"
    return True, f"{len(catalog)} catalog presentations"


def run_selftest(depth: str = "normal") -> list[SuiteResult]:
    cfg = DEPTHS[depth]
    eta_L_cp.cache_clear()
    suites = [
        ("structure constants", lambda: _structure_constants(cfg)),
        ("formal group identities", lambda: _fgl(cfg)),
        ("Hopf algebroid axioms", lambda: _hopf(cfg)),
        ("coaction composite", lambda: _composite(cfg)),
        ("membership vs sampling oracle", lambda: _oracle(cfg)),
        ("injectivity of b_i", lambda: _injectivity(cfg)),
        ("Tor_0 = twisted K", _tor_zero),
    ]
    results = []
    for name, run in suites:
        start = time.perf_counter()
        passed, detail = run()
        results.append(SuiteResult(name, passed, detail, time.perf_counter() - start))
    return results
