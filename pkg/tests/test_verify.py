"""Verification-suite module API."""

import numpy as np
import pytest

from cylwigner.specfun import sinc_pi
from cylwigner.verify import InvariantCheck, report_as_json_entries, run_verification


def test_all_invariants_pass_on_default_profile():
    checks = run_verification()
    assert len(checks) >= 30
    failing = [c.invariant_id for c in checks if not c.passed]
    assert failing == []


def test_report_entries_shape():
    checks = [InvariantCheck("demo", 0.0, 1.0, True)]
    entries = report_as_json_entries(checks)
    assert entries == [{"invariant_id": "demo", "residual": 0.0, "tolerance": 1.0, "pass": True}]


def test_unknown_profile_rejected():
    with pytest.raises(ValueError):
        run_verification(profile="extreme")


def test_injected_fault_is_detected():
    skewed = lambda x: sinc_pi(np.asarray(x) * (1.0 + 1e-6))
    checks = run_verification(sinc_fn=skewed)
    failed = {c.invariant_id for c in checks if not c.passed}
    assert "specfun.sinc_kronecker" in failed
    assert "specfun.sinc_orthonormality_swap" in failed
    # untouched suites keep passing
    assert "wigner.pair_orthogonality" not in failed
    assert "thermal.partition_cross_routes" not in failed
