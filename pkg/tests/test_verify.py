"""Spectral lower bounds, dimension thresholds, certificates, and fuzzing."""

import json
import math

import numpy as np
import pytest

from curvop import (
    CHECK_NAMES,
    Spectrum,
    TracelessSym2,
    WeightClass,
    all_checks,
    basis_s2_traceless,
    bochner_bound_check,
    bochner_rhs,
    class_add,
    class_scale,
    constant_curvature,
    einstein_certificate,
    fubini_study,
    fuzz_campaign,
    greedy_min,
    k_sum,
    kulkarni_nomizu,
    persist_violator,
    product_spheres,
    quadform_bound_check,
    random_curvature,
    random_traceless,
    reconstruct,
    ricci_bound_check,
    ricci_combined_check,
    scalar_bound_check,
    second_kind_matrix,
    spectrum,
    tensor_from_json,
    threshold_profile,
    traceless_ricci,
)


# --- dimension thresholds -----------------------------------------------------


def test_threshold_table():
    table = {
        3: (15 / 8, 15 / 8, "i"),
        4: (12 / 5, 12 / 5, "i"),
        5: (35 / 12, 35 / 12, "i"),
        7: (63 / 16, 63 / 16, "i"),
        8: (40 / 9, 4.0, "ii"),
        10: (60 / 11, 4.0, "ii"),
        13: (195 / 28, 4.0, "ii"),
        14: (112 / 15, 4.0, "iii"),
        20: (220 / 21, 5.0, "iii"),
        30: (480 / 31, 8.0, "iii"),
    }
    for n, (e, c, branch) in table.items():
        prof = threshold_profile(n)
        assert prof.einstein_threshold == pytest.approx(e, rel=1e-15)
        assert prof.constant_curvature_threshold == pytest.approx(c, rel=1e-15)
        assert prof.branch == branch


def test_threshold_piecewise_formula_agrees_with_min_max_form():
    for n in range(3, 60):
        prof = threshold_profile(n)
        e = n * (n + 2) / (2 * (n + 1))
        assert prof.einstein_threshold == pytest.approx(e, rel=1e-15)
        closed = min(e, max(4.0, float((n + 2) // 4)))
        assert prof.constant_curvature_threshold == pytest.approx(closed, rel=1e-15)
        # thresholds stay inside [1, N] so k_sum is always defined
        N = (n - 1) * (n + 2) / 2
        assert 1.0 <= prof.constant_curvature_threshold <= prof.einstein_threshold
        assert prof.einstein_threshold <= N


def test_threshold_profile_input_validation():
    for bad in (2, 0, -3, True, 3.5, "4"):
        with pytest.raises(ValueError):
            threshold_profile(bad)


def test_threshold_profile_json():
    doc = threshold_profile(9).to_json()
    assert doc == {
        "n": 9,
        "einstein_threshold": 9 * 11 / 20,
        "constant_curvature_threshold": 4.0,
        "branch": "ii",
    }


# --- the five bounds on closed-form models -------------------------------------


@pytest.mark.parametrize("n", [3, 4, 5, 6])
@pytest.mark.parametrize("kappa", [0.7, 1.0, 2.0])
def test_sphere_saturates_every_bound(n, kappa):
    """Round spheres sit exactly on all five lower bounds."""
    reports = all_checks(constant_curvature(n, kappa))
    assert tuple(r.name for r in reports) == CHECK_NAMES
    for r in reports:
        assert r.verdict == "boundary", (r.name, r.margin)
        assert r.ok
        assert abs(r.margin) <= r.tol


def test_scalar_bound_is_an_identity():
    """The scalar bound holds with equality for every valid tensor."""
    for seed in range(40):
        n = 3 + seed % 5
        T = random_curvature(seed, n, terms=1 + seed % 3)
        r = scalar_bound_check(T)
        assert r.verdict == "boundary"
        assert abs(r.margin) <= r.tol


def test_all_bounds_hold_on_random_tensors():
    for seed in range(60):
        n = 3 + seed % 6
        T = random_curvature(seed, n)
        E = random_traceless(n, seed + 1000, unit=True)
        for r in all_checks(T, E=E):
            assert r.ok, (r.name, seed, r.margin, r.tol)


def test_ricci_combined_bound_is_weaker_than_two_term_bound():
    """The single-class Ricci bound arises from the two-term one by
    class addition, so its right side can only be lower."""
    for seed in range(40):
        n = 3 + seed % 6
        T = random_curvature(seed, n)
        plain = ricci_bound_check(T)
        combined = ricci_combined_check(T)
        assert plain.lhs == combined.lhs
        scale = max(1.0, abs(plain.rhs))
        assert combined.rhs <= plain.rhs + 1e-9 * scale


def test_ricci_combined_class_matches_direct_class_arithmetic():
    for seed in range(10):
        n = 3 + seed % 4
        T = random_curvature(seed, n)
        lam = spectrum(second_kind_matrix(T)).values
        N = lam.size
        cls = class_add(
            class_scale((n - 1) / (n + 1), WeightClass(1.0, float(n))),
            class_scale(2.0 / ((n + 1) * (n + 2)), WeightClass(1.0, float(N))),
        )
        assert ricci_combined_check(T).rhs == pytest.approx(
            greedy_min(lam, cls), rel=1e-12, abs=1e-12
        )


def test_quadform_bound_sharp_at_bottom_eigenvector():
    for n in (3, 4, 5):
        T = random_curvature(n, n)
        basis = basis_s2_traceless(n)
        M = second_kind_matrix(T, basis)
        vals, vecs = np.linalg.eigh(M.entries)
        E = TracelessSym2(n, reconstruct(vecs[:, 0], basis))
        r = quadform_bound_check(T, E)
        assert r.verdict == "boundary"
        assert r.lhs == pytest.approx(vals[0], rel=1e-9, abs=1e-12)


def test_bochner_term_on_sphere_is_dimension_times_kappa():
    for n, kappa in [(3, 1.0), (5, 2.0), (6, 0.5)]:
        T = constant_curvature(n, kappa)
        E = random_traceless(n, 5, unit=True)
        assert bochner_rhs(T, E) == pytest.approx(n * kappa, rel=1e-12)
        r = bochner_bound_check(T, E)
        assert r.verdict == "boundary"


def test_bochner_check_scales_with_e_norm():
    T = product_spheres(2, 3, 1.0, 1.0)
    E1 = random_traceless(5, 7, unit=True)
    for c in (1.0, 10.0, 0.1):
        r = bochner_bound_check(T, TracelessSym2(5, c * E1.components))
        assert r.ok
        assert r.lhs == pytest.approx(c * c * bochner_rhs(T, E1), rel=1e-12)


def test_report_json_fields():
    T = constant_curvature(3, 1.0)
    doc = scalar_bound_check(T, seed=11).to_json()
    assert list(doc) == [
        "name",
        "lhs",
        "rhs",
        "margin",
        "verdict",
        "n",
        "fingerprint",
        "seed",
        "tol",
    ]
    assert doc["name"] == "scalar_lower_bound"
    assert doc["seed"] == 11
    assert doc["fingerprint"] == T.fingerprint
    assert json.dumps(doc)  # serializable as-is


def test_zero_tensor_reports_boundary_everywhere():
    T = 0.0 * constant_curvature(4, 1.0)
    E = random_traceless(4, 3, unit=True)
    for r in all_checks(T, E=E):
        assert r.verdict == "boundary"


# --- certificates ---------------------------------------------------------------


def test_certificate_on_round_sphere():
    cert = einstein_certificate(constant_curvature(5, 1.0))
    assert cert.is_einstein
    assert cert.einstein_verdict.positive
    assert cert.constant_curvature_verdict.positive
    assert not cert.impossible
    assert any("Einstein" in c for c in cert.conclusions)
    assert any("constant sectional curvature" in c for c in cert.conclusions)


def test_certificate_on_unbalanced_product():
    cert = einstein_certificate(product_spheres(2, 3, 1.0, 1.0))
    assert not cert.is_einstein
    assert not cert.einstein_verdict.nonnegative
    assert not cert.constant_curvature_verdict.nonnegative
    assert not cert.impossible
    assert cert.traceless_ricci_norm > 0.1
    # bottom of the spectrum is the mixed eigenvalue -7/5
    assert cert.einstein_verdict.value < -1.0


def test_certificate_on_einstein_product():
    # Einstein but not constant curvature: the mixed eigenvalue is negative,
    # so both spectral thresholds fail yet the tensor is Einstein.
    cert = einstein_certificate(product_spheres(2, 3, 1.0, math.sqrt(2.0)))
    assert cert.is_einstein
    assert not cert.einstein_verdict.nonnegative
    assert not cert.impossible


def test_certificate_on_fubini_study():
    # CP^2 is Einstein with a negative second-kind eigenvalue.
    cert = einstein_certificate(fubini_study(2))
    assert cert.is_einstein
    assert not cert.einstein_verdict.nonnegative
    assert not cert.impossible


def test_certificate_impossible_flag():
    """A spectrum passing the Einstein threshold on a non-Einstein tensor
    is a contradiction certificate."""
    h = np.diag([1.0, 0.0, 0.0, 0.0])
    T = constant_curvature(4, 1.0) + 0.01 * kulkarni_nomizu(h, np.eye(4))
    cert = einstein_certificate(T)
    assert cert.einstein_verdict.nonnegative
    assert not cert.is_einstein
    assert cert.impossible
    assert any("inconsistency" in c for c in cert.conclusions)


def test_certificate_on_zero_tensor():
    cert = einstein_certificate(0.0 * constant_curvature(4, 1.0))
    assert cert.is_einstein
    assert cert.einstein_verdict.boundary
    assert cert.einstein_verdict.nonnegative
    assert not cert.einstein_verdict.positive
    assert not cert.impossible
    assert any("boundary" in c or "not numerically decidable" in c
               for c in cert.conclusions)


def test_certificate_json_round_trips_through_json_module():
    cert = einstein_certificate(product_spheres(2, 2, 1.0, 1.0))
    doc = cert.to_json()
    assert doc == json.loads(json.dumps(doc))
    assert doc["thresholds"]["n"] == 4
    assert set(doc) == {
        "n",
        "fingerprint",
        "thresholds",
        "einstein_verdict",
        "constant_curvature_verdict",
        "traceless_ricci_norm",
        "is_einstein",
        "impossible",
        "conclusions",
    }


# --- fuzz campaign ---------------------------------------------------------------


def test_fuzz_smoke_after_content():
    s = fuzz_campaign(seed=7, trials_per_n=20, ns=(3, 4), e_per_tensor=5)
    assert s.ok
    assert s.tensors == 40
    assert set(s.min_scaled_margins) == set(CHECK_NAMES)
    for name, worst in s.min_scaled_margins.items():
        assert worst >= -1e-9, name
    # the scalar identity pins its margin to roundoff
    assert abs(s.min_scaled_margins["scalar_lower_bound"]) < 1e-10
    assert 0.0 <= s.max_quad_dual_rel <= 1e-9
    assert 0.0 <= s.max_eig_dual_rel <= 1e-9


def test_fuzz_deterministic_and_job_invariant():
    a = fuzz_campaign(seed=321, trials_per_n=12, ns=(3, 5), e_per_tensor=4)
    b = fuzz_campaign(seed=321, trials_per_n=12, ns=(3, 5), e_per_tensor=4)
    assert a.to_json() == b.to_json()
    c = fuzz_campaign(seed=321, trials_per_n=12, ns=(3, 5), e_per_tensor=4, jobs=2)
    assert a.to_json() == c.to_json()


def test_fuzz_input_validation():
    with pytest.raises(ValueError):
        fuzz_campaign(seed=-1, trials_per_n=5)
    with pytest.raises(ValueError):
        fuzz_campaign(seed=0, trials_per_n=0)
    with pytest.raises(ValueError):
        fuzz_campaign(seed=0, trials_per_n=5, ns=(2, 3))


def test_persist_violator_round_trip(tmp_path):
    T = random_curvature(99, 4)
    path = persist_violator(T, tmp_path, meta={"check": "demo", "margin": -1.0})
    assert path.name == f"violator_{T.fingerprint}.json"
    doc = json.loads(path.read_text())
    assert doc["meta"]["check"] == "demo"
    back = tensor_from_json({"n": doc["n"], "entries": doc["entries"]})
    scale = max(1.0, T.norm_inf())
    np.testing.assert_allclose(
        back.components, T.components, rtol=0, atol=1e-14 * scale
    )
