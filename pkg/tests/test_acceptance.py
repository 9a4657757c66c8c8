"""One test per acceptance criterion, at the stated tolerances and budgets.

Each test prints a ``PASS``/``FAIL`` line with its timing, visible in ``pytest -v`` output.
"""

import time

import numpy as np
import pytest

from hermsym.branching import decompose, full_dimension, integral_points
from hermsym.jordan import parse_model
from hermsym.moment import moment_chart, moment_general, moment_normal_form, moment_spectral, moment_to_weight
from hermsym.okounkov import OkounkovError, build_section_space, highest_weight_vector, okounkov_pipeline
from hermsym.structure import spectral_decomposition
from hermsym.suites import fibre_checks, jordan_identities, random_element, random_normal_form


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail, started, budget):
        elapsed = time.perf_counter() - started
        in_time = elapsed < budget
        status = "PASS" if ok and in_time else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] criterion {number}: {title}: {detail} ({elapsed:.2f}s, budget {budget}s)")
        assert ok, detail
        assert in_time, f"took {elapsed:.2f}s, budget {budget}s"

    return emit


def test_criterion_1_dimension_identity(report):
    started = time.perf_counter()
    budgets = {"rect:1,1": 20, "rect:1,2": 10, "rect:2,2": 6, "rect:2,3": 4}
    bad, count = [], 0
    for spec, k_top in budgets.items():
        par = parse_model(spec).parabolic()
        for k in range(1, k_top + 1):
            table = decompose(par, k)
            count += 1
            if table.total != table.expected_total:
                bad.append((spec, k, table.total, table.expected_total))
    report(1, "sum of K-type dimensions = Weyl dimension", not bad, f"{count} (model, k) pairs, mismatches {bad}",
           started, 10)


def test_criterion_2_section_rank(report):
    started = time.perf_counter()
    bad = []
    for spec, k_top in (("rect:1,1", 5), ("rect:2,2", 3)):
        model = parse_model(spec)
        for k in range(1, k_top + 1):
            got = build_section_space(model, k).dimension
            want = full_dimension(model.parabolic(), k)
            if got != want:
                bad.append((spec, k, got, want))
    report(2, "section space rank = Weyl dimension", not bad, f"mismatches {bad}", started, 60)


def test_criterion_3_moment_formulas(report):
    started = time.perf_counter()
    worst12 = worst34 = 0.0
    points = 0
    for spec in ("rect:1,1", "rect:2,2", "rect:2,3"):
        model = parse_model(spec)
        rng = np.random.default_rng(3)
        for _ in range(100):
            x = random_element(model, rng, rng.uniform(0.1, 3.0))
            d = moment_chart(model, x).operator - moment_spectral(model, spectral_decomposition(model, x)).operator
            worst12 = max(worst12, float(np.linalg.norm(d, 2)))
            pt = random_normal_form(model, rng)
            d = moment_general(model, pt).operator - moment_normal_form(model, pt).operator
            worst34 = max(worst34, float(np.linalg.norm(d, 2)))
            points += 1
    ok = worst12 <= 1e-9 and worst34 <= 1e-9
    report(3, "moment formulas agree", ok,
           f"{points} points per pair, chart/spectral {worst12:.2e}, general/normal form {worst34:.2e}", started, 30)


def test_criterion_4_equivariance_and_chamber(report):
    started = time.perf_counter()
    worst, outside, weights = 0.0, 0, 0
    for spec in ("rect:1,1", "rect:2,2", "rect:2,3"):
        model = parse_model(spec)
        par = model.parabolic()
        rng = np.random.default_rng(4)
        for _ in range(50):
            h = model.random_automorphism(rng)
            x = random_element(model, rng, rng.uniform(0.1, 3.0))
            lhs = moment_chart(model, h @ x).operator
            rhs = h @ moment_chart(model, x).operator @ np.linalg.inv(h)
            worst = max(worst, float(np.linalg.norm(lhs - rhs, 2)))
            for value in (moment_chart(model, x), moment_general(model, random_normal_form(model, rng))):
                w = moment_to_weight(value, par)
                weights += 1
                outside += not w.in_polytope
    ok = worst <= 1e-9 and outside == 0
    report(4, "equivariance and chamber membership", ok,
           f"150 automorphisms, max defect {worst:.2e}; {weights - outside}/{weights} weights in the polytope",
           started, 30)


def test_criterion_5_jordan_identities(report):
    started = time.perf_counter()
    failed, count = [], 0
    for spec in ("rect:1,1", "rect:2,2", "rect:2,3", "spin:5"):
        for check in jordan_identities(parse_model(spec), np.random.default_rng(5), instances=50):
            count += 1
            if not check.ok:
                failed.append(f"{spec}: {check.name} ({check.detail})")
    report(5, "exact Jordan identities", not failed, f"{count} identity/model pairs x 50 instances, failed {failed}",
           started, 30)


def test_criterion_6_multiplicity_free(report):
    started = time.perf_counter()
    bad, total = [], 0
    for spec, k_top in (("rect:1,1", 8), ("rect:2,2", 3)):
        model = parse_model(spec)
        for k in range(1, k_top + 1):
            space = build_section_space(model, k)
            for m in integral_points(k, model.rank):
                total += 1
                try:
                    highest_weight_vector(space, m)
                except OkounkovError as err:
                    bad.append(str(err))
    report(6, "raising kernels have dimension exactly 1", not bad, f"{total} kernels, failures {bad}", started, 120)


def test_criterion_7_okounkov_pipeline(report):
    started = time.perf_counter()
    failed = []
    summary = []
    for spec in ("rect:1,1", "rect:2,2"):
        model = parse_model(spec)
        data = okounkov_pipeline(model, levels=(2,), strict=False)
        if len(data.generators) != model.rank + 1:
            failed.append(f"{spec}: {len(data.generators)} generators")
        failed += [f"{spec}: {c.name} ({c.detail})" for c in data.checks if not c.ok]
        summary.append(f"{spec} [{data.convention}] v = {[v for _, v in data.generators]}")
    report(7, "Okounkov body = moment polytope", not failed, "; ".join(summary) + f"; failed {failed}", started, 60)


def test_criterion_8_fibre_coherence(report):
    started = time.perf_counter()
    failed, details = [], []
    for spec in ("rect:1,1", "rect:2,2", "rect:2,3", "spin:5"):
        checks = fibre_checks(parse_model(spec), np.random.default_rng(8), instances=20, tolerance=1e-10,
                              separation=1e-6)
        failed += [f"{spec}: {c.name} ({c.detail})" for c in checks if not c.ok]
        details.append(f"{spec}: {checks[0].detail}; {checks[1].detail}")
    report(8, "fibre coherence", not failed, " | ".join(details) + f"; failed {failed}", started, 10)
