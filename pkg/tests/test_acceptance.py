"""Acceptance gate: every stated criterion at its stated tolerance.

Each criterion prints one summary line on success; a pytest failure line is
the fail marker.  Criterion 11 also enforces the whole-module time budget.
"""

import json
import math
import random
import time
from fractions import Fraction

import pytest

from frakpascal import (
    absoluteness_gap,
    alpha_matrix,
    apply,
    basis_vector,
    beta_matrix,
    compose,
    delta_inv_operator,
    FiniteSequence,
    identity_residual,
    inclusion_bound,
    inverse_apply,
    p_norm,
    parallelogram_gap,
    pascal_inv_operator,
    pascal_operator,
    pascal_entry,
    phat_inv_entry,
    phat_norm,
    phat_operator,
    reconstruct,
    stat_row_qsum_sup,
    stat_subset_sup_l1,
    truncate,
)
from frakpascal.cli import main as cli_main

from oracles import binomial_difference_rows, invert_unit_lower, matmul_ragged

_SUITE_START = time.perf_counter()

TAU_GRID = [0.5, 1.5, -0.5, 1, 2]
ROUNDTRIP_TAUS = [Fraction(1, 2), Fraction(3, 2), Fraction(-1, 2)]
ABSOLUTENESS_GOLDEN = 1392.9541732819166


def test_criterion_01_inverse_identity():
    started = time.perf_counter()
    worst = 0.0
    for tau in TAU_GRID:
        residual = identity_residual(tau, 64)
        assert residual <= 1e-8, (tau, residual)
        worst = max(worst, float(residual))
    for tau in (1, 2):
        assert identity_residual(tau, 64) == 0
    elapsed = time.perf_counter() - started
    assert elapsed < 2.0
    print(f"[PASS] criterion 1: inverse identity, worst residual {worst:.3e}, "
          f"integer orders exact 0, {elapsed:.2f}s")


def test_criterion_02_closed_form_inverse_agreement():
    started = time.perf_counter()
    n = 32
    worst = 0.0
    for tau in TAU_GRID:
        composed = compose(delta_inv_operator(tau), pascal_inv_operator())
        exact_inverse = invert_unit_lower(truncate(phat_operator(Fraction(tau)), n).values)
        for r in range(n):
            crow = composed.row(r)
            for k in range(r + 1):
                closed = float(phat_inv_entry(tau, r, k))
                reference = float(exact_inverse[r][k])
                scale = max(1.0, abs(reference))
                assert abs(closed - reference) / scale <= 1e-10, (tau, r, k)
                assert abs(float(crow[k]) - reference) / scale <= 1e-10, (tau, r, k)
                worst = max(worst, abs(closed - reference) / scale)
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    print(f"[PASS] criterion 2: closed form vs composition vs exact inversion, "
          f"worst rel {worst:.3e}, {elapsed:.2f}s")


def test_criterion_03_reductions():
    n = 32
    assert truncate(phat_operator(0), n).values == truncate(pascal_operator(), n).values
    first_diff = [[(1 if k == r else -1 if k == r - 1 else 0)
                   for k in range(r + 1)] for r in range(n)]
    pascal_rows = [[pascal_entry(r, k) for k in range(r + 1)] for r in range(n)]
    assert truncate(phat_operator(1), n).values == matmul_ragged(pascal_rows, first_diff)
    for m in (2, 3):
        expected = matmul_ragged(pascal_rows, binomial_difference_rows(m, n))
        got = truncate(phat_operator(m), n).values
        for r in range(n):
            for k in range(r + 1):
                scale = max(1.0, abs(expected[r][k]))
                assert abs(got[r][k] - expected[r][k]) / scale <= 1e-12
    print("[PASS] criterion 3: reductions to Pascal / first difference / "
          "integer-order binomial difference, bit-exact")


def test_criterion_04_roundtrip():
    started = time.perf_counter()
    rng = random.Random(20240817)
    n, support = 64, 32
    worst = 0.0
    for tau in ROUNDTRIP_TAUS:
        for _ in range(100):
            x = [Fraction(rng.uniform(-1.0, 1.0)) for _ in range(support)]
            padded = x + [Fraction(0)] * (n - support)
            back = inverse_apply(tau, apply(tau, padded, n), n)
            x_sup = max(abs(float(v)) for v in x)
            err = max(float(abs(b - a)) for a, b in zip(padded, back))
            assert err <= 1e-8 * max(1.0, x_sup)
            worst = max(worst, err)
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    print(f"[PASS] criterion 4: 300 round-trips at N=64, worst error {worst:.3e}, "
          f"{elapsed:.2f}s")


def test_criterion_05_schauder():
    n = 48
    tau = 0.5
    op = phat_operator(tau)
    worst = 0.0
    for k in (0, 3, 7, 15):
        b = basis_vector(tau, k, n)
        y = apply(tau, b.values, n)
        for r in range(n):
            prods = [abs(float(op.row(r)[j]) * float(b.values[j]))
                     for j in range(r + 1)]
            scale = max(1.0, max(prods))
            target = 1.0 if r == k else 0.0
            residual = abs(y[r] - target) / scale
            assert residual <= 1e-9, (k, r, residual)
            worst = max(worst, residual)

    rng = random.Random(20240818)
    recon_worst = 0.0
    for _ in range(20):
        x = [Fraction(rng.uniform(-1.0, 1.0)) for _ in range(17)]
        recon = reconstruct(Fraction(1, 2), x, 16, 32)
        err = max(float(abs(recon[i] - x[i])) for i in range(17))
        assert err <= 1e-8
        recon_worst = max(recon_worst, err)
    print(f"[PASS] criterion 5: expansion vectors hit coordinates "
          f"(worst {worst:.3e}), reconstruction exact "
          f"(worst {recon_worst:.3e})")


def test_criterion_06_parallelogram_numbers():
    results = {}
    for tau in TAU_GRID:
        for p in (1, 2, 4):
            lhs, rhs = parallelogram_gap(tau, p, 16)
            assert lhs == 8.0, (tau, p, lhs)
            assert abs(rhs - 4 * 2 ** (2 / p)) <= 1e-12, (tau, p, rhs)
            if p == 2:
                assert abs(lhs - rhs) <= 1e-12
            else:
                assert abs(lhs - rhs) >= 2
            results.setdefault(p, []).append((lhs, rhs))
    for p, pairs in results.items():
        for lhs, rhs in pairs[1:]:
            assert abs(lhs - pairs[0][0]) <= 1e-10
            assert abs(rhs - pairs[0][1]) <= 1e-10
    print("[PASS] criterion 6: lhs = 8 exactly, rhs = 4*2^(2/p), equality only "
          "at p = 2, order-independent")


def test_criterion_07_non_absoluteness():
    gap = absoluteness_gap(0.5, 2, FiniteSequence([1, -1]), 16)
    assert gap > 0.1
    assert gap == pytest.approx(ABSOLUTENESS_GOLDEN, rel=1e-9)
    print(f"[PASS] criterion 7: alternating witness gap {gap:.6f} > 0.1 "
          f"(golden {ABSOLUTENESS_GOLDEN})")


def test_criterion_08_inclusion_bound():
    rng = random.Random(20240819)
    n = 32
    for p in (1, 2, "inf"):
        bound = inclusion_bound(0.5, p, n)
        for _ in range(100):
            x = [rng.uniform(-1.0, 1.0) for _ in range(n)]
            assert phat_norm(0.5, x, p, n) <= bound * p_norm(x, p)
    assert inclusion_bound(0, "inf", n) == 2.0 ** (n - 1)
    print("[PASS] criterion 8: weighted norm bounded by row-sum constant on "
          "300 random sequences; order-zero sup bound is exactly 2^(N-1)")


def test_criterion_09_duality_identities(capsys):
    rng = random.Random(20240820)
    n = 32
    t = Fraction(1, 2)
    for _ in range(50):
        a = [Fraction(rng.uniform(-1.0, 1.0)) for _ in range(n)]
        y = [Fraction(rng.uniform(-1.0, 1.0)) for _ in range(n)]
        x = inverse_apply(t, y, n)
        masked = alpha_matrix(t, a, n)
        sums = beta_matrix(t, a, n)
        running = Fraction(0)
        for r in range(n):
            alpha_direct = a[r] * x[r]
            alpha_via = sum(masked.values[r][k] * y[k] for k in range(r + 1))
            scale = max(1, abs(alpha_direct))
            assert abs(alpha_via - alpha_direct) / scale <= Fraction(1, 10 ** 10)
            running += a[r] * x[r]
            beta_via = sum(sums.values[r][k] * y[k] for k in range(r + 1))
            scale = max(1, abs(running))
            assert abs(beta_via - running) / scale <= Fraction(1, 10 ** 10)

    import tempfile, os
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "a.txt")
        with open(path, "w") as handle:
            handle.write("1 -0.5 0.25 2")
        args = ["--tau", "0.5", "--n", "16", "--p", "2", "--format", "json",
                "--input", path]
        assert cli_main(["dual", "--which", "beta"] + args) == 0
        beta_out = capsys.readouterr().out
        assert cli_main(["dual", "--which", "gamma"] + args) == 0
        gamma_out = capsys.readouterr().out
    assert beta_out == gamma_out
    print("[PASS] criterion 9: two-path termwise and partial-sum identities "
          "exact on 50 pairs; gamma emission byte-identical to beta")


def test_criterion_10_condition_statistics():
    n, m = 16, 12
    tri_int = truncate(pascal_operator(), n)
    a_exact = [Fraction((-1) ** k, k + 1) for k in range(n)]
    tri_beta = beta_matrix(Fraction(1, 2), a_exact, n)
    tri_alpha = alpha_matrix(Fraction(1, 2), a_exact, n)
    for tri in (tri_int, tri_beta, tri_alpha):
        report = stat_subset_sup_l1(tri, m, n)
        statistic = report.values[-1]
        col_sums = [sum(abs(tri.entry(r, k)) for r in range(n))
                    for k in range(m + 1)]
        total = sum(sum(abs(v) for v in row) for row in tri.values)
        assert max(col_sums) <= statistic <= total
        assert all(x <= y for x, y in zip(report.values, report.values[1:]))
        for q in (1, 2, "inf"):
            qr = stat_row_qsum_sup(tri, q, n)
            assert all(x <= y for x, y in zip(qr.values, qr.values[1:]))
    print("[PASS] criterion 10: subset-sup within exact column/total bounds; "
          "all sup statistics monotone")


def test_criterion_11_discrepancy_report(capsys):
    code = cli_main(["verify", "identity", "--tau", "0.5", "--n", "16",
                     "--report-star", "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0
    star = json.loads(out)["star"]
    t = 0.5
    expected_eq = {"1,0": 1 - t, "2,0": 1 - 2 * t + t * (t - 1) / 2, "2,1": 2 - t}
    expected_star = {"1,0": 2 - t, "2,0": 3 - 3 * t + t * (t - 1) / 2, "2,1": 3 - t}
    for key, want in expected_eq.items():
        assert star["defining_sum"][key] == pytest.approx(want, abs=1e-12)
    for key, want in expected_star.items():
        assert star["display_variant"][key] == pytest.approx(want, abs=1e-12)
    assert star["residual_defining_sum"] <= 1e-10
    assert star["residual_display_variant"] >= 0.5

    elapsed = time.perf_counter() - _SUITE_START
    assert elapsed < 10.0
    print(f"[PASS] criterion 11: discrepancy report emits both variants, only "
          f"the defining sum inverts; suite elapsed {elapsed:.2f}s < 10s")
