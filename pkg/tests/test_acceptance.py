"""One test per acceptance criterion; each records a PASS/FAIL line.

The lines are repeated in the terminal summary under "acceptance criteria".
"""

import itertools
import math
import time

import numpy as np
import pytest
from scipy.special import erf

from inducedpoly import (
    Freud,
    HalfLineFreud,
    InducedDistribution,
    Jacobi,
    TensorMeasure,
    eval_poly,
    freud_from_halfline,
    get_distribution,
    gram_discrepancy,
    halfline_from_freud,
    idist_freud,
    idist_inverse,
    idist_jacobi,
    linear_modification,
    ls_design,
    markov_stiltjies_interval,
    quadratic_modification,
    recurrence_table,
    sample_count,
    sample_mixture,
    total_degree_set,
)
from inducedpoly.evaluation import mrs_interval
from inducedpoly.measures import h_squared
from inducedpoly.oracle import ReferenceDistribution, oracle_idist, oracle_stieltjes
from inducedpoly.sampling import equilibrium_experiment, make_rng

U99 = np.round(np.linspace(0.01, 0.99, 99), 2)


def test_closed_form_suite(report):
    t0 = time.perf_counter()
    leg = np.linspace(-1, 1, 25)
    lag = np.linspace(0, 12, 25)
    her = np.linspace(-4, 4, 25)
    cases = {
        "legendre n=0": (idist_jacobi(0, 0, 0, leg), (leg + 1) / 2),
        "legendre n=1": (idist_jacobi(0, 0, 1, leg), (leg ** 3 + 1) / 2),
        "chebyshev n=0": (idist_jacobi(-0.5, -0.5, 0, leg), 0.5 + np.arcsin(leg) / math.pi),
        "laguerre n=0": (get_distribution(HalfLineFreud(1, 0), 0).cdf(lag), -np.expm1(-lag)),
        "laguerre n=1": (get_distribution(HalfLineFreud(1, 0), 1).cdf(lag), 1 - (lag ** 2 + 1) * np.exp(-lag)),
        "hermite n=0": (idist_freud(2, 0, 0, her), (1 + erf(her)) / 2),
        "hermite n=1": (idist_freud(2, 0, 1, her),
                        (1 + erf(her)) / 2 - her * np.exp(-her ** 2) / math.sqrt(math.pi)),
    }
    elapsed = time.perf_counter() - t0
    worst = max(np.max(np.abs(got - want)) for got, want in cases.values())
    ok = worst <= 1e-12 and elapsed < 1.0
    report("1 closed forms", ok, f"max error {worst:.2e} (<= 1e-12), {elapsed:.2f} s (< 1 s)")
    assert ok


def test_jacobi_spectral_accuracy(report):
    t0 = time.perf_counter()
    xs = np.linspace(-1, 1, 50)
    a, b = math.e, -1 / 3
    e1 = np.max(np.abs(idist_jacobi(a, b, 2, xs, M=10) - oracle_idist(Jacobi(a, b), 2, xs)))
    a, b, n = -1 / math.pi, 100 * math.pi, 875
    F = idist_jacobi(a, b, n, xs, M=10)
    e2 = np.max(np.abs(F - oracle_idist(Jacobi(a, b), n, xs)))
    mono = bool(np.all(np.diff(F) >= 0))
    elapsed = time.perf_counter() - t0
    ok = e1 <= 1e-10 and e2 <= 1e-8 and mono and elapsed < 30
    report("2 jacobi accuracy", ok,
           f"(e,-1/3,2) {e1:.2e} (<= 1e-10); (-1/pi,100pi,875) {e2:.2e} (<= 1e-8), "
           f"monotone={mono}, {elapsed:.1f} s (< 30 s)")
    assert ok


def test_jacobi_error_bound(report):
    # every configuration of the stated grid, a superset of any 20 of them;
    # measured errors carry up to 1e-12 of oracle error
    xs = np.linspace(-0.96, 0.96, 25)
    failed = []
    nonneg_failed = 0
    for a, b, n, M in itertools.product([-0.7, 0.0, 2.5], [-0.7, 0.0, 2.5], [1, 5, 20], [4, 8]):
        d = InducedDistribution(Jacobi(a, b), n, M)
        err = np.abs(d.cdf(xs) - oracle_idist(Jacobi(a, b), n, xs))
        bad = err > d.error_bound(xs) + 1e-12
        if bad.any():
            failed.append((a, b, n, M))
            nonneg_failed += a >= 0 and b >= 0
    ok = not failed
    report("3 error bound", ok,
           f"{54 - len(failed)}/54 configurations within the bound; "
           f"violations {failed[:4]}{'...' if len(failed) > 4 else ''}; "
           f"violations with a, b >= 0: {nonneg_failed}")
    assert ok


def test_halfline_freud_large(report):
    t0 = time.perf_counter()
    spec = HalfLineFreud(1, math.sqrt(1001))
    n = 595
    lo, hi = mrs_interval(1.0, spec.rho, n)
    xs = np.linspace(lo, hi, 20)
    d = get_distribution(spec, n, 25)
    err = np.max(np.abs(d.cdf(xs) - oracle_idist(spec, n, xs)))
    elapsed = time.perf_counter() - t0
    ok = err <= 1e-8 and elapsed < 60
    report("4 half-line freud", ok, f"max error {err:.2e} on [{lo:.3g}, {hi:.4g}] (<= 1e-8), "
           f"{elapsed:.1f} s (< 60 s)")
    assert ok


def test_freud_reduction(report):
    xs = np.linspace(-5, 5, 21)
    err = sym = 0.0
    for rho in (0.0, 1.5):
        for n in range(31):
            F = idist_freud(2, rho, n, xs)
            err = max(err, np.max(np.abs(F - oracle_idist(Freud(2, rho), n, xs))))
            sym = max(sym, np.max(np.abs(F + F[::-1] - 1)))
    ok = err <= 1e-9 and sym <= 1e-12
    report("5 freud reduction", ok, f"oracle error {err:.2e} (<= 1e-9), evenness {sym:.2e} (<= 1e-12)")
    assert ok


def test_inversion_round_trip(report):
    t0 = time.perf_counter()
    worst = 0.0
    for spec in (Jacobi(math.pi, -0.5), HalfLineFreud(1, 0.5), Freud(2, 1.5)):
        for n in (0, 1, 5, 20, 50):
            d = get_distribution(spec, n)
            worst = max(worst, np.max(np.abs(d.cdf(idist_inverse(U99, d)) - U99)))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and elapsed < 120
    report("6 inversion round trip", ok, f"max residual {worst:.2e} (<= 1e-10), {elapsed:.1f} s (< 120 s)")
    assert ok


def test_markov_stieltjes_sandwich(report):
    bad = 0
    for spec in (Jacobi(math.pi, -0.9), HalfLineFreud(1, math.sqrt(1001)), Freud(2, 0.0)):
        for n in range(21):
            d = get_distribution(spec, n)
            lo, hi = markov_stiltjies_interval(U99, d, 50)
            bad += int(np.sum(d.cdf(lo) > U99) + np.sum(U99 > d.cdf(hi)))
    ok = bad == 0
    report("7 markov-stieltjes sandwich", ok, f"{bad} violations over 3 families x 21 orders x 99 u")
    assert ok


def test_high_degree_stability(report):
    details, ok = [], True
    u = np.round(np.linspace(0.05, 0.95, 19), 2)
    for name, spec, xs in (("legendre", Jacobi(0, 0), np.linspace(-1, 1, 101)),
                           ("hermite", Freud(2, 0), np.linspace(-50, 50, 101))):
        d = get_distribution(spec, 1000)
        F = d.cdf(xs)
        mono = bool(np.all(np.diff(F) >= 0)) and F.min() >= 0 and F.max() <= 1
        res = np.max(np.abs(d.cdf(idist_inverse(u, d, tol=1e-9)) - u))
        ok &= mono and res <= 1e-8
        details.append(f"{name}: monotone in [0,1]={mono}, round trip {res:.2e}")
    report("8 n=1000 stability", ok, "; ".join(details) + " (<= 1e-8)")
    assert ok


def test_halfline_freud_identities(report):
    t = recurrence_table(Freud(2, 0.7), 100)
    star, _ = halfline_from_freud(t)
    back = freud_from_halfline(star)
    m = back.b.size
    rt = max(np.max(np.abs(back.b / t.b[:m] - 1)), np.max(np.abs(back.a)))
    h = HalfLineFreud(1, -0.3)
    ht = recurrence_table(h, 100)
    again, _ = halfline_from_freud(freud_from_halfline(ht))
    m = again.b.size
    rt = max(rt, np.max(np.abs(again.b / ht.b[:m] - 1)), np.max(np.abs(again.a / ht.a[:m] - 1)))
    rel = 0.0
    for rho in (0.0, 1.0, 2.5):
        t = recurrence_table(Freud(2, rho), 40)
        star, starstar = halfline_from_freud(t)
        hh = math.sqrt(h_squared(2, rho))
        for x in (-2.7, -0.4, 0.3, 1.9):
            p = eval_poly(t, x, 31)
            ps, pss = eval_poly(star, x * x, 15), eval_poly(starstar, x * x, 15)
            rel = max(rel, np.max(np.abs(p[0::2] - ps) / np.maximum(1, np.abs(ps))),
                      np.max(np.abs(p[1::2] - hh * x * pss) / np.maximum(1, np.abs(p[1::2]))))
    ok = rt <= 1e-13 and rel <= 1e-11
    report("9 half-line/freud identities", ok, f"round trip {rt:.2e} (<= 1e-13), polynomial relation "
           f"{rel:.2e} (<= 1e-11)")
    assert ok


def test_modification_vs_stieltjes(report):
    base = recurrence_table(Jacobi(1, 2), 20)
    worst = 0.0
    for N in range(1, 13):
        for y in (-3.0, -1.2, 1.05, 4.0):
            t = linear_modification(base.truncate(N + 1), y)
            o = oracle_stieltjes(Jacobi(1, 2), [(y, 1)], N)
            worst = max(worst, np.max(np.abs(t.a - o.a)), np.max(np.abs(t.b / o.b - 1)))
        for z in (-2.0, -0.6, 0.0, 0.35, 0.9, 3.0):
            t = quadratic_modification(base.truncate(N + 2), z)
            o = oracle_stieltjes(Jacobi(1, 2), [(z, 2)], N)
            worst = max(worst, np.max(np.abs(t.a - o.a)), np.max(np.abs(t.b / o.b - 1)))
    ok = worst <= 1e-12
    report("10 modification oracle", ok, f"max deviation {worst:.2e} (<= 1e-12) for N = 1..12")
    assert ok


def test_least_squares_concentration(report):
    t0 = time.perf_counter()
    lam = total_degree_set(2, 5)
    T = TensorMeasure.uniform(Jacobi(0, 0), 2)
    M = sample_count(len(lam), 1.0, 0.5)
    disc = [gram_discrepancy(ls_design(lam, T, sample_mixture(lam, T, make_rng(2024, k), count=M)))
            for k in range(50)]
    wins = int(np.sum(np.array(disc) <= 0.5))
    elapsed = time.perf_counter() - t0
    ok = len(lam) == 21 and wins >= 45 and elapsed < 300
    report("11 least-squares concentration", ok, f"N={len(lam)}, M={M}, {wins}/50 trials <= 0.5 "
           f"(>= 45), worst {max(disc):.3f}, {elapsed:.0f} s (< 300 s)")
    assert ok


def test_equilibrium_measure(report):
    t0 = time.perf_counter()
    radii, ks = equilibrium_experiment(2, 100, 20000, seed=2024)
    elapsed = time.perf_counter() - t0
    ok = ks <= 0.02 and elapsed < 600
    report("12 equilibrium experiment", ok, f"KS {ks:.4f} (<= 0.02), {elapsed:.0f} s (< 600 s)")
    assert ok


def test_faster_than_generic_integration(report):
    spec = Jacobi(-0.8, math.sqrt(101))
    xs = np.linspace(-1, 1, 50)
    get_distribution(spec, 13).cdf(xs)  # warm caches and compiled kernels
    t0 = time.perf_counter()
    F = InducedDistribution(spec, 13).cdf(xs)
    fast = time.perf_counter() - t0
    ReferenceDistribution(Jacobi(0.1, 0.2), 3).cdf(0.0)  # warm the oracle kernels
    t0 = time.perf_counter()
    G = ReferenceDistribution(spec, 13).cdf(xs)
    slow = time.perf_counter() - t0
    err = np.max(np.abs(F - G))
    ok = fast < slow and err <= 1e-12
    report("timing (qualitative)", ok, f"specialized {fast * 1e3:.1f} ms vs oracle {slow * 1e3:.1f} ms, "
           f"agreement {err:.2e}")
    assert ok
