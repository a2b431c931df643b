"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` or
``python3 tests/test_acceptance.py``; the lines are also repeated in the
pytest terminal summary.
"""
import subprocess
import sys
import time

import pytest

from acceptance_log import record
from dcabp.abp import ScalarAbp, abp_to_poly, homogenize_component, mv97_det_abp
from dcabp.algebra import MERSENNE_61, QQ, Poly
from dcabp.convert import abp_to_pencil, check_regular_vanishing, general_to_abp, regular_to_abp, truncation_index
from dcabp.instgen import (
    elem_sym_abp,
    power_sum_abp,
    random_abp,
    random_hom_abp,
    random_pencil,
    random_regular_pencil,
    scramble_pencil,
    synth_r_regular_pencil,
)
from dcabp.pencil import constant_rank, normal_form
from dcabp.verify import (
    make_rng,
    pit_equal,
    poly_det,
    schur_self_test,
    symbolic_det,
    truncated_component,
    w_matrix_poly,
)

PIT_TRIALS = 200


# -- shared instance sets ------------------------------------------------------------------------


def regular_instances():
    """(label, pencil, d) for criterion 1: power-sum pencils and 50 random regular pencils."""
    out = []
    for n in range(2, 7):
        for d in range(2, 6):
            out.append((f"powersum n={n} d={d}", abp_to_pencil(power_sum_abp(n, d)), d))
    for seed in range(50):
        pen, _, d = random_regular_pencil(seed, max_s=10)
        out.append((f"random seed={seed}", pen, d))
    return out


def general_instances():
    """(family, pencil, d, source, n) for criterion 3; source is an ABP or None (use the pencil)."""
    out = []
    for n in range(2, 7):
        for d in range(2, 6):
            src = power_sum_abp(n, d)
            out.append(("powersum", abp_to_pencil(src), d, src, n))
    for k in (2, 3):
        for n in range(k, 7):
            src = elem_sym_abp(n, k)
            out.append((f"elemsym-e{k}", abp_to_pencil(src), k, src, n))
    for w in range(1, 5):
        for d in range(2, 6):
            n = 2 + (w + d) % 5
            src = random_hom_abp(n, d, w, seed=100 * w + d)
            out.append(("random-abp", abp_to_pencil(src), d, src, n))
    for degrees in [(2, 2), (2, 3), (3, 3), (2, 2, 2), (2, 2, 3)]:
        blocks = [abp_to_pencil(random_hom_abp(3, e, 1, seed=7 * i + e)) for i, e in enumerate(degrees)]
        out.append((f"r-regular r={len(degrees)}", synth_r_regular_pencil(blocks), sum(degrees), None, 3))
    return out


def symbolic_scale(inst):
    _, pen, d, _, n = inst
    return n <= 4 and d <= 4


def source_poly(inst):
    _, pen, _, src, _ = inst
    return abp_to_poly(src) if src is not None else symbolic_det(pen)


# -- criteria ------------------------------------------------------------------------------------------


def test_criterion_01_regular_exactness():
    start = time.perf_counter()
    failures = []
    instances = regular_instances()
    for label, pen, d in instances:
        s = pen.s
        a = regular_to_abp(normal_form(pen), d)
        v = pit_equal(a, pen, trials=PIT_TRIALS, seed=1)
        ok = (a.is_homogeneous() and a.width() == s - 1 and a.size() == (d - 1) * (s - 1)
              and v.ok and v.per_trial_error_bound == f"{max(d, s)}/{MERSENNE_61}")
        if not ok:
            failures.append(label)
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 10
    record(1, ok, f"{len(instances)} regular pencils, width s-1 and size (d-1)(s-1) exact, "
                  f"{PIT_TRIALS}-trial PIT over 2^61-1; {elapsed:.1f}s (<10s); failures={failures[:3]}")
    assert ok


def test_criterion_02_vanishing_constraints():
    checked, failures = 0, []
    for label, pen, d in regular_instances():
        if pen.s > 8:
            continue
        checked += 1
        if not check_regular_vanishing(normal_form(pen), d).ok:
            failures.append(label)
    ok = not failures and checked > 0
    record(2, ok, f"a = 0 and b^T D^i c = 0 (i <= d-3) symbolically on {checked} instances with s <= 8")
    assert ok


def test_criterion_03_general_round_trip():
    start = time.perf_counter()
    failures, worst, worst_r, nsym = [], 0.0, 0.0, 0
    instances = general_instances()
    for inst in instances:
        family, pen, d, src, n = inst
        a, rep = general_to_abp(pen, d, mode="general")
        if symbolic_scale(inst):
            nsym += 1
            same = abp_to_poly(a) == source_poly(inst)
        else:
            same = pit_equal(a, src if src is not None else pen, trials=PIT_TRIALS, seed=3).ok
        r = constant_rank(pen).r
        in_bounds = rep.out_size <= 64 * d**5 * pen.s and rep.out_size <= 64 * r**3 * d**2 * pen.s
        worst = max(worst, rep.out_size / (d**5 * pen.s))
        worst_r = max(worst_r, rep.out_size / (r**3 * d**2 * pen.s))
        if not (same and in_bounds and rep.path == "General" and a.is_homogeneous()
                and rep.size_constant == 64 and rep.r_size_constant == 64):
            failures.append((family, n, d))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    record(3, ok, f"{len(instances)} instances ({nsym} symbolic, rest {PIT_TRIALS}-trial PIT); "
                  f"max size/(d^5 s)={worst:.4f}, max size/(r^3 d^2 s)={worst_r:.4f} (bound 64); "
                  f"{elapsed:.1f}s (<60s); failures={failures[:3]}")
    assert ok


def test_criterion_04_lowest_component():
    checked, failures = 0, []
    for inst in general_instances():
        if not symbolic_scale(inst):
            continue
        family, pen, d, _, n = inst
        nf = normal_form(pen)
        det_w = poly_det(w_matrix_poly(nf, d - 2), pen.nvars, pen.field)
        checked += 1
        if det_w.min_degree() != d or det_w.hom_component(d) != source_poly(inst):
            failures.append((family, n, d))
    ok = not failures and checked > 0
    record(4, ok, f"min degree of det(W) = d and Hom_d(det W) = f exactly on {checked} instances")
    assert ok


def test_criterion_05_truncation_soundness():
    checked, failures = 0, []
    for inst in general_instances():
        if not symbolic_scale(inst):
            continue
        family, pen, d, _, n = inst
        nf = normal_form(pen)
        safe = truncated_component(nf, d, d - 2)
        longer = truncated_component(nf, d, d)
        tight = truncated_component(nf, d, truncation_index(d, nf.r, "tight"))
        a, _ = general_to_abp(pen, d, mode="general", truncation="tight", certified=True)
        checked += 1
        if not (safe == longer == tight == abp_to_poly(a)):
            failures.append((family, n, d))
    ok = not failures and checked > 0
    record(5, ok, f"index d-2 equals index d, and the tight index d-r-1 agrees, on {checked} instances")
    assert ok


def laplace_det(grid, nvars):
    """First-row cofactor expansion, recursive and unmemoized."""
    s = len(grid)
    if s == 1:
        return grid[0][0]
    total = Poly.zero(nvars)
    for j in range(s):
        minor = [row[:j] + row[j + 1:] for row in grid[1:]]
        term = grid[0][j] * laplace_det(minor, nvars)
        total = total - term if j % 2 else total + term
    return total


def test_criterion_06_mv97():
    start = time.perf_counter()
    poly_fail, width_fail, layer_fail = [], [], []
    for n in range(1, 6):
        a = mv97_det_abp(n)
        grid = [[Poly.var(i * n + j, n * n) for j in range(n)] for i in range(n)]
        if abp_to_poly(a) != laplace_det(grid, n * n):
            poly_fail.append(n)
        if a.width() > n * n:
            width_fail.append(n)
        if a.n_layers != n + 1:
            layer_fail.append(f"n={n}: {a.n_layers} layers")
    elapsed = time.perf_counter() - start
    ok = not (poly_fail or width_fail or layer_fail) and elapsed < 5
    # n=1 cannot meet n+1 = 2 layers: b, c vectors force at least 3 vertex layers
    record(6, ok, f"n=1..5: Laplace mismatches={poly_fail}, width > n^2={width_fail}, "
                  f"layer count != n+1: {layer_fail}; {elapsed:.1f}s (<5s)")
    assert ok


def random_nonhom_abps(count=50):
    out = []
    for seed in range(count):
        rng = make_rng(10_000 + seed)
        k = seed % 4
        widths = [int(rng.integers(1, 11)) for _ in range(k + 1)]
        n = 1 + seed % 4
        out.append(random_abp(n, widths, seed=seed))
    return out


def test_criterion_07_homogenization_bounds():
    failures, checks = [], 0
    for idx, a in enumerate(random_nonhom_abps()):
        assert a.size() <= 40 and a.degree_bound() <= 5
        full = abp_to_poly(a)
        for d in range(6):
            h = homogenize_component(a, d, prune_dead=False)
            pruned = homogenize_component(a, d)
            checks += 1
            if isinstance(h, ScalarAbp):
                ok = h.to_poly() == full.hom_component(0)
            else:
                ok = (h.size() <= a.size() * (d + 1) and h.width() <= a.width() * (d + 1)
                      and h.labels_homogeneous() and abp_to_poly(h) == full.hom_component(d))
            ok = ok and pruned.to_poly() == full.hom_component(d)
            if not ok:
                failures.append((idx, d))
    ok = not failures
    record(7, ok, f"50 affine ABPs x d=0..5 ({checks} checks): pre-pruning size <= size(d+1), "
                  f"width <= width(d+1), exact components; failures={failures[:3]}")
    assert ok


def normal_form_instances():
    out = []
    for i in range(100):
        if i % 4 == 3:
            # homogeneous determinant of known degree, scrambled
            d = 2 + i % 3
            src = random_hom_abp(1 + i % 5, d, 1 + (i % 2) * (d < 4), seed=i)
            pen = abp_to_pencil(src)
            out.append(scramble_pencil(pen, seed=i) if pen.s <= 6 else pen)
        else:
            s = 1 + i % 6
            out.append(random_pencil(seed=i, s=s, n=1 + i % 5, rank0=i % s))
    return out


def test_criterion_08_normal_form():
    failures, hom_checked = [], 0
    pencils = normal_form_instances()
    for idx, p in enumerate(pencils):
        assert p.s <= 6 and p.nvars <= 5
        nf = normal_form(p)
        before, after = symbolic_det(p), symbolic_det(nf.pencil)
        diag = [[int(i == j and i >= nf.r) for j in range(p.s)] for i in range(p.s)]
        ok = before == after and nf.pencil.constant_part() == diag
        d = before.homogeneity_degree()
        if isinstance(d, int) and d >= 1:
            hom_checked += 1
            ok = ok and nf.r <= d
        if not ok:
            failures.append(idx)
    ranks = sorted({constant_rank(p).r for p in pencils})
    ok = not failures
    record(8, ok, f"100 pencils (coranks {ranks}): det preserved exactly, constant part diag(0_r, I); "
                  f"r <= d on the {hom_checked} homogeneous ones")
    assert ok


def test_criterion_09_schur():
    verdicts = [schur_self_test(k, m, trials=100, seed=k, field=QQ) for k, m in [(1, 3), (2, 5)]]
    ok = all(v.verdict == "pass" and v.trials == 100 for v in verdicts)
    record(9, ok, "Det(M) = Det(A - B D^-1 C) Det(D) exactly on 100 rational trials for (k,m) in {(1,3),(2,5)}")
    assert ok


def _cli(*args):
    proc = subprocess.run([sys.executable, "-m", "dcabp", *map(str, args)], capture_output=True, text=True)
    return proc.returncode, proc.stdout


def _strip_millis(text):
    return [line.rsplit(",", 1)[0] for line in text.splitlines()]


def test_criterion_10_determinism(tmp_path):
    runs = []
    for rep in (0, 1):
        d = tmp_path / f"run{rep}"
        d.mkdir()
        outputs = {}
        for fam in ("powersum", "elemsym", "random-abp", "r-regular"):
            f = d / f"{fam}.json"
            outputs[f"gen {fam}"] = _cli("gen", "--family", fam, "--n", 3, "--d", 3, "--seed", 5, "--out", f)
            outputs[f"gen {fam} file"] = f.read_text()
            outputs[f"stats {fam}"] = _cli("stats", "--in", f)
        pen = d / "pencil.json"
        from dcabp import io

        io.dump(abp_to_pencil(random_hom_abp(3, 3, 2, seed=2)), str(pen))
        for mode in ("auto", "general"):
            out = d / f"abp-{mode}.json"
            report = d / f"report-{mode}.json"
            outputs[f"convert {mode}"] = _cli("convert", "--in", pen, "--out", out, "--report", report,
                                              "--mode", mode)
            outputs[f"convert {mode} files"] = (out.read_text(), report.read_text())
            outputs[f"verify {mode}"] = _cli("verify", "--a", pen, "--b", out, "--trials", 30, "--seed", 9)
        outputs["convert r-regular"] = _cli("convert", "--in", d / "r-regular.json", "--out", d / "rr.json")
        outputs["convert r-regular file"] = (d / "rr.json").read_text()
        csv1, csv2 = d / "bench.csv", d / "bench-timed.csv"
        outputs["bench"] = _cli("bench", "--family", "powersum", "--range", "n=2..4", "--d", 3, "--csv", csv1,
                                "--no-timing")
        outputs["bench file"] = csv1.read_text()
        outputs["bench timed"] = _cli("bench", "--family", "random-abp", "--range", "d=2..4", "--n", 3,
                                      "--csv", csv2, "--seed", 4)
        outputs["bench timed file"] = _strip_millis(csv2.read_text())
        runs.append(outputs)
    mismatched = [k for k in runs[0] if runs[0][k] != runs[1][k]]
    codes = [v[0] for k, v in runs[0].items() if isinstance(v, tuple) and isinstance(v[0], int)]
    ok = not mismatched and all(c == 0 for c in codes)
    record(10, ok, f"{len(runs[0])} command outputs and data files byte-identical across two runs "
                   f"(bench millis column excluded); mismatched={mismatched}; exit codes={sorted(set(codes))}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
