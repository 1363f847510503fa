"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``[PASS]`` or ``[FAIL]`` line to the terminal
regardless of output capturing.
"""

import json
import statistics
import time

import numpy as np
import pytest

from profrank.baselines import CefrProfileSet, cefr_score
from profrank.cli import main
from profrank.config import PRESETS, RankConfig
from profrank.evaluation import gold_vector, spearman
from profrank.graph import signal_count_matrices, write_dataset
from profrank.implicit import implicit_count_matrices
from profrank.rank import column_normalize, damp, power_iterate, proficiency_rank
from profrank.search import grid_search
from profrank.synth import GenParams, generate_network

from conftest import (
    EXAMPLE_RANKS,
    dense_pagerank_oracle,
    example_adjacency,
    exhaustive_d_oracle,
    pair_enumeration_oracle,
    random_dataset,
)
from test_evaluation import spearman_oracle


@pytest.fixture
def verdict(capsys):
    def report(number, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
        assert ok, detail

    return report


def test_c01_example_graph(verdict):
    start = time.perf_counter()
    res = power_iterate(damp(column_normalize(example_adjacency()), 0.85), tol=1e-9)
    elapsed = time.perf_counter() - start
    a, b, c, d, e = res.scores
    close = bool(np.all(np.abs(res.scores - EXAMPLE_RANKS) <= 0.005))
    order = e > a > d > b and b == c
    verdict(
        1,
        close and order and elapsed < 1.0,
        f"ranks {np.round(res.scores, 4).tolist()}, E>A>D>B=C {order}, {elapsed:.3f}s",
    )


def test_c02_power_iteration_oracle(verdict, rng):
    start = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 21))
        raw = rng.random((n, n)) * (rng.random((n, n)) < 0.5)
        m = damp(column_normalize(raw), float(rng.uniform(0.5, 0.95)))
        gap = np.abs(power_iterate(m).scores - dense_pagerank_oracle(m))
        worst = max(worst, float(gap.max()))
    elapsed = time.perf_counter() - start
    verdict(2, worst <= 1e-8 and elapsed < 10, f"max L-inf {worst:.2e}, {elapsed:.2f}s")


def test_c03_implicit_exactness(verdict, rng):
    start = time.perf_counter()
    ok = True
    for _ in range(200):
        data = random_dataset(rng, n_users=int(rng.integers(2, 16)), max_voters=8)
        iav_p, iav_m, iov_p, iov_m = implicit_count_matrices(data)
        oracle = pair_enumeration_oracle(data)
        ok &= all(
            np.array_equal(got, oracle[k])
            for k, got in zip(("iav+", "iav-", "iov+", "iov-"), (iav_p, iav_m, iov_p, iov_m))
        )
        ok &= iov_p.sum() == iov_m.sum()
        ok &= np.array_equal(iav_p, iav_p.T) and np.array_equal(iav_m, iav_m.T)
    elapsed = time.perf_counter() - start
    verdict(3, bool(ok) and elapsed < 10, f"200 datasets exact={bool(ok)}, {elapsed:.2f}s")


def _random_config(rng):
    while True:
        types = [t for t in PRESETS["conf6"].types if rng.random() < 0.6]
        cfg_types = set(types)
        if cfg_types & {"exp+", "iav+", "iav-"} and cfg_types & {"exp-", "iov+", "iov-"}:
            break
    has_iav = bool(cfg_types & {"iav+", "iav-"})
    has_iov = bool(cfg_types & {"iov+", "iov-"})
    return RankConfig.from_types(
        types,
        d=float(rng.uniform(0, 1)),
        beta=float(rng.uniform(0, 1)) if has_iav else 0.0,
        delta=float(rng.uniform(0, 1)) if has_iov else 0.0,
    )


def test_c04_alpha_endpoints(verdict, rng):
    worst = 0.0
    for _ in range(50):
        data = random_dataset(rng)
        cfg = _random_config(rng)
        r0 = proficiency_rank(data, cfg.with_params(alpha=0.0))
        r1 = proficiency_rank(data, cfg.with_params(alpha=1.0))
        worst = max(
            worst,
            float(np.max(np.abs(r0.pr - r0.pr_plus))),
            float(np.max(np.abs(r1.pr + r1.pr_minus))),
        )
    verdict(4, worst <= 1e-12, f"max deviation {worst:.2e} over 50 datasets")


def test_c05_stochasticity(verdict, rng):
    worst_sum, worst_floor = 0.0, 0.0
    for _ in range(50):
        data = random_dataset(rng)
        cfg = _random_config(rng).with_params(alpha=float(rng.uniform(0, 1)))
        res = proficiency_rank(data, cfg)
        floor = (1 - cfg.d) / data.n_users
        for v in (res.pr_plus, res.pr_minus):
            worst_sum = max(worst_sum, abs(v.sum() - 1.0))
            worst_floor = max(worst_floor, floor - v.min())
    ok = worst_sum <= 1e-9 and worst_floor <= 1e-12
    verdict(5, ok, f"max |sum-1| {worst_sum:.2e}, max floor shortfall {worst_floor:.2e}")


def test_c06_spearman(verdict, rng):
    refs = (
        spearman([1, 2, 3, 4, 5], [1, 2, 3, 4, 5]).r == 1.0
        and spearman([1, 2, 3, 4, 5], [5, 4, 3, 2, 1]).r == -1.0
        and abs(spearman([1, 2, 3], [3, 1, 2]).r + 0.5) <= 1e-12
    )
    worst, checked = 0.0, 0
    while checked < 1000:
        n = int(rng.integers(3, 30))
        x = rng.integers(0, 5, size=n).astype(float)
        y = rng.integers(0, 5, size=n).astype(float)
        if len(set(x)) == 1 or len(set(y)) == 1:
            continue
        worst = max(worst, abs(spearman(x, y).r - spearman_oracle(x, y)))
        checked += 1
    verdict(6, refs and worst <= 1e-12, f"references ok={refs}, max oracle gap {worst:.1e}")


def test_c07_cefr_score(verdict, rng):
    letters = "abcdefghijklmnopqrstuvwxyz"
    disjoint = CefrProfileSet(
        tuple(frozenset(f"w{letters[i]}{letters[k]}" for k in range(5)) for i in range(6))
    )
    words = sorted(disjoint.levels[0])[:3] + sorted(disjoint.levels[5])[:1]
    fixture = abs(cefr_score(words, disjoint).level - 2.25) <= 1e-12
    bounded = monotone = True
    for _ in range(1000):
        vocab = [f"v{k}" for k in range(40)]
        levels = [set(rng.choice(vocab, size=12, replace=False)) for _ in range(6)]
        levels[5].add("czonly")
        prof = CefrProfileSet(tuple(frozenset(s) for s in levels))
        text = set(rng.choice(vocab, size=int(rng.integers(1, 20)), replace=False))
        before = cefr_score(text, prof).level
        after = cefr_score(text | {"czonly"}, prof).level
        bounded &= 1.0 <= after <= 6.0 and (before is None or 1.0 <= before <= 6.0)
        monotone &= before is None or after >= before
    verdict(
        7,
        fixture and bounded and monotone,
        f"fixture={fixture}, bounds={bounded}, C2 monotone={monotone}",
    )


def test_c08_grid_search_soundness(verdict):
    params = GenParams(n_users=80, n_answers=150, votes_per_answer=(2, 6), seed=2)
    data, _ = generate_network(params)
    gold = gold_vector(data)
    base = RankConfig.from_types(["exp-"], alpha=1.0)
    counts = signal_count_matrices(data)
    d_best, obj_best = exhaustive_d_oracle(counts, gold, base)
    result = grid_search(counts, ["exp-"], gold=gold)
    same = result.best.d == d_best and result.best_objective == obj_best
    monotone = result.stage_objectives == sorted(result.stage_objectives)
    verdict(
        8,
        same and monotone,
        f"search d={result.best.d} r={result.best_objective}, oracle d={d_best}, "
        f"stages {[round(v, 4) for v in result.stage_objectives]}",
    )


RECOVERY = dict(n_users=300, n_answers=400, votes_per_answer=(3, 8))


def _recovery_objectives(p_correct):
    values, explicit = [], []
    for seed in range(10):
        data, _ = generate_network(GenParams(**RECOVERY, p_correct=p_correct, seed=seed))
        explicit.append(len(data.votes))
        res = grid_search(data, ["exp+", "exp-"])
        values.append(res.best_objective)
    return values, explicit


def test_c09_synthetic_recovery(verdict):
    start = time.perf_counter()
    strong, votes_strong = _recovery_objectives(0.9)
    null, _ = _recovery_objectives(0.5)
    elapsed = time.perf_counter() - start
    # an absent objective (no significant threshold) counts as zero correlation
    med_strong = statistics.median(0.0 if v is None else v for v in strong)
    med_null = statistics.median(0.0 if v is None else v for v in null)
    ok = (
        min(votes_strong) >= 2000
        and med_strong >= 0.5
        and abs(med_null) <= 0.1
        and elapsed < 600
    )
    verdict(
        9,
        ok,
        f"median r {med_strong:.3f} at p=0.9 (min {min(votes_strong)} votes), "
        f"{med_null:.3f} at p=0.5, {elapsed:.0f}s",
    )


def _cli_outputs(root, data_dir):
    d = str(data_dir)
    runs = [
        ["rank", "--data", d, "--config", "conf7", "--out", f"{root}/rank.csv"],
        ["sweep", "--data", d, "--config", "conf7", "--out", f"{root}/sweep.json",
         "--plot-data", f"{root}/sweep.csv"],
        ["search", "--data", d, "--types", "exp-,iov-", "--stages", "0.2,0.1",
         "--jobs", "2", "--out", f"{root}/search.json"],
        ["baseline", "votes", "--data", d, "--config", "conf1", "--out", f"{root}/votes.json"],
        ["signals", "--data", d, "--out", f"{root}/signals.json"],
        ["simulate", "--out-dir", f"{root}/sim", "--seed", "7"],
    ]  # fmt: skip
    codes = [main(argv + ["--quiet"]) for argv in runs]
    files = sorted(p for p in root.rglob("*") if p.is_file())
    return codes, {p.relative_to(root): p.read_bytes() for p in files}


def test_c10_cli_determinism(verdict, tmp_path):
    data, _ = generate_network(GenParams(n_users=50, n_answers=60, seed=8))
    write_dataset(data, tmp_path / "data")
    codes_a, a = _cli_outputs(tmp_path / "a", tmp_path / "data")
    codes_b, b = _cli_outputs(tmp_path / "b", tmp_path / "data")
    same = a.keys() == b.keys() and all(a[k] == b[k] for k in a)
    ok = codes_a == codes_b == [0] * 6 and same and len(a) >= 10
    verdict(10, ok, f"{len(a)} output files byte-identical={same}")


TABLE_ONE = {
    # name: (d, selected types, beta, alpha, delta)
    "conf1": (0.86, {"exp+", "exp-"}, 0.00, 0.79, 0.00),
    "conf2": (0.80, {"exp+", "iav-", "exp-", "iov-"}, 0.90, 0.78, 0.40),
    "conf3": (0.85, {"exp+", "exp-", "iov+", "iov-"}, 0.00, 0.85, 0.15),
    "conf4": (0.98, {"exp+", "iav+", "exp-", "iov+"}, 0.40, 0.39, 0.74),
    "conf5": (0.90, {"exp+", "iav+", "iav-", "exp-"}, 0.10, 0.65, 0.00),
    "conf6": (0.85, {"exp+", "iav+", "iav-", "exp-", "iov+", "iov-"}, 0.14, 0.66, 0.15),
    "conf7": (0.89, {"exp+", "iav-", "exp-", "iov+", "iov-"}, 0.53, 0.85, 0.20),
}


def test_c11_presets(verdict):
    mismatched = [
        name
        for name, (d, types, beta, alpha, delta) in TABLE_ONE.items()
        if (p := PRESETS[name]).d != d
        or set(p.types) != types
        or (p.beta, p.alpha, p.delta) != (beta, alpha, delta)
    ]
    ok = not mismatched and sorted(PRESETS) == sorted(TABLE_ONE)
    verdict(11, ok, f"7 presets, mismatches {mismatched or 'none'}")
    loaded = json.loads(json.dumps(PRESETS["conf7"].to_dict()))
    assert RankConfig.from_dict(loaded) == PRESETS["conf7"]
