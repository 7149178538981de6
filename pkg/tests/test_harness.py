import io
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qgrad.harness import (
    CSV_COLUMNS,
    PARAMETERS,
    REFERENCE_TABLE,
    ExperimentSpec,
    compare_to_reference,
    default_config,
    emit,
    render,
    run_experiment,
    summarize,
    summary_from_json,
)
from qgrad.optimizer import RunResult


def result(evals, success=True, best_f=0.0, seed=0):
    return RunResult(evals_used=evals, best_f=best_f, best_x=(0.0, 0.0), success=success,
                     iterations=evals // 3, seed=seed, success_mode="target" if success else None)


@pytest.fixture(scope="module")
def small_summary():
    spec = ExperimentSpec("elp", default_config("elp", dim=4, max_evals=3000), runs=2, base_seed=3)
    return run_experiment(spec)


def test_summarize_examples():
    s = summarize([result(5), result(7), result(9)])
    assert (s.best, s.median, s.worst) == (5, 7, 9)
    assert s.success_count == 3 and s.total_runs == 3
    s = summarize([result(8), result(2), result(6), result(4)])
    assert s.median == 4


def test_summarize_without_successes():
    s = summarize([result(100, False, 3.5), result(100, False, 1.25)])
    assert s.best is s.median is s.worst is None
    assert s.success_count == 0
    assert s.f_best_overall == 1.25


def test_summarize_skips_failed_runs_in_counts():
    s = summarize([result(10), result(1_000_000, False, 1.0), result(30)])
    assert (s.best, s.median, s.worst) == (10, 10, 30)
    assert s.success_ratio == pytest.approx(2 / 3)


def test_summarize_rejects_empty():
    with pytest.raises(ValueError):
        summarize([])


@given(st.lists(st.tuples(st.integers(1, 10**6), st.booleans(), st.floats(0, 1)), min_size=1, max_size=30),
       st.randoms(use_true_random=False))
def test_summarize_is_permutation_invariant(rows, random):
    runs = [result(e, ok, f) for e, ok, f in rows]
    shuffled = list(runs)
    random.shuffle(shuffled)
    a, b = summarize(runs), summarize(shuffled)
    assert (a.best, a.median, a.worst, a.success_count, a.f_best_overall) == \
           (b.best, b.median, b.worst, b.success_count, b.f_best_overall)
    if a.success_count:
        assert a.best <= a.median <= a.worst


def test_reference_constants():
    assert PARAMETERS["elp"] == (0.4, 38.0, 0.86)
    assert PARAMETERS["rrtg"] == (30.0, 0.5, 0.999)
    row = REFERENCE_TABLE["elp"]["q-Gradient"]
    assert (row.best, row.median, row.worst, row.success) == (5_905, 7_053, 7_381, "50/50")
    assert REFERENCE_TABLE["ackl"]["q-Gradient"].best == 11_850
    with pytest.raises(TypeError):
        REFERENCE_TABLE["elp"] = {}


def test_default_config_uses_published_row():
    cfg = default_config("ackl")
    assert (cfg.sigma0, cfg.alpha0, cfg.beta, cfg.dim) == (20.0, 12.0, 0.9, 20)
    assert cfg.target == 1e-15
    assert default_config("rtg", sigma0=5.0).sigma0 == 5.0
    with pytest.raises(KeyError):
        default_config("nope")


def test_spec_validation():
    cfg = default_config("elp")
    with pytest.raises(ValueError):
        ExperimentSpec("elp", cfg, runs=0)
    with pytest.raises(KeyError, match="rrtg"):
        ExperimentSpec("sphere", cfg)
    with pytest.raises(ValueError):
        ExperimentSpec("elp", cfg, algorithm="newton")
    assert ExperimentSpec("elp", cfg, base_seed=10).seed(3) == 13


def test_single_ellipsoidal_run():
    spec = ExperimentSpec("elp", default_config("elp"), runs=1, base_seed=123)
    s = run_experiment(spec)
    run, = s.per_run
    assert run.success and run.evals_used < 20_000 and run.seed == 123


def test_run_experiment_is_deterministic(small_summary):
    spec = ExperimentSpec("elp", default_config("elp", dim=4, max_evals=3000), runs=2, base_seed=3)
    again = run_experiment(spec)
    assert again == small_summary
    assert [r.seed for r in again.per_run] == [3, 4]
    assert again.per_run[0].best_x != again.per_run[1].best_x


def test_parallel_matches_sequential():
    spec = ExperimentSpec("ros", default_config("ros", dim=3, max_evals=2000), runs=3)
    assert run_experiment(spec, workers=2) == run_experiment(spec)


def test_steepest_descent_algorithm():
    spec = ExperimentSpec("elp", default_config("elp", dim=3, max_evals=5000), runs=2, algorithm="sd")
    s = run_experiment(spec)
    assert s.algorithm == "sd"
    assert all(r.evals_used <= 5000 for r in s.per_run)


def test_emit_csv(small_summary):
    buf = io.StringIO()
    emit(small_summary, "csv", buf)
    lines = buf.getvalue().splitlines()
    assert len(lines) == 1 + 2 + 1
    assert lines[0] == ",".join(CSV_COLUMNS) == "seed,evals_used,best_f,success,iterations"
    seed, evals, best_f, success, iterations = lines[1].split(",")
    run = small_summary.per_run[0]
    assert (int(seed), int(evals), float(best_f), int(iterations)) == \
           (run.seed, run.evals_used, run.best_f, run.iterations)
    assert lines[-1].startswith("summary,")
    assert "2/2" in lines[-1]


def test_json_round_trip(small_summary):
    text = render(small_summary, "json")
    assert json.loads(text)["median_convention"].startswith("lower-middle")
    assert summary_from_json(text) == small_summary


def test_table_columns(small_summary):
    text = render(small_summary, "table")
    for column in ("Best", "Median", "Worst", "F(x_best)", "Success"):
        assert column in text
    assert "Ellipsoidal" in text and "2/2" in text


def test_render_rejects_unknown_format(small_summary):
    with pytest.raises(ValueError):
        render(small_summary, "xml")


def test_emit_to_path_and_failure(small_summary, tmp_path):
    out = tmp_path / "r.csv"
    emit(small_summary, "csv", out)
    assert out.read_text().startswith("seed,")
    bad = tmp_path / "missing" / "r.csv"
    with pytest.raises(OSError, match="missing"):
        emit(small_summary, "csv", bad)


def test_compare_ackley_shows_published_median():
    s = summarize([result(12_000), result(13_000)], function="ackl", algorithm="qgrad")
    cmp = compare_to_reference(s)
    text = cmp.render()
    assert "12,465" in text and "(published)" in text and "(ours)" in text
    assert cmp.ratios()["median"] == pytest.approx(12_000 / 12_465)


def test_compare_rastrigin_success_and_failed_rows():
    s = summarize([result(5, False, 2.0)], function="rtg")
    cmp = compare_to_reference(s)
    assert cmp.reference["q-Gradient"].success == "48/50"
    assert all(v is None for v in cmp.ratios().values())
    assert "48/50" in cmp.render()


def test_compare_unknown_function():
    with pytest.raises(KeyError):
        compare_to_reference(summarize([result(5)], function="sphere"))
