import math

import pytest

import mosr


def test_parse_round_trip():
    tree = mosr.parse("(+ (* 7 (square x0)) (* 3 x0) 5)")
    assert tree.length == 9
    assert len(tree) == 9
    assert mosr.parse(str(tree)) == tree


def test_parse_error():
    with pytest.raises(mosr.ParseError):
        mosr.parse("(foo x0)")
    with pytest.raises(ValueError):
        mosr.parse("(sin x0")


def test_complexity_measures():
    f1 = mosr.parse("(exp (sin (sqrt x0)))")
    assert mosr.tree_length(f1) == 4
    assert mosr.visitation_length(f1) == 10
    assert mosr.variable_count(f1) == 1
    assert mosr.complexity(f1, "figure") == 65536.0
    assert mosr.complexity(f1) == 2.0**256
    with pytest.raises(mosr.ConfigError):
        mosr.complexity(f1, "nope")


def test_evaluate_and_metrics():
    tree = mosr.parse("(+ (* 2 x0) x1)")
    out = mosr.evaluate(tree, [[1.0, 2.0, 3.0], [0.5, 0.5, 0.5]])
    assert out == [2.5, 4.5, 6.5]
    actual = [1.0, 2.0, 3.0]
    assert mosr.pearson_r2(out, actual) == pytest.approx(1.0)
    assert mosr.scaled_nmse(out, actual) == pytest.approx(0.0, abs=1e-12)
    slope, intercept = mosr.fit_linear_scaling([2.0, 4.0, 6.0], actual)
    assert slope == pytest.approx(0.5)
    assert intercept == pytest.approx(0.0, abs=1e-12)
    assert mosr.nmse([2.0, 2.0, 2.0], actual) == pytest.approx(1.0)


def test_problems_and_generate():
    names = [p["name"] for p in mosr.list_problems()]
    assert len(names) == 8
    assert "poly10" in names
    data = mosr.generate("keijzer5", seed=1)
    assert len(data["columns"]) == 3
    assert data["train"] == (0, 1000)
    assert data["test"] == (1000, 11000)
    x1, x2, x3 = (c[0] for c in data["columns"])
    assert data["target"][0] == pytest.approx(30 * x1 * x3 / ((x1 - 10) * x2 * x2))


def test_run():
    config = "problem = keijzer5\npop = 30\nevals = 300\nobjective2 = variables\n"
    a = mosr.run(config, seed=2)
    b = mosr.run(config, seed=2)
    assert a == b
    assert a["evaluations"] == 300
    assert a["front"][a["best_index"]]["model"] == a["best_model"]
    assert math.isfinite(a["train_nmse"])
