import itertools
import random

import pytest

import trichrome


def colorable(n, edges, k=3):
    return any(all(c[u] != c[v] for u, v in edges) for c in itertools.product(range(k), repeat=n))


def csp_solvable(domains, constraints):
    for a in itertools.product(*domains):
        if all(not (a[v] == c and a[w] == d) for (v, c), (w, d) in constraints):
            return True
    return False


def test_constants():
    assert trichrome.work_factor([4, 4, 5, 5]) == pytest.approx(1.36443, abs=1e-5)
    eps, lam = trichrome.optimize_epsilon()
    assert eps == pytest.approx(0.095543, abs=1e-5)
    assert lam == pytest.approx(1.36443, abs=1e-5)
    consts = trichrome.reference_constants()
    assert consts["coloring_base"] == pytest.approx(1.3289, abs=1e-4)
    assert consts["d8"] == pytest.approx(3.6144, abs=1e-3)
    with pytest.raises(ValueError):
        trichrome.work_factor([])


def test_csp_against_brute_force():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(1, 6)
        domains = [list(range(rng.choice([3, 4]))) for _ in range(n)]
        cons = [
            ((v, c), (w, d))
            for v in range(n)
            for w in range(v + 1, n)
            for c in domains[v]
            for d in domains[w]
            if rng.random() < 0.25
        ]
        sol, stats = trichrome.solve_csp(domains, cons)
        assert (sol is not None) == csp_solvable(domains, cons)
        if sol is not None:
            assert all(sol[v] in domains[v] for v in range(n))
            assert all(not (sol[v] == c and sol[w] == d) for (v, c), (w, d) in cons)
        assert stats["calls"] >= 1
    with pytest.raises(ValueError):
        trichrome.solve_csp([[0, 1, 2]], [((0, 0), (1, 0))])


def test_randomized_is_reproducible():
    domains = [list(range(5))] * 5
    cons = [((0, 1), (1, 1)), ((2, 0), (3, 4))]
    a = trichrome.solve_csp_random(domains, cons, mode="restrict4", seed=3)
    b = trichrome.solve_csp_random(domains, cons, mode="restrict4", seed=3)
    assert a == b
    assert a["verdict"] == "SAT"
    with pytest.raises(ValueError):
        trichrome.solve_csp_random(domains, cons, mode="other")


def test_coloring_fixtures_and_random():
    k4 = list(itertools.combinations(range(4), 2))
    assert trichrome.color3(4, k4) is None
    assert trichrome.edge_color3(4, k4) is not None
    petersen = [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]
    petersen += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    assert trichrome.color3(10, petersen) is not None
    assert trichrome.edge_color3(10, petersen) is None
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(1, 8)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.45]
        col = trichrome.color3(n, edges)
        assert (col is not None) == colorable(n, edges)
        if col is not None:
            assert all(col[u] != col[v] for u, v in edges)
    assert trichrome.list_color(2, [(0, 1)], [[7], [7, 8]]) == [7, 8]


def test_sat():
    rng = random.Random(2)
    for _ in range(60):
        n = rng.randint(3, 6)
        clauses = [
            [v * rng.choice([1, -1]) for v in rng.sample(range(1, n + 1), 3)] for _ in range(rng.randint(1, 5 * n))
        ]
        model = trichrome.solve_3sat(n, clauses)
        truth = any(
            all(any(x[abs(l) - 1] == (l > 0) for l in c) for c in clauses)
            for x in itertools.product([False, True], repeat=n)
        )
        assert (model is not None) == truth
        if model is not None:
            assert all(any(model[abs(l) - 1] == (l > 0) for l in c) for c in clauses)


def test_cli_and_bench():
    code, out, _ = trichrome.run_cli(["workfactor", "4", "4", "5", "5"])
    assert code == 0 and out == "1.36443\n"
    code, _, err = trichrome.run_cli(["solve", "bogus", "x"])
    assert code == 64 and err
    rep = trichrome.bench("sat", n=8, density=4.0, count=5)
    assert rep["kind"] == "sat"
    assert rep["oracle_agree"] == rep["oracle_checked"] == "5"
