import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from incidence_pebble.errors import (
    DanglingReference,
    DuplicateIncidence,
    NonPositiveLambda,
    ParameterConditionViolated,
    ParameterError,
    ParseError,
)
from incidence_pebble.geometry import (
    IncidenceGeometry,
    build_multigraph,
    count_inequality,
    load_geometry,
    parse_params,
    validate_and_normalize_params,
)
from incidence_pebble.reductions import random_geometry


class TestParams:
    def test_rod_count_unchanged(self):
        p = validate_and_normalize_params(2, 2, 3, 3)
        assert p.as_tuple() == (2, 2, 3, 3)
        assert not p.was_rescaled

    def test_gcd_division(self):
        p = validate_and_normalize_params(2, 4, 6, 2)
        assert p.as_tuple() == (1, 2, 3, 1)
        assert p.raw == (2, 4, 6, 2)

    def test_condition_violated(self):
        with pytest.raises(ParameterConditionViolated):
            validate_and_normalize_params(1, 1, 1, 2)

    @pytest.mark.parametrize("lam", [0, -1])
    def test_lambda_must_be_positive(self, lam):
        with pytest.raises(NonPositiveLambda):
            validate_and_normalize_params(lam, 3, 3, 0)

    def test_negative_k_rejected(self):
        with pytest.raises(ParameterError):
            validate_and_normalize_params(1, -1, 3, 0)

    def test_zero_k_allowed(self):
        assert validate_and_normalize_params(1, 0, 2, 1).k1 == 0

    def test_parse(self):
        assert parse_params(" 2, 2,3 ,3").as_tuple() == (2, 2, 3, 3)
        with pytest.raises(ParameterError):
            parse_params("2,2,3")
        with pytest.raises(ParameterError):
            parse_params("a,b,c,d")

    @given(
        st.integers(1, 12), st.integers(0, 12), st.integers(0, 12), st.integers(0, 12)
    )
    def test_normalization_idempotent(self, lam, k1, k2, l):
        try:
            once = validate_and_normalize_params(lam, k1, k2, l)
        except ParameterConditionViolated:
            return
        twice = validate_and_normalize_params(*once.as_tuple())
        assert once == twice
        assert not twice.was_rescaled


class TestLoad:
    def test_example1(self, example1):
        assert len(example1.incidences) == 3
        assert example1.points == ("p1", "p2")
        assert example1.incidences[1] == ("p1", "l2")

    def test_empty_incidences(self):
        g = load_geometry('{"points": ["p"], "lines": ["l"], "incidences": []}')
        assert g.incidences == ()

    def test_unknown_point(self):
        with pytest.raises(DanglingReference):
            load_geometry('{"points": ["p1"], "lines": ["l1"], "incidences": [["p9", "l1"]]}')

    def test_unknown_line(self):
        with pytest.raises(DanglingReference):
            load_geometry('{"points": ["p1"], "lines": ["l1"], "incidences": [["p1", "l9"]]}')

    def test_duplicate_incidence(self):
        with pytest.raises(DuplicateIncidence):
            load_geometry('{"points": ["p"], "lines": ["l"], "incidences": [["p", "l"], ["p", "l"]]}')

    @pytest.mark.parametrize(
        "doc",
        [
            "not json",
            "[]",
            '{"points": [], "lines": []}',
            '{"points": ["x"], "lines": ["x"], "incidences": []}',
            '{"points": [""], "lines": [], "incidences": []}',
            '{"points": ["p"], "lines": ["l"], "incidences": [["p"]]}',
            '{"points": "p", "lines": [], "incidences": []}',
            '{"points": ["p", "p"], "lines": [], "incidences": []}',
        ],
    )
    def test_malformed(self, doc):
        with pytest.raises(ParseError):
            load_geometry(doc)

    def test_round_trip_preserves_order(self):
        g = random_geometry(4, 3, 0.6, seed=11)
        shuffled = g.with_incidences(reversed(g.incidences))
        again = load_geometry(shuffled.dumps())
        assert again == shuffled
        assert json.loads(again.dumps())["incidences"] == [list(i) for i in reversed(g.incidences)]


class TestMultigraph:
    def test_example1_doubled(self, example1, rods):
        mg = build_multigraph(example1, rods)
        assert len(mg.vertices) == 4
        assert len(mg.edges) == 6
        assert mg.kind == {"p1": 1, "p2": 1, "l1": 2, "l2": 2}

    def test_lambda_one_bijects(self):
        g = random_geometry(3, 4, 0.5, seed=2)
        mg = build_multigraph(g, validate_and_normalize_params(1, 1, 1, 1))
        assert [(p, q) for p, q, _ in mg.edges] == list(g.incidences)

    def test_empty(self, rods):
        g = IncidenceGeometry(["p"], ["l"], [])
        mg = build_multigraph(g, rods)
        assert mg.edges == ()
        assert mg.adjacency == {"p": (), "l": ()}

    @given(st.integers(0, 4), st.integers(0, 4), st.floats(0, 1), st.integers(0, 10**6), st.integers(1, 4))
    def test_copies_per_incidence(self, n, m, density, seed, lam):
        g = random_geometry(n, m, density, seed)
        p = validate_and_normalize_params(lam, lam + 2, lam + 2, 1)
        mg = build_multigraph(g, p)
        assert len(mg.edges) == p.lam * len(g.incidences)
        groups = {}
        for pt, ln, i in mg.edges:
            groups.setdefault((pt, ln), []).append(i)
        assert set(groups) == set(g.incidences)
        assert all(sorted(v) == list(range(1, p.lam + 1)) for v in groups.values())


class TestCountInequality:
    def test_example1_full(self, example1, rods):
        assert count_inequality(example1.full_support(), rods) == 1

    def test_single_incidence(self, rods):
        g = IncidenceGeometry(["p"], ["l"], [("p", "l")])
        assert count_inequality(g.full_support(), rods) == 0

    def test_k4_violates(self, k4, rods):
        # 2*4 + 3*6 - 3 - 2*12
        assert count_inequality(k4.full_support(), rods) == -1

    @given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 10**6), st.data())
    def test_monotone_under_removal(self, n, m, seed, data):
        p = validate_and_normalize_params(2, 2, 3, 3)
        g = random_geometry(n, m, 0.7, seed)
        sup = g.full_support()
        keep = data.draw(st.lists(st.sampled_from(g.incidences), unique=True)) if g.incidences else []
        smaller = g.with_incidences([i for i in g.incidences if i in keep]).full_support()
        assert count_inequality(smaller, p) >= count_inequality(sup, p)

    def test_support_restricts(self, example1):
        s = example1.support(["p1"], ["l1", "l2"])
        assert s.incidences == (("p1", "l1"), ("p1", "l2"))
        assert s.points == ("p1",)
