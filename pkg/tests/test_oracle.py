import itertools

import pytest

from incidence_pebble.engine import Status
from incidence_pebble.errors import InstanceTooLarge, NotSparseInput
from incidence_pebble.geometry import IncidenceGeometry, count_inequality, validate_and_normalize_params
from incidence_pebble.oracle import (
    brute_force_verdict,
    enumerate_blocks,
    max_sparse_subset,
    verify_block_closure,
    verify_matroid_exchange,
)
from incidence_pebble.reductions import random_geometry


def naive_sparse(g, p):
    """Definition applied literally: every nonempty subset of incidences, measured on its own support."""
    for r in range(1, len(g.incidences) + 1):
        for sub in itertools.combinations(g.incidences, r):
            pts = {i[0] for i in sub}
            lns = {i[1] for i in sub}
            if p.lam * len(sub) > p.k1 * len(pts) + p.k2 * len(lns) - p.l:
                return False
    return True


class TestBruteForce:
    def test_example1(self, example1, rods):
        v = brute_force_verdict(example1, rods)
        assert (v.status, v.remaining_pebbles) == (Status.SPARSE_NOT_TIGHT, 4)

    def test_figure3_right(self, fig3_right, rods):
        assert brute_force_verdict(fig3_right, rods).status is Status.TIGHT

    def test_k4(self, k4, rods):
        v = brute_force_verdict(k4, rods)
        assert v.status is Status.NOT_SPARSE
        assert v.witness.support.points == k4.points and v.witness.support.lines == k4.lines
        assert v.witness.deficit == 1

    def test_first_violator_is_smallest(self):
        g = random_geometry(3, 3, 1.0, seed=0)
        v = brute_force_verdict(g, validate_and_normalize_params(1, 1, 1, 1))
        # a 2x2 block is the smallest support with 4 > 1*2 + 1*2 - 1
        assert (v.witness.support.points, v.witness.support.lines) == (("p1", "p2"), ("l1", "l2"))

    def test_bound(self):
        g = random_geometry(9, 8, 0.1, seed=0)
        with pytest.raises(InstanceTooLarge):
            brute_force_verdict(g, validate_and_normalize_params(1, 1, 1, 1))
        assert brute_force_verdict(g, validate_and_normalize_params(1, 1, 1, 1), bound=17).status

    @pytest.mark.parametrize("seed", range(40))
    def test_matches_literal_definition(self, seed):
        g = random_geometry(3, 3, 0.6, seed)
        for p in [(2, 2, 3, 3), (1, 1, 1, 1), (1, 2, 1, 2), (2, 3, 1, 2)]:
            p = validate_and_normalize_params(*p)
            assert brute_force_verdict(g, p).is_sparse == naive_sparse(g, p)


class TestMaxSubset:
    def test_already_sparse(self, example1, rods):
        assert max_sparse_subset(example1, rods) == example1.incidences

    def test_empty(self, rods):
        assert max_sparse_subset(IncidenceGeometry(["p"], ["l"], []), rods) == ()

    def test_k4_drops_one(self, k4, rods):
        best = max_sparse_subset(k4, rods)
        assert len(best) == 11
        assert brute_force_verdict(k4.with_incidences(best), rods).is_sparse

    @pytest.mark.parametrize("seed", range(15))
    def test_against_exhaustive_descending(self, seed):
        g = random_geometry(3, 3, 0.7, seed)
        p = validate_and_normalize_params(2, 2, 3, 3)
        size = next(
            r for r in range(len(g.incidences), -1, -1)
            if any(naive_sparse(g.with_incidences(c), p) for c in itertools.combinations(g.incidences, r))
        )
        assert len(max_sparse_subset(g, p)) == size

    def test_bound(self):
        with pytest.raises(InstanceTooLarge):
            max_sparse_subset(random_geometry(5, 5, 1.0, seed=0), validate_and_normalize_params(1, 1, 1, 1))


class TestBlocks:
    def test_figure3_full_support_is_block(self, fig3_left, rods):
        blocks = enumerate_blocks(fig3_left, rods)
        assert fig3_left.full_support() in [b.support for b in blocks]
        assert all(count_inequality(b.support, rods) == 0 for b in blocks)

    def test_single_incidence(self):
        g = IncidenceGeometry(["p"], ["l"], [("p", "l")])
        blocks = enumerate_blocks(g, validate_and_normalize_params(1, 1, 1, 1))
        assert [b.support for b in blocks] == [g.full_support()]

    def test_example1_blocks_are_exact(self, example1, rods):
        blocks = {(b.support.points, b.support.lines) for b in enumerate_blocks(example1, rods)}
        expected = {
            (s.points, s.lines)
            for a in range(1, 3)
            for b in range(1, 3)
            for pts in itertools.combinations(example1.points, a)
            for lns in itertools.combinations(example1.lines, b)
            if count_inequality(s := example1.support(pts, lns), rods) == 0
        }
        assert blocks == expected
        assert (("p1",), ("l1", "l2")) not in blocks

    def test_not_sparse_input(self, k4, rods):
        with pytest.raises(NotSparseInput):
            enumerate_blocks(k4, rods)

    def test_closure_single_block(self):
        g = IncidenceGeometry(["p"], ["l"], [("p", "l")])
        report = verify_block_closure(g, validate_and_normalize_params(1, 1, 1, 1))
        assert report.ok and report.blocks == 1 and report.pairs_checked == 0

    def test_disjoint_blocks_skipped(self):
        g = IncidenceGeometry(["a", "b"], ["x", "y"], [("a", "x"), ("b", "y")])
        report = verify_block_closure(g, validate_and_normalize_params(1, 1, 1, 1))
        assert report.blocks == 2 and report.pairs_checked == 0

    def test_figure3_closure(self, fig3_left, rods):
        report = verify_block_closure(fig3_left, rods)
        assert report.ok and report.pairs_checked > 0


class TestMatroid:
    def test_k_plane_2x2(self):
        report = verify_matroid_exchange(2, 2, validate_and_normalize_params(1, 1, 2, 2))
        assert report.is_matroid and report.bases_count == 1

    @pytest.mark.parametrize("n,m,p", [(2, 3, (1, 1, 2, 2)), (3, 3, (1, 1, 1, 1)), (3, 4, (1, 2, 1, 2))])
    def test_lambda_one_is_matroid(self, n, m, p):
        assert verify_matroid_exchange(n, m, validate_and_normalize_params(*p)).is_matroid

    def test_figure3_pair_fails(self, fig3_left, fig3_right, rods):
        report = verify_matroid_exchange(4, 5, rods, pair=(fig3_left, fig3_right))
        assert not report.exchange_holds
        assert {tuple(v["b"]) for v in report.exchange_violations} == {("b", "l5"), ("d", "l5")}

    def test_no_tight_subset(self):
        # 1 point, 1 line under (1,1,1,0): tight needs 2 incidences
        report = verify_matroid_exchange(1, 1, validate_and_normalize_params(1, 1, 1, 0))
        assert report.bases_empty and report.bases_count == 0 and not report.is_matroid

    def test_bound(self):
        with pytest.raises(InstanceTooLarge):
            verify_matroid_exchange(4, 4, validate_and_normalize_params(1, 1, 1, 1))
