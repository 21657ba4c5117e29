import math
from bisect import bisect_left, bisect_right

import numpy as np
import pytest

from ssk import (CompositeKey, KernelParams, LayeredRangeSumTree,
                 RangeQuery2D, WeightedPoint, build_match_list,
                 tilde_match_points)
from ssk.hdr import ZERO, HdrScalar

SIX_POINTS = [(2, 2), (5, 2), (3, 3), (4, 3), (2, 4), (5, 4)]


def unit_tree(coords, include_points=True):
    pts = [WeightedPoint.from_match(i, j, HdrScalar.from_float(1.0))
           for i, j in coords]
    return LayeredRangeSumTree(pts, include_points=include_points)


def random_instance(rng, max_points, weight_powers=40):
    count = int(rng.integers(1, max_points + 1))
    coords = set()
    while len(coords) < count:
        coords.add((int(rng.integers(0, 60)), int(rng.integers(0, 60))))
    pts = [WeightedPoint.from_match(i, j, HdrScalar.from_lambda_power(
        0.5, int(rng.integers(0, weight_powers)))) for i, j in sorted(coords)]
    return pts


def scan_sum(pts, x1, x2, y1, y2):
    total = ZERO
    for pt in pts:
        if x1 <= pt.x.primary <= x2 and y1 <= pt.y.primary <= y2:
            total = total + pt.weight
    return total


class TestBuild:
    def test_six_point_root_prefix_sums(self):
        tree = unit_tree(SIX_POINTS)
        assert tree.node_count == 11  # 6 leaves, 5 internal
        sums = [v.to_float() for v in tree.assoc_prefix_sums(0)]
        assert sums == [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0]
        assert len(tree.assoc_keys(0)) == 6

    def test_single_point(self):
        pt = WeightedPoint.from_match(3, 4, HdrScalar.from_float(2.0))
        tree = LayeredRangeSumTree([pt])
        assert tree.node_count == 1
        assert tree.range_sum(RangeQuery2D.box(0, 5, 0, 5)).to_float() == 2.0
        assert tree.range_sum(RangeQuery2D.box(0, 2, 0, 5)) == ZERO

    def test_empty_tree(self):
        tree = LayeredRangeSumTree([])
        assert tree.node_count == 0
        assert tree.range_sum(RangeQuery2D.box(0, 100, 0, 100)) == ZERO
        assert tree.range_report(RangeQuery2D.box(0, 100, 0, 100)) == []

    def test_duplicate_x_keys_rejected(self):
        pts = [WeightedPoint(CompositeKey(1, 1), CompositeKey(1, 1), HdrScalar.from_float(1.0)),
               WeightedPoint(CompositeKey(1, 1), CompositeKey(2, 1), HdrScalar.from_float(1.0))]
        with pytest.raises(ValueError, match="duplicate"):
            LayeredRangeSumTree(pts)

    def test_structural_invariants(self):
        rng = np.random.default_rng(4)
        tree = LayeredRangeSumTree(random_instance(rng, 100))
        for v in range(tree.node_count):
            left, right = tree.node_children(v)
            lo, hi = tree.node_leaf_span(v)
            keys = tree.assoc_keys(v)
            assert keys == sorted(keys)
            sums = tree.assoc_prefix_sums(v)
            assert all(a <= b for a, b in zip(sums, sums[1:]))
            if left >= 0:
                llo, lhi = tree.node_leaf_span(left)
                rlo, rhi = tree.node_leaf_span(right)
                assert (llo, rhi) == (lo, hi) and lhi == rlo
                assert sorted(tree.assoc_keys(left) + tree.assoc_keys(right)) == keys


class TestWorkedRangeSums:
    @pytest.fixture(scope="class")
    def tilde_tree(self):
        from ssk import encode_texts

        _, (s, t) = encode_texts(["gatta", "cata"], "character")
        return LayeredRangeSumTree(tilde_match_points(build_match_list(s, t, 0.5)))

    @pytest.mark.parametrize("x2,y2,powers", [
        (1, 1, None), (1, 3, None), (2, 2, (-2,)), (3, 2, (-2,)),
        (4, 1, None), (4, 3, (-5, -4, -2)),
    ])
    def test_six_queries_exact(self, tilde_tree, x2, y2, powers):
        got = tilde_tree.range_sum(RangeQuery2D.box(0, x2, 0, y2))
        if powers is None:
            assert got == ZERO
        else:
            want = ZERO
            for k in powers:
                want = want + HdrScalar.from_lambda_power(0.5, k)
            assert got == want


class TestQueriesAgainstScan:
    def test_random_sums(self):
        rng = np.random.default_rng(8)
        for _ in range(25):
            pts = random_instance(rng, 256)
            tree = LayeredRangeSumTree(pts)
            for _q in range(20):
                x1, x2 = sorted(rng.integers(0, 61, 2).tolist())
                y1, y2 = sorted(rng.integers(0, 61, 2).tolist())
                got = tree.range_sum(RangeQuery2D.box(x1, x2, y1, y2))
                want = scan_sum(pts, x1, x2, y1, y2)
                assert got == want

    def test_random_reports(self):
        rng = np.random.default_rng(10)
        for _ in range(15):
            pts = random_instance(rng, 128)
            tree = LayeredRangeSumTree(pts)
            for _q in range(10):
                x1, x2 = sorted(rng.integers(0, 61, 2).tolist())
                y1, y2 = sorted(rng.integers(0, 61, 2).tolist())
                got = tree.range_report(RangeQuery2D.box(x1, x2, y1, y2))
                want = [pt for pt in pts
                        if x1 <= pt.x.primary <= x2 and y1 <= pt.y.primary <= y2]
                assert sorted((p.x, p.y) for p in got) == sorted(
                    (p.x, p.y) for p in want)
                assert len({(p.x, p.y) for p in got}) == len(got)

    def test_sum_report_consistency(self):
        rng = np.random.default_rng(12)
        pts = random_instance(rng, 200)
        tree = LayeredRangeSumTree(pts)
        for _q in range(30):
            x1, x2 = sorted(rng.integers(0, 61, 2).tolist())
            y1, y2 = sorted(rng.integers(0, 61, 2).tolist())
            q = RangeQuery2D.box(x1, x2, y1, y2)
            total = ZERO
            for pt in tree.range_report(q):
                total = total + pt.weight
            assert tree.range_sum(q) == total

    def test_universal_and_empty_ranges(self):
        tree = unit_tree(SIX_POINTS)
        assert tree.range_sum(RangeQuery2D.box(0, 10, 0, 10)).to_float() == 6.0
        assert len(tree.range_report(RangeQuery2D.box(0, 10, 0, 10))) == 6
        # strictly between grid coordinates
        assert tree.range_sum(RangeQuery2D.box(6, 10, 0, 1)) == ZERO
        assert tree.range_report(RangeQuery2D.box(6, 10, 0, 1)) == []

    def test_tiebreak_bounds_respected(self):
        tree = unit_tree(SIX_POINTS)
        # x-keys (2|2) and (2|4): a tiebreak bound separates them
        q = RangeQuery2D(CompositeKey(2, 3), CompositeKey(2, math.inf),
                         CompositeKey(0, -math.inf), CompositeKey(10, math.inf))
        assert tree.range_sum(q).to_float() == 1.0  # only (2,4)


def walk_pointers(tree):
    for v in range(tree.node_count):
        left, right = tree.node_children(v)
        if left < 0:
            continue
        keys = tree.assoc_keys(v)
        for side, child in (("left", left), ("right", right)):
            ckeys = tree.assoc_keys(child)
            for slot, key in enumerate(keys):
                sp = tree.small_pointer(v, slot, side)
                want_sp = bisect_left(ckeys, key)
                assert sp == (want_sp if want_sp < len(ckeys) else None)
                lp = tree.large_pointer(v, slot, side)
                want_lp = bisect_right(ckeys, key) - 1
                assert lp == (want_lp if want_lp >= 0 else None)


def test_pointer_correctness_exhaustive():
    rng = np.random.default_rng(14)
    for _ in range(10):
        tree = LayeredRangeSumTree(random_instance(rng, 150))
        walk_pointers(tree)


def test_canonical_decomposition_counts():
    rng = np.random.default_rng(16)
    pts = [WeightedPoint.from_match(i, j, HdrScalar.from_float(1.0))
           for i, j in {(int(rng.integers(0, 40)), int(rng.integers(0, 40)))
                        for _ in range(300)}]
    tree = LayeredRangeSumTree(pts)
    for _ in range(50):
        x1, x2 = sorted(rng.integers(0, 41, 2).tolist())
        got = tree.range_sum(RangeQuery2D.box(x1, x2, 0, 100)).to_float()
        want = sum(1 for pt in pts if x1 <= pt.x.primary <= x2)
        assert got == float(want)


def test_query_touch_bound():
    rng = np.random.default_rng(18)
    for size in (64, 256, 1024):
        coords = set()
        while len(coords) < size:
            coords.add((int(rng.integers(0, 5000)), int(rng.integers(0, 5000))))
        tree = unit_tree(sorted(coords))
        bound = 2 * math.ceil(math.log2(size)) + 4
        for _ in range(40):
            x1, x2 = sorted(rng.integers(0, 5001, 2).tolist())
            y1, y2 = sorted(rng.integers(0, 5001, 2).tolist())
            _, touched = tree.range_sum_with_stats(RangeQuery2D.box(x1, x2, y1, y2))
            assert touched <= bound


def test_weight_exponent_bound_enforced():
    pt = WeightedPoint.from_match(1, 2, HdrScalar(0.5, 2 ** 31))
    with pytest.raises(ValueError, match="exponent"):
        LayeredRangeSumTree([pt])


def test_coordinate_bound_enforced():
    pt = WeightedPoint.from_match(2 ** 31, 1, HdrScalar.from_float(1.0))
    with pytest.raises(ValueError, match="out of range"):
        LayeredRangeSumTree([pt])
