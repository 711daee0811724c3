import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxgen import (
    AffineMap,
    Box,
    ParameterError,
    UNIT_BOX,
    area,
    intersection,
    iou,
    normalize_to,
    reflect_about_center,
)

finite = st.floats(min_value=-100, max_value=100, allow_nan=False, allow_infinity=False)
side = st.floats(min_value=1e-3, max_value=100, allow_nan=False, allow_infinity=False)
scale = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False)

boxes = st.builds(
    lambda x, y, w, h: Box(x, y, x + w, y + h), finite, finite, side, side
)


class TestBox:
    def test_degenerate_construction_rejected(self):
        with pytest.raises(ParameterError):
            Box(0, 0, 0, 1)
        with pytest.raises(ParameterError):
            Box(0, 0, 1, 0)
        with pytest.raises(ParameterError):
            Box(1, 0, 0, 1)

    def test_non_finite_rejected(self):
        with pytest.raises(ParameterError):
            Box(0, 0, math.inf, 1)
        with pytest.raises(ParameterError):
            Box(math.nan, 0, 1, 1)

    def test_from_xywh(self):
        assert Box.from_xywh(10, 20, 40, 80) == Box(10, 20, 50, 100)


class TestArea:
    def test_unit_box(self):
        assert area(UNIT_BOX) == 1.0

    def test_reference_box(self):
        assert area(Box(0.3, 0.3, 0.6, 0.6)) == pytest.approx(0.09, abs=1e-12)

    def test_pixel_box(self):
        assert area(Box(10, 20, 50, 100)) == 3200.0


class TestIntersection:
    def test_self_intersection_is_area(self):
        b = Box(0.3, 0.3, 0.6, 0.6)
        assert intersection(b, b) == area(b)

    def test_half_overlap(self):
        assert intersection(UNIT_BOX, Box(0.5, 0, 1.5, 1)) == pytest.approx(0.5)

    def test_disjoint_clamps_to_zero(self):
        assert intersection(UNIT_BOX, Box(2, 2, 3, 3)) == 0.0

    @given(boxes, boxes)
    def test_bounded_by_smaller_area(self, b, c):
        assert intersection(b, c) <= min(area(b), area(c)) + 1e-9


class TestIoU:
    def test_identity(self):
        assert iou(UNIT_BOX, UNIT_BOX) == 1.0

    def test_third_overlap(self):
        assert iou(UNIT_BOX, Box(0.5, 0, 1.5, 1)) == pytest.approx(1 / 3)

    def test_disjoint(self):
        assert iou(UNIT_BOX, Box(2, 2, 3, 3)) == 0.0

    @given(boxes, boxes)
    def test_range_and_symmetry(self, b, c):
        v = iou(b, c)
        assert 0.0 <= v <= 1.0
        assert v == iou(c, b)

    @given(boxes, boxes, scale, scale)
    @settings(max_examples=200)
    def test_scale_invariance(self, b, c, kx, ky):
        m = AffineMap(kx, ky, 0.0, 0.0)
        assert abs(iou(m.apply(b), m.apply(c)) - iou(b, c)) <= 1e-9

    @given(boxes, boxes, finite, finite)
    @settings(max_examples=200)
    def test_translation_invariance(self, b, c, dx, dy):
        m = AffineMap(1.0, 1.0, dx, dy)
        assert abs(iou(m.apply(b), m.apply(c)) - iou(b, c)) <= 1e-9


class TestNormalizeTo:
    def test_identity_map(self):
        m = normalize_to(UNIT_BOX, UNIT_BOX)
        assert m.is_identity

    def test_pixel_to_unit(self):
        b = Box(10, 20, 50, 100)
        m = normalize_to(b, UNIT_BOX)
        assert m.scale_x == pytest.approx(1 / 40)
        assert m.scale_y == pytest.approx(1 / 80)
        img = m.apply(b)
        for got, want in zip(img.as_tuple(), UNIT_BOX.as_tuple()):
            assert got == pytest.approx(want, abs=1e-9)

    @given(boxes, boxes, boxes)
    @settings(max_examples=200)
    def test_preserves_pairwise_iou(self, b, companion, ref):
        m = normalize_to(b, ref)
        assert abs(iou(m.apply(b), m.apply(companion)) - iou(b, companion)) <= 1e-9


class TestAffineRoundTrip:
    def test_identity(self):
        b = Box(1, 2, 3, 4)
        assert AffineMap.identity().apply(b) == b

    def test_apply_matches_normalization_example(self):
        m = normalize_to(Box(10, 20, 50, 100), UNIT_BOX)
        img = m.apply(Box(10, 20, 50, 100))
        for got, want in zip(img.as_tuple(), (0, 0, 1, 1)):
            assert got == pytest.approx(want, abs=1e-9)

    def test_round_trip_on_random_boxes(self):
        gen = np.random.default_rng(5)
        m = AffineMap(0.37, 2.9, -4.2, 0.001)
        worst = 0.0
        for _ in range(1000):
            x1, y1 = gen.uniform(-50, 50, 2)
            b = Box(x1, y1, x1 + gen.uniform(0.01, 10), y1 + gen.uniform(0.01, 10))
            back = m.invert(m.apply(b))
            worst = max(
                worst,
                max(abs(u - v) for u, v in zip(back.as_tuple(), b.as_tuple())),
            )
        assert worst < 1e-9

    def test_invalid_scales_rejected(self):
        with pytest.raises(ParameterError):
            AffineMap(0.0, 1.0, 0.0, 0.0)
        with pytest.raises(ParameterError):
            AffineMap(1.0, -2.0, 0.0, 0.0)


class TestReflection:
    def test_self_reflection_is_identity(self):
        b = Box(0.25, 0.5, 1.5, 2.0)
        r = reflect_about_center(b, b)
        for got, want in zip(r.as_tuple(), b.as_tuple()):
            assert got == pytest.approx(want, abs=1e-12)

    def test_hand_reflection(self):
        assert reflect_about_center(Box(0, 0, 1, 2), Box(0, 0, 2, 2)) == Box(1, 0, 2, 2)

    @given(boxes, boxes, boxes)
    @settings(max_examples=200)
    def test_involution(self, b, c, frame):
        twice = reflect_about_center(reflect_about_center(b, frame), frame)
        for got, want in zip(twice.as_tuple(), b.as_tuple()):
            assert got == pytest.approx(want, abs=1e-9)

    @given(boxes, boxes, boxes)
    @settings(max_examples=200)
    def test_preserves_pairwise_iou(self, b, c, frame):
        rb = reflect_about_center(b, frame)
        rc = reflect_about_center(c, frame)
        assert abs(iou(rb, rc) - iou(b, c)) <= 1e-12

    @given(boxes, boxes)
    def test_preserves_area(self, b, frame):
        assert area(reflect_about_center(b, frame)) == pytest.approx(
            area(b), rel=1e-12
        )
