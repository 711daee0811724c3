import numpy as np
import pytest

from boxgen import Box, GroundTruth, GroundTruthSet, SeededRng


@pytest.fixture
def rng():
    return SeededRng(1234)


@pytest.fixture
def mixed_batch():
    """Batch with 4 of category 1, 2 of 2, 2 of 3, 1 of 4 (9 instances)."""
    boxes = [
        Box(0.10, 0.10, 0.20, 0.30),
        Box(0.30, 0.10, 0.40, 0.30),
        Box(0.50, 0.10, 0.60, 0.30),
        Box(0.70, 0.10, 0.80, 0.30),
        Box(0.05, 0.40, 0.35, 0.95),
        Box(0.55, 0.40, 0.85, 0.95),
        Box(0.10, 0.55, 0.45, 0.80),
        Box(0.55, 0.55, 0.90, 0.80),
        Box(0.40, 0.35, 0.60, 0.70),
    ]
    cats = [1, 1, 1, 1, 2, 2, 3, 3, 4]
    return GroundTruthSet(
        GroundTruth(box=b, category_id=c, instance_id=i)
        for i, (b, c) in enumerate(zip(boxes, cats))
    )


def random_box(gen, lo=-2.0, hi=2.0, min_side=1e-3):
    x1 = gen.uniform(lo, hi)
    y1 = gen.uniform(lo, hi)
    w = gen.uniform(min_side, hi - lo)
    h = gen.uniform(min_side, hi - lo)
    return Box(x1, y1, x1 + w, y1 + h)


@pytest.fixture
def box_stream():
    gen = np.random.default_rng(77)

    def _make(**kwargs):
        return random_box(gen, **kwargs)

    return _make
