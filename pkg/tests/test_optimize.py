import math

import numpy as np
import pytest

from dicke_sim.utils.helpers import complex_from_dict, complex_to_dict, compute_hash, unit_vector
from dicke_sim.utils.optimize import (
    find_brackets,
    golden_section,
    refine_root,
    search_grid,
    sign_changes,
)


class TestGoldenSection:
    """Tests for golden-section refinement."""

    def test_minimum(self):
        assert golden_section(lambda x: (x - 2.0) ** 2, 0.0, 5.0) == pytest.approx(2.0, abs=1e-8)

    def test_maximum(self):
        x = golden_section(lambda x: -(x - 1.0) ** 2, 0.0, 3.0, maximize=True)
        assert x == pytest.approx(1.0, abs=1e-8)

    def test_reversed_interval(self):
        assert golden_section(math.cos, 4.0, 2.0) == pytest.approx(math.pi, abs=1e-7)

    def test_tiny_interval(self):
        assert golden_section(math.sin, 1.0, 1.0 + 1e-12) == pytest.approx(1.0)


class TestGridScans:
    """Tests for grid construction and bracket detection."""

    def test_search_grid(self):
        grid = search_grid(10.0, 101)
        assert grid[0] == 0.0
        assert grid[-1] == 10.0
        assert np.all(np.diff(grid) > 0)
        # Geometric refinement below the first uniform step
        assert np.sum(grid < 0.1) > 50

    def test_find_brackets(self):
        t = np.linspace(0.0, 10.0, 1001)
        brackets = find_brackets(t, np.sin(t))
        assert [b.kind for b in brackets] == ["max", "min", "max"]
        assert brackets[0].left <= math.pi / 2 <= brackets[0].right
        assert brackets[1].left <= 3 * math.pi / 2 <= brackets[1].right

    def test_flat_values_have_no_brackets(self):
        t = np.linspace(0.0, 1.0, 11)
        assert find_brackets(t, np.zeros_like(t)) == []

    def test_sign_changes(self):
        t = np.linspace(0.0, 10.0, 1001)
        changes = sign_changes(t, np.cos(t))
        assert [d for _, _, d in changes] == [-1, 1, -1]
        left, right, _ = changes[0]
        assert left <= math.pi / 2 <= right

    def test_sign_changes_floor(self):
        """Values at or below the floor count as nonpositive."""
        t = np.arange(6.0)
        values = [1.0, -1.0, 1e-17, -1e-17, 2e-16, -1e-16]
        assert [d for _, _, d in sign_changes(t, values)] == [-1, 1, -1, 1, -1]
        assert sign_changes(t, values, floor=1e-15) == [(0.0, 1.0, -1)]

    def test_refine_root(self):
        assert refine_root(math.cos, 1.0, 2.0) == pytest.approx(math.pi / 2, abs=1e-12)
        assert refine_root(lambda x: x - 1.0, 1.0, 2.0) == 1.0


class TestHelpers:
    """Tests for small shared helpers."""

    def test_unit_vector(self):
        assert np.allclose(unit_vector(0.0, 1.3), [0.0, 0.0, 1.0])
        assert np.linalg.norm(unit_vector(1.1, 2.2)) == pytest.approx(1.0)

    def test_complex_encoding(self):
        assert complex_to_dict(1.5 - 2j) == {"re": 1.5, "im": -2.0}
        assert complex_from_dict({"re": 0.25}) == 0.25 + 0j
        assert complex_from_dict(3) == 3 + 0j

    def test_compute_hash_is_stable(self):
        assert compute_hash({"b": 1, "a": 2}) == compute_hash({"a": 2, "b": 1})
        assert compute_hash({"a": 1}) != compute_hash({"a": 2})
