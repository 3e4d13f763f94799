"""
Tests for the (F, eps, alpha)-representation checker.
"""

from fractions import Fraction

import numpy as np
import pytest

from src.finite_groups import cyclic_group, symmetric_group_s3
from src.perm_core import Permutation, identity
from src.sofic import (
    PartialGroupTable,
    RepresentationError,
    chain_defect,
    check_representation,
    regular_representation,
    separation_lower_bound,
    table_from_group,
)

Z3_LABELS = ["0", "1", "2"]


def corrupted_z3(copies=10):
    """Z/3 acting regularly on 3 * copies points, with points 1 and 2 swapped in phi('1')."""
    table, phi = regular_representation(cyclic_group(3), Z3_LABELS, copies)
    images = list(phi["1"].images)
    images[0], images[1] = images[1], images[0]
    phi = dict(phi)
    phi["1"] = Permutation(tuple(images))
    return table, phi


class TestPartialGroupTable:
    def test_unit_must_be_element(self):
        with pytest.raises(RepresentationError):
            PartialGroupTable(elements=("a",), products={}, unit="e")

    def test_unknown_label_in_product(self):
        with pytest.raises(RepresentationError):
            PartialGroupTable(elements=("e", "a"), products={("a", "a"): "b"}, unit="e")

    def test_unit_law(self):
        with pytest.raises(RepresentationError):
            PartialGroupTable(elements=("e", "a"), products={("e", "a"): "e"}, unit="e")

    def test_from_group(self):
        table = table_from_group(symmetric_group_s3())
        assert len(table.elements) == 6
        assert len(table.products) == 36
        assert table.unit == "g0"


class TestCheckRepresentation:
    @pytest.mark.parametrize("m", [2, 3, 5])
    def test_regular_representation_is_exact(self, m):
        table, phi = regular_representation(cyclic_group(m))
        report = check_representation(table, phi)
        assert report.mult_defect == 0
        assert report.separation == 1
        assert report.unit_ok
        assert report.passes(Fraction(1, 100), Fraction(99, 100))

    def test_unit_not_identity(self):
        table, phi = regular_representation(cyclic_group(3), Z3_LABELS)
        phi = dict(phi)
        phi["0"] = phi["1"]
        report = check_representation(table, phi)
        assert not report.unit_ok
        assert not report.passes(1, 0)

    def test_single_point_corruption(self):
        table, phi = corrupted_z3()
        report = check_representation(table, phi)
        assert report.mult_defect == Fraction(3, 30)
        assert report.mult_defect <= 3 * Fraction(2, 30)
        assert report.worst_product == ("1", "1")
        assert report.separation == Fraction(29, 30)

    def test_missing_label(self):
        table, phi = regular_representation(cyclic_group(3), Z3_LABELS)
        del phi["2"]
        with pytest.raises(RepresentationError):
            check_representation(table, phi)

    def test_degree_mismatch(self):
        table, phi = regular_representation(cyclic_group(2), ["e", "a"])
        phi["a"] = identity(3)
        with pytest.raises(RepresentationError):
            check_representation(table, phi)

    def test_no_unit_skips_unit_check(self):
        table = PartialGroupTable(elements=("a",), products={("a", "a"): "a"})
        report = check_representation(table, {"a": identity(4)})
        assert report.unit_ok
        assert report.separation == 0


class TestChainDefect:
    def test_exact_representation(self):
        table, phi = regular_representation(cyclic_group(3), Z3_LABELS, 10)
        assert chain_defect(table, phi, ["1", "1", "1"]) == 0

    def test_corrupted_stays_within_word_bound(self):
        table, phi = corrupted_z3()
        letters = ["1", "1", "1"]
        eps = check_representation(table, phi).mult_defect
        value = chain_defect(table, phi, letters)
        assert value == Fraction(2, 30)
        assert value < (2 * len(letters) - 1) * eps

    @pytest.mark.parametrize("seed", range(5))
    def test_random_words_stay_within_bound(self, seed):
        table, phi = corrupted_z3(copies=10)
        eps = check_representation(table, phi).mult_defect
        rng = np.random.default_rng(seed)
        for _ in range(40):
            length = int(rng.integers(1, 13))
            letters = [Z3_LABELS[i] for i in rng.integers(0, 3, size=length)]
            value = chain_defect(table, phi, letters)
            assert value <= (length - 1) * eps
            assert value <= (2 * length - 1) * eps

    def test_prefix_must_be_in_table(self):
        table = PartialGroupTable(elements=("e", "a"), products={}, unit="e")
        with pytest.raises(RepresentationError):
            chain_defect(table, {"e": identity(2), "a": identity(2)}, ["a", "a"])


def test_separation_lower_bound():
    value = separation_lower_bound(Fraction(1, 2), Fraction(1, 100), 5, Fraction(1, 1000))
    assert value == Fraction(1, 2) - Fraction(5, 100) - Fraction(10, 1000)
