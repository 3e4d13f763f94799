"""
Tests for finite group closure, regular actions and the preset systems.
"""

import pytest

from conftest import cyc
from src.equations import is_exact_solution
from src.finite_groups import (
    cyclic_group,
    exponent_three_group,
    group_closure,
    regular_action,
    symmetric_group_s3,
)
from src.perm_core import compose, identity, is_identity, power
from src.templates.presets import PresetTemplates, UnknownPresetError, planted_solution


class TestGroupClosure:
    @pytest.mark.parametrize("m", [1, 2, 3, 5, 8])
    def test_cyclic_order(self, m):
        assert cyclic_group(m).order == m

    def test_s3(self):
        group = symmetric_group_s3()
        assert group.order == 6
        assert is_identity(group.elements[0])

    def test_exponent_three(self):
        group = exponent_three_group()
        assert group.order == 27
        assert all(is_identity(power(g, 3)) for g in group.elements)

    def test_table_matches_composition(self):
        group = symmetric_group_s3()
        for a, x in enumerate(group.elements):
            for b, y in enumerate(group.elements):
                assert group.elements[group.mult(a, b)] == compose(x, y)

    def test_table_has_inverses(self):
        group = exponent_three_group()
        for a in range(group.order):
            assert any(group.mult(a, b) == 0 for b in range(group.order))

    def test_cyclic_elements_are_generator_powers(self):
        group = cyclic_group(6)
        generator = group.elements[group.generators[0]]
        assert generator == cyc(6, (1, 2, 3, 4, 5, 6))
        for k, element in enumerate(group.elements):
            assert element == power(generator, k)

    def test_s3_generators_are_involutions(self):
        group = symmetric_group_s3()
        assert [group.elements[i] for i in group.generators] == [cyc(3, (1, 2)), cyc(3, (2, 3))]

    def test_closure_keeps_generator_indices(self):
        gens = [cyc(4, (1, 2)), cyc(4, (1, 2, 3, 4))]
        group = group_closure(gens, name="S4")
        assert group.order == 24
        assert [group.elements[i] for i in group.generators] == gens
        assert is_identity(group.elements[0])

    def test_cap(self):
        with pytest.raises(ValueError):
            group_closure([cyc(3, (1, 2)), cyc(3, (2, 3))], max_order=4)

    def test_mixed_degrees(self):
        with pytest.raises(ValueError):
            group_closure([cyc(3, (1, 2)), cyc(4, (1, 2))])

    def test_needs_generators(self):
        with pytest.raises(ValueError):
            group_closure([])


class TestRegularAction:
    def test_is_fixed_point_free(self):
        group = symmetric_group_s3()
        for f in regular_action(group, range(1, group.order), copies=2):
            assert f.n == 12
            assert all(f(a) != a for a in range(1, f.n + 1))

    def test_is_homomorphism(self):
        group = cyclic_group(5)
        perms = regular_action(group, range(group.order))
        for a in range(group.order):
            for b in range(group.order):
                assert compose(perms[a], perms[b]) == perms[group.mult(a, b)]

    def test_identity_element(self):
        group = cyclic_group(3)
        assert regular_action(group, [0], copies=4)[0] == identity(12)

    def test_copies_must_be_positive(self):
        with pytest.raises(ValueError):
            regular_action(cyclic_group(2), [1], copies=0)


class TestPresets:
    @pytest.mark.parametrize("name", PresetTemplates.names())
    def test_planted_solution_is_exact(self, name):
        group = PresetTemplates.get_group(name)
        t = planted_solution(name, 2 * group.order)
        assert is_exact_solution(PresetTemplates.get_system(name), t)

    def test_s3_system_shape(self):
        system = PresetTemplates.get_system('s3')
        assert (system.k, system.r) == (2, 3)

    def test_unknown_preset(self):
        with pytest.raises(UnknownPresetError):
            PresetTemplates.get_preset('free-group')

    def test_degree_must_be_multiple_of_order(self):
        with pytest.raises(ValueError):
            planted_solution('s3', 10)
