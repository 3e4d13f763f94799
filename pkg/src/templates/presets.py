"""
Preset Systems
Relation systems of small finite groups, bundled with planted exact solutions
from the right-regular action of the group they present.
"""

import logging
from typing import Callable, Dict, List

from src.equations import EquationSystem, PermTuple, parse_system
from src.finite_groups import (
    FiniteGroup,
    cyclic_group,
    exponent_three_group,
    regular_action,
    symmetric_group_s3,
)

logger = logging.getLogger(__name__)


class UnknownPresetError(ValueError):
    """Raised for a preset name that is not registered."""


class PresetTemplates:
    """Registered presets: system text plus the finite group it presents."""

    PRESETS = {
        'cyclic-2': {
            'system': 'x1^2 = 1',
            'group': lambda: cyclic_group(2),
            'description': 'Z/2 as x^2 = 1',
        },
        'cyclic-3': {
            'system': 'x1^3 = 1',
            'group': lambda: cyclic_group(3),
            'description': 'Z/3 as x^3 = 1',
        },
        'cyclic-5': {
            'system': 'x1^5 = 1',
            'group': lambda: cyclic_group(5),
            'description': 'Z/5 as x^5 = 1',
        },
        's3': {
            'system': 'x1^2 = 1\nx2^2 = 1\n(x1 x2)^3 = 1',
            'group': symmetric_group_s3,
            'description': 'S3 as two involutions whose product has order 3',
        },
        'triangle3': {
            'system': 'x1^3 = 1\nx2^3 = 1\n(x1 x2)^3 = 1\n(x1^2 x2)^3 = 1',
            'group': exponent_three_group,
            'description': 'order-27 group of exponent 3 on two generators',
        },
    }

    @staticmethod
    def names() -> List[str]:
        return sorted(PresetTemplates.PRESETS)

    @staticmethod
    def get_preset(name: str) -> Dict:
        """
        Look up a preset by name.

        Raises:
            UnknownPresetError: If the name is not registered
        """
        if name not in PresetTemplates.PRESETS:
            raise UnknownPresetError(
                f"Unknown preset {name!r}; choose one of {', '.join(PresetTemplates.names())}"
            )
        return PresetTemplates.PRESETS[name]

    @staticmethod
    def get_system(name: str) -> EquationSystem:
        return parse_system(PresetTemplates.get_preset(name)['system'])

    @staticmethod
    def get_group(name: str) -> FiniteGroup:
        factory: Callable[[], FiniteGroup] = PresetTemplates.get_preset(name)['group']
        return factory()


def planted_solution(name: str, n: int) -> PermTuple:
    """
    Exact solution of a preset on n points.

    The group generators act by right multiplication on n / |G| disjoint
    copies of the group.

    Args:
        name: Preset name
        n: Degree, a positive multiple of the group order

    Returns:
        PermTuple solving the preset system exactly
    """
    group = PresetTemplates.get_group(name)
    if n < 1 or n % group.order:
        raise ValueError(f"Preset {name} needs n to be a multiple of {group.order}, got {n}")
    perms = regular_action(group, group.generators, n // group.order)
    logger.debug(f"Planted {name} solution on {n} points ({n // group.order} copies)")
    return PermTuple(tuple(perms))
