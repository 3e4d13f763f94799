"""
Experiment Harness
Seeded experiments tabulated as pandas DataFrames: decay of the
approximate-root defect with n, and repair distance against corruption level
for preset systems with planted solutions.
"""

import logging
import math
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from src.equations import defect
from src.perm_core import random_permutation
from src.roots import approx_root, chain_bound
from src.stability import ExhaustedError, bad_set_bound, corrupt_tuple, repair_auto
from src.templates.presets import PresetTemplates, planted_solution

logger = logging.getLogger(__name__)

ROOT_COLUMNS = ['param', 'p', 'n', 'seed', 'samples', 'bound_exact', 'within_bound',
                'mean', 'max', 'bound']
STABILITY_COLUMNS = ['param', 'preset', 'n', 'eps', 'seed', 'samples', 'exhausted',
                     'mean_defect', 'mean_radius', 'within_bound', 'mean', 'max', 'bound']


def _point_rngs(seed: int, points: int) -> List[np.random.Generator]:
    """One independent generator per grid point, fixed by the seed alone."""
    children = np.random.SeedSequence(seed).spawn(points)
    return [np.random.default_rng(child) for child in children]


def _require_grid(values: Sequence, name: str) -> None:
    if not values:
        raise ValueError(f"Parameter grid {name} is empty")


def roots_experiment(p: int, n_values: Sequence[int], samples: int, seed: int) -> pd.DataFrame:
    """
    Approximate p-th roots of uniformly random permutations.

    Args:
        p: Exponent (composite values use the chained bound)
        n_values: Degrees, one row each, in the given order
        samples: Random permutations per degree
        seed: Master seed

    Returns:
        DataFrame with ROOT_COLUMNS
    """
    _require_grid(n_values, 'n')
    if samples < 1:
        raise ValueError(f"Sample count must be positive, got {samples}")
    rows = []
    for n, rng in zip(n_values, _point_rngs(seed, len(n_values))):
        defects: List[Fraction] = []
        within = True
        for _ in range(samples):
            result = approx_root(random_permutation(n, rng), p)
            defects.append(result.defect)
            within = within and result.within_bound()
        bound = chain_bound(p, n)
        if not within:
            logger.warning(f"Root defect above the bound at p={p}, n={n}")
        rows.append({
            'param': f"n={n}",
            'p': p,
            'n': n,
            'seed': seed,
            'samples': samples,
            'bound_exact': str(bound),
            'within_bound': within,
            'mean': float(sum(defects, Fraction(0)) / samples),
            'max': float(max(defects)),
            'bound': float(bound),
        })
        logger.info(f"roots p={p} n={n}: max defect {max(defects)}")
    return pd.DataFrame(rows, columns=ROOT_COLUMNS)


def stability_experiment(preset: str, n: int, eps_values: Sequence[float], samples: int,
                         seed: int, m_max: int = 6) -> pd.DataFrame:
    """
    Plant an exact solution, corrupt it and repair it.

    Each trial changes ceil(eps * n) images of the planted solution and
    runs repair_auto. The distance columns report the repaired tuple's max
    distance to the corrupted input; `bound` is the largest
    bad_set_bound(measured defect)/n over the trials.

    Raises:
        UnknownPresetError: For an unregistered preset
    """
    _require_grid(eps_values, 'eps')
    if samples < 1:
        raise ValueError(f"Sample count must be positive, got {samples}")
    system = PresetTemplates.get_system(preset)
    planted = planted_solution(preset, n)

    rows = []
    for eps, rng in zip(eps_values, _point_rngs(seed, len(eps_values))):
        changes = math.ceil(Fraction(str(eps)) * n)
        distances: List[Fraction] = []
        defects: List[Fraction] = []
        radii: List[int] = []
        bounds: List[Fraction] = []
        exhausted = 0
        within = True
        for _ in range(samples):
            corrupted = corrupt_tuple(planted, changes, rng)
            try:
                result = repair_auto(system, corrupted, m_max)
            except ExhaustedError:
                exhausted += 1
                defects.append(defect(system, corrupted))
                continue
            bound = bad_set_bound(result.input_defect, system.k, system.r, result.radius_used, n) / n
            within = within and result.max_distance <= Fraction(result.bad_count, n) <= bound
            distances.append(result.max_distance)
            defects.append(result.input_defect)
            radii.append(result.radius_used)
            bounds.append(bound)
        if exhausted:
            logger.warning(f"{exhausted}/{samples} trials exhausted at eps={eps}")
        rows.append({
            'param': f"eps={eps}",
            'preset': preset,
            'n': n,
            'eps': eps,
            'seed': seed,
            'samples': samples,
            'exhausted': exhausted,
            'mean_defect': float(sum(defects, Fraction(0)) / len(defects)),
            'mean_radius': float(np.mean(radii)) if radii else float('nan'),
            'within_bound': within,
            'mean': float(sum(distances, Fraction(0)) / len(distances)) if distances else float('nan'),
            'max': float(max(distances)) if distances else float('nan'),
            'bound': float(max(bounds)) if bounds else float('nan'),
        })
        logger.info(f"stability {preset} n={n} eps={eps}: exhausted {exhausted}/{samples}")
    return pd.DataFrame(rows, columns=STABILITY_COLUMNS)


def write_csv(frame: pd.DataFrame, out: Optional[str] = None) -> None:
    """CSV with a header row and Unix newlines, to a file or standard output."""
    if out:
        frame.to_csv(out, index=False, lineterminator="\n")
        logger.info(f"Wrote {len(frame)} rows to {out}")
    else:
        frame.to_csv(sys.stdout, index=False, lineterminator="\n")
