# Copyright 2026 The pbergman Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ==============================================================================
"""Hoelder growth, boundary behaviour and continuity in p."""

import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from absl import logging

from pbergman.errors import ParameterError
from pbergman.function_space.function import Discretization
from pbergman.minimizer.closed_form import (disk_closed_form,
                                            disk_closed_form_mass,
                                            disk_kernel_diag)
from pbergman.minimizer.spec import SolverOptions
from pbergman.verify.inequalities import cache_for, params_for
from pbergman.verify.oracles import MASS_TOLERANCE
from pbergman.verify.report import (VerificationReport, equality_report,
                                    make_report)
from pbergman.verify.solutions import SolutionCache

HOLDER_SCALES = (1e-2, 5e-3, 2.5e-3)
BOUNDARY_THRESHOLD = 1e-2
# Terms up to this index are near the interior and reported only.
BOUNDARY_BURN_IN = 3
CONTINUITY_TOLERANCE = 0.05
MONOTONE_SLACK = 1e-9


def holder_exponent(p: float) -> float:
  """1/p for p > 2 and 1/2 for 1 < p <= 2."""
  if not p > 1.0:
    raise ParameterError(f'Hoelder continuity is claimed for p > 1, got {p}.')
  return 1.0 / p if p > 2.0 else 0.5


def check_holder(disc: Discretization,
                 p: float,
                 z0: complex,
                 radius: float,
                 n_pairs: int,
                 rng: np.random.Generator,
                 scales: Sequence[float] = HOLDER_SCALES,
                 opts: Optional[SolverOptions] = None,
                 cache: Optional[SolutionCache] = None) -> VerificationReport:
  """rho_p(z, w) / |z - w|^alpha stays bounded as the separation shrinks.

  For every separation scale delta the largest ratio over `n_pairs` pairs in
  the disk B(z0, radius) is recorded. The ratio bound may grow at most by
  the factor delta_prev / delta between consecutive scales, i.e. at most 2x
  per halving.

  Returns:
    One report: largest growth factor against the allowed one.
  """
  alpha = holder_exponent(p)
  cache = cache_for(disc, opts, cache)
  z0 = complex(z0)
  scales = sorted((float(s) for s in scales), reverse=True)
  if len(scales) < 2 or scales[-1] <= 0.0:
    raise ParameterError(f'Need at least two positive scales, got {scales}.')
  rim = z0 + radius * np.exp(2j * np.pi * np.arange(16) / 16)
  if radius <= scales[0] or not all(disc.domain.contains(x) for x in rim):
    raise ParameterError(
        f'Ball B({z0}, {radius}) must lie inside the {disc.domain.describe()}.')
  bounds = []
  for delta in scales:
    worst = 0.0
    for _ in range(n_pairs):
      r = (radius - delta) * math.sqrt(rng.uniform())
      z = z0 + r * np.exp(2j * np.pi * rng.uniform())
      w = z + delta * np.exp(2j * np.pi * rng.uniform())
      worst = max(worst, cache.distance(p, z, w).rho / delta**alpha)
    bounds.append(worst)
    logging.debug('Hoelder ratio at scale %g: %g.', delta, worst)
  growth = max(b / a if a > 0 else math.inf for a, b in zip(bounds, bounds[1:]))
  allowed = min(a / b for a, b in zip(scales, scales[1:]))
  params = params_for(p, disc, z0=z0)
  params.update(radius=float(radius),
                alpha=alpha,
                scales=scales,
                ratio_bounds=[float(b) for b in bounds])
  return make_report('holder', params, growth, allowed, 0.0)


def _ratio_sequences(p: float, z: complex, ws: np.ndarray,
                     f: Callable[[complex], complex]):
  minimizer_ratio = [
      abs(disk_closed_form(z, w, p)) / disk_closed_form_mass(w, p) for w in ws
  ]
  function_ratio = [abs(f(w))**p / disk_kernel_diag(w, p) for w in ws]
  return minimizer_ratio, function_ratio


def boundary_diagnostics(p: float,
                         z: complex = 0.0,
                         k_max: int = 8,
                         f: Optional[Callable[[complex], complex]] = None,
                         disc: Optional[Discretization] = None,
                         cross_check_k: int = 1,
                         threshold: float = BOUNDARY_THRESHOLD,
                         opts: Optional[SolverOptions] = None,
                         cache: Optional[SolutionCache] = None
                         ) -> List[VerificationReport]:
  """Ratio sequences along w_k = 1 - 2^(-k), k = 0..k_max, on the disk.

  The sequences are |m_p(z, w_k)| / m_p(w_k) and |f(w_k)|^p / K_p(w_k), with
  f defaulting to the unit-norm constant pi^(-1/p). Beyond the burn-in both
  must decrease strictly and end below `threshold`. With a discretization
  the closed-form masses are cross-checked by the solver for k <= cross_check_k.
  """
  if k_max <= BOUNDARY_BURN_IN:
    raise ParameterError(
        f'k_max must exceed {BOUNDARY_BURN_IN}, got {k_max}.')
  if f is None:
    constant = math.pi**(-1.0 / p)

    def f(_):
      return constant

  z = complex(z)
  ks = np.arange(k_max + 1)
  ws = 1.0 - 2.0**-ks.astype(float)
  sequences = dict(
      zip(('boundary-minimizer-ratio', 'boundary-function-ratio'),
          _ratio_sequences(p, z, ws, f)))
  reports = []
  for name, ratios in sequences.items():
    for k in range(1, k_max + 1):
      params = {'p': float(p), 'z': [z.real, z.imag], 'k': int(k)}
      reports.append(
          make_report(name,
                      params,
                      ratios[k],
                      ratios[k - 1],
                      0.0,
                      degenerate=k <= BOUNDARY_BURN_IN))
    reports.append(
        make_report(f'{name}-tail', {
            'p': float(p),
            'k': int(k_max)
        }, ratios[-1], threshold, 0.0))
  if disc is not None:
    cache = cache_for(disc, opts, cache)
    for k in range(min(cross_check_k, k_max) + 1):
      w = float(ws[k])
      reports.append(
          equality_report('boundary-solver', params_for(p, disc, w=w),
                          cache.solution(p, w).m_value,
                          disk_closed_form_mass(w, p),
                          MASS_TOLERANCE,
                          relative=True))
  return reports


def sweep_distances(
    cache: SolutionCache, z, w, p_center: float,
    q_grid: Sequence[float]) -> List[Tuple[float, float, float]]:
  """(q, rho_q(z, w), |rho_q - rho_p|) for every q of the grid."""
  for q in q_grid:
    if q < 1.0:
      raise ParameterError(f'Every q must be at least 1, got {q}.')
  center = cache.distance(p_center, z, w).rho
  rows = []
  for q in q_grid:
    rho = cache.distance(q, z, w).rho
    rows.append((float(q), rho, abs(rho - center)))
  return rows


def p_continuity_sweep(disc: Discretization,
                       z,
                       w,
                       p_center: float,
                       q_grid: Sequence[float],
                       tolerance: float = CONTINUITY_TOLERANCE,
                       opts: Optional[SolverOptions] = None,
                       cache: Optional[SolutionCache] = None
                       ) -> List[VerificationReport]:
  """rho_q(z, w) -> rho_p(z, w) from both sides as q -> p.

  On each side of p_center the gaps must shrink with |q - p_center|, and the
  gap at the closest q must not exceed `tolerance`.
  """
  cache = cache_for(disc, opts, cache)
  rows = sweep_distances(cache, z, w, p_center, q_grid)
  base = params_for(p_center, disc, z=z, w=w)
  reports = []
  closest = []
  for side in (-1.0, 1.0):
    ordered = sorted((r for r in rows if side * (r[0] - p_center) > 0),
                     key=lambda r: -abs(r[0] - p_center))
    for far, near in zip(ordered, ordered[1:]):
      reports.append(
          make_report('continuity-monotone',
                      dict(base, q_far=far[0], q_near=near[0]), near[2],
                      far[2], MONOTONE_SLACK))
    if ordered:
      closest.append(ordered[-1])
  for q, _, gap in rows:
    if q == p_center:
      reports.append(
          make_report('continuity-center', dict(base, q=q), gap, 0.0, 1e-12))
  if closest:
    reports.append(
        make_report('continuity-gap',
                    dict(base, q=[r[0] for r in closest]),
                    max(r[2] for r in closest), tolerance, 0.0))
  return reports
