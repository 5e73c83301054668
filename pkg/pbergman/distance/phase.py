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
"""Global minimization of a 2pi-periodic function of one phase."""

import dataclasses
import math
from typing import Callable

import numpy as np

from pbergman.errors import ParameterError

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2

DEFAULT_GRID_SIZE = 64
DEFAULT_PHASE_TOLERANCE = 1e-10


@dataclasses.dataclass(frozen=True)
class PhaseResult:
  theta: float
  value: float
  iterations: int


def golden_section(objective: Callable[[float], float], a: float, b: float,
                   tol: float):
  """Golden-section search on [a, b] for a unimodal objective.

  Returns:
    (t, objective(t), iterations) at the midpoint of the final bracket, whose
    width is at most `tol`.
  """
  a, b = min(a, b), max(a, b)
  h = b - a
  if h <= tol:
    t = 0.5 * (a + b)
    return t, objective(t), 0

  n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
  c = a + INV_PHI_SQUARE * h
  d = a + INV_PHI * h
  yc = objective(c)
  yd = objective(d)
  for _ in range(n - 1):
    if yc < yd:
      b, d, yd = d, c, yc
      h *= INV_PHI
      c = a + INV_PHI_SQUARE * h
      yc = objective(c)
    else:
      a, c, yc = c, d, yd
      h *= INV_PHI
      d = a + INV_PHI * h
      yd = objective(d)
  t = c if yc < yd else d
  return t, min(yc, yd), max(n - 1, 0)


def minimize_phase(objective: Callable[[float], float],
                   grid_size: int = DEFAULT_GRID_SIZE,
                   tol: float = DEFAULT_PHASE_TOLERANCE) -> PhaseResult:
  """Minimizes a 2pi-periodic objective over [0, 2pi).

  The objective is sampled on a uniform grid; the bracket around the best
  grid point is then refined by golden-section search to width `tol`. The
  grid point is kept unless refinement strictly improves on it.

  Args:
    objective: 2pi-periodic real function.
    grid_size: Number of seed points.
    tol: Final bracket width.

  Returns:
    PhaseResult with theta in [0, 2pi).
  """
  if grid_size < 3:
    raise ParameterError(
        f'Phase grid needs at least 3 points, got {grid_size}.')
  if not tol > 0:
    raise ParameterError(f'Phase tolerance must be positive, got {tol}.')
  step = 2 * math.pi / grid_size
  grid = step * np.arange(grid_size)
  values = np.array([objective(t) for t in grid])
  best = int(np.argmin(values))
  theta, value = float(grid[best]), float(values[best])
  t, refined, iterations = golden_section(objective, theta - step,
                                          theta + step, tol)
  if refined < value:
    theta, value = t, float(refined)
  theta = float(np.mod(theta, 2 * math.pi))
  if theta >= 2 * math.pi:
    theta = 0.0
  return PhaseResult(theta=theta,
                     value=value,
                     iterations=iterations)
