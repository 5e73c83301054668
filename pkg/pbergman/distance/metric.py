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
"""The p-Bergman metric B_p(z0; X)."""

import dataclasses
from typing import Optional, Sequence

import numpy as np

from pbergman.errors import ParameterError
from pbergman.function_space.function import Discretization, _check_p
from pbergman.geometry.domain import Point
from pbergman.minimizer.solver import minimize_norm, solve_minimizer
from pbergman.minimizer.spec import SolverOptions


@dataclasses.dataclass(frozen=True, eq=False)
class MetricResult:
  """B_p(z0; X) and the auxiliary minimum it is computed from.

  Attributes:
    z0: Base point.
    direction: Tangent vector X.
    p: Exponent.
    b_value: B_p(z0; X).
    dual_m_value: min{|f|_p : f(z0) = 0, Xf(z0) = 1}.
    m_value: m_p(z0).
  """
  z0: np.ndarray
  direction: np.ndarray
  p: float
  b_value: float
  dual_m_value: float
  m_value: float


def bergman_metric(disc: Discretization,
                   p: float,
                   z0: Point,
                   direction: Sequence[complex],
                   opts: Optional[SolverOptions] = None) -> MetricResult:
  """Computes B_p(z0; X) = K_p(z0)^(-1/p) sup{|Xf(z0)| : f(z0)=0, |f|_p=1}.

  The supremum of |Xf(z0)| over the unit sphere of {f(z0) = 0} is the
  reciprocal of mu = min{|f|_p : f(z0) = 0, Xf(z0) = 1}, so
  B_p(z0; X) = m_p(z0) / mu.

  Args:
    disc: Discretization of the domain.
    p: Exponent, at least 1.
    z0: Base point inside the domain.
    direction: X, one complex component per coordinate.
    opts: Solver options.

  Returns:
    A MetricResult.

  Raises:
    ParameterError: if X vanishes or z0 lies outside the domain.
    RankError: if no basis function vanishing at z0 has a nonzero
      derivative along X.
  """
  p = _check_p(p)
  z0 = disc.domain.check_point(z0)
  x = np.atleast_1d(np.asarray(direction, dtype=complex))
  if x.shape != (disc.domain.dimension, ):
    raise ParameterError(
        f'Direction needs {disc.domain.dimension} components, got {direction}.')
  if not np.any(x):
    raise ParameterError('The direction X must be nonzero.')
  point = z0[None, :]
  rows = np.vstack(
      [disc.basis.rows(point),
       disc.basis.derivative_rows(point, x)])
  dual = minimize_norm(disc, p, rows, np.array([0.0, 1.0]), opts)
  base = solve_minimizer(disc, p, z0, opts)
  return MetricResult(z0=z0,
                      direction=x,
                      p=p,
                      b_value=base.m_value / dual.value,
                      dual_m_value=dual.value,
                      m_value=base.m_value)
