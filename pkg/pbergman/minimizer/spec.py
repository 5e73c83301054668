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
"""Solver options and solution records for the minimizer problem."""

import dataclasses
import enum
from typing import Any, Dict, List

import numpy as np

from pbergman.errors import ParameterError
from pbergman.function_space.function import CoefFunction


class SolverMethod(str, enum.Enum):
  """Determines which descent method runs on the reduced problem."""
  NEWTON = 'newton'
  BFGS = 'bfgs'


@dataclasses.dataclass(frozen=True)
class SolverOptions:
  """Options of the smoothed p-norm solver.

  Attributes:
    max_iterations: Budget of descent iterations over all smoothing stages.
    gradient_tolerance: Stop a stage once the reduced gradient is below this,
      relative to max(1, objective).
    stall_tolerance: Stop a stage once an accepted step lowers the objective
      by less than this, relative to max(1, objective), or moves the iterate
      by less than this relative to max(1, |x|).
    initial_smoothing: First smoothing parameter eps.
    smoothing_decay: eps is multiplied by this between stages.
    final_smoothing: Last eps of the schedule.
    p1_final_smoothing: Floor of the schedule when p == 1.
    armijo: Sufficient-decrease constant of the backtracking line search.
    backtrack: Step shrink factor of the line search.
    max_backtracks: Line-search trials before a stage is declared stalled.
    method: Newton with the exact Hessian, or SciPy BFGS.
    precondition: Work in the quadrature-orthonormalized basis.
  """
  max_iterations: int = 500
  gradient_tolerance: float = 1e-8
  stall_tolerance: float = 1e-13
  initial_smoothing: float = 1e-2
  smoothing_decay: float = 0.1
  final_smoothing: float = 1e-10
  p1_final_smoothing: float = 1e-6
  armijo: float = 1e-4
  backtrack: float = 0.5
  max_backtracks: int = 60
  method: SolverMethod = SolverMethod.NEWTON
  precondition: bool = True

  def __post_init__(self):
    positive = ('gradient_tolerance', 'stall_tolerance', 'initial_smoothing',
                'final_smoothing', 'p1_final_smoothing', 'armijo')
    for name in positive:
      if not getattr(self, name) > 0:
        raise ParameterError(f'{name} must be positive, got '
                             f'{getattr(self, name)}.')
    for name in ('smoothing_decay', 'backtrack'):
      if not 0.0 < getattr(self, name) < 1.0:
        raise ParameterError(f'{name} must lie in (0, 1), got '
                             f'{getattr(self, name)}.')
    if self.max_iterations < 1 or self.max_backtracks < 1:
      raise ParameterError('Iteration budgets must be positive.')
    object.__setattr__(self, 'method', SolverMethod(self.method))

  def schedule(self, p: float) -> List[float]:
    """Smoothing parameters, annealed geometrically down to the floor."""
    floor = self.final_smoothing
    if p == 1.0:
      floor = max(floor, self.p1_final_smoothing)
    eps = [self.initial_smoothing]
    while eps[-1] * self.smoothing_decay >= floor * (1 - 1e-12):
      eps.append(eps[-1] * self.smoothing_decay)
    return eps

  def to_dict(self) -> Dict[str, Any]:
    data = dataclasses.asdict(self)
    data['method'] = self.method.value
    return data


@dataclasses.dataclass(frozen=True, eq=False)
class NormSolution:
  """Result of a constrained smoothed p-norm minimization."""
  coefficients: np.ndarray
  value: float
  iterations: int
  gradient_residual: float
  smoothing_final: float


@dataclasses.dataclass(frozen=True, eq=False)
class MinimizerSolution:
  """m_p(z0) and the minimizer function m_p(., z0).

  Attributes:
    z0: The point, as a complex array of length dimension.
    p: Exponent.
    m_value: m_p(z0), the minimal p-norm among f with f(z0) = 1.
    minimizer: The minimizer m_p(., z0).
    iterations: Descent iterations spent.
    gradient_residual: Reduced gradient norm at the returned iterate.
    smoothing_final: Last smoothing parameter of the schedule.
    smoothed: True when the objective was never fully annealed (p == 1).
  """
  z0: np.ndarray
  p: float
  m_value: float
  minimizer: CoefFunction
  iterations: int
  gradient_residual: float
  smoothing_final: float
  smoothed: bool = False

  @property
  def kernel(self) -> float:
    """K_p(z0) = m_p(z0)^(-p)."""
    return self.m_value**(-self.p)

  def kernel_offdiag(self, points) -> np.ndarray:
    """K_p(zeta, z0) = K_p(z0) m_p(zeta, z0) at each point."""
    return self.kernel * self.minimizer.evaluate(points)

  def to_json(self) -> Dict[str, Any]:
    return {
        'z0': [[float(c.real), float(c.imag)] for c in self.z0],
        'p': self.p,
        'm_value': self.m_value,
        'coefficients': self.minimizer.to_json(),
        'iterations': self.iterations,
        'gradient_residual': self.gradient_residual,
        'smoothing_final': self.smoothing_final,
        'smoothed': self.smoothed,
    }
