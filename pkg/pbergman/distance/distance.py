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
"""The projective distance on P(A^p) and the p-Skwarczynski distance."""

import dataclasses
import math
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from absl import logging

from pbergman.distance.phase import (DEFAULT_GRID_SIZE,
                                     DEFAULT_PHASE_TOLERANCE, minimize_phase)
from pbergman.errors import ParameterError
from pbergman.function_space.function import (CoefFunction, Discretization,
                                              _check_p)
from pbergman.geometry.domain import DomainKind, Point
from pbergman.geometry.quadrature import QuadratureRule
from pbergman.minimizer.closed_form import disk_bergman_kernel
from pbergman.minimizer.solver import (solve_minimizer,
                                       solve_minimizer_by_product_rule)
from pbergman.minimizer.spec import MinimizerSolution, SolverOptions


@dataclasses.dataclass(frozen=True, eq=False)
class DistanceResult:
  """rho_p(z, w) together with the optimal phase.

  Attributes:
    rho: The distance.
    theta_opt: Phase t in [0, 2pi) minimizing |e^{it} u - v|_p.
    z: First point.
    w: Second point.
    p: Exponent.
    phase_grid_size: Seed grid size of the phase search.
    refinement_iterations: Golden-section iterations spent.
    solver_residual: Largest gradient residual of the two minimizer solves.
  """
  rho: float
  theta_opt: float
  z: np.ndarray
  w: np.ndarray
  p: float
  phase_grid_size: int = DEFAULT_GRID_SIZE
  refinement_iterations: int = 0
  solver_residual: float = 0.0


def _unit_values(values: np.ndarray, weights: np.ndarray, p: float):
  norm = float(np.dot(weights, np.abs(values)**p)**(1.0 / p))
  if norm == 0.0:
    raise ParameterError('The zero function has no projective class.')
  return values / norm


def phase_distance(u: np.ndarray,
                   v: np.ndarray,
                   weights: np.ndarray,
                   p: float,
                   grid_size: int = DEFAULT_GRID_SIZE,
                   tol: float = DEFAULT_PHASE_TOLERANCE):
  """min_t |e^{it} u - v|_p for node values of unit-norm u and v."""
  def objective(t):
    diff = np.exp(1j * t) * u - v
    return float(np.dot(weights, np.abs(diff)**p)**(1.0 / p))

  return minimize_phase(objective, grid_size, tol)


def projective_distance(f: CoefFunction,
                        g: CoefFunction,
                        rule: QuadratureRule,
                        p: float,
                        grid_size: int = DEFAULT_GRID_SIZE,
                        tol: float = DEFAULT_PHASE_TOLERANCE
                        ) -> Tuple[float, float]:
  """d([f], [g]) = min_t |e^{it} f/|f| - g/|g||_p.

  Args:
    f: Nonzero function.
    g: Nonzero function on the same domain.
    rule: Quadrature rule defining the norm.
    p: Exponent, at least 1.
    grid_size: Phase seed grid.
    tol: Phase tolerance.

  Returns:
    (distance, theta) with theta the minimizing phase in [0, 2pi).

  Raises:
    ParameterError: if either function vanishes.
  """
  p = _check_p(p)
  u = _unit_values(f.values_on(rule), rule.weights, p)
  v = _unit_values(g.values_on(rule), rule.weights, p)
  result = phase_distance(u, v, rule.weights, p, grid_size, tol)
  return result.value, result.theta


def _solve(disc: Discretization, p: float, z: Point,
           opts: Optional[SolverOptions],
           use_product_rule: bool) -> MinimizerSolution:
  if use_product_rule and disc.domain.kind == DomainKind.PRODUCT:
    return solve_minimizer_by_product_rule(disc, p, z, opts)
  return solve_minimizer(disc, p, z, opts)


def unit_minimizer_values(disc: Discretization, sol: MinimizerSolution):
  """Node values of m_p(., z0) / m_p(z0), a unit vector in L^p."""
  return sol.minimizer.values_on(disc.rule) / sol.m_value


def skw_distance(disc: Discretization,
                 p: float,
                 z: Point,
                 w: Point,
                 opts: Optional[SolverOptions] = None,
                 use_product_rule: bool = True) -> DistanceResult:
  """rho_p(z, w): projective distance of [m_p(., z)] and [m_p(., w)].

  On product domains the minimizers come from the product rule unless
  `use_product_rule` is False, in which case they are solved directly.

  Raises:
    ConvergenceError: propagated from the minimizer solves.
  """
  p = _check_p(p)
  z = disc.domain.check_point(z)
  w = disc.domain.check_point(w)
  first = _solve(disc, p, z, opts, use_product_rule)
  second = first if np.array_equal(z, w) else _solve(disc, p, w, opts,
                                                     use_product_rule)
  return distance_from_solutions(disc, p, first, second)


def distance_from_solutions(disc: Discretization, p: float,
                             first: MinimizerSolution,
                             second: MinimizerSolution) -> DistanceResult:
  """Distance of two precomputed minimizer solutions."""
  u = unit_minimizer_values(disc, first)
  v = u if second is first else unit_minimizer_values(disc, second)
  phase = phase_distance(u, v, disc.rule.weights, p)
  return DistanceResult(rho=phase.value,
                        theta_opt=phase.theta,
                        z=first.z0,
                        w=second.z0,
                        p=p,
                        refinement_iterations=phase.iterations,
                        solver_residual=max(first.gradient_residual,
                                            second.gradient_residual))


def skw_distance_p2_oracle(z: complex, w: complex) -> float:
  """rho_2(z, w) on the disk from the Bergman kernel.

  rho_2^2 = 2 (1 - |K_2(z, w)| / sqrt(K_2(z, z) K_2(w, w))).
  """
  z, w = complex(z), complex(w)
  if abs(z) >= 1.0 or abs(w) >= 1.0:
    raise ParameterError(f'Points {z}, {w} must lie in the unit disk.')
  ratio = abs(disk_bergman_kernel(z, w)) / math.sqrt(
      abs(disk_bergman_kernel(z, z)) * abs(disk_bergman_kernel(w, w)))
  return math.sqrt(max(0.0, 2.0 * (1.0 - ratio)))


@dataclasses.dataclass(frozen=True, eq=False)
class DistanceMatrix:
  """Pairwise distances of a point list at one exponent."""
  points: List[np.ndarray]
  p: float
  rho: np.ndarray
  theta: np.ndarray

  def records(self) -> Iterator[Tuple[np.ndarray, np.ndarray, float, float]]:
    """(z, w, rho, theta_opt) for every ordered pair, row-major."""
    for i, z in enumerate(self.points):
      for j, w in enumerate(self.points):
        yield z, w, float(self.rho[i, j]), float(self.theta[i, j])


def distance_matrix(disc: Discretization,
                    p: float,
                    points: Sequence[Point],
                    opts: Optional[SolverOptions] = None,
                    use_product_rule: bool = True) -> DistanceMatrix:
  """All pairwise rho_p, one minimizer solve per point.

  The upper triangle is computed; the lower one is its mirror with
  theta(w, z) = -theta(z, w) mod 2pi, and the diagonal is zero.
  """
  p = _check_p(p)
  pts = [disc.domain.check_point(z) for z in points]
  solutions = [_solve(disc, p, z, opts, use_product_rule) for z in pts]
  return matrix_from_solutions(disc, p, pts, solutions)


def matrix_from_solutions(
    disc: Discretization, p: float, points: Sequence[np.ndarray],
    solutions: Sequence[Optional[MinimizerSolution]]) -> DistanceMatrix:
  """Pairwise distances of precomputed minimizers.

  A missing solution (None) makes its row and column NaN, apart from the
  zero diagonal.
  """
  n = len(points)
  values: Dict[int, np.ndarray] = {
      i: unit_minimizer_values(disc, sol)
      for i, sol in enumerate(solutions) if sol is not None
  }
  rho = np.zeros((n, n))
  theta = np.zeros((n, n))
  for i in range(n):
    for j in range(i + 1, n):
      if i not in values or j not in values:
        rho[i, j] = rho[j, i] = theta[i, j] = theta[j, i] = math.nan
        continue
      phase = phase_distance(values[i], values[j], disc.rule.weights, p)
      rho[i, j] = rho[j, i] = phase.value
      theta[i, j] = phase.theta
      theta[j, i] = np.mod(-phase.theta, 2 * math.pi) if phase.theta else 0.0
  logging.info('Computed %d x %d distance matrix at p=%g.', n, n, p)
  return DistanceMatrix(points=list(points), p=p, rho=rho, theta=theta)
