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
"""Variational solver for m_p(z0) and the minimizer m_p(., z0).

The discrete problem is

  minimize  F(c) = sum_q w_q (|f_c(node_q)|^2 + eps^2)^(p/2)
  subject to rows @ c = rhs,

a smooth convex problem for every eps > 0. The affine constraint is eliminated
(c = c0 + Z y with Z an orthonormal null-space basis) and the reduced problem
in the real and imaginary parts of y is solved by damped Newton steps with the
exact Hessian, or by BFGS. eps is annealed geometrically and every stage
starts from the previous stage's solution; the first stage starts from the
p = 2 solution, which is a linear least-squares problem.
"""

from typing import Optional, Tuple

import numpy as np
import scipy.linalg
import scipy.optimize
from absl import logging

from pbergman.errors import ConvergenceError, ParameterError, RankError
from pbergman.function_space.function import (CoefFunction, Discretization,
                                              _check_p)
from pbergman.geometry.domain import DomainKind, Point
from pbergman.minimizer.spec import (MinimizerSolution, NormSolution,
                                     SolverMethod, SolverOptions)


class _ReducedObjective:
  """F restricted to the affine slice, as a function of real parameters."""
  def __init__(self, f0: np.ndarray, reduced: np.ndarray, weights: np.ndarray,
               p: float):
    self._f0 = f0
    self._b = reduced
    self._w = weights
    self._p = p
    self.dim = reduced.shape[1]

  def values(self, x: np.ndarray) -> np.ndarray:
    return self._f0 + self._b @ (x[:self.dim] + 1j * x[self.dim:])

  def value(self, x: np.ndarray, eps: float) -> float:
    f = self.values(x)
    return float(
        np.dot(self._w, (f.real**2 + f.imag**2 + eps**2)**(self._p / 2)))

  def value_and_gradient(self, x: np.ndarray,
                         eps: float) -> Tuple[float, np.ndarray]:
    f = self.values(x)
    u = f.real**2 + f.imag**2 + eps**2
    p = self._p
    g = p * (self._b.conj().T @ (self._w * u**(p / 2 - 1) * f))
    return float(np.dot(self._w, u**(p / 2))), np.concatenate([g.real, g.imag])

  def hessian(self, x: np.ndarray, eps: float) -> np.ndarray:
    f = self.values(x)
    absf2 = f.real**2 + f.imag**2
    u = absf2 + eps**2
    p = self._p
    d1 = 0.5 * p * u**(p / 2 - 1)
    d2 = 0.5 * p * (0.5 * p - 1) * u**(p / 2 - 2)
    b = self._b
    m = b.conj().T @ ((self._w * (d1 + d2 * absf2))[:, None] * b)
    n = b.T @ ((self._w * d2 * np.conj(f)**2)[:, None] * b)
    return 2.0 * np.block([[m.real + n.real, -m.imag - n.imag],
                           [m.imag - n.imag, m.real - n.real]])

  def exact_norm(self, x: np.ndarray) -> float:
    f = self.values(x)
    return float(np.dot(self._w, np.abs(f)**self._p)**(1.0 / self._p))


def _newton_stage(objective: _ReducedObjective, x: np.ndarray, eps: float,
                  opts: SolverOptions, budget: int) -> Tuple[np.ndarray, int,
                                                             float]:
  iterations = 0
  while True:
    value, grad = objective.value_and_gradient(x, eps)
    gnorm = float(np.max(np.abs(grad))) if grad.size else 0.0
    if gnorm <= opts.gradient_tolerance * max(1.0, value):
      return x, iterations, gnorm
    if iterations >= budget:
      raise _BudgetExhausted(x, iterations, gnorm)
    hess = objective.hessian(x, eps)
    try:
      step = -scipy.linalg.solve(hess, grad, assume_a='pos')
    except (scipy.linalg.LinAlgError, ValueError):
      step = -np.linalg.lstsq(hess, grad, rcond=None)[0]
    slope = float(np.dot(grad, step))
    if not slope < 0.0:
      step, slope = -grad, -float(np.dot(grad, grad))
    t = 1.0
    for _ in range(opts.max_backtracks):
      trial = objective.value(x + t * step, eps)
      if trial <= value + opts.armijo * t * slope:
        break
      t *= opts.backtrack
    else:
      logging.debug('Line search stalled at eps=%g, gradient %g.', eps, gnorm)
      return x, iterations, gnorm
    move = t * float(np.max(np.abs(step)))
    x = x + t * step
    iterations += 1
    # Below these the iterate only moves by rounding.
    if (value - trial <= opts.stall_tolerance * max(1.0, abs(value)) or
        move <= opts.stall_tolerance * max(1.0, float(np.max(np.abs(x))))):
      logging.debug('Stage at eps=%g stalled after %d iterations, '
                    'gradient %g.', eps, iterations, gnorm)
      return x, iterations, gnorm


def _bfgs_stage(objective: _ReducedObjective, x: np.ndarray, eps: float,
                opts: SolverOptions, budget: int) -> Tuple[np.ndarray, int,
                                                           float]:
  if budget <= 0:
    raise _BudgetExhausted(x, 0, float('inf'))
  scale = max(1.0, objective.value(x, eps))
  result = scipy.optimize.minimize(objective.value_and_gradient,
                                   x,
                                   args=(eps, ),
                                   jac=True,
                                   method='BFGS',
                                   options={
                                       'gtol': opts.gradient_tolerance * scale,
                                       'maxiter': budget,
                                   })
  _, grad = objective.value_and_gradient(result.x, eps)
  gnorm = float(np.max(np.abs(grad))) if grad.size else 0.0
  if result.nit >= budget and gnorm > opts.gradient_tolerance * scale:
    raise _BudgetExhausted(result.x, result.nit, gnorm)
  return result.x, int(result.nit), gnorm


class _BudgetExhausted(Exception):
  def __init__(self, x: np.ndarray, iterations: int, gnorm: float):
    super().__init__()
    self.x = x
    self.iterations = iterations
    self.gnorm = gnorm


def minimize_norm(disc: Discretization,
                  p: float,
                  rows: np.ndarray,
                  rhs: np.ndarray,
                  opts: Optional[SolverOptions] = None) -> NormSolution:
  """Minimizes the discrete p-norm of f over {f : rows @ c = rhs}.

  Args:
    disc: Discretization supplying the basis table and weights.
    p: Exponent, at least 1.
    rows: Constraint matrix of shape (k, basis size).
    rhs: Right-hand side of length k.
    opts: Solver options; defaults to SolverOptions().

  Returns:
    NormSolution with the minimizing coefficients and the exact (unsmoothed)
    p-norm of the minimizer.

  Raises:
    RankError: if the constraint rows are linearly dependent.
    ConvergenceError: if the iteration budget runs out; `best_solution`
      holds the last iterate.
  """
  p = _check_p(p)
  opts = opts or SolverOptions()
  rows = np.atleast_2d(np.asarray(rows, dtype=complex))
  rhs = np.atleast_1d(np.asarray(rhs, dtype=complex))
  table = disc.table
  n = disc.basis.size
  if opts.precondition:
    transform = scipy.linalg.solve_triangular(disc.orthonormalizer,
                                              np.eye(n, dtype=complex))
  else:
    transform = np.eye(n, dtype=complex)
  design = table @ transform
  constraint = rows @ transform

  scale = np.max(np.abs(constraint), axis=1, keepdims=True)
  if np.any(scale == 0.0) or np.linalg.matrix_rank(
      constraint / np.where(scale == 0.0, 1.0, scale)) < rows.shape[0]:
    raise RankError(
        f'{rows.shape[0]} constraints have deficient rank on {disc.basis!r}.')
  particular = np.linalg.lstsq(constraint, rhs, rcond=None)[0]
  null = scipy.linalg.null_space(constraint)

  weights = disc.rule.weights
  objective = _ReducedObjective(design @ particular, design @ null, weights, p)
  sqrt_w = np.sqrt(weights)[:, None]
  y0 = -np.linalg.lstsq(sqrt_w * (design @ null),
                        sqrt_w[:, 0] * (design @ particular),
                        rcond=None)[0]
  x = np.concatenate([y0.real, y0.imag])

  stage = _newton_stage if opts.method == SolverMethod.NEWTON else _bfgs_stage
  schedule = opts.schedule(p)
  total, gnorm = 0, 0.0

  def finish(x_final, iterations, residual):
    y = x_final[:objective.dim] + 1j * x_final[objective.dim:]
    return NormSolution(coefficients=transform @ (particular + null @ y),
                        value=objective.exact_norm(x_final),
                        iterations=iterations,
                        gradient_residual=residual,
                        smoothing_final=schedule[-1])

  for eps in schedule:
    try:
      x, used, gnorm = stage(objective, x, eps, opts,
                             opts.max_iterations - total)
    except _BudgetExhausted as exhausted:
      best = finish(exhausted.x, total + exhausted.iterations, exhausted.gnorm)
      raise ConvergenceError(
          f'No convergence within {opts.max_iterations} iterations '
          f'(p={p}, eps={eps:g}, gradient={exhausted.gnorm:g}).',
          best_solution=best) from None
    total += used
    logging.debug('eps=%g: %d iterations, gradient %g.', eps, used, gnorm)
  if gnorm > opts.gradient_tolerance * max(1.0, objective.value(x,
                                                                schedule[-1])):
    logging.warning(
        'Line search stalled with gradient %g above tolerance %g (p=%g).',
        gnorm, opts.gradient_tolerance, p)
  return finish(x, total, gnorm)


def solve_minimizer(disc: Discretization,
                    p: float,
                    z0: Point,
                    opts: Optional[SolverOptions] = None) -> MinimizerSolution:
  """Computes m_p(z0) and m_p(., z0) on a discretization.

  Args:
    disc: Domain, basis and quadrature rule.
    p: Exponent, at least 1.
    z0: Point strictly inside the domain.
    opts: Solver options.

  Returns:
    A MinimizerSolution whose minimizer takes the value 1 at z0.

  Raises:
    ParameterError: if z0 lies outside the domain or p < 1.
    ConvergenceError: if the solver exhausts its budget; `best_solution`
      holds the best MinimizerSolution found.
  """
  p = _check_p(p)
  z0 = disc.domain.check_point(z0)
  rows = disc.basis.rows(z0[None, :])
  try:
    result = minimize_norm(disc, p, rows, np.ones(1), opts)
  except ConvergenceError as err:
    raise ConvergenceError(
        str(err), _as_solution(disc, p, z0, err.best_solution)) from None
  solution = _as_solution(disc, p, z0, result)
  if solution.smoothed:
    logging.warning(
        'p=1 solution at %s is smoothed down to eps=%g only; m_value is the '
        'norm of the smoothed minimizer.', z0, solution.smoothing_final)
  return solution


def _as_solution(disc: Discretization, p: float, z0: np.ndarray,
                 result: NormSolution) -> MinimizerSolution:
  return MinimizerSolution(z0=z0,
                           p=p,
                           m_value=result.value,
                           minimizer=CoefFunction(disc.basis,
                                                  result.coefficients),
                           iterations=result.iterations,
                           gradient_residual=result.gradient_residual,
                           smoothing_final=result.smoothing_final,
                           smoothed=p == 1.0)


def product_solution(disc: Discretization, left: MinimizerSolution,
                     right: MinimizerSolution) -> MinimizerSolution:
  """Combines factor solutions by m_{p,Omega} = m_{p,Omega1} * m_{p,Omega2}."""
  if disc.domain.kind != DomainKind.PRODUCT:
    raise ParameterError('The product rule needs a product discretization.')
  if left.p != right.p:
    raise ParameterError(f'Factor exponents differ: {left.p} vs {right.p}.')
  coefficients = np.kron(left.minimizer.coefficients,
                         right.minimizer.coefficients)
  return MinimizerSolution(
      z0=np.concatenate([left.z0, right.z0]),
      p=left.p,
      m_value=left.m_value * right.m_value,
      minimizer=CoefFunction(disc.basis, coefficients),
      iterations=left.iterations + right.iterations,
      gradient_residual=max(left.gradient_residual, right.gradient_residual),
      smoothing_final=max(left.smoothing_final, right.smoothing_final),
      smoothed=left.smoothed or right.smoothed)


def solve_minimizer_by_product_rule(
    disc: Discretization,
    p: float,
    z0: Point,
    opts: Optional[SolverOptions] = None) -> MinimizerSolution:
  """Solves on each factor of a product domain and applies the product rule.

  Non-product discretizations are solved directly.
  """
  if disc.domain.kind != DomainKind.PRODUCT:
    return solve_minimizer(disc, p, z0, opts)
  z0 = disc.domain.check_point(z0)
  left_disc, right_disc = disc.factors()
  cut = disc.domain.left.dimension
  left = solve_minimizer_by_product_rule(left_disc, p, z0[:cut], opts)
  right = solve_minimizer_by_product_rule(right_disc, p, z0[cut:], opts)
  return product_solution(disc, left, right)


def kernel_diag(sol: MinimizerSolution) -> float:
  """K_p(z0) = m_p(z0)^(-p)."""
  return sol.kernel


def reproducing_residual(f: CoefFunction,
                         sol: MinimizerSolution,
                         disc: Discretization,
                         z: Optional[Point] = None) -> float:
  """Residual of the reproducing formula at z0.

  Returns |f(z0) - m_p(z0)^(-p) * sum_q w_q |m|^(p-2) conj(m) f|, where
  m = m_p(., z0). The identity is the first-order optimality condition of
  the minimizer, so a small residual certifies the discrete solution.

  Raises:
    ParameterError: if a test point other than z0 is given.
  """
  if z is not None and not np.allclose(disc.domain.as_point(z), sol.z0,
                                       rtol=0.0,
                                       atol=1e-14):
    raise ParameterError(
        f'The reproducing formula is anchored at z0={sol.z0}, got {z}.')
  m = disc.values(sol.minimizer.coefficients)
  values = f.values_on(disc.rule)
  modulus = np.abs(m)
  with np.errstate(divide='ignore', invalid='ignore'):
    density = np.where(modulus > 0.0, modulus**(sol.p - 2), 0.0)
  integral = np.dot(disc.rule.weights, density * np.conj(m) * values)
  return float(abs(f(sol.z0) - sol.m_value**(-sol.p) * integral))
