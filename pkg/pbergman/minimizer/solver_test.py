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
"""Tests for pbergman.minimizer."""

import math

import numpy as np
from absl.testing import absltest, parameterized

from pbergman import errors
from pbergman.function_space import function
from pbergman.geometry import domain
from pbergman.minimizer import closed_form, solver, spec


def _sample_points(rng, count, radius=0.8):
  r = radius * np.sqrt(rng.uniform(size=count))
  return r * np.exp(2j * np.pi * rng.uniform(size=count))


class ClosedFormTest(absltest.TestCase):
  def testExamples(self):
    self.assertAlmostEqual(closed_form.disk_closed_form(0.3j, 0.0, 3), 1.0)
    self.assertAlmostEqual(closed_form.disk_closed_form(0.0, 0.5, 2), 0.5625)
    self.assertAlmostEqual(closed_form.disk_closed_form(0.5, 0.5, 4), 1.0)

  def testMass(self):
    self.assertAlmostEqual(closed_form.disk_closed_form_mass(0.0, 2),
                           math.sqrt(math.pi))
    self.assertAlmostEqual(closed_form.disk_closed_form_mass(0.5, 2),
                           0.75 * math.sqrt(math.pi))
    self.assertAlmostEqual(closed_form.disk_closed_form_mass(0.5, 4),
                           (math.pi * 0.75**2)**0.25)
    self.assertAlmostEqual(closed_form.remark_literal_mass(0.0, 3),
                           closed_form.disk_closed_form_mass(0.0, 3))

  def testKernels(self):
    self.assertAlmostEqual(closed_form.disk_bergman_kernel(0.0, 0.7),
                           1 / math.pi)
    self.assertAlmostEqual(closed_form.disk_kernel_diag(0.5, 3),
                           1 / (math.pi * 0.75**2))


class SolveMinimizerTest(parameterized.TestCase):
  @classmethod
  def setUpClass(cls):
    super().setUpClass()
    cls.disc = function.discretize(domain.disk())

  def testCenterP2(self):
    sol = solver.solve_minimizer(self.disc, 2, 0.0)
    self.assertAlmostEqual(sol.m_value, math.sqrt(math.pi), delta=1e-10)
    expected = np.zeros(self.disc.basis.size)
    expected[0] = 1.0
    np.testing.assert_allclose(sol.minimizer.coefficients, expected, atol=1e-9)
    self.assertAlmostEqual(solver.kernel_diag(sol), 1 / math.pi, delta=1e-10)

  @parameterized.parameters(1.0, 1.5, 3.0, 4.0, 5.0)
  def testCenterAnyP(self, p):
    sol = solver.solve_minimizer(self.disc, p, 0.0)
    self.assertAlmostEqual(sol.m_value / math.pi**(1 / p), 1.0, delta=1e-7)
    self.assertAlmostEqual(sol.minimizer(0.4 - 0.3j), 1.0, delta=1e-6)
    self.assertAlmostEqual(solver.kernel_diag(sol) * math.pi, 1.0, delta=1e-6)
    self.assertEqual(sol.smoothed, p == 1.0)

  def testP1IsSmoothed(self):
    sol = solver.solve_minimizer(self.disc, 1, 0.2)
    self.assertTrue(sol.smoothed)
    self.assertAlmostEqual(sol.smoothing_final, 1e-6)

  def testPointwiseClosedFormP2(self):
    sol = solver.solve_minimizer(self.disc, 2, 0.5)
    points = _sample_points(np.random.default_rng(11), 20)
    got = sol.minimizer.evaluate(points)
    want = closed_form.disk_closed_form(points, 0.5, 2)
    np.testing.assert_allclose(got, want, rtol=1e-6)
    self.assertAlmostEqual(sol.minimizer(0.5), 1.0, delta=1e-10)

  @parameterized.parameters(2.0, 3.0, 4.0)
  def testMassFormula(self, p):
    sol = solver.solve_minimizer(self.disc, p, 0.5)
    exact = closed_form.disk_closed_form_mass(0.5, p)
    self.assertLess(abs(sol.m_value / exact - 1.0), 1e-6)
    literal = closed_form.remark_literal_mass(0.5, p)
    self.assertGreater(abs(sol.m_value - literal), 1e-2)
    self.assertAlmostEqual(sol.minimizer.lp_norm(self.disc.rule, p),
                           sol.m_value,
                           delta=1e-12)

  def testOracleAgreementNearerBoundary(self):
    disc = function.discretize(domain.disk(), degree=32)
    w = 0.6 * np.exp(0.7j)
    sol = solver.solve_minimizer(disc, 3, w)
    points = _sample_points(np.random.default_rng(5), 20)
    np.testing.assert_allclose(sol.minimizer.evaluate(points),
                               closed_form.disk_closed_form(points, w, 3),
                               rtol=1e-5)
    self.assertLess(
        abs(sol.m_value / closed_form.disk_closed_form_mass(w, 3) - 1.0), 1e-6)

  def testDiscreteOptimality(self):
    p = 3.0
    z0 = 0.3 + 0.2j
    sol = solver.solve_minimizer(self.disc, p, z0)
    rng = np.random.default_rng(2)
    one = function.constant_function(self.disc.basis)
    for _ in range(100):
      g = function.random_function(self.disc.basis, rng)
      g = self.disc.function(g.coefficients +
                             (1.0 - g(z0)) * one.coefficients)
      self.assertAlmostEqual(g(z0), 1.0, delta=1e-12)
      self.assertGreaterEqual(g.lp_norm(self.disc.rule, p),
                              sol.m_value - 1e-12)

  def testMonotoneRefinement(self):
    values = []
    for degree in (2, 4, 8, 16):
      disc = function.discretize(domain.disk(), degree=degree)
      values.append(solver.solve_minimizer(disc, 3, 0.5).m_value)
    for coarse, fine in zip(values, values[1:]):
      self.assertLessEqual(fine, coarse + 1e-12)

  def testBfgsAgreesWithNewton(self):
    opts = spec.SolverOptions(method='bfgs', max_iterations=5000)
    newton = solver.solve_minimizer(self.disc, 3, 0.3)
    bfgs = solver.solve_minimizer(self.disc, 3, 0.3, opts)
    self.assertAlmostEqual(bfgs.m_value / newton.m_value, 1.0, delta=1e-8)

  def testWithoutPreconditioner(self):
    disc = function.discretize(domain.disk(), degree=8)
    plain = solver.solve_minimizer(disc, 4, 0.25,
                                   spec.SolverOptions(precondition=False))
    conditioned = solver.solve_minimizer(disc, 4, 0.25)
    self.assertAlmostEqual(plain.m_value, conditioned.m_value, delta=1e-9)

  def testConvergenceErrorCarriesBestIterate(self):
    opts = spec.SolverOptions(max_iterations=1)
    with self.assertRaises(errors.ConvergenceError) as ctx:
      solver.solve_minimizer(self.disc, 4, 0.5, opts)
    best = ctx.exception.best_solution
    self.assertIsInstance(best, spec.MinimizerSolution)
    self.assertAlmostEqual(best.minimizer(0.5), 1.0, delta=1e-10)

  @parameterized.parameters((4.0, 0.5), (2.1, 0.5), (1.9, 0.5), (3.0, 0.2j))
  def testConvergesOffCenter(self, p, z0):
    sol = solver.solve_minimizer(self.disc, p, z0)
    self.assertLess(sol.iterations, 100)
    self.assertAlmostEqual(sol.minimizer(z0), 1.0, delta=1e-10)
    if p == 4.0:
      self.assertLess(
          abs(sol.m_value / closed_form.disk_closed_form_mass(z0, p) - 1.0),
          1e-6)

  def testUnreachableToleranceStopsOnStall(self):
    opts = spec.SolverOptions(gradient_tolerance=1e-16)
    sol = solver.solve_minimizer(self.disc, 4, 0.5, opts)
    self.assertLess(sol.iterations, opts.max_iterations)
    reference = solver.solve_minimizer(self.disc, 4, 0.5)
    self.assertAlmostEqual(sol.m_value / reference.m_value, 1.0, delta=1e-10)

  def testOptionsValidation(self):
    with self.assertRaises(errors.ParameterError):
      spec.SolverOptions(stall_tolerance=0.0)

  def testPointOutsideDomain(self):
    with self.assertRaises(errors.ParameterError):
      solver.solve_minimizer(self.disc, 2, 1.2)
    with self.assertRaises(errors.ParameterError):
      solver.solve_minimizer(self.disc, 0.5, 0.0)

  def testAnnulusP2MatchesTruncatedKernel(self):
    r = 0.5
    disc = function.discretize(domain.annulus(r))
    z0 = 0.75
    sol = solver.solve_minimizer(disc, 2, z0)
    kernel = 0.0
    for k in range(-16, 17):
      if k == -1:
        norm2 = 2 * math.pi * math.log(1 / r)
      else:
        norm2 = math.pi * (1 - r**(2 * k + 2)) / (k + 1)
      kernel += z0**(2 * k) / norm2
    self.assertAlmostEqual(sol.m_value, kernel**-0.5, delta=1e-10)

  def testKernelOffDiagonal(self):
    sol = solver.solve_minimizer(self.disc, 2, 0.5)
    got = sol.kernel_offdiag([0.1j, -0.3])
    want = [closed_form.disk_bergman_kernel(z, 0.5) for z in (0.1j, -0.3)]
    np.testing.assert_allclose(got, want, rtol=1e-6)

  def testJson(self):
    sol = solver.solve_minimizer(self.disc, 2, 0.0)
    data = sol.to_json()
    self.assertEqual(data['z0'], [[0.0, 0.0]])
    self.assertLen(data['coefficients'], self.disc.basis.size)


class KernelDiagTest(absltest.TestCase):
  def testUnitMass(self):
    disc = function.discretize(domain.disk(), degree=2, radial_n=4,
                               angular_n=8)
    sol = spec.MinimizerSolution(z0=np.zeros(1, dtype=complex),
                                 p=3.0,
                                 m_value=1.0,
                                 minimizer=function.constant_function(
                                     disc.basis),
                                 iterations=0,
                                 gradient_residual=0.0,
                                 smoothing_final=0.0)
    self.assertEqual(solver.kernel_diag(sol), 1.0)


class ReproducingResidualTest(parameterized.TestCase):
  @classmethod
  def setUpClass(cls):
    super().setUpClass()
    cls.disc = function.discretize(domain.disk())

  @parameterized.parameters(1.5, 2.0, 3.0)
  def testMinimizerItself(self, p):
    sol = solver.solve_minimizer(self.disc, p, 0.3)
    self.assertLess(solver.reproducing_residual(sol.minimizer, sol, self.disc),
                    1e-8)

  def testMonomialP2(self):
    sol = solver.solve_minimizer(self.disc, 2, 0.5)
    ident = np.zeros(self.disc.basis.size, dtype=complex)
    ident[1] = 1.0
    f = self.disc.function(ident)
    self.assertLess(solver.reproducing_residual(f, sol, self.disc), 1e-6)

  def testConstantP3Refined(self):
    sol = solver.solve_minimizer(self.disc, 3, 0.3)
    one = function.constant_function(self.disc.basis)
    coarse = solver.reproducing_residual(one, sol, self.disc)
    self.assertLess(coarse, 1e-5)
    finer = self.disc.refined()
    fine_sol = solver.solve_minimizer(finer, 3, 0.3)
    fine = solver.reproducing_residual(
        function.constant_function(finer.basis), fine_sol, finer)
    self.assertLess(fine, 1e-5)

  @parameterized.parameters(1.5, 2.0, 3.0)
  def testRandomFunctions(self, p):
    rng = np.random.default_rng(19)
    for z0 in (0.0, 0.3):
      sol = solver.solve_minimizer(self.disc, p, z0)
      for _ in range(10):
        f = function.random_function(self.disc.basis, rng)
        scale = max(1.0, abs(f(z0)))
        self.assertLess(
            solver.reproducing_residual(f, sol, self.disc) / scale, 1e-5)

  def testOtherPointRejected(self):
    sol = solver.solve_minimizer(self.disc, 2, 0.3)
    with self.assertRaises(errors.ParameterError):
      solver.reproducing_residual(sol.minimizer, sol, self.disc, z=0.1)


class ProductRuleTest(absltest.TestCase):
  def testBidiscMass(self):
    disc = function.discretize(domain.bidisc())
    sol = solver.solve_minimizer_by_product_rule(disc, 2, [0.0, 0.5])
    self.assertAlmostEqual(sol.m_value / (0.75 * math.pi), 1.0, delta=1e-5)
    self.assertAlmostEqual(sol.minimizer([0.0, 0.5]), 1.0, delta=1e-9)

  def testMatchesDirectSolve(self):
    disc = function.discretize(domain.bidisc(),
                               degree=3,
                               radial_n=6,
                               angular_n=8)
    z0 = [0.2, -0.1j]
    by_rule = solver.solve_minimizer_by_product_rule(disc, 3, z0)
    direct = solver.solve_minimizer(disc, 3, z0)
    self.assertAlmostEqual(by_rule.m_value / direct.m_value, 1.0, delta=1e-8)
    np.testing.assert_allclose(by_rule.minimizer.coefficients,
                               direct.minimizer.coefficients,
                               atol=1e-6)

  def testRejectsPlanarDiscretization(self):
    disc = function.discretize(domain.disk(), degree=2)
    sol = solver.solve_minimizer(disc, 2, 0.0)
    with self.assertRaises(errors.ParameterError):
      solver.product_solution(disc, sol, sol)


if __name__ == '__main__':
  absltest.main()
