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
"""Tests for pbergman.function_space."""

import math

import numpy as np
from absl.testing import absltest, parameterized

from pbergman import errors
from pbergman.function_space import basis as basis_lib
from pbergman.function_space import function
from pbergman.geometry import domain


def _unit(size, index):
  coefficients = np.zeros(size, dtype=complex)
  coefficients[index] = 1.0
  return coefficients


class BasisTest(absltest.TestCase):
  def testDefaults(self):
    self.assertEqual(basis_lib.build_basis(domain.disk()).size, 25)
    ring = basis_lib.build_basis(domain.annulus(0.5))
    self.assertEqual(ring.size, 33)
    np.testing.assert_array_equal(ring.exponents[[0, -1]], [-16, 16])
    prod = basis_lib.build_basis(domain.bidisc(), degree=3)
    self.assertEqual(prod.size, 16)

  def testNegativePowersRejectedOnDisk(self):
    with self.assertRaises(errors.ParameterError):
      basis_lib.PowerBasis(domain.disk(), -1, 4)

  def testDerivativeRows(self):
    basis = basis_lib.build_basis(domain.disk(), degree=3)
    rows = basis.derivative_rows(np.array([[0.0]]), np.array([2.0]))
    np.testing.assert_allclose(rows[0], [0, 2, 0, 0])
    ring = basis_lib.PowerBasis(domain.annulus(0.5), -1, 1)
    rows = ring.derivative_rows(np.array([[0.5]]), np.array([1.0]))
    np.testing.assert_allclose(rows[0], [-4.0, 0.0, 1.0])

  def testProductRowsAreKronecker(self):
    prod = basis_lib.build_basis(domain.bidisc(), degree=2)
    point = np.array([[0.3 + 0.1j, -0.2j]])
    left = prod.left.rows(point[:, :1])[0]
    right = prod.right.rows(point[:, 1:])[0]
    np.testing.assert_allclose(prod.rows(point)[0], np.kron(left, right))

  def testProductDerivative(self):
    prod = basis_lib.build_basis(domain.bidisc(), degree=2)
    point = np.array([[0.5, 0.25]])
    rows = prod.derivative_rows(point, np.array([0.0, 1.0]))
    # Basis element z1^0 z2^1 sits at index 1.
    self.assertAlmostEqual(rows[0, 1], 1.0)
    # z1^1 z2^2 has d/dz2 = 2 z1 z2.
    self.assertAlmostEqual(rows[0, 5], 2 * 0.5 * 0.25)


class CoefFunctionTest(parameterized.TestCase):
  def setUp(self):
    super().setUp()
    self.disc = function.discretize(domain.disk(), radial_n=32, angular_n=64)
    self.size = self.disc.basis.size

  def testEvaluate(self):
    one = self.disc.function(_unit(self.size, 0))
    self.assertAlmostEqual(one(0.3 + 0.1j), 1.0)
    ident = self.disc.function(_unit(self.size, 1))
    self.assertAlmostEqual(ident(0.5), 0.5)
    zero = self.disc.function(np.zeros(self.size))
    self.assertEqual(zero(0.2j), 0.0)

  def testEvaluateOutsideDomain(self):
    one = self.disc.function(_unit(self.size, 0))
    with self.assertRaises(errors.ParameterError):
      one.evaluate([1.5])

  @parameterized.parameters(1.0, 1.5, 2.0, 3.0, 4.7)
  def testConstantNorm(self, p):
    one = self.disc.function(_unit(self.size, 0))
    self.assertAlmostEqual(one.lp_norm(self.disc.rule, p),
                           math.pi**(1 / p),
                           delta=1e-12)

  def testIdentityNorm(self):
    ident = self.disc.function(_unit(self.size, 1))
    self.assertAlmostEqual(ident.lp_norm(self.disc.rule, 2),
                           math.sqrt(math.pi / 2),
                           delta=1e-12)

  def testZeroNormAndNormalize(self):
    zero = self.disc.function(np.zeros(self.size))
    self.assertEqual(zero.lp_norm(self.disc.rule, 3), 0.0)
    with self.assertRaises(errors.ParameterError):
      zero.normalized(self.disc.rule, 3)

  def testRejectsSmallP(self):
    one = self.disc.function(_unit(self.size, 0))
    with self.assertRaises(errors.ParameterError):
      one.lp_norm(self.disc.rule, 0.5)

  def testHomogeneityAndTriangle(self):
    rng = np.random.default_rng(7)
    for p in (1.0, 1.5, 3.0):
      for _ in range(10):
        f = function.random_function(self.disc.basis, rng)
        g = function.random_function(self.disc.basis, rng)
        c = complex(*rng.standard_normal(2))
        self.assertAlmostEqual(
            f.scaled(c).lp_norm(self.disc.rule, p),
            abs(c) * f.lp_norm(self.disc.rule, p),
            delta=1e-12 * max(1.0, abs(c) * f.lp_norm(self.disc.rule, p)))
        total = self.disc.function(f.coefficients + g.coefficients)
        self.assertLessEqual(
            total.lp_norm(self.disc.rule, p),
            f.lp_norm(self.disc.rule, p) + g.lp_norm(self.disc.rule, p) +
            1e-12)

  def testNormContinuousInP(self):
    f = function.random_function(self.disc.basis, np.random.default_rng(3))
    base = f.lp_norm(self.disc.rule, 2.0)
    gaps = [
        abs(f.lp_norm(self.disc.rule, 2.0 + h) - base)
        for h in (1e-1, 1e-2, 1e-3, 1e-4)
    ]
    self.assertTrue(all(a > b for a, b in zip(gaps, gaps[1:])))
    self.assertLess(gaps[-1], 1e-3)

  def testJsonRoundTrip(self):
    f = function.random_function(self.disc.basis, np.random.default_rng(0))
    g = function.CoefFunction.from_json(self.disc.basis, f.to_json())
    np.testing.assert_array_equal(f.coefficients, g.coefficients)

  def testWrongCoefficientCount(self):
    with self.assertRaises(errors.ParameterError):
      function.CoefFunction(self.disc.basis, [1.0, 2.0])


class DiscretizationTest(absltest.TestCase):
  def testOrthonormalizer(self):
    disc = function.discretize(domain.disk(),
                               degree=8,
                               radial_n=16,
                               angular_n=32)
    ortho = disc.table @ np.linalg.inv(disc.orthonormalizer)
    gram = ortho.conj().T @ (disc.rule.weights[:, None] * ortho)
    np.testing.assert_allclose(gram, np.eye(disc.basis.size), atol=1e-10)

  def testProductValuesMatchTable(self):
    disc = function.discretize(domain.bidisc(),
                               degree=3,
                               radial_n=6,
                               angular_n=8)
    coefficients = function.random_function(disc.basis,
                                            np.random.default_rng(1))
    np.testing.assert_allclose(disc.values(coefficients.coefficients),
                               disc.table @ coefficients.coefficients,
                               atol=1e-12)

  def testConstantFunction(self):
    disc = function.discretize(domain.annulus(0.5), radial_n=8, angular_n=16)
    one = function.constant_function(disc.basis, 2.0)
    self.assertAlmostEqual(one(0.7j), 2.0)

  def testProductFactors(self):
    disc = function.discretize(domain.bidisc())
    left, right = disc.factors()
    self.assertEqual(left.domain, domain.disk())
    self.assertEqual(right.rule.size, 16 * 32)

  def testRefined(self):
    disc = function.discretize(domain.disk(),
                               degree=8,
                               radial_n=16,
                               angular_n=32)
    finer = disc.refined()
    self.assertEqual(finer.basis.size, 17)
    self.assertEqual(finer.rule.angular_n, 64)

  def testLiftedKeepsValues(self):
    for dom in (domain.annulus(0.4), domain.bidisc()):
      disc = function.discretize(dom, degree=3, radial_n=6, angular_n=8)
      f = function.random_function(disc.basis, np.random.default_rng(2))
      g = f.lifted(disc.refined().basis)
      point = [0.6j] if dom.dimension == 1 else [0.6j, -0.2]
      self.assertAlmostEqual(f(point), g(point), places=12)

  def testLiftedRejectsSmallerBasis(self):
    disc = function.discretize(domain.disk(), degree=4, radial_n=6,
                               angular_n=8)
    f = function.random_function(disc.refined().basis,
                                 np.random.default_rng(3))
    with self.assertRaises(errors.ParameterError):
      f.lifted(disc.basis)


if __name__ == '__main__':
  absltest.main()
