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
"""Tests for pbergman.verify.invariance."""

import cmath

import numpy as np
from absl.testing import absltest, parameterized

from pbergman import errors
from pbergman.function_space import function
from pbergman.geometry import domain
from pbergman.verify import invariance
from pbergman.verify.solutions import SolutionCache


class AutomorphismTest(absltest.TestCase):
  def testIdentity(self):
    m = invariance.disk_automorphism(0, 0)
    self.assertAlmostEqual(invariance.transform_point(m, 0.3 - 0.1j),
                           0.3 - 0.1j)
    self.assertAlmostEqual(invariance.transform_derivative(m, 0.5), 1.0)

  def testAgainstFormula(self):
    a, phi = 0.4 - 0.2j, 1.3
    m = invariance.disk_automorphism(a, phi)
    self.assertAlmostEqual(np.linalg.det(m), 1.0)
    self.assertAlmostEqual(abs(invariance.transform_point(m, a)), 0.0)
    for zeta in (0.0, 0.5j, -0.7 + 0.1j):
      rot = cmath.exp(1j * phi)
      self.assertAlmostEqual(invariance.transform_point(m, zeta),
                             rot * (zeta - a) / (1 - a.conjugate() * zeta))
      self.assertAlmostEqual(
          invariance.transform_derivative(m, zeta),
          rot * (1 - abs(a)**2) / (1 - a.conjugate() * zeta)**2)

  def testPreservesDisk(self):
    m = invariance.disk_automorphism(0.6j, 2.0)
    rng = np.random.default_rng(0)
    for zeta in 0.99 * np.exp(2j * np.pi * rng.uniform(size=20)):
      self.assertLess(abs(invariance.transform_point(m, zeta)), 1.0)

  def testRejectsBoundaryParameter(self):
    with self.assertRaises(errors.ParameterError):
      invariance.disk_automorphism(1.0, 0.0)


class CheckInvarianceTest(parameterized.TestCase):
  @classmethod
  def setUpClass(cls):
    super().setUpClass()
    cls.disc = function.discretize(domain.disk())
    cls.cache = SolutionCache(cls.disc)

  @parameterized.parameters(2.0, 4.0)
  def testMobius(self, p):
    reports = invariance.check_invariance(self.disc, p, 0.1, -0.2j, 0.2 + 0.1j,
                                          0.7, cache=self.cache)
    self.assertLen(reports, 3 if p == 2 else 2)
    for r in reports:
      self.assertTrue(r.passed, r)

  def testRotationIsExactAtP2(self):
    dist, law, _ = invariance.check_invariance(self.disc, 2, 0.2, 0.3j, 0.0,
                                               2.1, cache=self.cache)
    self.assertLess(dist.lhs, 1e-7)
    self.assertLess(law.lhs, 1e-9)

  def testNeedsDisk(self):
    disc = function.discretize(domain.annulus(0.3), radial_n=8, angular_n=16)
    with self.assertRaises(errors.ParameterError):
      invariance.check_invariance(disc, 2, 0.5, 0.6, 0.1, 0.0)


if __name__ == '__main__':
  absltest.main()
