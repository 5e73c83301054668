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
"""Tests for pbergman.geometry."""

import math

import numpy as np
from absl.testing import absltest, parameterized

from pbergman import errors
from pbergman.geometry import domain, quadrature


class DomainTest(absltest.TestCase):
  def testDimension(self):
    self.assertEqual(domain.disk().dimension, 1)
    self.assertEqual(domain.annulus(0.5).dimension, 1)
    self.assertEqual(domain.bidisc().dimension, 2)
    nested = domain.product(domain.bidisc(), domain.annulus(0.3))
    self.assertEqual(nested.dimension, 3)

  def testAnnulusRadiusValidated(self):
    for radius in (0.0, 1.0, -0.2, 1.5):
      with self.assertRaises(errors.ParameterError):
        domain.annulus(radius)

  def testContains(self):
    self.assertTrue(domain.disk().contains(0.99))
    self.assertFalse(domain.disk().contains(1.0))
    ring = domain.annulus(0.5)
    self.assertFalse(ring.contains(0.25j))
    self.assertTrue(ring.contains(0.75j))
    self.assertTrue(domain.bidisc().contains((0.5, -0.5j)))
    self.assertFalse(domain.bidisc().contains((0.5, 1.2)))
    with self.assertRaises(errors.ParameterError):
      domain.bidisc().contains(0.5)

  def testDictRoundTrip(self):
    spec = domain.product(domain.annulus(0.25), domain.disk())
    self.assertEqual(domain.DomainSpec.from_dict(spec.to_dict()), spec)

  def testFromDictRejectsUnknownKind(self):
    with self.assertRaises(errors.ParameterError):
      domain.DomainSpec.from_dict({'kind': 'triangle'})


class QuadratureTest(parameterized.TestCase):
  def testDiskArea(self):
    rule = quadrature.build_quadrature(domain.disk(), 32, 64)
    self.assertAlmostEqual(
        quadrature.quad_integrate(rule, np.ones(rule.size)).real, math.pi,
        delta=1e-12)

  def testDiskSecondMoment(self):
    rule = quadrature.build_quadrature(domain.disk(), 32, 64)
    values = np.abs(rule.nodes[:, 0])**2
    self.assertAlmostEqual(quadrature.quad_integrate(rule, values).real,
                           math.pi / 2,
                           delta=1e-12)

  def testAnnulusArea(self):
    rule = quadrature.build_quadrature(domain.annulus(0.5), 32, 64)
    self.assertAlmostEqual(
        quadrature.quad_integrate(rule, np.ones(rule.size)).real,
        math.pi * (1 - 0.25),
        delta=1e-12)

  def testProductAreaAndNodes(self):
    rule = quadrature.build_quadrature(domain.bidisc(), 8, 16)
    self.assertEqual(rule.nodes.shape, (rule.size, 2))
    self.assertAlmostEqual(rule.weights.sum(), math.pi**2, delta=1e-11)
    left, right = rule.factors
    # Left factor varies slowest.
    np.testing.assert_array_equal(rule.nodes[:right.size, 0],
                                  np.full(right.size, left.nodes[0, 0]))
    np.testing.assert_array_equal(rule.nodes[:right.size, 1], right.nodes[:,
                                                                          0])

  def testWeightsPositiveAndNodesInside(self):
    for spec in (domain.disk(), domain.annulus(0.3), domain.bidisc()):
      rule = quadrature.build_quadrature(spec, 6, 8)
      self.assertTrue(np.all(rule.weights > 0))
      self.assertTrue(all(spec.contains(node) for node in rule.nodes))

  @parameterized.parameters((0, 0), (3, 1), (5, 5), (7, 2), (0, 7))
  def testMonomialMomentsExact(self, a, b):
    radial_n, angular_n = 8, 16
    rule = quadrature.build_quadrature(domain.disk(), radial_n, angular_n)
    z = rule.nodes[:, 0]
    got = quadrature.quad_integrate(rule, z**a * np.conj(z)**b)
    expected = math.pi / (a + 1) if a == b else 0.0
    self.assertAlmostEqual(abs(got - expected), 0.0, delta=1e-12)

  def testIntegrateSimpleValues(self):
    rule = quadrature.build_quadrature(domain.disk(), 16, 32)
    self.assertEqual(quadrature.quad_integrate(rule, np.zeros(rule.size)), 0)
    self.assertAlmostEqual(abs(quadrature.quad_integrate(rule, rule.nodes[:,
                                                                          0])),
                           0.0,
                           delta=1e-13)

  def testRefinementStable(self):
    coarse = quadrature.build_quadrature(domain.disk(), 64, 128)
    fine = coarse.refined()
    self.assertEqual(fine.radial_n, 128)

    def integral(rule):
      z = rule.nodes[:, 0]
      values = np.abs((0.75 / (1 - 0.5 * z))**(4 / 3))**3
      return quadrature.quad_integrate(rule, values).real

    self.assertAlmostEqual(integral(coarse), integral(fine), delta=1e-10)

  def testResolutionValidated(self):
    with self.assertRaises(errors.ParameterError):
      quadrature.build_quadrature(domain.disk(), 1, 64)
    with self.assertRaises(errors.ParameterError):
      quadrature.build_quadrature(domain.disk(), 8, 3)

  def testLengthMismatch(self):
    rule = quadrature.build_quadrature(domain.disk(), 4, 8)
    with self.assertRaises(errors.ParameterError):
      quadrature.quad_integrate(rule, [1.0, 2.0])


if __name__ == '__main__':
  absltest.main()
