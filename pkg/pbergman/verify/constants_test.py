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
"""Tests for pbergman.verify.constants."""

import math

from absl.testing import absltest, parameterized

from pbergman import errors
from pbergman.verify import constants


class ConstantsTest(parameterized.TestCase):
  def testAtFour(self):
    c = constants.appendix_constants(4)
    self.assertAlmostEqual(c.i1, 0.0328776, places=7)
    self.assertAlmostEqual(c.i2, 0.0035807, places=7)
    self.assertAlmostEqual(c.lower, 4 * c.i2, places=15)
    self.assertAlmostEqual(c.lower, 0.0143229, places=7)
    self.assertAlmostEqual(c.upper, 6 * math.sqrt(3), places=12)

  def testUpperConstantAtTwo(self):
    self.assertEqual(constants.upper_constant(2), 1.0)

  @parameterized.parameters(2.0, 1.5, 1.0)
  def testRejectsSmallP(self, p):
    with self.assertRaises(errors.ParameterError):
      constants.appendix_constants(p)

  @parameterized.parameters(2.5, 3.0, 4.0, 7.0)
  def testQuadratureMatchesAntiderivatives(self, p):
    c = constants.appendix_constants(p)
    i1, i2 = constants.exact_integrals(p)
    self.assertAlmostEqual(c.i1, i1, places=11)
    self.assertAlmostEqual(c.i2, i2, places=11)

  def testOracleReport(self):
    self.assertTrue(constants.check_constants_oracle(4).passed)

  @parameterized.parameters(2.5, 4.0, 10.0)
  def testConsistency(self, p):
    r = constants.check_constants_consistency(p)
    self.assertTrue(r.passed)
    self.assertLess(r.lhs, 1.0)

  def testTable(self):
    rows = constants.constants_table([3.0, 4.0])
    self.assertLen(rows, 2)
    self.assertEqual(rows[1][0], 4.0)
    self.assertAlmostEqual(rows[1][4], 6 * math.sqrt(3))


if __name__ == '__main__':
  absltest.main()
