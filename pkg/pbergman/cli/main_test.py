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
"""Tests for pbergman.cli.main."""

import os
import tempfile

from absl import app
from absl.testing import absltest

from pbergman import errors
from pbergman.cli import main


class MainTest(absltest.TestCase):
  def testParseQuad(self):
    self.assertEqual(main.parse_quad('64x128'), (64, 128))
    self.assertEqual(main.parse_quad(' 8 X 16 '), (8, 16))
    with self.assertRaises(errors.ParameterError):
      main.parse_quad('64')

  def testDefaults(self):
    cfg = main.build_config()
    self.assertEqual(cfg.p_values, (2.0, ))
    self.assertEqual(cfg.suite.name, 'all')

  def testFlagsOverrideFile(self):
    path = os.path.join(tempfile.mkdtemp(), 'run.json')
    with open(path, 'w', encoding='utf-8') as f:
      f.write('{"seed": 4, "p_values": [3], "domain": {"degree": 10}}')
    cfg = main.build_config(path,
                            out='/tmp/out',
                            seed=7,
                            p=['1.5', '4'],
                            quad='16x32',
                            suite='taylor',
                            count=3)
    self.assertEqual(cfg.seed, 7)
    self.assertEqual(cfg.out_dir, '/tmp/out')
    self.assertEqual(cfg.p_values, (1.5, 4.0))
    self.assertEqual(cfg.suite.p_values, (1.5, 4.0))
    self.assertEqual(cfg.domain.degree, 10)
    self.assertEqual((cfg.domain.radial_n, cfg.domain.angular_n), (16, 32))
    self.assertEqual(cfg.suite.name, 'taylor')
    self.assertEqual(cfg.suite.count, 3)

  def testInvalidOverrides(self):
    with self.assertRaises(errors.ParameterError):
      main.build_config(p=['0.5'])
    with self.assertRaises(errors.ParameterError):
      main.build_config(p=['two'])
    with self.assertRaisesRegex(errors.ParameterError, 'metric-axioms'):
      main.build_config(suite='nope')
    with self.assertRaises(errors.ParameterError):
      main.build_config(degree=-2)

  def testUnknownCommand(self):
    with self.assertRaises(app.UsageError):
      main.main(['pbergman'])
    with self.assertRaises(app.UsageError):
      main.main(['pbergman', 'plot'])


if __name__ == '__main__':
  absltest.main()
