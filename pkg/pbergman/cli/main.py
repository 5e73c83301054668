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
"""pbergman command line.

  pbergman <kernel|distance|verify|sweep|constants> [--config PATH]
      [--out DIR] [--seed N] [--p LIST] [--degree N] [--quad RxA]
      [--suite NAME] [--count N] [--workers N]

Flags override the values of the configuration file.
"""

import dataclasses
import re
from typing import Optional, Sequence, Tuple

from absl import app, flags, logging

from pbergman.cli import config as config_lib
from pbergman.cli.commands import COMMANDS
from pbergman.errors import ParameterError

FLAGS = flags.FLAGS

flags.DEFINE_string('config', None, 'JSON run configuration.')
flags.DEFINE_string('out', None, 'Output directory.')
flags.DEFINE_integer('seed', None, 'Run seed.')
flags.DEFINE_list('p', None, 'Comma-separated exponents.')
flags.DEFINE_integer('degree', None, 'Basis degree (per factor on products).')
flags.DEFINE_string('quad', None, 'Quadrature resolution RxA, e.g. 64x128.')
flags.DEFINE_string('suite', None, 'Verification suite for `verify`.')
flags.DEFINE_integer('count', None, 'Sample count override for the suite.')
flags.DEFINE_integer('workers', None, 'Threads for independent solves.')


def parse_quad(text: str) -> Tuple[int, int]:
  match = re.fullmatch(r'\s*(\d+)\s*[xX]\s*(\d+)\s*', text)
  if not match:
    raise ParameterError(f'--quad must look like 64x128, got {text!r}.')
  return int(match.group(1)), int(match.group(2))


def build_config(config_path: Optional[str] = None,
                 out: Optional[str] = None,
                 seed: Optional[int] = None,
                 p: Optional[Sequence[str]] = None,
                 degree: Optional[int] = None,
                 quad: Optional[str] = None,
                 suite: Optional[str] = None,
                 count: Optional[int] = None,
                 workers: Optional[int] = None) -> config_lib.RunConfig:
  """Loads the configuration file, if any, and applies flag overrides.

  Raises:
    ParameterError: for an invalid file or flag value.
  """
  config = (config_lib.load(config_path)
            if config_path else config_lib.RunConfig())
  changes = {}
  domain_changes = {}
  suite_changes = {}
  if out is not None:
    changes['out_dir'] = out
  if seed is not None:
    changes['seed'] = seed
  if workers is not None:
    changes['workers'] = workers
  if p is not None:
    try:
      values = tuple(float(x) for x in p)
    except ValueError as err:
      raise ParameterError(f'--p must list numbers, got {p}.') from err
    changes['p_values'] = values
    suite_changes['p_values'] = values
  if degree is not None:
    domain_changes['degree'] = degree
  if quad is not None:
    domain_changes['radial_n'], domain_changes['angular_n'] = parse_quad(quad)
  if suite is not None:
    suite_changes['name'] = suite
  if count is not None:
    suite_changes['count'] = count
  if domain_changes:
    changes['domain'] = dataclasses.replace(config.domain, **domain_changes)
  if suite_changes:
    changes['suite'] = dataclasses.replace(config.suite, **suite_changes)
  return config.replace(**changes)


def main(argv):
  if len(argv) != 2 or argv[1] not in COMMANDS:
    raise app.UsageError(
        f'Expected exactly one command out of {", ".join(COMMANDS)}.')
  try:
    config = build_config(FLAGS.config, FLAGS.out, FLAGS.seed, FLAGS.p,
                          FLAGS.degree, FLAGS.quad, FLAGS.suite, FLAGS.count,
                          FLAGS.workers)
  except (ParameterError, OSError) as err:
    raise app.UsageError(str(err)) from err
  command = argv[1]
  logging.info('Running %s into %s.', command, config.out_dir)
  result = COMMANDS[command](config)
  logging.info('%s wrote %s.', command, ', '.join(result.paths))
  return 0 if result.passed else 1


def run():
  app.run(main)


if __name__ == '__main__':
  run()
