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
"""The pbergman subcommands: kernel, distance, verify, sweep and constants.

Every command writes into `config.out_dir`, starting with the resolved
configuration (config.json). Tables are CSV with 17 significant digits and
reports are JSON lines, so identical configurations give identical files.
"""

import concurrent.futures
import dataclasses
import json
import math
import os
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from absl import logging

from pbergman.cli.config import RunConfig, serialize
from pbergman.distance.distance import matrix_from_solutions
from pbergman.errors import ConvergenceError, RankError
from pbergman.function_space.function import Discretization
from pbergman.minimizer.spec import MinimizerSolution
from pbergman.verify.constants import constants_table
from pbergman.verify.diagnostics import p_continuity_sweep
from pbergman.verify.report import ReportCollector, error_report
from pbergman.verify.solutions import SolutionCache
from pbergman.verify.suites import SuiteContext, run_suite

CONFIG_FILE = 'config.json'
KERNEL_FILE = 'kernel.csv'
COEFFICIENTS_FILE = 'kernel_coefficients.jsonl'
DISTANCE_FILE = 'distance.csv'
REPORTS_FILE = 'reports.jsonl'
SUMMARY_FILE = 'summary.txt'
SWEEP_FILE = 'sweep.csv'
SWEEP_REPORTS_FILE = 'sweep_reports.jsonl'
SWEEP_SUMMARY_FILE = 'sweep_summary.txt'
CONSTANTS_FILE = 'constants.csv'
FLOAT_FORMAT = '%.17g'

KERNEL_COLUMNS = ('m_value', 'kernel', 'iterations', 'gradient_residual',
                  'smoothing_final', 'status')


@dataclasses.dataclass(frozen=True)
class CommandResult:
  """Files a command wrote and whether all of its checks passed."""
  paths: List[str]
  passed: bool = True


def point_columns(prefix: str, dimension: int) -> List[str]:
  """z_re, z_im for planar points; z1_re, z1_im, z2_re, ... otherwise."""
  if dimension == 1:
    return [f'{prefix}_re', f'{prefix}_im']
  return [
      f'{prefix}{k}_{part}' for k in range(1, dimension + 1)
      for part in ('re', 'im')
  ]


def _point_values(point: np.ndarray) -> List[float]:
  return [x for c in point for x in (float(c.real), float(c.imag))]


def _prepare(config: RunConfig) -> str:
  os.makedirs(config.out_dir, exist_ok=True)
  path = os.path.join(config.out_dir, CONFIG_FILE)
  with open(path, 'w', encoding='utf-8') as f:
    f.write(serialize(config))
  return path


def _write_csv(rows: Sequence[Sequence[Any]], columns: Sequence[str],
               path: str) -> str:
  frame = pd.DataFrame(list(rows), columns=list(columns))
  frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
  logging.info('Wrote %d rows to %s.', len(frame), path)
  return path


def _map(config: RunConfig, fn: Callable, jobs: Sequence) -> List:
  """fn over jobs on `config.workers` threads, results in job order."""
  if config.workers == 1:
    return [fn(job) for job in jobs]
  with concurrent.futures.ThreadPoolExecutor(config.workers) as pool:
    return list(pool.map(fn, jobs))


def _safe_solution(
    cache: SolutionCache, p: float,
    z: np.ndarray) -> Tuple[Optional[MinimizerSolution], str]:
  """Solves m_p(., z); failures become a status instead of an exception."""
  try:
    sol = cache.solution(p, z)
  except ConvergenceError as err:
    logging.warning('No convergence for p=%g at %s: %s', p, z, err)
    best = err.best_solution
    if isinstance(best, MinimizerSolution) and best.z0.shape == z.shape:
      return best, 'not-converged'
    return None, 'not-converged'
  except RankError as err:
    logging.warning('Rank-deficient constraints for p=%g at %s: %s', p, z, err)
    return None, 'rank-deficient'
  return sol, 'smoothed' if sol.smoothed else 'ok'


def _points(config: RunConfig, disc: Discretization) -> List[np.ndarray]:
  return [disc.domain.check_point(z) for z in config.points]


def cmd_kernel(config: RunConfig) -> CommandResult:
  """Writes m_p(z0), K_p(z0) and solver diagnostics per (p, z0).

  Rows that fail to converge keep the best iterate and the status
  `not-converged`; the run continues.
  """
  paths = [_prepare(config)]
  disc = config.domain.discretization()
  cache = SolutionCache(disc, config.solver.options,
                        config.solver.use_product_rule)
  points = _points(config, disc)
  jobs = [(p, z) for p in config.p_values for z in points]
  results = _map(config, lambda job: _safe_solution(cache, *job), jobs)
  rows = []
  for (p, z), (sol, status) in zip(jobs, results):
    if sol is None:
      stats = [math.nan, math.nan, 0, math.nan, math.nan]
    else:
      stats = [
          sol.m_value, sol.kernel, sol.iterations, sol.gradient_residual,
          sol.smoothing_final
      ]
    rows.append([p] + _point_values(z) + stats + [status])
  columns = ['p'] + point_columns('z', disc.domain.dimension) + list(
      KERNEL_COLUMNS)
  paths.append(
      _write_csv(rows, columns, os.path.join(config.out_dir, KERNEL_FILE)))
  if config.dump_coefficients:
    path = os.path.join(config.out_dir, COEFFICIENTS_FILE)
    with open(path, 'w', encoding='utf-8') as f:
      for sol, status in results:
        if sol is not None:
          f.write(json.dumps(dict(sol.to_json(), status=status),
                             sort_keys=True) + '\n')
    paths.append(path)
  return CommandResult(paths)


def cmd_distance(config: RunConfig) -> CommandResult:
  """Writes rho_p and the optimal phase for every ordered pair of points."""
  paths = [_prepare(config)]
  disc = config.domain.discretization()
  cache = SolutionCache(disc, config.solver.options,
                        config.solver.use_product_rule)
  points = _points(config, disc)
  dimension = disc.domain.dimension
  rows = []
  for p in config.p_values:
    results = _map(config, lambda z, p=p: _safe_solution(cache, p, z), points)
    solved = [sol if status in ('ok', 'smoothed') else None
              for sol, status in results]
    matrix = matrix_from_solutions(disc, p, points, solved)
    n = len(points)
    for k, (z, w, rho, theta) in enumerate(matrix.records()):
      both = solved[k // n] is not None and solved[k % n] is not None
      status = 'ok' if both else 'failed'
      rows.append(_point_values(z) + _point_values(w) + [p, rho, theta, status])
  columns = (point_columns('z', dimension) + point_columns('w', dimension) +
             ['p', 'rho', 'theta_opt', 'status'])
  paths.append(
      _write_csv(rows, columns, os.path.join(config.out_dir, DISTANCE_FILE)))
  return CommandResult(paths)


def _write_reports(collector: ReportCollector, config: RunConfig,
                   reports_file: str, summary_file: str,
                   header: str) -> List[str]:
  reports_path = os.path.join(config.out_dir, reports_file)
  summary_path = os.path.join(config.out_dir, summary_file)
  collector.write_jsonl(reports_path)
  collector.write_summary(summary_path, header)
  return [reports_path, summary_path]


def cmd_verify(config: RunConfig) -> CommandResult:
  """Runs the configured suite; `passed` is False iff a check failed."""
  paths = [_prepare(config)]
  suite = config.suite
  ctx = SuiteContext(config.domain.discretization(),
                     opts=config.solver.options,
                     seed=config.seed,
                     p_values=suite.p_values,
                     count=suite.count,
                     workers=config.workers)
  collector = run_suite(suite.name, ctx)
  header = f'suite {suite.name}, seed {config.seed}'
  paths.extend(
      _write_reports(collector, config, REPORTS_FILE, SUMMARY_FILE, header))
  passed = collector.all_passed()
  if not passed:
    logging.warning('%d of %d checks failed.', len(collector.failures()),
                    len(collector.reports))
  return CommandResult(paths, passed)


def _safe_rho(cache: SolutionCache, q: float, z,
              w) -> Tuple[float, str, Optional[Exception]]:
  """rho_q(z, w) with solver failures turned into a status."""
  try:
    return cache.distance(q, z, w).rho, 'ok', None
  except ConvergenceError as err:
    logging.warning('No convergence for q=%g: %s', q, err)
    return math.nan, 'not-converged', err
  except RankError as err:
    logging.warning('Rank-deficient constraints for q=%g: %s', q, err)
    return math.nan, 'rank-deficient', err


def cmd_sweep(config: RunConfig) -> CommandResult:
  """Writes (q, rho_q, gap, status) around p_center and the reports.

  A q whose distance cannot be solved gets a NaN row and a failing
  `continuity-error` report; the continuity checks use the remaining q.
  """
  paths = [_prepare(config)]
  sweep = config.sweep
  disc = config.domain.discretization()
  cache = SolutionCache(disc, config.solver.options,
                        config.solver.use_product_rule)
  center, _, center_error = _safe_rho(cache, sweep.p_center, sweep.z, sweep.w)
  results = _map(config, lambda q: _safe_rho(cache, q, sweep.z, sweep.w),
                 sweep.q_grid)
  rows = [[q, rho, abs(rho - center), status]
          for q, (rho, status, _) in zip(sweep.q_grid, results)]
  paths.append(
      _write_csv(rows, ['q', 'rho_q', 'gap', 'status'],
                 os.path.join(config.out_dir, SWEEP_FILE)))
  collector = ReportCollector()
  for q, (_, _, err) in zip(sweep.q_grid, results):
    if err is not None:
      collector.add(error_report('continuity-error', {'q': q}, err))
  if center_error is not None:
    collector.add(
        error_report('continuity-error', {'q': sweep.p_center}, center_error))
  else:
    solved = [q for q, (_, _, err) in zip(sweep.q_grid, results) if err is None]
    collector.extend(
        p_continuity_sweep(disc,
                           sweep.z,
                           sweep.w,
                           sweep.p_center,
                           solved,
                           sweep.tolerance,
                           cache=cache))
  header = f'sweep around p={sweep.p_center:g}'
  paths.extend(
      _write_reports(collector, config, SWEEP_REPORTS_FILE,
                     SWEEP_SUMMARY_FILE, header))
  return CommandResult(paths, collector.all_passed())


def cmd_constants(config: RunConfig) -> CommandResult:
  """Writes (p, I1, I2, c_p, C_p) for every configured p > 2."""
  paths = [_prepare(config)]
  paths.append(
      _write_csv(constants_table(config.constants_p),
                 ['p', 'i1', 'i2', 'c_p', 'C_p'],
                 os.path.join(config.out_dir, CONSTANTS_FILE)))
  return CommandResult(paths)


COMMANDS: Dict[str, Callable[[RunConfig], CommandResult]] = {
    'kernel': cmd_kernel,
    'distance': cmd_distance,
    'verify': cmd_verify,
    'sweep': cmd_sweep,
    'constants': cmd_constants,
}
