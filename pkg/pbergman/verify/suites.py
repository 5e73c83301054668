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
"""Named, seeded verification suites.

A suite expands into checks. Every check is a callable that receives a
SolutionCache and returns reports; a check with a failing report is re-run
once on the refined discretization and only the re-run is recorded.
"""

import concurrent.futures
import dataclasses
import functools
import math
import threading
import zlib
from typing import (Callable, Dict, Iterator, List, Optional, Sequence,
                    Tuple)

import numpy as np
from absl import logging

from pbergman.distance.metric import bergman_metric
from pbergman.errors import ConvergenceError, ParameterError, RankError
from pbergman.function_space.function import (CoefFunction, Discretization,
                                              discretize, random_function)
from pbergman.geometry.domain import DomainKind, bidisc, disk
from pbergman.minimizer.spec import SolverOptions
from pbergman.verify import constants as constants_lib
from pbergman.verify import diagnostics, inequalities, invariance, oracles
from pbergman.verify.report import (ReportCollector, VerificationReport,
                                    equality_report, error_report)
from pbergman.verify.solutions import SolutionCache

Check = Callable[[SolutionCache], List[VerificationReport]]
# A check without a cache does not depend on the discretization.
Job = Tuple[Optional[SolutionCache], Check]

CONTINUITY_GRID = (1.8, 1.9, 1.95, 2.05, 2.1, 2.2)
CONSTANTS_GRID = tuple(float(p) for p in np.linspace(2.5, 10.0, 16))
# Small product discretization for the metric bound, whose constraint
# system is solved on the product directly.
METRIC_BOUND_DEGREE = 4
METRIC_BOUND_QUAD = (8, 16)
SOLVER_ERRORS = (ConvergenceError, RankError)


def sample_disk(rng: np.random.Generator, radius: float,
                size: int) -> np.ndarray:
  """Uniform samples from the closed disk of the given radius."""
  r = radius * np.sqrt(rng.uniform(size=size))
  return r * np.exp(2j * np.pi * rng.uniform(size=size))


def _unit_lift(f: CoefFunction, disc: Discretization,
               p: float) -> CoefFunction:
  return f.lifted(disc.basis).normalized(disc.rule, p)


@dataclasses.dataclass
class SuiteContext:
  """Everything a suite needs besides its own generator.

  Attributes:
    disc: Discretization of the run; disk suites use it when it is a disk.
    opts: Solver options, None for the defaults.
    seed: Run seed; every suite derives its own stream from it.
    p_values: Overrides the suite's default exponents.
    count: Overrides the suite's default sample count.
    workers: Threads that run the checks of a suite.
  """
  disc: Discretization
  opts: Optional[SolverOptions] = None
  seed: int = 0
  p_values: Optional[Sequence[float]] = None
  count: Optional[int] = None
  workers: int = 1

  def __post_init__(self):
    if self.workers < 1:
      raise ParameterError(f'workers must be positive, got {self.workers}.')
    self._lock = threading.Lock()
    self._caches: Dict[int, SolutionCache] = {}
    self._refined: Dict[int, SolutionCache] = {}

  def rng(self, name: str) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence([self.seed, zlib.crc32(name.encode())]))

  @functools.cached_property
  def disk(self) -> Discretization:
    if self.disc.domain.kind == DomainKind.DISK:
      return self.disc
    logging.info('Disk suites use the default disk discretization.')
    return discretize(disk())

  @functools.cached_property
  def bidisc(self) -> Discretization:
    if self.disc.domain == bidisc():
      return self.disc
    return discretize(bidisc())

  def cache(self, disc: Discretization) -> SolutionCache:
    with self._lock:
      if id(disc) not in self._caches:
        self._caches[id(disc)] = SolutionCache(disc, self.opts)
      return self._caches[id(disc)]

  def refined(self, cache: SolutionCache) -> SolutionCache:
    with self._lock:
      if id(cache) not in self._refined:
        self._refined[id(cache)] = cache.refined()
      return self._refined[id(cache)]

  def ps(self, defaults: Sequence[float]) -> List[float]:
    return [float(p) for p in (self.p_values or defaults)]

  def n(self, default: int) -> int:
    return default if self.count is None else int(self.count)


def _metric_axioms(ctx: SuiteContext,
                   rng: np.random.Generator) -> Iterator[Job]:
  cache = ctx.cache(ctx.disk)
  for p in ctx.ps((1.5, 2.0, 4.0)):
    for z, w, v in sample_disk(rng, 0.5, 3 * ctx.n(1000)).reshape(-1, 3):
      yield cache, functools.partial(_run_metric_axioms, p, z, w, v)


def _run_metric_axioms(p, z, w, v, cache):
  return inequalities.check_metric_axioms(cache.disc, p, z, w, v, cache=cache)


def _main_inequality(ctx: SuiteContext,
                     rng: np.random.Generator) -> Iterator[Job]:
  cache = ctx.cache(ctx.disk)
  for p in ctx.ps((4.0, )):
    for z in sample_disk(rng, 0.5, ctx.n(50)):
      f = random_function(ctx.disk.basis, rng)

      def check(c, p=p, z=z, f=f):
        return inequalities.check_main_inequality(c.disc, p, z,
                                                  _unit_lift(f, c.disc, p),
                                                  cache=c)

      yield cache, check


def _application(ctx: SuiteContext, rng: np.random.Generator) -> Iterator[Job]:
  cache = ctx.cache(ctx.disk)
  for p in ctx.ps((3.0, )):
    for z, w in sample_disk(rng, 0.5, 2 * ctx.n(50)).reshape(-1, 2):

      def check(c, p=p, z=z, w=w):
        return [inequalities.check_application_inequality(c.disc, p, z, w,
                                                          cache=c)]

      yield cache, check


def _invariance(ctx: SuiteContext, rng: np.random.Generator) -> Iterator[Job]:
  cache = ctx.cache(ctx.disk)
  for p in ctx.ps((2.0, 4.0)):
    for _ in range(ctx.n(10)):
      a, z, w = sample_disk(rng, 0.3, 3)
      phi = float(rng.uniform(0.0, 2 * math.pi))

      def check(c, p=p, z=z, w=w, a=a, phi=phi):
        return invariance.check_invariance(c.disc, p, z, w, a, phi, cache=c)

      yield cache, check


def _holder(ctx: SuiteContext, rng: np.random.Generator) -> Iterator[Job]:
  cache = ctx.cache(ctx.disk)
  for p in ctx.ps((4.0, 1.5)):
    # Each run draws from its own child stream so re-runs see the same pairs.
    seed = int(rng.integers(2**63))

    def check(c, p=p, seed=seed):
      return [
          diagnostics.check_holder(c.disc, p, 0.0, 0.2, ctx.n(8),
                                   np.random.default_rng(seed), cache=c)
      ]

    yield cache, check


def _boundary(ctx: SuiteContext, rng: np.random.Generator) -> Iterator[Job]:
  del rng  # Deterministic.
  cache = ctx.cache(ctx.disk)
  for p in ctx.ps((2.0, )):
    yield cache, functools.partial(_run_boundary, p)


def _run_boundary(p, cache):
  return diagnostics.boundary_diagnostics(p, disc=cache.disc, cache=cache)


def _continuity(ctx: SuiteContext, rng: np.random.Generator) -> Iterator[Job]:
  del rng  # Deterministic.
  cache = ctx.cache(ctx.disk)
  for center in ctx.ps((2.0, )):
    grid = [center + q - 2.0 for q in CONTINUITY_GRID]

    def check(c, center=center, grid=grid):
      return diagnostics.p_continuity_sweep(c.disc, 0.0, 0.5, center, grid,
                                            cache=c)

    yield cache, check


def _taylor(ctx: SuiteContext, rng: np.random.Generator) -> Iterator[Job]:
  for p in ctx.ps((1.5, 2.0, 3.0, 4.7)):
    pairs = sample_disk(rng, 2.0, 2 * ctx.n(1000)).reshape(-1, 2)

    def check(_, p=p, pairs=pairs):
      reports = []
      for a, b in pairs:
        reports.extend(inequalities.check_taylor_inequalities(a, b, p))
      return reports

    yield None, check


def _product(ctx: SuiteContext, rng: np.random.Generator) -> Iterator[Job]:
  cache = ctx.cache(ctx.bidisc)
  ps = ctx.ps((2.0, ))
  for p in ps:
    for z, w in sample_disk(rng, 0.5, 4 * ctx.n(20)).reshape(-1, 2, 2):

      def check(c, p=p, z=z, w=w):
        return [inequalities.check_product_subadditivity(c.disc, p, z, w,
                                                         cache=c)]

      yield cache, check
  small = ctx.cache(
      discretize(bidisc(), METRIC_BOUND_DEGREE, None, *METRIC_BOUND_QUAD))
  for p in ps:

    def bound(c, p=p):
      return [
          inequalities.check_product_metric_bound(c.disc, p, (0.0, 0.0),
                                                  (0.0, 1.0), ctx.opts)
      ]

    yield small, bound
  if 2.0 in ps:
    yield ctx.cache(ctx.disk), _disk_metric


def _disk_metric(cache):
  b = bergman_metric(cache.disc, 2, 0.0, 1.0, cache.opts).b_value
  return [
      equality_report('disk-metric', inequalities.params_for(2, cache.disc),
                      b, math.sqrt(2.0), inequalities.METRIC_BOUND_TOLERANCE)
  ]


def _reproducing(ctx: SuiteContext, rng: np.random.Generator) -> Iterator[Job]:
  cache = ctx.cache(ctx.disk)
  for p in ctx.ps((1.5, 2.0, 3.0)):
    for z0 in (0.0, 0.3):
      for _ in range(ctx.n(10)):
        f = random_function(ctx.disk.basis, rng)

        def check(c, p=p, z0=z0, f=f):
          return [oracles.check_reproducing(c.disc, p, z0,
                                            f.lifted(c.disc.basis), cache=c)]

        yield cache, check


def _oracle(ctx: SuiteContext, rng: np.random.Generator) -> Iterator[Job]:
  cache = ctx.cache(ctx.disk)
  samples = sample_disk(rng, 0.9, 20)
  yield cache, lambda c: [oracles.check_minimizer_oracle(
      c.disc, 2, 0.5, samples, cache=c)]
  for p in ctx.ps((2.0, 3.0, 4.0)):
    yield cache, functools.partial(_run_mass_formula, p)
  pairs = [(0.0, 0.5)] + [tuple(x) for x in sample_disk(rng, 0.6, 50).reshape(
      -1, 2)]
  for z, w in pairs:

    def check(c, z=z, w=w):
      return [oracles.check_oracle_agreement(c.disc, z, w, cache=c)]

    yield cache, check


def _run_mass_formula(p, cache):
  return oracles.check_mass_formula(cache.disc, p, 0.5, cache=cache)


def _constants(ctx: SuiteContext, rng: np.random.Generator) -> Iterator[Job]:
  del rng  # Deterministic.
  yield None, lambda _: [constants_lib.check_constants_oracle(4.0)]
  for p in ctx.ps(CONSTANTS_GRID):
    yield None, functools.partial(_run_constants, p)


def _run_constants(p, _):
  return [constants_lib.check_constants_consistency(p)]


SUITES: Dict[str, Callable[[SuiteContext, np.random.Generator],
                           Iterator[Job]]] = {
    'metric-axioms': _metric_axioms,
    'main-inequality': _main_inequality,
    'application': _application,
    'invariance': _invariance,
    'holder': _holder,
    'boundary': _boundary,
    'continuity': _continuity,
    'taylor': _taylor,
    'product': _product,
    'reproducing': _reproducing,
    'oracle': _oracle,
    'constants': _constants,
}
ALL = 'all'


def suite_names() -> List[str]:
  return list(SUITES) + [ALL]


def resolve(name: str) -> List[str]:
  """Suite names behind `name`; raises ParameterError for unknown names."""
  if name == ALL:
    return list(SUITES)
  if name not in SUITES:
    raise ParameterError(f'Unknown suite {name!r}; valid suites are '
                         f'{", ".join(suite_names())}.')
  return [name]


def _run_job(suite: str, ctx: SuiteContext,
             job: Job) -> List[VerificationReport]:
  """Runs one check, once more on the refined discretization if it fails.

  Solver failures count as failed checks; when the re-run fails as well the
  error is recorded as a failing report.
  """
  cache, check = job
  try:
    reports = check(cache)
    if cache is None or not any(r.failed for r in reports):
      return reports
    logging.warning('Suite %s: %s failed; re-running on the refined '
                    'discretization.', suite, reports[0].check)
  except SOLVER_ERRORS as err:
    if cache is None:
      return [error_report(f'{suite}-error', {'suite': suite}, err)]
    logging.warning('Suite %s: %s; re-running on the refined '
                    'discretization.', suite, err)
  try:
    return check(ctx.refined(cache))
  except SOLVER_ERRORS as err:
    return [error_report(f'{suite}-error', {'suite': suite}, err)]


def run_suite(name: str,
              ctx: SuiteContext,
              collector: Optional[ReportCollector] = None) -> ReportCollector:
  """Runs the named suite (or all suites) and collects the reports.

  Checks run on `ctx.workers` threads; reports are collected in the order
  the suite generates its checks, whatever the number of workers.
  """
  collector = collector if collector is not None else ReportCollector()
  for suite in resolve(name):
    logging.info('Running suite %s (seed %d, %d workers).', suite, ctx.seed,
                 ctx.workers)
    jobs = list(SUITES[suite](ctx, ctx.rng(suite)))
    run = functools.partial(_run_job, suite, ctx)
    if ctx.workers > 1:
      with concurrent.futures.ThreadPoolExecutor(ctx.workers) as pool:
        results = list(pool.map(run, jobs))
    else:
      results = [run(job) for job in jobs]
    before = len(collector.reports)
    for reports in results:
      collector.extend(reports)
    logging.info('Suite %s produced %d reports.', suite,
                 len(collector.reports) - before)
  return collector
