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
"""Memoized minimizer solves shared by the checks of a suite."""

import threading
from typing import Dict, Optional, Tuple

import numpy as np

from pbergman.distance.distance import (DistanceResult,
                                        distance_from_solutions,
                                        unit_minimizer_values)
from pbergman.function_space.function import Discretization
from pbergman.geometry.domain import DomainKind, Point
from pbergman.minimizer.solver import product_solution, solve_minimizer
from pbergman.minimizer.spec import MinimizerSolution, SolverOptions

_Key = Tuple[float, Tuple[complex, ...]]


class SolutionCache:
  """Solves m_p(., z) once per (p, z) on a fixed discretization."""
  def __init__(self,
               disc: Discretization,
               opts: Optional[SolverOptions] = None,
               use_product_rule: bool = True):
    self.disc = disc
    self.opts = opts
    self._product = use_product_rule and disc.domain.kind == DomainKind.PRODUCT
    self._lock = threading.Lock()
    self._solutions: Dict[_Key, MinimizerSolution] = {}
    self._factors: Optional[Tuple['SolutionCache', 'SolutionCache']] = None

  def _key(self, p: float, z: Point) -> _Key:
    point = self.disc.domain.check_point(z)
    return float(p), tuple(complex(c) for c in point)

  def solution(self, p: float, z: Point) -> MinimizerSolution:
    key = self._key(p, z)
    with self._lock:
      cached = self._solutions.get(key)
    if cached is not None:
      return cached
    if self._product:
      cut = self.disc.domain.left.dimension
      point = np.asarray(key[1])
      left, right = self.factor_caches()
      sol = product_solution(self.disc, left.solution(p, point[:cut]),
                             right.solution(p, point[cut:]))
    else:
      sol = solve_minimizer(self.disc, p, z, self.opts)
    with self._lock:
      return self._solutions.setdefault(key, sol)

  def unit_values(self, p: float, z: Point) -> np.ndarray:
    return unit_minimizer_values(self.disc, self.solution(p, z))

  def distance(self, p: float, z: Point, w: Point) -> DistanceResult:
    first = self.solution(p, z)
    second = first if self._key(p, z) == self._key(p, w) else self.solution(
        p, w)
    return distance_from_solutions(self.disc, float(p), first, second)

  def factor_caches(self) -> Tuple['SolutionCache', 'SolutionCache']:
    """Caches on the two factors of a product discretization."""
    with self._lock:
      if self._factors is None:
        left, right = self.disc.factors()
        self._factors = (SolutionCache(left, self.opts),
                         SolutionCache(right, self.opts))
      return self._factors

  def refined(self) -> 'SolutionCache':
    return SolutionCache(self.disc.refined(), self.opts, self._product)

  def __len__(self) -> int:
    with self._lock:
      return len(self._solutions)
