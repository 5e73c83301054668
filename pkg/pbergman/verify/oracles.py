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
"""Agreement of the solver with the closed forms on the disk."""

from typing import List, Optional, Sequence

import numpy as np

from pbergman.distance.distance import skw_distance_p2_oracle
from pbergman.errors import ParameterError
from pbergman.function_space.function import CoefFunction, Discretization
from pbergman.geometry.domain import DomainKind, Point
from pbergman.minimizer.closed_form import (disk_closed_form,
                                            disk_closed_form_mass,
                                            remark_literal_mass)
from pbergman.minimizer.solver import reproducing_residual
from pbergman.minimizer.spec import SolverOptions
from pbergman.verify.inequalities import cache_for, params_for
from pbergman.verify.report import (VerificationReport, equality_report,
                                    make_report)
from pbergman.verify.solutions import SolutionCache

POINTWISE_TOLERANCE = 1e-6
MASS_TOLERANCE = 1e-6
DISTANCE_ORACLE_TOLERANCE = 1e-4
REPRODUCING_TOLERANCE = 1e-5
# The unsquared mass formula must differ from the solver by more than this.
LITERAL_GAP = 1e-2


def require_disk(disc: Discretization):
  if disc.domain.kind != DomainKind.DISK:
    raise ParameterError(
        f'This check runs on the unit disk, got the {disc.domain.describe()}.')


def check_minimizer_oracle(disc: Discretization,
                           p: float,
                           w: complex,
                           points: Sequence[complex],
                           tolerance: float = POINTWISE_TOLERANCE,
                           opts: Optional[SolverOptions] = None,
                           cache: Optional[SolutionCache] = None
                           ) -> VerificationReport:
  """Largest relative pointwise error of m_p(., w) against the closed form."""
  require_disk(disc)
  cache = cache_for(disc, opts, cache)
  sol = cache.solution(p, w)
  pts = np.asarray(points, dtype=complex)
  exact = disk_closed_form(pts, w, p)
  error = float(np.max(np.abs(sol.minimizer.evaluate(pts) - exact) /
                       np.abs(exact))) if pts.size else 0.0
  params = params_for(p, disc, w=w)
  params['samples'] = int(pts.size)
  return make_report('minimizer-oracle', params, error, 0.0, tolerance)


def check_mass_formula(disc: Discretization,
                       p: float,
                       w: complex,
                       opts: Optional[SolverOptions] = None,
                       cache: Optional[SolutionCache] = None
                       ) -> List[VerificationReport]:
  """m_p(w) agrees with [pi (1-|w|^2)^2]^(1/p) and not with the unsquared form.

  Returns:
    The agreement report, then the report that the gap to the unsquared
    formula exceeds LITERAL_GAP.
  """
  require_disk(disc)
  cache = cache_for(disc, opts, cache)
  m_value = cache.solution(p, w).m_value
  params = params_for(p, disc, w=w)
  literal = remark_literal_mass(w, p)
  return [
      equality_report('mass-formula', params, m_value,
                      disk_closed_form_mass(w, p), MASS_TOLERANCE,
                      relative=True),
      make_report('mass-formula-literal-gap', dict(params, literal=literal),
                  LITERAL_GAP, abs(m_value - literal), 0.0),
  ]


def check_oracle_agreement(disc: Discretization,
                           z: complex,
                           w: complex,
                           opts: Optional[SolverOptions] = None,
                           cache: Optional[SolutionCache] = None
                           ) -> VerificationReport:
  """rho_2 from the solver against the Bergman-kernel closed form."""
  require_disk(disc)
  cache = cache_for(disc, opts, cache)
  rho = cache.distance(2, z, w).rho
  return equality_report('distance-oracle', params_for(2, disc, z=z, w=w), rho,
                         skw_distance_p2_oracle(z, w),
                         DISTANCE_ORACLE_TOLERANCE)


def check_reproducing(disc: Discretization,
                      p: float,
                      z0: Point,
                      f: CoefFunction,
                      opts: Optional[SolverOptions] = None,
                      cache: Optional[SolutionCache] = None
                      ) -> VerificationReport:
  """The reproducing formula for f at z0, relative to max(1, |f(z0)|)."""
  cache = cache_for(disc, opts, cache)
  sol = cache.solution(p, z0)
  residual = reproducing_residual(f, sol, disc)
  scale = max(1.0, abs(f(sol.z0)))
  return make_report('reproducing', params_for(p, disc, z0=z0),
                     residual / scale, 0.0, REPRODUCING_TOLERANCE)
