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
"""Invariance of m_p and rho_p under disk automorphisms."""

import cmath
from typing import List, Optional

import numpy as np

from pbergman.distance.distance import skw_distance_p2_oracle
from pbergman.errors import ParameterError
from pbergman.function_space.function import Discretization
from pbergman.minimizer.spec import SolverOptions
from pbergman.verify.inequalities import cache_for, params_for
from pbergman.verify.oracles import DISTANCE_ORACLE_TOLERANCE, require_disk
from pbergman.verify.report import VerificationReport, equality_report
from pbergman.verify.solutions import SolutionCache

DISTANCE_TOLERANCE = 1e-3
LAW_TOLERANCE = 1e-4


def disk_automorphism(a: complex, phi: float) -> np.ndarray:
  """SL(2, C) matrix of F(zeta) = e^{i phi} (zeta - a) / (1 - conj(a) zeta)."""
  a = complex(a)
  if not abs(a) < 1.0:
    raise ParameterError(
        f'Automorphism parameter must satisfy |a| < 1, got {a}.')
  rot = cmath.exp(1j * phi)
  m = np.array([[rot, -a * rot], [-a.conjugate(), 1.0]], dtype=complex)
  return m / np.sqrt(np.linalg.det(m))


def transform_point(m: np.ndarray, z: complex) -> complex:
  return complex((m[0, 0] * z + m[0, 1]) / (m[1, 0] * z + m[1, 1]))


def transform_derivative(m: np.ndarray, z: complex) -> complex:
  """F'(z) = 1 / (c z + d)^2 for a matrix of determinant one."""
  return complex(1.0 / (m[1, 0] * z + m[1, 1])**2)


def check_invariance(disc: Discretization,
                     p: float,
                     z: complex,
                     w: complex,
                     a: complex,
                     phi: float,
                     opts: Optional[SolverOptions] = None,
                     cache: Optional[SolutionCache] = None
                     ) -> List[VerificationReport]:
  """Compares rho_p(z, w) with rho_p(F(z), F(w)) and checks the law for m_p.

  The law is m_p(w) = m_p(F(w)) |F'(w)|^(-2/p). At p = 2 both distances are
  also compared with the Bergman-kernel closed form, which is exactly
  invariant.

  Returns:
    Distance report, law report and, at p = 2, the closed-form report.

  Raises:
    ParameterError: if |a| >= 1 or the domain is not the disk.
  """
  require_disk(disc)
  m = disk_automorphism(a, phi)
  cache = cache_for(disc, opts, cache)
  z, w = complex(z), complex(w)
  fz, fw = transform_point(m, z), transform_point(m, w)
  before = cache.distance(p, z, w).rho
  after = cache.distance(p, fz, fw).rho
  params = params_for(p, disc, z=z, w=w, a=a)
  params['phi'] = float(phi)
  reports = [
      equality_report('invariance-distance', params, before, after,
                      DISTANCE_TOLERANCE)
  ]
  mass = cache.solution(p, w).m_value
  moved = cache.solution(p, fw).m_value * abs(transform_derivative(
      m, w))**(-2.0 / p)
  reports.append(
      equality_report('invariance-law', params, moved, mass, LAW_TOLERANCE,
                      relative=True))
  if p == 2.0:
    oracle = skw_distance_p2_oracle(z, w)
    reports.append(
        equality_report('invariance-oracle', params,
                        max(abs(before - oracle), abs(after - oracle)), 0.0,
                        DISTANCE_ORACLE_TOLERANCE))
  return reports
