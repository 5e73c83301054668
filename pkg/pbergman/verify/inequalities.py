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
"""Checks of the pointwise and integrated inequalities.

Every check returns VerificationReport objects for claims of the form
lhs <= rhs; identities are reported as |difference| <= tolerance.
"""

import math
import warnings
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import scipy.integrate

from pbergman.distance.distance import phase_distance
from pbergman.distance.metric import bergman_metric
from pbergman.errors import ParameterError
from pbergman.function_space.function import CoefFunction, Discretization
from pbergman.geometry.domain import Point
from pbergman.minimizer.spec import SolverOptions
from pbergman.verify.constants import appendix_constants
from pbergman.verify.report import (DEFAULT_TOLERANCE, VerificationReport,
                                    equality_report, make_report, point_json)
from pbergman.verify.solutions import SolutionCache

TAYLOR_TOLERANCE = 1e-10
SYMMETRY_TOLERANCE = 1e-9
TRIANGLE_TOLERANCE = 1e-8
# Distinct points closer in rho than this count as identified.
POSITIVITY_FLOOR = 1e-12
METRIC_BOUND_TOLERANCE = 1e-3


def params_for(p: float, disc: Optional[Discretization] = None,
               **points) -> Dict[str, Any]:
  params: Dict[str, Any] = {'p': float(p)}
  if disc is not None:
    params['domain'] = disc.domain.describe()
  for name, point in points.items():
    params[name] = point_json(point)
  return params


def cache_for(disc: Discretization, opts: Optional[SolverOptions],
              cache: Optional[SolutionCache]) -> SolutionCache:
  if cache is not None:
    if cache.disc is not disc:
      raise ParameterError('Cache was built for another discretization.')
    return cache
  return SolutionCache(disc, opts)


def _power(x: float, p: float) -> float:
  """|x|^p with 0^p = 0 for every p, so |a|^(p-2) a vanishes at a = 0."""
  return 0.0 if x == 0.0 else x**p


def _segment_integral(a: complex, b: complex, p: float) -> float:
  """int_0^1 (1 - t) |a + t (b - a)|^(p-2) dt."""
  v = b - a
  t0 = -(np.conj(a) * v).real / abs(v)**2
  points = [t0] if 0.0 < t0 < 1.0 else None

  def integrand(t):
    r = abs(a + t * v)
    if r == 0.0 and p < 2.0:
      return math.inf
    return (1 - t) * r**(p - 2)

  with warnings.catch_warnings():
    warnings.simplefilter('ignore', scipy.integrate.IntegrationWarning)
    value, _ = scipy.integrate.quad(integrand,
                                    0.0,
                                    1.0,
                                    points=points,
                                    epsabs=1e-14,
                                    epsrel=1e-13,
                                    limit=200)
  return value


def _two_point_bracket(a: complex, b: complex, p: float) -> float:
  """|b|^p + |a|^p - Re(|b|^(p-2) conj(b) a + |a|^(p-2) conj(a) b)."""
  cross = (_power(abs(b), p - 2) * np.conj(b) * a +
           _power(abs(a), p - 2) * np.conj(a) * b)
  return abs(b)**p + abs(a)**p - cross.real


def check_taylor_inequalities(a: complex, b: complex,
                              p: float) -> List[VerificationReport]:
  """Scalar Taylor-type bounds for kappa(t) = |a + t (b - a)|^p.

  Always reports the lower and upper bounds obtained from
  p min{1, p-1} |a_t|^(p-2) |b-a|^2 <= kappa'' <= p max{1, p-1} ... .
  For p >= 2 the two-point bound |b-a|^p <= 2^(p-1) [bracket] follows, for
  1 < p < 2 the bound (p-1)|b-a|^2 (|a|+|b|)^(p-2) <= [bracket], and for
  p > 2 the sharp form |b|^p >= |a|^p + p Re(...) + 4^(-(p+3)) |b-a|^p.

  Args:
    a: First point.
    b: Second point.
    p: Exponent, at least 1.

  Returns:
    Reports in the order lower, upper, then the applicable extras.
  """
  a, b, p = complex(a), complex(b), float(p)
  if p < 1.0:
    raise ParameterError(f'p must be at least 1, got {p}.')
  diff = abs(b - a)
  scale = max(1.0, abs(a)**p, abs(b)**p)
  tolerance = TAYLOR_TOLERANCE * scale
  params = {'p': p, 'a': point_json(a), 'b': point_json(b)}
  first_order = p * (_power(abs(a), p - 2) * np.conj(a) * (b - a)).real
  base = abs(a)**p + first_order
  integral = diff**2 * _segment_integral(a, b, p) if diff > 0 else 0.0
  if not math.isfinite(integral):
    integral = math.inf
  low = p * min(1.0, p - 1.0) * integral if p > 1.0 else 0.0
  high = p * max(1.0, p - 1.0) * integral
  reports = [
      make_report('taylor-lower', params, base + low, abs(b)**p, tolerance),
      make_report('taylor-upper', params, abs(b)**p, base + high, tolerance),
  ]
  bracket = _two_point_bracket(a, b, p)
  if p >= 2.0:
    reports.append(
        make_report('taylor-two-point', params, diff**p,
                    2**(p - 1) * bracket, tolerance))
  elif p > 1.0:
    lhs = (p - 1) * diff**2 * (abs(a) + abs(b))**(p - 2) if diff > 0 else 0.0
    reports.append(
        make_report('taylor-two-point', params, lhs, bracket, tolerance))
  if p > 2.0:
    reports.append(
        make_report('taylor-sharp', params, base + 4**-(p + 3) * diff**p,
                    abs(b)**p, tolerance))
  return reports


def check_main_inequality(disc: Discretization,
                          p: float,
                          z: Point,
                          f: CoefFunction,
                          opts: Optional[SolverOptions] = None,
                          cache: Optional[SolutionCache] = None
                          ) -> List[VerificationReport]:
  """c_p d^p <= 1 - m_p(z)|f(z)| <= C_p d^2 for a unit-norm f.

  d is the projective distance of [m_p(., z)] and [f]; note
  1 - m_p(z)|f(z)| = 1 - |f(z)| / K_p(z)^(1/p).

  Returns:
    Two reports, lower bound first.

  Raises:
    ParameterError: if p <= 2 or f is not normalized.
  """
  if not p > 2.0:
    raise ParameterError(f'The two-sided bound needs p > 2, got {p}.')
  cache = cache_for(disc, opts, cache)
  norm = f.lp_norm(disc.rule, p)
  if abs(norm - 1.0) > 1e-8:
    raise ParameterError(f'f must have unit norm, got {norm}.')
  sol = cache.solution(p, z)
  phase = phase_distance(cache.unit_values(p, z), f.values_on(disc.rule),
                         disc.rule.weights, p)
  d = phase.value
  middle = 1.0 - sol.m_value * abs(f(sol.z0))
  constants = appendix_constants(p)
  params = params_for(p, disc, z=z)
  params.update(d=d, lower_constant=constants.lower,
                upper_constant=constants.upper)
  return [
      make_report('main-inequality-lower', params, constants.lower * d**p,
                  middle),
      make_report('main-inequality-upper', params, middle,
                  constants.upper * d**2),
  ]


def check_application_inequality(
    disc: Discretization,
    p: float,
    z: Point,
    w: Point,
    opts: Optional[SolverOptions] = None,
    cache: Optional[SolutionCache] = None) -> VerificationReport:
  """|m_p(z, w)| <= (m_p(w) / m_p(z)) (1 - rho_p(z, w)^p / (p 4^(p+3)))."""
  if not p > 2.0:
    raise ParameterError(f'The sharpened bound needs p > 2, got {p}.')
  cache = cache_for(disc, opts, cache)
  at_z = cache.solution(p, z)
  at_w = cache.solution(p, w)
  rho = cache.distance(p, z, w).rho
  lhs = abs(at_w.minimizer(at_z.z0))
  rhs = at_w.m_value / at_z.m_value * (1.0 - rho**p / (p * 4**(p + 3)))
  params = params_for(p, disc, z=z, w=w)
  params['rho'] = rho
  return make_report('application-inequality', params, lhs, rhs)


def _f_term(cache: SolutionCache, p: float, z: Point, w: Point) -> complex:
  """F(z, w) = (m_p(w) - m_p(z, w) m_p(z)) / m_p(w)."""
  at_z = cache.solution(p, z)
  at_w = cache.solution(p, w)
  return (at_w.m_value - at_w.minimizer(at_z.z0) * at_z.m_value) / at_w.m_value


def check_distance_upper_bound(
    disc: Discretization,
    p: float,
    z: Point,
    w: Point,
    opts: Optional[SolverOptions] = None,
    cache: Optional[SolutionCache] = None) -> VerificationReport:
  """Bounds rho_p(z, w)^p by Re[F(z, w) + F(w, z)].

  For p >= 2 the bound is 2^(p-1) Re[F(z, w) + F(w, z)]; for 1 < p < 2 it is
  2^(p(1-p/2)) (p-1)^(-p/2) Re[F(z, w) + F(w, z)]^(p/2).
  """
  if not p > 1.0:
    raise ParameterError(f'The distance bound needs p > 1, got {p}.')
  cache = cache_for(disc, opts, cache)
  rho = cache.distance(p, z, w).rho
  total = max(0.0, (_f_term(cache, p, z, w) + _f_term(cache, p, w, z)).real)
  if p >= 2.0:
    rhs = 2**(p - 1) * total
  else:
    rhs = 2**(p * (1 - p / 2)) * (p - 1)**(-p / 2) * total**(p / 2)
  params = params_for(p, disc, z=z, w=w)
  params['rho'] = rho
  return make_report('distance-upper-bound', params, rho**p, rhs)


def check_p2_identity(disc: Discretization,
                      z: Point,
                      f: CoefFunction,
                      opts: Optional[SolverOptions] = None,
                      cache: Optional[SolutionCache] = None
                      ) -> VerificationReport:
  """|f(z)| m_2(z) = 1 - d^2 / 2 for unit-norm f at p = 2."""
  cache = cache_for(disc, opts, cache)
  unit = f.normalized(disc.rule, 2)
  sol = cache.solution(2, z)
  d = phase_distance(cache.unit_values(2, z), unit.values_on(disc.rule),
                     disc.rule.weights, 2).value
  return equality_report('p2-identity', params_for(2, disc, z=z),
                         abs(unit(sol.z0)) * sol.m_value, 1.0 - d**2 / 2,
                         DEFAULT_TOLERANCE)


def check_metric_axioms(disc: Discretization,
                        p: float,
                        z: Point,
                        w: Point,
                        v: Point,
                        opts: Optional[SolverOptions] = None,
                        cache: Optional[SolutionCache] = None
                        ) -> List[VerificationReport]:
  """Symmetry, triangle inequality and identity of points for one triple.

  The identity report checks rho(z, z) = 0. For z != w the
  `metric-positivity` report requires rho(z, w) >= POSITIVITY_FLOOR.
  """
  cache = cache_for(disc, opts, cache)
  zw = cache.distance(p, z, w).rho
  wz = cache.distance(p, w, z).rho
  wv = cache.distance(p, w, v).rho
  zv = cache.distance(p, z, v).rho
  zz = cache.distance(p, z, z).rho
  params = params_for(p, disc, z=z, w=w, v=v)
  reports = [
      equality_report('metric-symmetry', params, zw, wz, SYMMETRY_TOLERANCE),
      make_report('metric-triangle', params, zv, zw + wv, TRIANGLE_TOLERANCE),
      make_report('metric-identity', params, zz, 0.0, TRIANGLE_TOLERANCE),
  ]
  if not np.array_equal(disc.domain.check_point(z), disc.domain.check_point(w)):
    reports.append(
        make_report('metric-positivity', params, POSITIVITY_FLOOR, zw, 0.0))
  return reports


def check_product_subadditivity(
    disc: Discretization,
    p: float,
    z: Point,
    w: Point,
    opts: Optional[SolverOptions] = None,
    cache: Optional[SolutionCache] = None) -> VerificationReport:
  """rho_Omega(z, w) <= rho_1(z1, w1) + rho_2(z2, w2) on a product."""
  cache = cache_for(disc, opts, cache)
  zp = disc.domain.check_point(z)
  wp = disc.domain.check_point(w)
  cut = disc.domain.left.dimension
  left, right = cache.factor_caches()
  whole = cache.distance(p, zp, wp).rho
  parts = (left.distance(p, zp[:cut], wp[:cut]).rho +
           right.distance(p, zp[cut:], wp[cut:]).rho)
  return make_report('product-subadditivity', params_for(p, disc, z=z, w=w),
                     whole, parts)


def check_product_metric_bound(
    disc: Discretization,
    p: float,
    z: Point,
    direction: Sequence[complex],
    opts: Optional[SolverOptions] = None) -> VerificationReport:
  """B_Omega(z; X) >= max_i B_{Omega_i}(z_i; X_i) on a product."""
  zp = disc.domain.check_point(z)
  x = np.atleast_1d(np.asarray(direction, dtype=complex))
  cut = disc.domain.left.dimension
  whole = bergman_metric(disc, p, zp, x, opts).b_value
  best = 0.0
  for factor, sl in zip(disc.factors(), (slice(0, cut), slice(cut, None))):
    if np.any(x[sl]):
      best = max(best, bergman_metric(factor, p, zp[sl], x[sl], opts).b_value)
  params = params_for(p, disc, z=z, direction=x)
  return make_report('product-metric-bound', params, best, whole,
                     METRIC_BOUND_TOLERANCE)
