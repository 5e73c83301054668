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
"""Constants of the two-sided distance inequality for p > 2.

For p > 2 and unit vectors the middle term 1 - m_p(z)|f(z)| is squeezed
between c_p d^p and C_p d^2. The constants come from two auxiliary integrals

  I1 = int_0^{1/4} (1 - t)(1/2 - t)^(p-2) dt,
  I2 = int_{3/4}^1 (1 - t)(t - 1/2)^(p-2) dt,

with c_p = p min(I1, I2) and C_p = p(p - 1) 3^((p-2)/p) / 2.
"""

import dataclasses
from typing import Optional, Sequence, Tuple

import numpy as np
import scipy.integrate

from pbergman.errors import ParameterError
from pbergman.verify.report import VerificationReport, make_report

_QUAD_TOLERANCE = 1e-12


@dataclasses.dataclass(frozen=True)
class InequalityConstants:
  """c_p, C_p and the integrals they are built from."""
  p: float
  lower: float
  upper: float
  i1: float
  i2: float


def upper_constant(p: float) -> float:
  """C_p = p(p - 1) 3^((p-2)/p) / 2; equals 1 at p = 2."""
  return p * (p - 1) * 3.0**((p - 2) / p) / 2


def appendix_constants(p: float) -> InequalityConstants:
  """Computes I1, I2 by adaptive quadrature and the constants c_p, C_p.

  Raises:
    ParameterError: if p <= 2.
  """
  p = float(p)
  if not p > 2.0:
    raise ParameterError(f'The constants are defined for p > 2, got {p}.')
  i1, _ = scipy.integrate.quad(lambda t: (1 - t) * (0.5 - t)**(p - 2),
                               0.0,
                               0.25,
                               epsabs=_QUAD_TOLERANCE,
                               epsrel=_QUAD_TOLERANCE)
  i2, _ = scipy.integrate.quad(lambda t: (1 - t) * (t - 0.5)**(p - 2),
                               0.75,
                               1.0,
                               epsabs=_QUAD_TOLERANCE,
                               epsrel=_QUAD_TOLERANCE)
  return InequalityConstants(p=p,
                             lower=p * min(i1, i2),
                             upper=upper_constant(p),
                             i1=i1,
                             i2=i2)


def exact_integrals(p: float) -> Tuple[float, float]:
  """I1 and I2 from their antiderivatives in s = |t - 1/2|."""
  def primitive(s, sign):
    return 0.5 * s**(p - 1) / (p - 1) + sign * s**p / p

  i1 = primitive(0.5, 1) - primitive(0.25, 1)
  i2 = primitive(0.5, -1) - primitive(0.25, -1)
  return i1, i2


def check_constants_consistency(
    p: float,
    xs: Optional[Sequence[float]] = None) -> VerificationReport:
  """c_p x^p <= C_p x^2 on [0, 2], the range of the projective distance."""
  constants = appendix_constants(p)
  xs = np.linspace(0.0, 2.0, 201)[1:] if xs is None else np.asarray(xs)
  xs = xs[xs > 0]
  ratio = float(np.max(constants.lower * xs**p / (constants.upper * xs**2)))
  return make_report('constants-consistency', {'p': constants.p}, ratio, 1.0,
                     0.0)


def check_constants_oracle(p: float) -> VerificationReport:
  """Quadrature values of I1, I2 against their antiderivatives."""
  constants = appendix_constants(p)
  exact = exact_integrals(constants.p)
  gap = max(abs(constants.i1 - exact[0]), abs(constants.i2 - exact[1]))
  return make_report('constants-oracle', {
      'p': constants.p,
      'i1': constants.i1,
      'i2': constants.i2,
  }, gap, 0.0, 1e-9)


def constants_table(ps: Sequence[float]):
  """Rows (p, I1, I2, c_p, C_p) for every p > 2."""
  rows = []
  for p in ps:
    c = appendix_constants(p)
    rows.append((c.p, c.i1, c.i2, c.lower, c.upper))
  return rows

