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
"""Closed forms on the unit disk, used as oracles.

On the disk the minimizer is

  m_p(zeta, w) = [(1 - |w|^2) / (1 - zeta conj(w))]^(4/p).

Integrating it gives m_p(w) = [pi (1 - |w|^2)^2]^(1/p). The often-quoted
[pi (1 - |w|^2)]^(1/p) drops the square; it is kept as `remark_literal_mass`
only so the discrepancy can be asserted.
"""

import math

import numpy as np


def disk_closed_form(zeta, w, p: float):
  """m_p(zeta, w) on the disk, principal branch (Re(1 - zeta conj(w)) > 0)."""
  zeta = np.asarray(zeta, dtype=complex)
  w = complex(w)
  base = (1.0 - abs(w)**2) / (1.0 - zeta * np.conj(w))
  result = base**(4.0 / p)
  return complex(result) if result.ndim == 0 else result


def disk_closed_form_mass(w: complex, p: float) -> float:
  """m_p(w) = [pi (1 - |w|^2)^2]^(1/p) on the disk."""
  return (math.pi * (1.0 - abs(w)**2)**2)**(1.0 / p)


def remark_literal_mass(w: complex, p: float) -> float:
  """[pi (1 - |w|^2)]^(1/p): the mass formula without the square."""
  return (math.pi * (1.0 - abs(w)**2))**(1.0 / p)


def disk_bergman_kernel(z: complex, w: complex) -> complex:
  """K_2(z, w) = 1 / (pi (1 - z conj(w))^2)."""
  return 1.0 / (math.pi * (1.0 - complex(z) * np.conj(complex(w)))**2)


def disk_kernel_diag(w: complex, p: float) -> float:
  """K_p(w) = m_p(w)^(-p) = 1 / (pi (1 - |w|^2)^2)."""
  return disk_closed_form_mass(w, p)**(-p)
