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
"""Truncated holomorphic bases on the model domains.

Disk functions are expanded in monomials z^k, 0 <= k <= N, annulus functions
in Laurent monomials z^k, -M <= k <= N, and functions on a product domain in
products of factor basis functions, indexed with the left factor varying
slowest (the Kronecker ordering).
"""

import abc
from typing import Optional

import numpy as np

from pbergman.errors import ParameterError
from pbergman.geometry.domain import DomainKind, DomainSpec

DEFAULT_DISK_DEGREE = 24
DEFAULT_LAURENT_RANGE = 16


class Basis(abc.ABC):
  """A finite family of holomorphic functions on `domain`."""
  def __init__(self, domain: DomainSpec):
    self._domain = domain

  @property
  def domain(self) -> DomainSpec:
    return self._domain

  @property
  @abc.abstractmethod
  def size(self) -> int:
    """Number of basis functions."""

  @abc.abstractmethod
  def rows(self, points: np.ndarray) -> np.ndarray:
    """Basis values at points of shape (n, dimension); returns (n, size)."""

  @abc.abstractmethod
  def derivative_rows(self, points: np.ndarray,
                      direction: np.ndarray) -> np.ndarray:
    """Values of sum_j X_j d(phi_k)/dz_j at points; returns (n, size)."""

  @abc.abstractmethod
  def orders(self) -> np.ndarray:
    """Total absolute degree of every basis function."""

  @abc.abstractmethod
  def refined(self) -> 'Basis':
    """The same kind of basis with the degree range doubled."""

  @abc.abstractmethod
  def positions_of(self, coarse: 'Basis') -> np.ndarray:
    """Index in this basis of every element of `coarse`, a sub-basis."""


class PowerBasis(Basis):
  """Monomials z^k for low <= k <= high on a disk or an annulus."""
  def __init__(self, domain: DomainSpec, low: int, high: int):
    super().__init__(domain)
    if domain.kind == DomainKind.PRODUCT:
      raise ParameterError('PowerBasis lives on planar domains only.')
    if domain.kind == DomainKind.DISK and low < 0:
      raise ParameterError(
          f'Negative powers are not holomorphic on the disk, got low={low}.')
    if high < low or high < 0:
      raise ParameterError(f'Invalid exponent range [{low}, {high}].')
    self._exponents = np.arange(low, high + 1)

  @property
  def exponents(self) -> np.ndarray:
    return self._exponents

  @property
  def size(self) -> int:
    return self._exponents.size

  def rows(self, points: np.ndarray) -> np.ndarray:
    z = np.asarray(points, dtype=complex).reshape(-1, 1)
    return z**self._exponents[None, :]

  def derivative_rows(self, points: np.ndarray,
                      direction: np.ndarray) -> np.ndarray:
    z = np.asarray(points, dtype=complex).reshape(-1, 1)
    k = self._exponents
    shifted = np.where(k == 0, 0, k - 1)
    return complex(np.ravel(direction)[0]) * k[None, :] * z**shifted[None, :]

  def orders(self) -> np.ndarray:
    return np.abs(self._exponents)

  def refined(self) -> 'PowerBasis':
    return PowerBasis(self.domain, 2 * int(self._exponents[0]),
                      2 * int(self._exponents[-1]))

  def positions_of(self, coarse: Basis) -> np.ndarray:
    if not isinstance(coarse, PowerBasis) or coarse.domain != self.domain or (
        coarse.exponents[0] < self._exponents[0] or
        coarse.exponents[-1] > self._exponents[-1]):
      raise ParameterError(f'{coarse!r} is not contained in {self!r}.')
    return coarse.exponents - self._exponents[0]

  def __repr__(self) -> str:
    return (f'{self.__class__.__name__}({self.domain.describe()}, '
            f'{self._exponents[0]}..{self._exponents[-1]})')


class ProductBasis(Basis):
  """Products phi_a(z') * psi_b(z'') of two factor bases."""
  def __init__(self, domain: DomainSpec, left: Basis, right: Basis):
    super().__init__(domain)
    if domain.kind != DomainKind.PRODUCT or (left.domain, right.domain) != (
        domain.left, domain.right):
      raise ParameterError('Factor bases do not match the product domain.')
    self.left = left
    self.right = right

  @property
  def size(self) -> int:
    return self.left.size * self.right.size

  def _split(self, points: np.ndarray):
    points = np.asarray(points,
                        dtype=complex).reshape(-1, self.domain.dimension)
    cut = self.domain.left.dimension
    return points[:, :cut], points[:, cut:]

  @staticmethod
  def _row_kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a[:, :, None] * b[:, None, :]).reshape(a.shape[0], -1)

  def rows(self, points: np.ndarray) -> np.ndarray:
    lpts, rpts = self._split(points)
    return self._row_kron(self.left.rows(lpts), self.right.rows(rpts))

  def derivative_rows(self, points: np.ndarray,
                      direction: np.ndarray) -> np.ndarray:
    lpts, rpts = self._split(points)
    direction = np.ravel(np.asarray(direction, dtype=complex))
    cut = self.domain.left.dimension
    left_rows, right_rows = self.left.rows(lpts), self.right.rows(rpts)
    return (
        self._row_kron(self.left.derivative_rows(lpts, direction[:cut]),
                       right_rows) +
        self._row_kron(left_rows,
                       self.right.derivative_rows(rpts, direction[cut:])))

  def orders(self) -> np.ndarray:
    return np.add.outer(self.left.orders(), self.right.orders()).ravel()

  def refined(self) -> 'ProductBasis':
    return ProductBasis(self.domain, self.left.refined(), self.right.refined())

  def positions_of(self, coarse: Basis) -> np.ndarray:
    if not isinstance(coarse, ProductBasis) or coarse.domain != self.domain:
      raise ParameterError(f'{coarse!r} is not contained in {self!r}.')
    left = self.left.positions_of(coarse.left)
    right = self.right.positions_of(coarse.right)
    return (left[:, None] * self.right.size + right[None, :]).ravel()

  def __repr__(self) -> str:
    return f'{self.__class__.__name__}({self.left!r}, {self.right!r})'


def build_basis(domain: DomainSpec,
                degree: Optional[int] = None,
                laurent: Optional[int] = None) -> Basis:
  """Builds the default truncated basis for `domain`.

  Args:
    domain: Disk, annulus or product domain.
    degree: Highest power N; defaults to 24 on the disk and 16 on annuli.
      On products it applies to every planar factor.
    laurent: Most negative power -M on annuli; defaults to 16.

  Returns:
    A PowerBasis, or a ProductBasis of factor bases.
  """
  if domain.kind == DomainKind.PRODUCT:
    return ProductBasis(domain, build_basis(domain.left, degree, laurent),
                        build_basis(domain.right, degree, laurent))
  if domain.kind == DomainKind.DISK:
    return PowerBasis(domain, 0,
                      DEFAULT_DISK_DEGREE if degree is None else degree)
  high = DEFAULT_LAURENT_RANGE if degree is None else degree
  low = DEFAULT_LAURENT_RANGE if laurent is None else laurent
  return PowerBasis(domain, -low, high)
