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
"""Model domains: the unit disk, annuli and their products."""

import dataclasses
import enum
import math
from typing import Any, Dict, Optional, Sequence, Union

import numpy as np

from pbergman.errors import ParameterError

Point = Union[complex, Sequence[complex], np.ndarray]


class DomainKind(str, enum.Enum):
  """Determines which model domain a DomainSpec describes."""
  DISK = 'disk'
  ANNULUS = 'annulus'
  PRODUCT = 'product'


@dataclasses.dataclass(frozen=True)
class DomainSpec:
  """A bounded domain in C^n built from disks and annuli.

  Attributes:
    kind: Which model domain this is.
    inner_radius: Inner radius r of an annulus {r < |z| < 1}; None otherwise.
    left: First factor of a product domain.
    right: Second factor of a product domain.
  """
  kind: DomainKind
  inner_radius: Optional[float] = None
  left: Optional['DomainSpec'] = None
  right: Optional['DomainSpec'] = None

  def __post_init__(self):
    if self.kind == DomainKind.ANNULUS:
      if self.inner_radius is None or not 0.0 < self.inner_radius < 1.0:
        raise ParameterError(
            f'Annulus inner radius must lie in (0, 1), got {self.inner_radius}.'
        )
    elif self.kind == DomainKind.PRODUCT:
      if self.left is None or self.right is None:
        raise ParameterError('Product domain needs both factors.')

  @property
  def dimension(self) -> int:
    if self.kind == DomainKind.PRODUCT:
      return self.left.dimension + self.right.dimension
    return 1

  def area(self) -> float:
    """Lebesgue measure of the domain (area for planar domains)."""
    if self.kind == DomainKind.DISK:
      return math.pi
    if self.kind == DomainKind.ANNULUS:
      return math.pi * (1.0 - self.inner_radius**2)
    return self.left.area() * self.right.area()

  def as_point(self, point: Point) -> np.ndarray:
    """Returns `point` as a complex array of length `dimension`."""
    arr = np.atleast_1d(np.asarray(point, dtype=complex))
    if arr.shape != (self.dimension, ):
      raise ParameterError(
          f'Expected a point with {self.dimension} coordinates, got {point}.')
    return arr

  def contains(self, point: Point) -> bool:
    z = self.as_point(point)
    if self.kind == DomainKind.DISK:
      return bool(abs(z[0]) < 1.0)
    if self.kind == DomainKind.ANNULUS:
      return bool(self.inner_radius < abs(z[0]) < 1.0)
    split = self.left.dimension
    return self.left.contains(z[:split]) and self.right.contains(z[split:])

  def check_point(self, point: Point) -> np.ndarray:
    """Like `as_point`, but raises unless the point lies in the domain."""
    z = self.as_point(point)
    if not self.contains(z):
      raise ParameterError(f'Point {point} is outside the {self.describe()}.')
    return z

  def describe(self) -> str:
    if self.kind == DomainKind.DISK:
      return 'unit disk'
    if self.kind == DomainKind.ANNULUS:
      return f'annulus({self.inner_radius})'
    return f'product({self.left.describe()}, {self.right.describe()})'

  def to_dict(self) -> Dict[str, Any]:
    if self.kind == DomainKind.DISK:
      return {'kind': self.kind.value}
    if self.kind == DomainKind.ANNULUS:
      return {'kind': self.kind.value, 'inner_radius': self.inner_radius}
    return {
        'kind': self.kind.value,
        'left': self.left.to_dict(),
        'right': self.right.to_dict(),
    }

  @classmethod
  def from_dict(cls, data: Dict[str, Any]) -> 'DomainSpec':
    try:
      kind = DomainKind(data['kind'])
    except (KeyError, ValueError) as err:
      raise ParameterError(f'Invalid domain description {data}.') from err
    if kind == DomainKind.DISK:
      return disk()
    if kind == DomainKind.ANNULUS:
      return annulus(float(data.get('inner_radius', float('nan'))))
    return product(cls.from_dict(data['left']), cls.from_dict(data['right']))


def disk() -> DomainSpec:
  return DomainSpec(DomainKind.DISK)


def annulus(inner_radius: float) -> DomainSpec:
  return DomainSpec(DomainKind.ANNULUS, inner_radius=inner_radius)


def product(left: DomainSpec, right: DomainSpec) -> DomainSpec:
  return DomainSpec(DomainKind.PRODUCT, left=left, right=right)


def bidisc() -> DomainSpec:
  return product(disk(), disk())
