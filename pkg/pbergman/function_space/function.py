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
"""Elements of A^p as coefficient vectors, and the discretization bundle."""

import dataclasses
import functools
from typing import List, Optional, Sequence

import numpy as np
import scipy.linalg
from absl import logging

from pbergman.errors import ParameterError
from pbergman.function_space.basis import Basis, ProductBasis, build_basis
from pbergman.geometry.domain import DomainKind, DomainSpec, Point
from pbergman.geometry.quadrature import QuadratureRule, build_quadrature

# Product-domain evaluation tables above this many entries are refused; use
# the tensor structure (CoefFunction.values_on) or a smaller basis instead.
MAX_TABLE_ENTRIES = 20_000_000

DEFAULT_PLANAR_QUAD = (64, 128)
DEFAULT_PRODUCT_QUAD = (16, 32)
DEFAULT_PRODUCT_DEGREE = 12


def _check_p(p: float) -> float:
  p = float(p)
  if not p >= 1.0:
    raise ParameterError(f'p must be at least 1, got {p}.')
  return p


def _values_on(basis: Basis, coefficients: np.ndarray,
               rule: QuadratureRule) -> np.ndarray:
  if isinstance(basis, ProductBasis) and rule.factors:
    left_rule, right_rule = rule.factors
    left_table = basis.left.rows(left_rule.nodes)
    right_table = basis.right.rows(right_rule.nodes)
    grid = coefficients.reshape(basis.left.size, basis.right.size)
    return (left_table @ grid @ right_table.T).ravel()
  return basis.rows(rule.nodes) @ coefficients


@dataclasses.dataclass(frozen=True, eq=False)
class CoefFunction:
  """f = sum_k c_k phi_k for a basis (phi_k)."""
  basis: Basis
  coefficients: np.ndarray

  def __post_init__(self):
    coefficients = np.asarray(self.coefficients, dtype=complex).ravel()
    if coefficients.size != self.basis.size:
      raise ParameterError(
          f'Expected {self.basis.size} coefficients, got {coefficients.size}.')
    object.__setattr__(self, 'coefficients', coefficients)

  @property
  def domain(self) -> DomainSpec:
    return self.basis.domain

  def evaluate(self, points: Sequence[Point]) -> np.ndarray:
    """Returns f at every point; points must lie in the domain."""
    pts = np.array([self.domain.check_point(z) for z in points],
                   dtype=complex).reshape(-1, self.domain.dimension)
    return self.basis.rows(pts) @ self.coefficients

  def __call__(self, point: Point) -> complex:
    return complex(self.evaluate([point])[0])

  def values_on(self, rule: QuadratureRule) -> np.ndarray:
    if rule.domain != self.domain:
      raise ParameterError('Function and quadrature live on different domains.')
    return _values_on(self.basis, self.coefficients, rule)

  def lp_norm(self, rule: QuadratureRule, p: float) -> float:
    """Discrete L^p norm (sum_q w_q |f(node_q)|^p)^(1/p)."""
    p = _check_p(p)
    values = np.abs(self.values_on(rule))
    return float(np.dot(rule.weights, values**p)**(1.0 / p))

  def scaled(self, factor: complex) -> 'CoefFunction':
    return CoefFunction(self.basis, factor * self.coefficients)

  def normalized(self, rule: QuadratureRule, p: float) -> 'CoefFunction':
    norm = self.lp_norm(rule, p)
    if norm == 0.0:
      raise ParameterError('Cannot normalize the zero function.')
    return self.scaled(1.0 / norm)

  def lifted(self, basis: Basis) -> 'CoefFunction':
    """The same function expressed in a larger basis, e.g. a refined one."""
    coefficients = np.zeros(basis.size, dtype=complex)
    coefficients[basis.positions_of(self.basis)] = self.coefficients
    return CoefFunction(basis, coefficients)

  def to_json(self) -> List[List[float]]:
    return [[float(c.real), float(c.imag)] for c in self.coefficients]

  @classmethod
  def from_json(cls, basis: Basis, data: Sequence[Sequence[float]]):
    return cls(basis, np.array([complex(re, im) for re, im in data]))


def constant_function(basis: Basis, value: complex = 1.0) -> CoefFunction:
  """The constant function, expressed through the order-zero basis element."""
  coefficients = np.zeros(basis.size, dtype=complex)
  coefficients[int(np.flatnonzero(basis.orders() == 0)[0])] = value
  return CoefFunction(basis, coefficients)


def random_function(basis: Basis,
                    rng: np.random.Generator,
                    decay: float = 0.8) -> CoefFunction:
  """Gaussian coefficients damped by decay**order, for property sweeps."""
  raw = rng.standard_normal(basis.size) + 1j * rng.standard_normal(basis.size)
  return CoefFunction(basis, raw * decay**basis.orders() / np.sqrt(2.0))


@dataclasses.dataclass(frozen=True, eq=False)
class Discretization:
  """A domain together with the basis and quadrature rule used on it."""
  domain: DomainSpec
  basis: Basis
  rule: QuadratureRule

  def __post_init__(self):
    if self.basis.domain != self.domain or self.rule.domain != self.domain:
      raise ParameterError('Basis and rule must share the domain.')

  @functools.cached_property
  def table(self) -> np.ndarray:
    """Basis values at the quadrature nodes, one row per node."""
    entries = self.rule.size * self.basis.size
    if entries > MAX_TABLE_ENTRIES:
      raise ParameterError(
          f'Evaluation table with {entries} entries is too large; use a '
          'smaller basis or quadrature on this domain.')
    logging.debug('Tabulating %r on %d nodes.', self.basis, self.rule.size)
    return self.basis.rows(self.rule.nodes)

  @functools.cached_property
  def orthonormalizer(self) -> np.ndarray:
    """Upper-triangular R with sqrt(W) * table = Q R.

    The columns of table @ inv(R) are orthonormal in the discrete L^2 inner
    product, i.e. the Gram-Schmidt orthonormalization of the basis.
    """
    weighted = np.sqrt(self.rule.weights)[:, None] * self.table
    return np.linalg.qr(weighted, mode='r')

  def function(self, coefficients: np.ndarray) -> CoefFunction:
    return CoefFunction(self.basis, coefficients)

  def values(self, coefficients: np.ndarray) -> np.ndarray:
    if isinstance(self.basis, ProductBasis):
      return _values_on(self.basis, np.asarray(coefficients, dtype=complex),
                        self.rule)
    return self.table @ coefficients

  def factors(self) -> List['Discretization']:
    """Factor discretizations of a product discretization."""
    if self.domain.kind != DomainKind.PRODUCT:
      raise ParameterError('Only product discretizations have factors.')
    left_rule, right_rule = self.rule.factors
    return [
        Discretization(self.domain.left, self.basis.left, left_rule),
        Discretization(self.domain.right, self.basis.right, right_rule),
    ]

  def refined(self) -> 'Discretization':
    """Doubles the quadrature resolution and the basis degree range."""
    return Discretization(self.domain, self.basis.refined(),
                          self.rule.refined())

  def solve_triangular(self, rhs: np.ndarray) -> np.ndarray:
    return scipy.linalg.solve_triangular(self.orthonormalizer, rhs)


def discretize(domain: DomainSpec,
               degree: Optional[int] = None,
               laurent: Optional[int] = None,
               radial_n: Optional[int] = None,
               angular_n: Optional[int] = None) -> Discretization:
  """Builds a Discretization with the default basis and quadrature.

  Planar domains default to a 64x128 rule; product domains to 16x32 per
  factor and degree 12 per factor, sized for the product rule of minimizers.
  """
  is_product = domain.kind == DomainKind.PRODUCT
  if degree is None and is_product:
    degree = DEFAULT_PRODUCT_DEGREE
  default_quad = DEFAULT_PRODUCT_QUAD if is_product else DEFAULT_PLANAR_QUAD
  rule = build_quadrature(domain, radial_n or default_quad[0], angular_n or
                          default_quad[1])
  return Discretization(domain, build_basis(domain, degree, laurent), rule)
