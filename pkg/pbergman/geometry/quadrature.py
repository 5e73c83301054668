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
"""Polar tensor quadrature rules on the model domains.

A rule on the disk or an annulus is Gauss-Legendre in the radius (mapped to
[0, 1] or [r, 1]) times the uniform trapezoid rule in the angle, with the
polar Jacobian folded into the weights. Rules on product domains are tensor
products of the factor rules, flattened with the left factor varying slowest.
"""

import dataclasses
import functools
import math
from typing import Optional, Sequence, Tuple

import numpy as np
from absl import logging

from pbergman.errors import ParameterError
from pbergman.geometry.domain import DomainKind, DomainSpec

_MIN_RADIAL = 2
_MIN_ANGULAR = 4


@dataclasses.dataclass(frozen=True, eq=False)
class QuadratureRule:
  """Nodes and positive weights approximating area integrals over a domain.

  Attributes:
    domain: The domain the rule integrates over.
    radial_n: Number of Gauss-Legendre nodes in the radius (per factor).
    angular_n: Number of trapezoid nodes in the angle (per factor).
    weights: Positive weights, one per node, in units of area.
    planar_nodes: Complex nodes of a planar rule; None for product rules.
    factors: (left, right) factor rules of a product rule; empty otherwise.
  """
  domain: DomainSpec
  radial_n: int
  angular_n: int
  weights: np.ndarray
  planar_nodes: Optional[np.ndarray] = None
  factors: Tuple['QuadratureRule', ...] = ()

  @property
  def size(self) -> int:
    return self.weights.shape[0]

  @functools.cached_property
  def nodes(self) -> np.ndarray:
    """Nodes as a complex array of shape (size, dimension)."""
    if not self.factors:
      return self.planar_nodes[:, None]
    left, right = self.factors
    n_left, n_right = left.size, right.size
    return np.concatenate([
        np.repeat(left.nodes, n_right, axis=0),
        np.tile(right.nodes, (n_left, 1)),
    ],
                          axis=1)

  def refined(self) -> 'QuadratureRule':
    """Returns the rule with radial and angular resolution doubled."""
    return build_quadrature(self.domain, 2 * self.radial_n, 2 * self.angular_n)


def _polar_rule(inner: float, radial_n: int,
                angular_n: int) -> Tuple[np.ndarray, np.ndarray]:
  x, wx = np.polynomial.legendre.leggauss(radial_n)
  half_width = 0.5 * (1.0 - inner)
  radii = inner + half_width * (x + 1.0)
  radial_weights = half_width * wx * radii
  angles = 2.0 * math.pi * np.arange(angular_n) / angular_n
  nodes = radii[:, None] * np.exp(1j * angles)[None, :]
  weights = radial_weights[:, None] * np.full(angular_n,
                                              2.0 * math.pi / angular_n)
  return nodes.ravel(), weights.ravel()


def build_quadrature(domain: DomainSpec, radial_n: int,
                     angular_n: int) -> QuadratureRule:
  """Builds the polar tensor rule for `domain`.

  Args:
    domain: Disk, annulus or product domain.
    radial_n: Gauss-Legendre nodes in the radius, at least 2.
    angular_n: Trapezoid nodes in the angle, at least 4.

  Returns:
    A deterministic QuadratureRule. On the disk it integrates
    z^a conj(z)^b exactly whenever a, b <= radial_n - 1 and
    |a - b| < angular_n.

  Raises:
    ParameterError: if the resolution is too small.
  """
  if radial_n < _MIN_RADIAL or angular_n < _MIN_ANGULAR:
    raise ParameterError(
        f'Quadrature needs radial_n >= {_MIN_RADIAL} and angular_n >= '
        f'{_MIN_ANGULAR}, got {radial_n}x{angular_n}.')

  if domain.kind == DomainKind.PRODUCT:
    left = build_quadrature(domain.left, radial_n, angular_n)
    right = build_quadrature(domain.right, radial_n, angular_n)
    weights = np.outer(left.weights, right.weights).ravel()
    logging.debug('Built product quadrature with %d nodes.', weights.size)
    return QuadratureRule(domain=domain,
                          radial_n=radial_n,
                          angular_n=angular_n,
                          weights=weights,
                          factors=(left, right))

  inner = domain.inner_radius if domain.kind == DomainKind.ANNULUS else 0.0
  nodes, weights = _polar_rule(inner, radial_n, angular_n)
  return QuadratureRule(domain=domain,
                        radial_n=radial_n,
                        angular_n=angular_n,
                        weights=weights,
                        planar_nodes=nodes)


def quad_integrate(rule: QuadratureRule, values: Sequence[complex]) -> complex:
  """Returns sum_q weight_q * value_q."""
  values = np.asarray(values)
  if values.shape != (rule.size, ):
    raise ParameterError(
        f'Expected {rule.size} values for this rule, got {values.shape}.')
  return complex(np.dot(rule.weights, values))
