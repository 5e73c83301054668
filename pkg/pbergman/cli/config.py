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
"""Run configuration of the pbergman command line.

A RunConfig is a tree of frozen dataclasses stored as one JSON document.
Points are lists of coordinates and every coordinate is a number or a
[re, im] pair, e.g. {"points": [[0.5], [[0.1, 0.2]]]}.
"""

import dataclasses
import json
from typing import Any, Dict, Optional, Sequence, Tuple

from pbergman.errors import ParameterError
from pbergman.function_space.function import Discretization, discretize
from pbergman.geometry.domain import DomainSpec, disk
from pbergman.minimizer.spec import SolverOptions
from pbergman.verify.diagnostics import CONTINUITY_TOLERANCE
from pbergman.verify.suites import CONSTANTS_GRID, CONTINUITY_GRID, resolve

Point = Tuple[complex, ...]

DEFAULT_OUT_DIR = 'pbergman_out'


def _coordinate(value) -> complex:
  if isinstance(value, (int, float)):
    return complex(value)
  if isinstance(value, (list, tuple)) and len(value) == 2:
    return complex(float(value[0]), float(value[1]))
  raise ParameterError(f'Invalid coordinate {value!r}.')


def parse_point(value) -> Point:
  if isinstance(value, (int, float)):
    return (complex(value), )
  if not isinstance(value, (list, tuple)) or not value:
    raise ParameterError(f'Invalid point {value!r}.')
  return tuple(_coordinate(c) for c in value)


def point_to_json(point: Point):
  return [[c.real, c.imag] for c in point]


def _floats(values, name: str) -> Tuple[float, ...]:
  if isinstance(values, (int, float)):
    values = [values]
  try:
    return tuple(float(v) for v in values)
  except (TypeError, ValueError) as err:
    raise ParameterError(f'{name} must be a list of numbers, got '
                         f'{values!r}.') from err


def _check_exponents(values: Sequence[float], name: str):
  for p in values:
    if not p >= 1.0:
      raise ParameterError(f'Every {name} must be at least 1, got {p}.')


def _build(cls, data: Dict[str, Any], section: str):
  if not isinstance(data, dict):
    raise ParameterError(f'Section {section!r} must be an object.')
  names = {f.name for f in dataclasses.fields(cls)}
  unknown = sorted(set(data) - names)
  if unknown:
    raise ParameterError(f'Unknown keys in {section!r}: {unknown}.')
  return data


@dataclasses.dataclass(frozen=True)
class DomainConfig:
  """Domain, truncation degree and quadrature resolution."""
  domain: DomainSpec = dataclasses.field(default_factory=disk)
  degree: Optional[int] = None
  laurent: Optional[int] = None
  radial_n: Optional[int] = None
  angular_n: Optional[int] = None

  def validate(self):
    for name in ('degree', 'laurent'):
      value = getattr(self, name)
      if value is not None and value < 0:
        raise ParameterError(f'{name} must be non-negative, got {value}.')
    if self.radial_n is not None and self.radial_n < 2:
      raise ParameterError(f'radial_n must be at least 2, got {self.radial_n}.')
    if self.angular_n is not None and self.angular_n < 4:
      raise ParameterError(
          f'angular_n must be at least 4, got {self.angular_n}.')

  def discretization(self) -> Discretization:
    return discretize(self.domain, self.degree, self.laurent, self.radial_n,
                      self.angular_n)

  def to_dict(self) -> Dict[str, Any]:
    data = dataclasses.asdict(self)
    data['domain'] = self.domain.to_dict()
    return data

  @classmethod
  def from_dict(cls, data: Dict[str, Any]) -> 'DomainConfig':
    data = dict(_build(cls, data, 'domain'))
    if 'domain' in data:
      data['domain'] = DomainSpec.from_dict(data['domain'])
    return cls(**data)


@dataclasses.dataclass(frozen=True)
class SolverConfig:
  options: SolverOptions = dataclasses.field(default_factory=SolverOptions)
  use_product_rule: bool = True

  def to_dict(self) -> Dict[str, Any]:
    return {
        'options': self.options.to_dict(),
        'use_product_rule': self.use_product_rule,
    }

  @classmethod
  def from_dict(cls, data: Dict[str, Any]) -> 'SolverConfig':
    data = dict(_build(cls, data, 'solver'))
    if 'options' in data:
      options = _build(SolverOptions, data['options'], 'solver.options')
      data['options'] = SolverOptions(**options)
    return cls(**data)


@dataclasses.dataclass(frozen=True)
class SuiteConfig:
  """Which suite `verify` runs; None keeps the suite's own defaults."""
  name: str = 'all'
  count: Optional[int] = None
  p_values: Optional[Tuple[float, ...]] = None

  def validate(self):
    resolve(self.name)
    if self.count is not None and self.count < 1:
      raise ParameterError(f'count must be positive, got {self.count}.')
    if self.p_values is not None:
      _check_exponents(self.p_values, 'suite p')

  def to_dict(self) -> Dict[str, Any]:
    return dict(dataclasses.asdict(self),
                p_values=None
                if self.p_values is None else list(self.p_values))

  @classmethod
  def from_dict(cls, data: Dict[str, Any]) -> 'SuiteConfig':
    data = dict(_build(cls, data, 'suite'))
    if data.get('p_values') is not None:
      data['p_values'] = _floats(data['p_values'], 'suite.p_values')
    return cls(**data)


@dataclasses.dataclass(frozen=True)
class SweepConfig:
  """Points, center exponent and q grid of the p-continuity sweep."""
  z: Point = (0j, )
  w: Point = (0.5 + 0j, )
  p_center: float = 2.0
  q_grid: Tuple[float, ...] = CONTINUITY_GRID
  tolerance: float = CONTINUITY_TOLERANCE

  def validate(self):
    _check_exponents((self.p_center, ) + self.q_grid, 'sweep p')
    if not self.tolerance > 0:
      raise ParameterError(f'Sweep tolerance must be positive, got '
                           f'{self.tolerance}.')

  def to_dict(self) -> Dict[str, Any]:
    return {
        'z': point_to_json(self.z),
        'w': point_to_json(self.w),
        'p_center': self.p_center,
        'q_grid': list(self.q_grid),
        'tolerance': self.tolerance,
    }

  @classmethod
  def from_dict(cls, data: Dict[str, Any]) -> 'SweepConfig':
    data = dict(_build(cls, data, 'sweep'))
    for name in ('z', 'w'):
      if name in data:
        data[name] = parse_point(data[name])
    if 'q_grid' in data:
      data['q_grid'] = _floats(data['q_grid'], 'sweep.q_grid')
    for name in ('p_center', 'tolerance'):
      if name in data:
        data[name] = float(data[name])
    return cls(**data)


@dataclasses.dataclass(frozen=True)
class RunConfig:
  """Everything one command needs.

  Attributes:
    domain: Domain and discretization.
    solver: Solver options.
    suite: Suite selection for `verify`.
    sweep: Parameters of `sweep`.
    p_values: Exponents of `kernel` and `distance`.
    points: Points of `kernel` and `distance`.
    constants_p: Exponents of the `constants` table.
    out_dir: Output directory.
    seed: Run seed.
    workers: Threads solving independent (p, point) jobs.
    dump_coefficients: `kernel` also writes minimizer coefficients.
  """
  domain: DomainConfig = dataclasses.field(default_factory=DomainConfig)
  solver: SolverConfig = dataclasses.field(default_factory=SolverConfig)
  suite: SuiteConfig = dataclasses.field(default_factory=SuiteConfig)
  sweep: SweepConfig = dataclasses.field(default_factory=SweepConfig)
  p_values: Tuple[float, ...] = (2.0, )
  points: Tuple[Point, ...] = ()
  constants_p: Tuple[float, ...] = CONSTANTS_GRID
  out_dir: str = DEFAULT_OUT_DIR
  seed: int = 0
  workers: int = 1
  dump_coefficients: bool = False

  def validate(self) -> 'RunConfig':
    """Raises ParameterError for any invalid value; returns self."""
    self.domain.validate()
    self.suite.validate()
    self.sweep.validate()
    _check_exponents(self.p_values, 'p')
    for p in self.constants_p:
      if not p > 2.0:
        raise ParameterError(f'Constants need p > 2, got {p}.')
    for point in self.points:
      self.domain.domain.check_point(point)
    if self.seed < 0:
      raise ParameterError(f'seed must be non-negative, got {self.seed}.')
    if self.workers < 1:
      raise ParameterError(f'workers must be positive, got {self.workers}.')
    return self

  def replace(self, **changes) -> 'RunConfig':
    return dataclasses.replace(self, **changes).validate()

  def to_dict(self) -> Dict[str, Any]:
    return {
        'domain': self.domain.to_dict(),
        'solver': self.solver.to_dict(),
        'suite': self.suite.to_dict(),
        'sweep': self.sweep.to_dict(),
        'p_values': list(self.p_values),
        'points': [point_to_json(z) for z in self.points],
        'constants_p': list(self.constants_p),
        'out_dir': self.out_dir,
        'seed': self.seed,
        'workers': self.workers,
        'dump_coefficients': self.dump_coefficients,
    }

  @classmethod
  def from_dict(cls, data: Dict[str, Any]) -> 'RunConfig':
    data = dict(_build(cls, data, 'config'))
    sections = {
        'domain': DomainConfig,
        'solver': SolverConfig,
        'suite': SuiteConfig,
        'sweep': SweepConfig,
    }
    for name, section in sections.items():
      if name in data:
        data[name] = section.from_dict(data[name])
    for name in ('p_values', 'constants_p'):
      if name in data:
        data[name] = _floats(data[name], name)
    if 'points' in data:
      data['points'] = tuple(parse_point(z) for z in data['points'])
    return cls(**data).validate()


def serialize(config: RunConfig) -> str:
  return json.dumps(config.to_dict(), indent=2, sort_keys=True) + '\n'


def parse(text: str) -> RunConfig:
  """Parses and validates a JSON configuration document."""
  try:
    data = json.loads(text)
  except json.JSONDecodeError as err:
    raise ParameterError(f'Configuration is not valid JSON: {err}.') from err
  try:
    return RunConfig.from_dict(data)
  except (KeyError, TypeError) as err:
    raise ParameterError(f'Invalid configuration: {err!r}.') from err


def load(path: str) -> RunConfig:
  with open(path, encoding='utf-8') as f:
    return parse(f.read())
