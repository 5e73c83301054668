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
"""Verification reports and the collector that writes them."""

import dataclasses
import enum
import json
import math
import threading
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd
from absl import logging

# Margins of integrated inequalities absorb solver and quadrature error.
DEFAULT_TOLERANCE = 1e-6


class Verdict(str, enum.Enum):
  PASS = 'pass'
  FAIL = 'fail'
  DEGENERATE = 'degenerate'


def point_json(point) -> List[List[float]]:
  """A point as a list of (re, im) pairs, one per coordinate."""
  coords = np.atleast_1d(np.asarray(point, dtype=complex))
  return [[float(c.real), float(c.imag)] for c in coords]


@dataclasses.dataclass(frozen=True)
class VerificationReport:
  """Outcome of one inequality or identity check.

  Attributes:
    check: Name of the check.
    params: JSON-ready parameters (p, points, domain, ...).
    lhs: Left-hand value.
    rhs: Right-hand value.
    margin: rhs - lhs; NaN for degenerate reports.
    tolerance: Margin slack allowed.
    verdict: pass iff margin >= -tolerance; degenerate reports are
      informational.
  """
  check: str
  params: Dict[str, Any]
  lhs: float
  rhs: float
  margin: float
  tolerance: float
  verdict: Verdict

  @property
  def passed(self) -> bool:
    return self.verdict == Verdict.PASS

  @property
  def failed(self) -> bool:
    return self.verdict == Verdict.FAIL

  def to_json(self) -> Dict[str, Any]:
    def number(x):
      return None if math.isnan(x) else x

    return {
        'check': self.check,
        'params': self.params,
        'lhs': number(self.lhs),
        'rhs': number(self.rhs),
        'margin': number(self.margin),
        'tolerance': self.tolerance,
        'verdict': self.verdict.value,
    }


def make_report(check: str,
                params: Dict[str, Any],
                lhs: float,
                rhs: float,
                tolerance: float = DEFAULT_TOLERANCE,
                degenerate: bool = False) -> VerificationReport:
  """Builds a report for the claim lhs <= rhs."""
  lhs, rhs = float(lhs), float(rhs)
  if degenerate:
    margin, verdict = float('nan'), Verdict.DEGENERATE
  else:
    margin = rhs - lhs
    verdict = Verdict.PASS if margin >= -tolerance else Verdict.FAIL
  return VerificationReport(check=check,
                            params=params,
                            lhs=lhs,
                            rhs=rhs,
                            margin=margin,
                            tolerance=float(tolerance),
                            verdict=verdict)


def equality_report(check: str,
                    params: Dict[str, Any],
                    first: float,
                    second: float,
                    tolerance: float,
                    relative: bool = False) -> VerificationReport:
  """Reports |first - second| <= tolerance (relative to |second| if asked)."""
  gap = abs(first - second)
  if relative:
    gap /= max(abs(second), np.finfo(float).tiny)
  params = dict(params, first=float(first), second=float(second))
  return make_report(check, params, gap, 0.0, tolerance)


def error_report(check: str, params: Dict[str, Any],
                 error: Exception) -> VerificationReport:
  """A failing report for a check that could not be evaluated."""
  message = f'{type(error).__name__}: {error}'
  return VerificationReport(check=check,
                            params=dict(params, error=message),
                            lhs=float('nan'),
                            rhs=float('nan'),
                            margin=float('nan'),
                            tolerance=0.0,
                            verdict=Verdict.FAIL)


class ReportCollector:
  """Append-only, thread-safe list of reports."""
  def __init__(self):
    self._lock = threading.Lock()
    self._reports: List[VerificationReport] = []

  def add(self, report: VerificationReport):
    with self._lock:
      self._reports.append(report)
    if report.failed:
      logging.warning('Check %s failed: lhs=%r rhs=%r margin=%r.', report.check,
                      report.lhs, report.rhs, report.margin)

  def extend(self, reports: Iterable[VerificationReport]):
    for report in reports:
      self.add(report)

  @property
  def reports(self) -> Sequence[VerificationReport]:
    with self._lock:
      return tuple(self._reports)

  def failures(self) -> List[VerificationReport]:
    return [r for r in self.reports if r.failed]

  def all_passed(self) -> bool:
    return not self.failures()

  def to_frame(self) -> pd.DataFrame:
    columns = ['check', 'lhs', 'rhs', 'margin', 'tolerance', 'verdict']
    rows = [[r.check, r.lhs, r.rhs, r.margin, r.tolerance, r.verdict.value]
            for r in self.reports]
    return pd.DataFrame(rows, columns=columns)

  def summary(self) -> str:
    """Plain-text table: one row per check with verdict counts."""
    frame = self.to_frame()
    if frame.empty:
      return 'no reports\n'
    table = frame.groupby('check', sort=True).agg(
        reports=('verdict', 'size'),
        passed=('verdict', lambda v: int((v == 'pass').sum())),
        failed=('verdict', lambda v: int((v == 'fail').sum())),
        degenerate=('verdict', lambda v: int((v == 'degenerate').sum())),
        min_margin=('margin', 'min'),
    )
    status = 'PASS' if self.all_passed() else 'FAIL'
    return (table.to_string(float_format=lambda x: f'{x:.3e}') +
            f'\n\n{len(frame)} reports, {int(table.failed.sum())} failed: '
            f'{status}\n')

  def write_jsonl(self, path: str):
    with open(path, 'w', encoding='utf-8') as out:
      for report in self.reports:
        out.write(json.dumps(report.to_json(), sort_keys=True) + '\n')

  def write_summary(self, path: str, header: Optional[str] = None):
    with open(path, 'w', encoding='utf-8') as out:
      if header:
        out.write(header + '\n')
      out.write(self.summary())
