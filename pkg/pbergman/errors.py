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
"""Errors raised by pbergman."""

from typing import Any, Optional


class ParameterError(ValueError):
  """An argument is outside the range an operation accepts."""


class RankError(ValueError):
  """A linear constraint system does not have full row rank."""


class ConvergenceError(RuntimeError):
  """The solver stopped before reaching its gradient tolerance.

  The best iterate found so far is kept in `best_solution` so callers can
  inspect or report it.
  """
  def __init__(self, message: str, best_solution: Optional[Any] = None):
    super().__init__(message)
    self.best_solution = best_solution
