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
"""Projective distance, p-Skwarczynski distance and p-Bergman metric."""

from pbergman.distance.distance import (DistanceMatrix, DistanceResult,
                                        distance_from_solutions,
                                        distance_matrix,
                                        matrix_from_solutions, phase_distance,
                                        projective_distance, skw_distance,
                                        skw_distance_p2_oracle,
                                        unit_minimizer_values)
from pbergman.distance.metric import MetricResult, bergman_metric
from pbergman.distance.phase import PhaseResult, minimize_phase
