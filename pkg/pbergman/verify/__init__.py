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
"""Checks of the inequalities, identities and oracles, and their suites."""

from pbergman.verify.constants import (InequalityConstants,
                                       appendix_constants,
                                       check_constants_consistency,
                                       check_constants_oracle,
                                       constants_table, exact_integrals,
                                       upper_constant)
from pbergman.verify.diagnostics import (boundary_diagnostics, check_holder,
                                         holder_exponent, p_continuity_sweep,
                                         sweep_distances)
from pbergman.verify.inequalities import (check_application_inequality,
                                          check_distance_upper_bound,
                                          check_main_inequality,
                                          check_metric_axioms,
                                          check_p2_identity,
                                          check_product_metric_bound,
                                          check_product_subadditivity,
                                          check_taylor_inequalities)
from pbergman.verify.invariance import (check_invariance, disk_automorphism,
                                        transform_derivative, transform_point)
from pbergman.verify.oracles import (check_mass_formula,
                                     check_minimizer_oracle,
                                     check_oracle_agreement,
                                     check_reproducing)
from pbergman.verify.report import (ReportCollector, Verdict,
                                    VerificationReport, equality_report,
                                    make_report)
from pbergman.verify.solutions import SolutionCache
from pbergman.verify.suites import SuiteContext, run_suite, suite_names
