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
"""The variational problem behind m_p, K_p and the minimizer function."""

from pbergman.minimizer.closed_form import (disk_bergman_kernel,
                                            disk_closed_form,
                                            disk_closed_form_mass,
                                            disk_kernel_diag,
                                            remark_literal_mass)
from pbergman.minimizer.solver import (kernel_diag, minimize_norm,
                                       product_solution, reproducing_residual,
                                       solve_minimizer,
                                       solve_minimizer_by_product_rule)
from pbergman.minimizer.spec import (MinimizerSolution, NormSolution,
                                     SolverMethod, SolverOptions)
