// Copyright 2026 The qlattice Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

namespace qlattice::benchmarking {

/// A p^m + B fit of RB survival data.
struct DecayFit {
  double A = 0.0, B = 0.0, p = 1.0;
  double A_stderr = 0.0, B_stderr = 0.0, p_stderr = 0.0;
  int dimension = 2;
  double fidelity = 1.0;          ///< per Clifford
  double fidelity_stderr = 0.0;
  bool converged = true;
  std::string diagnostic;         ///< empty unless the fit needed attention
};

/// F = 1 - (d - 1)(1 - p) / d.
double fidelity_from_p(double p, int dimension);
/// Inverse of fidelity_from_p.
double p_from_fidelity(double fidelity, int dimension);
/// Per-primitive fidelity when each Clifford averages `primitives` gates:
/// the per-Clifford error divided by the primitive count.
double per_primitive_fidelity(double clifford_fidelity, double primitives);

/// Least-squares fit of mean survival versus length.  Initial guess
/// B0 = 1/d, A0 = y(m_min) - B0, p0 from a log-linear regression of y - B0.
/// Flat data gives p = 1 exactly.  Needs >= 4 distinct lengths.
DecayFit fit_rb_decay(const std::vector<int>& lengths, const std::vector<double>& survival,
                      int dimension, const std::vector<double>& stderrs = {});

}  // namespace qlattice::benchmarking
