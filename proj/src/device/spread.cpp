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

#include "qlattice/device/spread.hpp"

#include <cmath>
#include <vector>

#include "qlattice/common/errors.hpp"
#include "qlattice/common/parallel.hpp"
#include "qlattice/common/rng.hpp"
#include "qlattice/device/coupling.hpp"

namespace qlattice::device {

namespace {

struct Sample {
  double f01_GHz;
  double alpha_MHz;
};

// Redraws until the perturbed value is positive; at 10% spread this never
// loops in practice.
double positive_draw(CounterRng& rng, double center, double fraction) {
  for (;;) {
    const double v = center * (1.0 + fraction * rng.normal());
    if (v > 0.0) return v;
  }
}

}  // namespace

SpreadStatistics frequency_spread_monte_carlo(const TransmonCircuit& design,
                                              const SpreadOptions& options) {
  design.validate();
  if (options.sigma_ic_fraction < 0.0 || options.sigma_c_fraction < 0.0)
    throw ValidationError("spread fractions must be non-negative");
  if (options.n_samples < 2) throw ValidationError("need at least two samples");

  std::vector<Sample> samples(options.n_samples);
  parallel_for(options.n_samples, options.threads, [&](std::size_t i) {
    CounterRng rng(derive_stream(options.seed, i));
    const double ic = positive_draw(rng, design.critical_current_nA,
                                    options.sigma_ic_fraction);
    const double c = positive_draw(rng, design.total_capacitance_fF,
                                   options.sigma_c_fraction);
    const auto s = diagonalize_energies(ej_from_critical_current(ic),
                                        ec_from_capacitance(c),
                                        design.gate_offset_charge,
                                        options.charge_cutoff, false);
    samples[i] = {s.f01_GHz, s.anharmonicity_MHz};
  });

  SpreadStatistics out;
  out.n_samples = options.n_samples;
  double sum = 0.0, sum_alpha = 0.0;
  for (const auto& s : samples) {
    sum += s.f01_GHz;
    sum_alpha += s.alpha_MHz;
  }
  const double n = static_cast<double>(samples.size());
  out.mean_f01_GHz = sum / n;
  out.mean_anharmonicity_MHz = sum_alpha / n;
  double var = 0.0;
  for (const auto& s : samples) {
    const double d = s.f01_GHz - out.mean_f01_GHz;
    var += d * d;
  }
  out.sigma_f01_MHz = std::sqrt(var / (n - 1.0)) * 1e3;
  out.two_sigma_width_MHz = 2.0 * out.sigma_f01_MHz;

  std::size_t pairs = 0, hits = 0;
  for (std::size_t i = 0; i + 1 < samples.size(); i += 2, ++pairs) {
    const auto& control = samples[i];
    const auto& target = samples[i + 1];
    if (cr_window_classify(control.f01_GHz, control.alpha_MHz, target.f01_GHz) ==
        CrWindow::kInWindow)
      ++hits;
  }
  out.window_hit_probability =
      static_cast<double>(hits) / static_cast<double>(pairs);
  return out;
}

SpreadReadings frequency_spread_readings(const TransmonCircuit& design,
                                         const SpreadOptions& options) {
  SpreadReadings r;
  r.as_sigma = frequency_spread_monte_carlo(design, options);
  SpreadOptions ranged = options;
  ranged.sigma_ic_fraction = options.sigma_ic_fraction / 4.0;
  ranged.sigma_c_fraction = options.sigma_c_fraction / 4.0;
  r.as_full_range = frequency_spread_monte_carlo(design, ranged);
  return r;
}

}  // namespace qlattice::device
