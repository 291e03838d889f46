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

#include "qlattice/dynamics/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "qlattice/common/errors.hpp"

namespace qlattice::dynamics {

namespace {

// Lifted Gaussian centred at `center`: equals 1 at the centre and 0 at
// distance `half_width`.
double lifted_gaussian(double t, double center, double half_width, double sigma) {
  const double floor = std::exp(-half_width * half_width / (2.0 * sigma * sigma));
  const double x = t - center;
  return (std::exp(-x * x / (2.0 * sigma * sigma)) - floor) / (1.0 - floor);
}

double lifted_gaussian_derivative(double t, double center, double half_width,
                                  double sigma) {
  const double floor = std::exp(-half_width * half_width / (2.0 * sigma * sigma));
  const double x = t - center;
  return -x / (sigma * sigma) * std::exp(-x * x / (2.0 * sigma * sigma)) /
         (1.0 - floor);
}

}  // namespace

std::string_view to_string(PulseShape shape) {
  switch (shape) {
    case PulseShape::kGaussian:
      return "gaussian";
    case PulseShape::kGaussianSquare:
      return "gaussian_square";
  }
  return "unknown";
}

PulseShape pulse_shape_from_string(std::string_view name) {
  if (name == "gaussian") return PulseShape::kGaussian;
  if (name == "gaussian_square") return PulseShape::kGaussianSquare;
  throw ValidationError(fmt::format("unknown pulse shape '{}'", name));
}

void PulseEnvelope::validate() const {
  if (!(duration_ns > 0.0)) throw ValidationError("pulse duration must be positive");
  if (sigma_ns < 0.0) throw ValidationError("pulse sigma must be non-negative");
  if (channel < 0) throw ValidationError("pulse channel must be non-negative");
  if (shape == PulseShape::kGaussianSquare &&
      !(rise_ns > 0.0 && 2.0 * rise_ns <= duration_ns))
    throw ValidationError("square pulse needs 0 < 2 * rise <= duration");
  if (!std::isfinite(amplitude_MHz) || !std::isfinite(drag_coefficient) ||
      !std::isfinite(phase_rad) || !std::isfinite(ssb_detuning_MHz))
    throw ValidationError("pulse parameters must be finite");
}

double PulseEnvelope::effective_sigma() const {
  if (sigma_ns > 0.0) return sigma_ns;
  return shape == PulseShape::kGaussian ? duration_ns / 4.0 : rise_ns / 2.0;
}

double PulseEnvelope::in_phase(double t) const {
  if (t < 0.0 || t > duration_ns) return 0.0;
  const double s = effective_sigma();
  if (shape == PulseShape::kGaussian)
    return amplitude_MHz * lifted_gaussian(t, 0.5 * duration_ns, 0.5 * duration_ns, s);
  if (t < rise_ns) return amplitude_MHz * lifted_gaussian(t, rise_ns, rise_ns, s);
  if (t > duration_ns - rise_ns)
    return amplitude_MHz *
           lifted_gaussian(t, duration_ns - rise_ns, rise_ns, s);
  return amplitude_MHz;
}

double PulseEnvelope::in_phase_derivative(double t) const {
  if (t < 0.0 || t > duration_ns) return 0.0;
  const double s = effective_sigma();
  if (shape == PulseShape::kGaussian)
    return amplitude_MHz *
           lifted_gaussian_derivative(t, 0.5 * duration_ns, 0.5 * duration_ns, s);
  if (t < rise_ns)
    return amplitude_MHz * lifted_gaussian_derivative(t, rise_ns, rise_ns, s);
  if (t > duration_ns - rise_ns)
    return amplitude_MHz *
           lifted_gaussian_derivative(t, duration_ns - rise_ns, rise_ns, s);
  return 0.0;
}

std::complex<double> PulseEnvelope::complex_envelope(double t) const {
  return {in_phase(t), drag_coefficient * effective_sigma() * in_phase_derivative(t)};
}

double PulseEnvelope::detuning_MHz(double t) const {
  if (drag_coefficient == 0.0) return 0.0;
  const double x = in_phase(t);
  return std::numbers::pi * effective_sigma() * drag_coefficient * x * x * 1e-3;
}

double PulseEnvelope::area_MHz_ns() const {
  // Composite Simpson on a fine grid; the envelopes are smooth.
  const int n = 2000;
  const double h = duration_ns / n;
  double sum = in_phase(0.0) + in_phase(duration_ns);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * in_phase(i * h);
  return sum * h / 3.0;
}

double ControlSequence::duration_ns() const {
  double end = 0.0;
  for (const auto& p : pulses) end = std::max(end, p.end_ns());
  for (const auto& z : virtual_z) end = std::max(end, z.time_ns);
  for (double b : barriers_ns) end = std::max(end, b);
  return end;
}

void ControlSequence::validate(int n_channels) const {
  for (const auto& p : pulses) {
    p.pulse.validate();
    if (p.start_ns < 0.0) throw ValidationError("pulse start must be >= 0");
    if (p.pulse.channel >= n_channels || p.pulse.carrier_transmon() >= n_channels)
      throw ValidationError(fmt::format("pulse channel {} does not exist",
                                        p.pulse.channel));
  }
  for (const auto& z : virtual_z)
    if (z.transmon < 0 || z.transmon >= n_channels || z.time_ns < 0.0)
      throw ValidationError("virtual Z references a missing transmon");
  for (std::size_t i = 0; i < pulses.size(); ++i)
    for (std::size_t j = i + 1; j < pulses.size(); ++j) {
      const auto& a = pulses[i];
      const auto& b = pulses[j];
      if (a.pulse.channel != b.pulse.channel) continue;
      if (a.start_ns < b.end_ns() - 1e-9 && b.start_ns < a.end_ns() - 1e-9)
        throw ValidationError(fmt::format(
            "pulses on channel {} overlap ({} ns and {} ns)", a.pulse.channel,
            a.start_ns, b.start_ns));
    }
}

}  // namespace qlattice::dynamics
