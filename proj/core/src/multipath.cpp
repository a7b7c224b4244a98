// SPDX-License-Identifier: Apache-2.0
#include "plcgrid/multipath.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "plcgrid/errors.hpp"

namespace plcgrid {

double Attenuation::operator()(double freq_hz) const {
  return a0 + a1 * std::pow(freq_hz, exponent);
}

Path Path::constant(Complex gain, double delay_s) {
  return Path{[gain](double) { return gain; }, delay_s};
}

MultipathChannel::MultipathChannel(std::vector<Path> paths, Attenuation attenuation,
                                   double propagation_velocity)
    : paths_(std::move(paths)), attenuation_(attenuation), v_p_(propagation_velocity) {
  if (paths_.empty()) throw ModelError("a multipath channel needs at least one path");
  for (const auto& p : paths_) {
    if (!p.gain) throw ModelError("path gain function is empty");
    if (!std::isfinite(p.delay_s) || p.delay_s < 0.0) {
      throw ModelError("path delays must be finite and non-negative");
    }
  }
  if (!(v_p_ > 0.0) || !std::isfinite(v_p_)) {
    throw ModelError("propagation velocity must be positive");
  }
  if (attenuation_.a0 < 0.0 || attenuation_.a1 < 0.0 || attenuation_.exponent < 0.0) {
    throw ModelError("attenuation coefficients must be non-negative");
  }
}

double MultipathChannel::max_delay() const noexcept {
  double m = 0.0;
  for (const auto& p : paths_) m = std::max(m, p.delay_s);
  return m;
}

Eigen::VectorXcd transfer_function(const MultipathChannel& ch, std::span<const double> freqs_hz) {
  Eigen::VectorXcd h(static_cast<Eigen::Index>(freqs_hz.size()));
  const double v_p = ch.propagation_velocity();
  for (std::size_t k = 0; k < freqs_hz.size(); ++k) {
    const double f = freqs_hz[k];
    if (!std::isfinite(f) || f < 0.0) throw ModelError("frequencies must be finite and >= 0");
    const double alpha = ch.attenuation()(f);
    Complex sum{};
    for (const auto& p : ch.paths()) {
      const double loss = std::exp(-alpha * v_p * p.delay_s);
      sum += p.gain(f) * loss * std::polar(1.0, -2.0 * std::numbers::pi * f * p.delay_s);
    }
    h(static_cast<Eigen::Index>(k)) = sum;
  }
  return h;
}

namespace {
// FFTW's planner is not thread-safe.
std::mutex fftw_planner_mutex;
}  // namespace

ImpulseResponse impulse_response(const MultipathChannel& ch, double sample_rate_hz,
                                 double duration_s, const ImpulseOptions& options) {
  if (!(duration_s > ch.max_delay())) {
    throw ModelError("impulse response duration must exceed the longest path delay");
  }
  return impulse_response(
      [&ch](std::span<const double> f) { return transfer_function(ch, f); }, sample_rate_hz,
      duration_s, options);
}

ImpulseResponse impulse_response(const SpectrumFunction& response, double sample_rate_hz,
                                 double duration_s, const ImpulseOptions& options) {
  if (!(sample_rate_hz > 0.0)) throw ModelError("sample rate must be positive");
  if (!(duration_s > 0.0)) throw ModelError("impulse response duration must be positive");
  if (!(options.rolloff >= 0.0 && options.rolloff <= 1.0)) {
    throw ModelError("window roll-off must lie in [0, 1]");
  }
  const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
  if (n < 2) throw ModelError("impulse response needs at least 2 samples");
  const std::size_t half = n / 2 + 1;

  std::vector<double> freqs(half);
  for (std::size_t k = 0; k < half; ++k) {
    freqs[k] = static_cast<double>(k) * sample_rate_hz / static_cast<double>(n);
  }
  Eigen::VectorXcd spectrum = response(freqs);
  if (static_cast<std::size_t>(spectrum.size()) != half) {
    throw DimensionError("response returned the wrong number of bins");
  }

  const double nyquist = 0.5 * sample_rate_hz;
  const double taper_start = (1.0 - options.rolloff) * nyquist;
  for (std::size_t k = 0; k < half; ++k) {
    if (options.rolloff > 0.0 && freqs[k] > taper_start) {
      const double x = (freqs[k] - taper_start) / (options.rolloff * nyquist);
      spectrum(static_cast<Eigen::Index>(k)) *= 0.5 * (1.0 + std::cos(std::numbers::pi * x));
    }
  }
  spectrum(0) = spectrum(0).real();
  if (n % 2 == 0) {
    const auto last = static_cast<Eigen::Index>(half - 1);
    spectrum(last) = spectrum(last).real();
  }

  ImpulseResponse out;
  out.sample_rate_hz = sample_rate_hz;
  out.rolloff = options.rolloff;
  out.samples.assign(n, 0.0);

  std::vector<fftw_complex> in(half);
  for (std::size_t k = 0; k < half; ++k) {
    in[k][0] = spectrum(static_cast<Eigen::Index>(k)).real();
    in[k][1] = spectrum(static_cast<Eigen::Index>(k)).imag();
  }
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex);
    plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), in.data(), out.samples.data(),
                                FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex);
    fftw_destroy_plan(plan);
  }
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& s : out.samples) s *= scale;
  out.spectrum = std::move(spectrum);
  return out;
}

double spectrum_energy(const ImpulseResponse& h) {
  const std::size_t n = h.samples.size();
  const auto half = static_cast<std::size_t>(h.spectrum.size());
  double total = 0.0;
  for (std::size_t k = 0; k < half; ++k) {
    const bool self_mirrored = k == 0 || (n % 2 == 0 && k == half - 1);
    total += (self_mirrored ? 1.0 : 2.0) * std::norm(h.spectrum(static_cast<Eigen::Index>(k)));
  }
  return total / static_cast<double>(n);
}

}  // namespace plcgrid
