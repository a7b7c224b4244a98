// SPDX-License-Identifier: Apache-2.0
//
// Echo (multipath) model of a power-line channel:
//
//   H(f) = sum_i g_i(f) exp(-alpha(f) v_p theta_i) exp(-j 2 pi f theta_i)
//
// with per-path gain g_i, delay theta_i, propagation velocity v_p and an
// attenuation coefficient alpha(f) = a0 + a1 f^k in nepers per metre.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace plcgrid {

using Complex = std::complex<double>;

struct Attenuation {
  double a0 = 0.0;
  double a1 = 0.0;
  double exponent = 1.0;

  double operator()(double freq_hz) const;
};

struct Path {
  std::function<Complex(double)> gain;
  double delay_s = 0.0;

  static Path constant(Complex gain, double delay_s);
};

class MultipathChannel {
 public:
  /// Throws ModelError when there are no paths, a delay is negative or not
  /// finite, v_p is not positive, or alpha could go negative for f >= 0.
  MultipathChannel(std::vector<Path> paths, Attenuation attenuation,
                   double propagation_velocity);

  const std::vector<Path>& paths() const noexcept { return paths_; }
  const Attenuation& attenuation() const noexcept { return attenuation_; }
  double propagation_velocity() const noexcept { return v_p_; }
  std::size_t n_paths() const noexcept { return paths_.size(); }
  double max_delay() const noexcept;

 private:
  std::vector<Path> paths_;
  Attenuation attenuation_;
  double v_p_;
};

Eigen::VectorXcd transfer_function(const MultipathChannel& ch, std::span<const double> freqs_hz);

struct ImpulseOptions {
  /// Fraction of the band below Nyquist tapered by a raised cosine before
  /// inversion. 0 disables the window.
  double rolloff = 0.1;
};

struct ImpulseResponse {
  double sample_rate_hz = 0.0;
  double rolloff = 0.0;
  std::vector<double> samples;
  /// One-sided spectrum actually inverted (bins k * fs / n, k = 0..n/2),
  /// after windowing; DC and Nyquist bins are real.
  Eigen::VectorXcd spectrum;

  double time(std::size_t k) const noexcept {
    return static_cast<double>(k) / sample_rate_hz;
  }
};

/// Inverse real DFT of H sampled on the grid k * fs / n with
/// n = round(duration * fs). Throws ModelError unless duration exceeds the
/// longest path delay.
ImpulseResponse impulse_response(const MultipathChannel& ch, double sample_rate_hz,
                                 double duration_s, const ImpulseOptions& options = {});

/// Evaluates a response on a frequency grid.
using SpectrumFunction = std::function<Eigen::VectorXcd(std::span<const double>)>;

/// Same synthesis for any response, e.g. a two-port chain.
ImpulseResponse impulse_response(const SpectrumFunction& response, double sample_rate_hz,
                                 double duration_s, const ImpulseOptions& options = {});

/// Sum over the full conjugate-symmetric spectrum of |H_k|^2 divided by n:
/// equals sum h^2 by Parseval.
double spectrum_energy(const ImpulseResponse& h);

}  // namespace plcgrid
