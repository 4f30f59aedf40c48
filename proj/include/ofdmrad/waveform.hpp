#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace ofdmrad {

// Wraps an angle into [0, 2*pi).
double wrap_phase(double theta);

/**
 * @brief Frame parameters for one pulse: N subcarriers by K symbols.
 *
 * The pulse occupies bandwidth B split into N subcarriers at spacing
 * dF = B/N. Each symbol lasts t_b = 1/dF, the pulse t_p = K*t_b. Sampling
 * runs at rho*B, i.e. rho samples per critical sample, so a pulse holds
 * rho*N*K samples. `mask` switches subcarriers on or off, `weights` sets
 * per-subcarrier amplitudes; both default to all-on, all-one.
 */
struct OfdmParams {
  int n_subcarriers = 0;           // N
  int n_symbols = 1;               // K
  double bandwidth_hz = 0.0;       // B
  int oversampling = 20;           // rho
  std::vector<std::uint8_t> mask;  // length N, nonzero = active
  std::vector<double> weights;     // length N, w_n >= 0

  OfdmParams() = default;
  OfdmParams(int n_subcarriers, int n_symbols, double bandwidth_hz,
             int oversampling = 20);

  double subcarrier_spacing_hz() const {
    return bandwidth_hz / n_subcarriers;
  }
  double bit_duration_s() const { return n_subcarriers / bandwidth_hz; }
  double pulse_duration_s() const { return n_symbols * bit_duration_s(); }
  double sample_period_s() const { return 1.0 / (oversampling * bandwidth_hz); }
  std::size_t samples_per_pulse() const {
    return static_cast<std::size_t>(oversampling) * n_subcarriers * n_symbols;
  }
  int active_count() const;

  // Throws std::invalid_argument when any field is out of range.
  void validate() const;
};

/**
 * @brief N x K grid of phases theta_{n,k} in [0, 2*pi).
 *
 * Entry (n, k) is the phase of subcarrier n during symbol k; the
 * transmitted code is a_{n,k} = exp(j*theta_{n,k}). Storage is a flat
 * vector with the subcarrier index running fastest.
 */
class PhaseCodeMatrix {
 public:
  PhaseCodeMatrix() = default;
  PhaseCodeMatrix(int n_subcarriers, int n_symbols);

  static PhaseCodeMatrix from_phases(int n_subcarriers, int n_symbols,
                                     std::span<const double> phases);

  int n_subcarriers() const { return n_; }
  int n_symbols() const { return k_; }
  std::size_t size() const { return phases_.size(); }

  double phase(int n, int k) const { return phases_[index(n, k)]; }
  void set_phase(int n, int k, double theta) {
    phases_[index(n, k)] = wrap_phase(theta);
  }
  std::complex<double> code(int n, int k) const;

  std::span<const double> phases() const { return phases_; }

 private:
  std::size_t index(int n, int k) const;

  int n_ = 0;
  int k_ = 0;
  std::vector<double> phases_;
};

// Complex baseband samples of one pulse, rho*N*K of them t_s apart.
struct SampledPulse {
  std::vector<std::complex<double>> samples;
  double sample_period_s = 0.0;

  // Integral of |x(t)|^2, i.e. sum of sample powers times t_s.
  double energy() const;
};

/**
 * @brief Synthesizes the pulse for a phase-code matrix.
 *
 * Symbol k carries spectrum S[n] = mask[n] * w_n * exp(j*theta_{n,k}) on
 * bins 0..N-1, zero elsewhere; its rho*N time samples are the inverse DFT
 * of that spectrum zero-padded to rho*N bins, scaled by 1/sqrt(N) so the
 * all-on unit-weight pulse has unit mean power. Symbols are concatenated
 * in order.
 */
SampledPulse synthesize_pulse(const OfdmParams& params,
                              const PhaseCodeMatrix& codes);

// Copy of `params` with ceil(fraction_active * N) subcarriers left on,
// chosen uniformly at random from the given seed.
OfdmParams apply_mask(const OfdmParams& params, double fraction_active,
                      std::uint64_t seed);

// Copy of `params` with exactly the listed subcarriers on.
OfdmParams apply_mask(const OfdmParams& params,
                      std::span<const int> active_indices);

}  // namespace ofdmrad
