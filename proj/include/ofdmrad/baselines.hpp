#pragma once

#include <cstdint>

#include "ofdmrad/waveform.hpp"

namespace ofdmrad {

// Newman phases theta_n = pi * (n - 1)^2 / N for n = 1..N, wrapped into
// [0, 2*pi). Single-symbol code with low PMEPR on a full band.
PhaseCodeMatrix newman_phases(int n_subcarriers);

// All-zero phases; every subcarrier adds coherently at t = 0.
PhaseCodeMatrix uncoded(int n_subcarriers, int n_symbols);

// Independent uniform draws from [0, 2*pi).
PhaseCodeMatrix random_phases(int n_subcarriers, int n_symbols,
                              std::uint64_t seed);

// Independent uniform draws from the 2^bits_per_phase-point grid
// theta = 2*pi*v / 2^q.
PhaseCodeMatrix random_phases(int n_subcarriers, int n_symbols,
                              int bits_per_phase, std::uint64_t seed);

}  // namespace ofdmrad
