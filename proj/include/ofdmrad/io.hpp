#pragma once

#include <string>
#include <vector>

#include "ofdmrad/detection.hpp"
#include "ofdmrad/waveform.hpp"

namespace ofdmrad::io {

// All files carry a header row. Phases and weights are printed with full
// double precision; frequencies and dB summaries with fixed layouts.

// subcarrier,symbol,phase_rad
void write_codes_csv(const PhaseCodeMatrix& codes, const std::string& path);
PhaseCodeMatrix read_codes_csv(const std::string& path);

// subcarrier,weight
void write_weights_csv(std::span<const double> weights,
                       const std::string& path);
std::vector<double> read_weights_csv(const std::string& path);

// subcarrier,active
void write_mask_csv(std::span<const std::uint8_t> mask,
                    const std::string& path);
std::vector<std::uint8_t> read_mask_csv(const std::string& path);

// x_m,y_m,sqrt_sigma
void write_target_csv(const TargetModel& target, const std::string& path);
TargetModel read_target_csv(const std::string& path);

// f_hz,re,im
void write_spectrum_csv(const ReflectivitySpectrum& spectrum,
                        const std::string& path);

// snr_gain_db,pmepr_random_median_db,pmepr_optimized_db,generations_run,converged
void write_report_csv(const TwoStepReport& report, const std::string& path);

}  // namespace ofdmrad::io
