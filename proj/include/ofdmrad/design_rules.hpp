#pragma once

namespace ofdmrad::design {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Bandwidth that resolves scatterers `range_extent_m` apart with margin
// `margin_m` of extra resolution: B = c / (2 * (extent + margin)).
double bandwidth_from_extent(double range_extent_m, double margin_m,
                             double c = kSpeedOfLight);

// Largest subcarrier count keeping the bit duration inside the round trip
// to the closest target: N_max = floor(2 * B * r_min / c).
long long max_subcarriers(double bandwidth_hz, double min_range_m,
                          double c = kSpeedOfLight);

// Longest pulse a monostatic radar can transmit before the echo from the
// closest target returns: t_p = 2 * r_min / c.
double max_pulse_length(double min_range_m, double c = kSpeedOfLight);

}  // namespace ofdmrad::design
