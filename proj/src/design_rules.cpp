#include "ofdmrad/design_rules.hpp"

#include <cmath>
#include <stdexcept>

namespace ofdmrad::design {

namespace {

void check_speed(double c) {
  if (!(c > 0.0))
    throw std::invalid_argument("design: wave speed must be positive");
}

}  // namespace

double bandwidth_from_extent(double range_extent_m, double margin_m,
                             double c) {
  check_speed(c);
  if (!(range_extent_m + margin_m > 0.0))
    throw std::invalid_argument(
        "design: range extent plus margin must be positive");
  return c / (2.0 * (range_extent_m + margin_m));
}

long long max_subcarriers(double bandwidth_hz, double min_range_m, double c) {
  check_speed(c);
  if (!(bandwidth_hz > 0.0))
    throw std::invalid_argument("design: bandwidth must be positive");
  if (!(min_range_m > 0.0))
    throw std::invalid_argument("design: minimum range must be positive");
  const double n_max = std::floor(2.0 * bandwidth_hz * min_range_m / c);
  if (n_max < 1.0)
    throw std::invalid_argument(
        "design: no subcarrier fits inside the round trip");
  return static_cast<long long>(n_max);
}

double max_pulse_length(double min_range_m, double c) {
  check_speed(c);
  if (!(min_range_m > 0.0))
    throw std::invalid_argument("design: minimum range must be positive");
  return 2.0 * min_range_m / c;
}

}  // namespace ofdmrad::design
