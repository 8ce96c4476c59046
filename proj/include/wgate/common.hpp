#ifndef WGATE_COMMON_HPP
#define WGATE_COMMON_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace wgate {

using Cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;

/// Radical-inverse (van der Corput) value of `index` in the given base.
double halton(std::size_t index, int base);

/// Wraps an angle into [0, 2*pi).
double wrap_angle(double theta);

} // namespace wgate

#endif
