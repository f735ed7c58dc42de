#ifndef SPINET_TEXT_HPP
#define SPINET_TEXT_HPP

#include <complex>
#include <string>

namespace spinet {

// Shortest decimal string that round-trips to the same double ("0.5",
// "0.7071067811865476").  Negative zero is normalized to "0".
std::string format_double(double v);

// Fixed significant-digit formatting (general style), used for CSV output.
std::string format_double(double v, int precision);

// Complex amplitude in the canonical "(re,im)" form.
std::string format_amplitude(std::complex<double> v);

}  // namespace spinet

#endif
