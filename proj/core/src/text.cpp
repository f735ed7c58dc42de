#include "spinet/text.hpp"

#include <array>
#include <charconv>
#include <system_error>

namespace spinet {

namespace {

std::string to_chars_string(double v, std::chars_format fmt, int precision) {
  std::array<char, 64> buf{};
  std::to_chars_result r =
      precision < 0 ? std::to_chars(buf.data(), buf.data() + buf.size(), v, fmt)
                    : std::to_chars(buf.data(), buf.data() + buf.size(), v, fmt, precision);
  return std::string(buf.data(), r.ptr);
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  return to_chars_string(v, std::chars_format::general, -1);
}

std::string format_double(double v, int precision) {
  if (v == 0.0) v = 0.0;
  return to_chars_string(v, std::chars_format::general, precision);
}

std::string format_amplitude(std::complex<double> v) {
  return "(" + format_double(v.real()) + "," + format_double(v.imag()) + ")";
}

}  // namespace spinet
