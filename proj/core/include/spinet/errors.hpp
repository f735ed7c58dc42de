#ifndef SPINET_ERRORS_HPP
#define SPINET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spinet {

// Base class for everything thrown by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (network files, expansion plans).  Carries the
// 1-based line number when one is known, 0 otherwise.
struct parse_error : error {
  explicit parse_error(const std::string& msg, int line_no = 0)
      : error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
        line(line_no) {}
  int line;
};

// API misuse: bad site indices, dimension mismatches, out-of-range arguments.
struct contract_error : error {
  using error::error;
};

// A requested computation exceeds a hard resource bound (dense dimension
// cap, symbolic term budget).
struct capacity_error : error {
  using error::error;
};

// A verification routine ran to completion and the property under test
// does not hold (used where callers asked for a hard guarantee, e.g.
// synthesis self-checks).
struct check_error : error {
  using error::error;
};

}  // namespace spinet

#endif
