#pragma once
// Shared basics: error reporting, default tolerances, tiny numeric helpers.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace vbott {

// Failure categories surfaced to callers and the CLI. The short tag is stable
// (tests and downstream tooling match on it); detail carries the specifics.
enum class errc {
  grid_too_coarse,
  support_escape,
  under_resolved_kernel,
  not_a_diffeomorphism,
  monotonicity_lost,
  blow_up,
  epsilon_too_large,
  bad_input,
  io,
};

inline const char* errc_tag(errc c) {
  switch (c) {
    case errc::grid_too_coarse:       return "grid too coarse";
    case errc::support_escape:        return "support escape";
    case errc::under_resolved_kernel: return "under-resolved kernel";
    case errc::not_a_diffeomorphism:  return "not a diffeomorphism";
    case errc::monotonicity_lost:     return "monotonicity lost";
    case errc::blow_up:               return "blow-up/unstable";
    case errc::epsilon_too_large:     return "epsilon too large";
    case errc::bad_input:             return "bad input";
    case errc::io:                    return "io error";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_tag(code)) + ": " + detail),
        m_code(code) {}
  errc code() const { return m_code; }

 private:
  errc m_code;
};

[[noreturn]] inline void fail(errc code, const std::string& detail) {
  throw error(code, detail);
}

// Numerical tolerances used across the library. Values are defaults; config
// may override the ones it exposes.
struct Tolerances {
  double quad = 1e-8;         // target for adaptive quadrature
  double inverse = 1e-10;     // root-finding tolerance for inversion
  double boundary = 1e-12;    // max allowed magnitude at the domain edge
  double slope_floor = 1e-6;  // min phi_x for a valid diffeomorphism
};

inline double sq(double v) { return v * v; }

inline double linf(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double linf_diff(const std::vector<double>& a,
                        const std::vector<double>& b) {
  if (a.size() != b.size()) fail(errc::bad_input, "linf_diff size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace vbott
