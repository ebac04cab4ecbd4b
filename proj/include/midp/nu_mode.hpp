#pragma once

#include <stdexcept>
#include <string>

namespace midp {

// Selector between the two prime-factor counting functions: omega counts
// distinct primes, Omega counts with multiplicity.  The associated Euler
// products converge on |z| < radius(): 2 for Omega, unbounded for omega.
enum class NuMode { omega, Omega };

inline const char* to_string(NuMode m) { return m == NuMode::omega ? "omega" : "Omega"; }

inline NuMode nu_mode_from_string(const std::string& s) {
  if (s == "omega") return NuMode::omega;
  if (s == "Omega") return NuMode::Omega;
  throw std::invalid_argument("unknown mode: " + s + " (want omega|Omega)");
}

inline double nu_radius(NuMode m) {
  return m == NuMode::Omega ? 2.0 : 1e300;  // r_omega is unbounded
}

}  // namespace midp
