#pragma once

// Ground-truth counting oracles: the rough-number counts Phi_{nu,k}(x,y),
// the generating sum Phi_nu(x,y,z), and the logarithmic means lambda_nu(p,k)
// by exact coefficient extraction.

#include <gmpxx.h>

#include <complex>
#include <vector>

#include "midp/factor_sieve.hpp"
#include "midp/nu_mode.hpp"
#include "midp/quad.hpp"

namespace midp {

struct RoughCountRequest {
  u64 x = 0;
  u64 y = 2;
  NuMode mode = NuMode::omega;
  u32 kmax = 32;
  u64 segment_size = 1ull << 22;
};

// counts[k] = #{n <= x : P^-(n) > y, nu(n) = k}; counts[0] = 1 accounts for
// n = 1 (vacuously y-rough).
std::vector<u64> phi_count(const RoughCountRequest& req);

// Direct accumulation of sum z^{nu(n)} over y-rough n <= x (n = 1 included).
std::complex<double> phi_generating(u64 x, u64 y, std::complex<double> z, NuMode mode,
                                    u64 segment_size = 1ull << 22);

struct LambdaTable {
  u64 p = 0;
  NuMode mode = NuMode::omega;
  bool exact = false;
  std::vector<mpq_class> exact_values;  // populated when exact
  std::vector<qreal> values;            // always populated, index k
};

// lambda_nu(p,k) = z^k coefficient of prod_{q<p} (1 + z/(q-1))  (omega)
// or prod_{q<p} (1 - z/q)^{-1}  (Omega), truncated at degree kmax.
// Exact rational arithmetic for p <= exact_below, quad floats beyond.
LambdaTable lambda_exact(u64 p, NuMode mode, u32 kmax, u64 exact_below = 2000);

}  // namespace midp
