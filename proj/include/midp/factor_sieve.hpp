#pragma once

// Segmented factorization sweeps: full factorizations, middle prime factors,
// and the two routes to S_nu(x) (direct sweep and the a*p*b decomposition
// identity with its excluded cases handled exactly).
//
// Summation discipline: every log p goes through fix64_log (a 64.64 fixed
// point value derived from the double log).  Fixed-point sums are exact and
// order-independent, so the two routes and any segmentation/threading give
// bit-identical results.

#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "midp/nu_mode.hpp"
#include "midp/primes.hpp"

namespace midp {

using u32 = uint32_t;
using u64 = uint64_t;
using u128 = unsigned __int128;

struct FactorEntry {
  u64 prime;
  u32 exponent;
};

struct Factorization {
  u64 n = 0;
  std::vector<FactorEntry> factors;  // strictly ascending primes, exponents >= 1

  u32 omega() const { return static_cast<u32>(factors.size()); }
  u32 big_omega() const {
    u32 s = 0;
    for (const auto& f : factors) s += f.exponent;
    return s;
  }
  u32 nu(NuMode mode) const { return mode == NuMode::omega ? omega() : big_omega(); }
  u64 p_minus() const { return factors.empty() ? 0 : factors.front().prime; }
  u64 p_plus() const { return factors.empty() ? 0 : factors.back().prime; }
};

// Factor table for one half-open range [lo, hi); spf(n) is the smallest
// prime factor.
class SieveSegment {
 public:
  SieveSegment(u64 lo, u64 hi);

  u64 lo() const { return lo_; }
  u64 hi() const { return hi_; }
  u64 spf(u64 n) const;
  Factorization factorize(u64 n) const;

 private:
  u64 lo_, hi_;
  std::vector<u64> spf_;
  std::shared_ptr<const std::vector<u32>> base_primes_;
};

// middle prime factor p_{m,nu}(n); throws on an empty factorization (n = 1)
u64 middle_prime(const Factorization& f, NuMode mode);

struct SumLogConfig {
  u64 segment_size = 1ull << 22;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct SumLogResult {
  u64 x = 0;
  NuMode mode = NuMode::omega;
  u128 fix_total = 0, fix_odd = 0, fix_even = 0;  // 64.64 fixed point
  double total = 0, odd = 0, even = 0;            // rendered
};

// S_nu(x) with parity split (odd/even nu(n)), by segmented sweep.
SumLogResult sum_log_middle(u64 x, NuMode mode, const SumLogConfig& cfg = {});

// Per-prime multiplicities of the middle factor, split by parity of nu(n).
// Desk scale only (vectors indexed by prime value).
struct MiddleCounts {
  u64 x = 0;
  NuMode mode = NuMode::omega;
  std::vector<u32> odd, even;  // index = prime
};

MiddleCounts middle_counts_direct(u64 x, NuMode mode, const SumLogConfig& cfg = {});

// The decomposition route: sum over primes p <= sqrt(x) of log p times the
// number of pairs (a, b) with a p-friable, b p-rough, apb <= x and
// nu(b) - nu(a) in {0, 1}; plus exact enumeration of the excluded cases
// p_m(n)^2 | n and p_m(n) > sqrt(x).
MiddleCounts middle_counts_decomposition(u64 x, NuMode mode);

SumLogResult render_counts(const MiddleCounts& counts);
SumLogResult sum_log_middle_via_decomposition(u64 x, NuMode mode);

// Fixed-point discipline
u128 fix64_log(u64 p);
double fix64_to_double(u128 v);

// ---------------------------------------------------------------------------
// Segmented statistics sweep: visits every n in [2, x] ascending with
// (n, smallest prime factor, omega(n), Omega(n)).  Single-threaded template;
// the heavy middle-prime paths live in the .cpp.
// ---------------------------------------------------------------------------

template <typename Visitor>
void scan_factor_stats(u64 x, u64 segment_size, Visitor&& visit) {
  if (x < 2) return;
  const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(x))) + 2;
  auto base = primes_up_to(static_cast<u32>(root));
  std::vector<u64> residual;
  std::vector<u32> pmin;
  std::vector<uint8_t> om, bigom;
  for (u64 lo = 2; lo <= x; lo += segment_size) {
    const u64 hi = (x + 1 - lo > segment_size) ? lo + segment_size : x + 1;
    const u64 len = hi - lo;
    residual.assign(len, 0);
    pmin.assign(len, 0);
    om.assign(len, 0);
    bigom.assign(len, 0);
    for (u64 i = 0; i < len; ++i) residual[i] = lo + i;
    for (u32 p : *base) {
      const u64 pp = static_cast<u64>(p);
      if (pp * pp >= hi) break;  // leftover residuals are prime beyond this
      u64 m = ((lo + pp - 1) / pp) * pp;
      for (; m < hi; m += pp) {
        const u64 i = m - lo;
        u32 e = 0;
        while (residual[i] % pp == 0) {
          residual[i] /= pp;
          ++e;
        }
        if (!pmin[i]) pmin[i] = p;
        om[i] += 1;
        bigom[i] += e;
      }
    }
    for (u64 i = 0; i < len; ++i) {
      u64 p_small = pmin[i];
      u32 o = om[i], O = bigom[i];
      if (residual[i] > 1) {
        if (!p_small) p_small = residual[i];
        o += 1;
        O += 1;
      }
      visit(lo + i, static_cast<u64>(p_small), o, O);
    }
  }
}

}  // namespace midp
