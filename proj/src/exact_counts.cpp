#include "midp/exact_counts.hpp"

#include <stdexcept>

namespace midp {

std::vector<u64> phi_count(const RoughCountRequest& req) {
  if (req.x < 1 || req.y < 2 || req.y > req.x)
    throw std::invalid_argument("phi_count: need x >= 1 and 2 <= y <= x");
  std::vector<u64> counts(req.kmax + 1, 0);
  counts[0] = 1;  // n = 1: vacuously y-rough, nu = 0
  scan_factor_stats(req.x, req.segment_size, [&](u64, u64 pmin, u32 om, u32 bigom) {
    if (pmin <= req.y) return;
    const u32 k = req.mode == NuMode::omega ? om : bigom;
    if (k <= req.kmax) counts[k] += 1;
  });
  return counts;
}

std::complex<double> phi_generating(u64 x, u64 y, std::complex<double> z, NuMode mode,
                                    u64 segment_size) {
  if (x < 1 || y < 2 || y > x)
    throw std::invalid_argument("phi_generating: need x >= 1 and 2 <= y <= x");
  // nu(n) <= log2(x) < 64; power table, z^0 = 1 even for z = 0
  std::vector<std::complex<double>> zpow(64);
  zpow[0] = {1.0, 0.0};
  for (int k = 1; k < 64; ++k) zpow[k] = zpow[k - 1] * z;
  std::complex<double> acc = zpow[0];  // n = 1
  scan_factor_stats(x, segment_size, [&](u64, u64 pmin, u32 om, u32 bigom) {
    if (pmin <= y) return;
    acc += zpow[mode == NuMode::omega ? om : bigom];
  });
  return acc;
}

LambdaTable lambda_exact(u64 p, NuMode mode, u32 kmax, u64 exact_below) {
  if (p < 3) throw std::invalid_argument("lambda_exact: p >= 3 required");
  // p must be prime
  for (u64 d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("lambda_exact: p must be prime");
  auto primes = primes_up_to(static_cast<u32>(p - 1));
  if (mode == NuMode::omega && kmax > primes->size())
    throw std::out_of_range("lambda_exact: kmax exceeds pi(p-1) in omega mode");

  LambdaTable out;
  out.p = p;
  out.mode = mode;
  out.exact = p <= exact_below;

  if (out.exact) {
    std::vector<mpq_class> c(kmax + 1, 0);
    c[0] = 1;
    for (u32 q : *primes) {
      if (mode == NuMode::omega) {
        // multiply by 1 + z/(q-1): descending pass
        const mpq_class w(1, q - 1);
        for (u32 k = kmax; k >= 1; --k) c[k] += c[k - 1] * w;
      } else {
        // divide by 1 - z/q: ascending pass
        const mpq_class w(1, q);
        for (u32 k = 1; k <= kmax; ++k) c[k] += c[k - 1] * w;
      }
    }
    out.exact_values = c;
    out.values.resize(kmax + 1);
    for (u32 k = 0; k <= kmax; ++k) {
      const qreal num = q_from_str(c[k].get_num().get_str(10).c_str());
      const qreal den = q_from_str(c[k].get_den().get_str(10).c_str());
      out.values[k] = num / den;
    }
    return out;
  }

  std::vector<qreal> c(kmax + 1, 0);
  c[0] = 1;
  for (u32 q : *primes) {
    if (mode == NuMode::omega) {
      const qreal w = static_cast<qreal>(1) / (q - 1);
      for (u32 k = kmax; k >= 1; --k) c[k] += c[k - 1] * w;
    } else {
      const qreal w = static_cast<qreal>(1) / q;
      for (u32 k = 1; k <= kmax; ++k) c[k] += c[k - 1] * w;
    }
  }
  out.values = std::move(c);
  return out;
}

}  // namespace midp
