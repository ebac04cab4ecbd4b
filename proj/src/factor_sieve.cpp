#include "midp/factor_sieve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "midp/quad.hpp"

namespace midp {

namespace {
constexpr u32 kNoBaseIdx = 0xffffffffu;
constexpr u64 kDeskCap = 10'000'000;  // desk-oracle arrays live in memory
}  // namespace

u128 fix64_log(u64 p) {
  return static_cast<u128>(std::log(static_cast<double>(p)) * 0x1p64);
}

double fix64_to_double(u128 v) {
  const u64 hi = static_cast<u64>(v >> 64);
  const u64 lo = static_cast<u64>(v);
  const qreal q = static_cast<qreal>(hi) + static_cast<qreal>(lo) * 0x1p-64;
  return to_double(q);
}

// ---------------------------------------------------------------------------
// SieveSegment
// ---------------------------------------------------------------------------

SieveSegment::SieveSegment(u64 lo, u64 hi) : lo_(lo), hi_(hi) {
  if (lo < 2 || hi <= lo) throw std::invalid_argument("SieveSegment: need 2 <= lo < hi");
  const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi - 1))) + 2;
  base_primes_ = primes_up_to(static_cast<u32>(root));
  spf_.assign(hi - lo, 0);
  for (u32 p : *base_primes_) {
    const u64 pp = p;
    if (pp * pp >= hi) break;
    for (u64 m = ((lo + pp - 1) / pp) * pp; m < hi; m += pp)
      if (!spf_[m - lo]) spf_[m - lo] = pp;
  }
  for (u64 i = 0; i < hi - lo; ++i)
    if (!spf_[i]) spf_[i] = lo + i;  // prime
}

u64 SieveSegment::spf(u64 n) const {
  if (n < lo_ || n >= hi_) throw std::out_of_range("SieveSegment::spf: n outside segment");
  return spf_[n - lo_];
}

Factorization SieveSegment::factorize(u64 n) const {
  if (n < lo_ || n >= hi_) throw std::out_of_range("factorize: n outside segment");
  if (n < 2) throw std::invalid_argument("factorize: n >= 2 required");
  Factorization out;
  out.n = n;
  u64 m = n;
  u64 first = spf_[n - lo_];
  auto it = std::lower_bound(base_primes_->begin(), base_primes_->end(), first);
  for (; it != base_primes_->end(); ++it) {
    const u64 p = *it;
    if (p * p > m) break;
    if (m % p) continue;
    u32 e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  }
  if (m > 1) out.factors.push_back({m, 1});
  return out;
}

u64 middle_prime(const Factorization& f, NuMode mode) {
  if (f.factors.empty())
    throw std::domain_error("middle_prime: undefined for n = 1 (empty factorization)");
  if (mode == NuMode::omega) {
    const u32 idx = (f.omega() + 1) / 2;  // ceil(omega/2), 1-based
    return f.factors[idx - 1].prime;
  }
  const u32 target = (f.big_omega() + 1) / 2;
  u32 cum = 0;
  for (const auto& fe : f.factors) {
    cum += fe.exponent;
    if (cum >= target) return fe.prime;
  }
  return f.factors.back().prime;  // unreachable
}

// ---------------------------------------------------------------------------
// two-pass middle-prime sweep over one segment
// ---------------------------------------------------------------------------

namespace {

struct SegmentScratch {
  std::vector<u64> residual;
  std::vector<uint8_t> nu, cnt;
  std::vector<u32> mid;  // base-prime index + 1, or 0 while unresolved
};

// Sink: void (u64 n, u32 nu, u64 mid_prime, u32 base_idx_or_kNoBaseIdx)
template <typename Sink>
void middle_segment(u64 lo, u64 hi, NuMode mode, const std::vector<u32>& base,
                    SegmentScratch& s, Sink&& sink) {
  const u64 len = hi - lo;
  s.residual.assign(len, 0);
  s.nu.assign(len, 0);
  for (u64 i = 0; i < len; ++i) s.residual[i] = lo + i;

  // pass 1: nu(n)
  for (u32 p : base) {
    const u64 pp = p;
    if (pp * pp >= hi) break;
    for (u64 m = ((lo + pp - 1) / pp) * pp; m < hi; m += pp) {
      const u64 i = m - lo;
      u32 e = 0;
      while (s.residual[i] % pp == 0) {
        s.residual[i] /= pp;
        ++e;
      }
      s.nu[i] += (mode == NuMode::omega) ? 1 : e;
    }
  }
  for (u64 i = 0; i < len; ++i)
    if (s.residual[i] > 1) s.nu[i] += 1;

  // pass 2: walk primes ascending again, stop at the ceil(nu/2)-th hit
  s.cnt.assign(len, 0);
  s.mid.assign(len, 0);
  for (u64 i = 0; i < len; ++i) s.residual[i] = lo + i;
  u32 base_idx = 0;
  for (u32 p : base) {
    const u64 pp = p;
    if (pp * pp >= hi) break;
    for (u64 m = ((lo + pp - 1) / pp) * pp; m < hi; m += pp) {
      const u64 i = m - lo;
      if (s.mid[i]) continue;  // already resolved, skip the division work
      u32 e = 0;
      while (s.residual[i] % pp == 0) {
        s.residual[i] /= pp;
        ++e;
      }
      s.cnt[i] += (mode == NuMode::omega) ? 1 : e;
      if (s.cnt[i] >= (s.nu[i] + 1u) / 2u) s.mid[i] = base_idx + 1;
    }
    ++base_idx;
  }
  for (u64 i = 0; i < len; ++i) {
    if (s.mid[i]) {
      const u32 bi = s.mid[i] - 1;
      sink(lo + i, s.nu[i], static_cast<u64>(base[bi]), bi);
    } else {
      // middle factor is the leftover prime > sqrt(segment)
      sink(lo + i, s.nu[i], s.residual[i], kNoBaseIdx);
    }
  }
}

}  // namespace

SumLogResult sum_log_middle(u64 x, NuMode mode, const SumLogConfig& cfg) {
  if (x < 2) throw std::invalid_argument("sum_log_middle: x >= 2 required");
  SumLogResult out;
  out.x = x;
  out.mode = mode;
  const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(x))) + 2;
  auto base = primes_up_to(static_cast<u32>(root));
  std::vector<u128> base_fix(base->size());
  for (std::size_t i = 0; i < base->size(); ++i) base_fix[i] = fix64_log((*base)[i]);

  const u64 seg = cfg.segment_size < 1024 ? 1024 : cfg.segment_size;
  const u64 nseg = (x - 1 + seg) / seg;  // segments of [2, x]
  unsigned nthreads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  if (!nthreads) nthreads = 1;
  if (nthreads > nseg) nthreads = static_cast<unsigned>(nseg);

  std::atomic<u64> next{0};
  std::mutex merge;
  u128 total_odd = 0, total_even = 0;

  auto worker = [&] {
    SegmentScratch scratch;
    u128 odd = 0, even = 0;
    for (;;) {
      const u64 si = next.fetch_add(1);
      if (si >= nseg) break;
      const u64 lo = 2 + si * seg;
      const u64 hi = std::min(lo + seg, x + 1);
      middle_segment(lo, hi, mode, *base, scratch,
                     [&](u64, u32 nu, u64 p_mid, u32 bi) {
                       const u128 f = bi == kNoBaseIdx ? fix64_log(p_mid) : base_fix[bi];
                       if (nu & 1)
                         odd += f;
                       else
                         even += f;
                     });
    }
    std::lock_guard<std::mutex> lock(merge);
    total_odd += odd;
    total_even += even;
  };

  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  out.fix_odd = total_odd;
  out.fix_even = total_even;
  out.fix_total = total_odd + total_even;
  out.odd = fix64_to_double(out.fix_odd);
  out.even = fix64_to_double(out.fix_even);
  out.total = fix64_to_double(out.fix_total);
  return out;
}

MiddleCounts middle_counts_direct(u64 x, NuMode mode, const SumLogConfig& cfg) {
  if (x < 2 || x > kDeskCap)
    throw std::invalid_argument("middle_counts_direct: 2 <= x <= 1e7 (desk scale)");
  MiddleCounts out;
  out.x = x;
  out.mode = mode;
  out.odd.assign(x + 1, 0);
  out.even.assign(x + 1, 0);
  const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(x))) + 2;
  auto base = primes_up_to(static_cast<u32>(root));
  const u64 seg = cfg.segment_size < 1024 ? 1024 : cfg.segment_size;
  SegmentScratch scratch;
  for (u64 lo = 2; lo <= x; lo += seg) {
    const u64 hi = std::min(lo + seg, x + 1);
    middle_segment(lo, hi, mode, *base, scratch, [&](u64, u32 nu, u64 p_mid, u32) {
      if (nu & 1)
        out.odd[p_mid] += 1;
      else
        out.even[p_mid] += 1;
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// decomposition route
// ---------------------------------------------------------------------------

namespace {

struct DeskTables {
  std::vector<u32> spf, pplus, pminus;
  std::vector<uint8_t> om, bigom;
};

DeskTables build_desk_tables(u64 x) {
  DeskTables t;
  t.spf.assign(x + 1, 0);
  for (u64 i = 2; i * i <= x; ++i)
    if (!t.spf[i])
      for (u64 m = i * i; m <= x; m += i)
        if (!t.spf[m]) t.spf[m] = static_cast<u32>(i);
  for (u64 i = 2; i <= x; ++i)
    if (!t.spf[i]) t.spf[i] = static_cast<u32>(i);

  t.pplus.assign(x + 1, 0);
  t.pminus.assign(x + 1, 0);
  t.om.assign(x + 1, 0);
  t.bigom.assign(x + 1, 0);
  t.pminus[1] = 0xffffffffu;  // P^-(1) = +infinity, P^+(1) = 0
  for (u64 n = 2; n <= x; ++n) {
    const u32 p = t.spf[n];
    const u64 m = n / p;
    t.pminus[n] = std::min<u32>(p, m == 1 ? 0xffffffffu : t.pminus[m]);
    t.pplus[n] = std::max<u32>(p, t.pplus[m]);
    t.om[n] = t.om[m] + (m % p != 0 ? 1 : 0);
    t.bigom[n] = t.bigom[m] + 1;
  }
  return t;
}

// factorization walk used for the excluded-square enumeration
void factor_from_spf(const DeskTables& t, u64 n, std::vector<FactorEntry>& out) {
  out.clear();
  while (n > 1) {
    const u32 p = t.spf[n];
    u32 e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
}

}  // namespace

MiddleCounts middle_counts_decomposition(u64 x, NuMode mode) {
  if (x < 2 || x > kDeskCap)
    throw std::invalid_argument("middle_counts_decomposition: 2 <= x <= 1e7 (desk scale)");
  MiddleCounts out;
  out.x = x;
  out.mode = mode;
  out.odd.assign(x + 1, 0);
  out.even.assign(x + 1, 0);
  const DeskTables t = build_desk_tables(x);
  const auto nu_of = [&](u64 n) -> u32 {
    return mode == NuMode::omega ? t.om[n] : t.bigom[n];
  };

  // main term: p <= sqrt(x), a p-friable, b p-rough, nu(b) - nu(a) in {0,1}
  for (u64 p = 2; p * p <= x; ++p) {
    if (t.spf[p] != p) continue;
    const u64 amax = x / p;
    for (u64 a = 1; a <= amax; ++a) {
      if (a > 1 && t.pplus[a] >= p) continue;
      const u32 ka = nu_of(a);
      const u64 bmax = x / (a * p);
      for (u64 b = 1; b <= bmax; ++b) {
        if (t.pminus[b] <= p) continue;
        const u32 kb = nu_of(b);
        if (kb == ka)
          out.odd[p] += 1;  // nu(n) = 2 ka + 1
        else if (kb == ka + 1)
          out.even[p] += 1;
      }
    }
  }

  // excluded case 1: p_m(n)^2 | n, enumerated directly
  std::vector<FactorEntry> fac;
  for (u64 n = 2; n <= x; ++n) {
    factor_from_spf(t, n, fac);
    u32 nu = 0;
    for (const auto& fe : fac) nu += (mode == NuMode::omega) ? 1 : fe.exponent;
    const u32 target = (nu + 1) / 2;
    u32 cum = 0;
    for (const auto& fe : fac) {
      cum += (mode == NuMode::omega) ? 1 : fe.exponent;
      if (cum >= target) {
        if (fe.exponent >= 2) {
          if (nu & 1)
            out.odd[fe.prime] += 1;
          else
            out.even[fe.prime] += 1;
        }
        break;
      }
    }
  }

  // excluded case 2: p_m(n) > sqrt(x) forces n prime         (nu = 1, odd)
  for (u64 n = 2; n <= x; ++n)
    if (t.spf[n] == n && n * n > x) out.odd[n] += 1;

  return out;
}

SumLogResult render_counts(const MiddleCounts& counts) {
  SumLogResult out;
  out.x = counts.x;
  out.mode = counts.mode;
  for (u64 p = 2; p < counts.odd.size(); ++p) {
    if (!counts.odd[p] && !counts.even[p]) continue;
    const u128 f = fix64_log(p);
    out.fix_odd += static_cast<u128>(counts.odd[p]) * f;
    out.fix_even += static_cast<u128>(counts.even[p]) * f;
  }
  out.fix_total = out.fix_odd + out.fix_even;
  out.odd = fix64_to_double(out.fix_odd);
  out.even = fix64_to_double(out.fix_even);
  out.total = fix64_to_double(out.fix_total);
  return out;
}

SumLogResult sum_log_middle_via_decomposition(u64 x, NuMode mode) {
  return render_counts(middle_counts_decomposition(x, mode));
}

}  // namespace midp
