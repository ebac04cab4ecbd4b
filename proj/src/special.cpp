#include "midp/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "midp/primes.hpp"

namespace midp {

namespace {

constexpr int kBernoulliMax = 40;
constexpr int kStirlingTerms = 20;  // uses B_2..B_40

std::mutex g_cache_mutex;

qreal mpq_to_q(const mpq_class& r) {
  // B_40 has a 21-digit numerator; route both parts through decimal strings
  // so the quotient is correctly rounded in quad.
  const qreal n = q_from_str(r.get_num().get_str(10).c_str());
  const qreal d = q_from_str(r.get_den().get_str(10).c_str());
  return n / d;
}

}  // namespace

void PrecisionBudget::validate() const {
  if (prime_cutoff < 3) throw std::invalid_argument("budget: prime_cutoff >= 3 required");
  if (zeta_depth < 1 || series_order < 1 || target_digits < 1)
    throw std::invalid_argument("budget: all depths must be >= 1");
}

const std::vector<mpq_class>& bernoulli_table() {
  static const std::vector<mpq_class> table = [] {
    std::vector<mpq_class> b(kBernoulliMax + 1);
    std::vector<mpz_class> choose(kBernoulliMax + 2);
    b[0] = 1;
    for (int m = 1; m <= kBernoulliMax; ++m) {
      // binomials C(m+1, j)
      choose[0] = 1;
      for (int j = 1; j <= m + 1; ++j) choose[j] = choose[j - 1] * (m + 2 - j) / j;
      mpq_class acc = 0;
      for (int j = 0; j < m; ++j) acc += choose[j] * b[j];
      b[m] = -acc / choose[m];
    }
    return b;
  }();
  return table;
}

qreal bernoulli_q(int n) {
  static const std::vector<qreal> qtab = [] {
    const auto& t = bernoulli_table();
    std::vector<qreal> v(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) v[i] = mpq_to_q(t[i]);
    return v;
  }();
  if (n < 0 || n >= static_cast<int>(qtab.size()))
    throw std::out_of_range("bernoulli_q: index beyond table");
  return qtab[n];
}

// ---------------------------------------------------------------------------
// zeta and prime zeta
// ---------------------------------------------------------------------------

qreal zeta_minus_1(qreal s) {
  if (s < 2) throw std::domain_error("zeta_minus_1: s >= 2 required");
  if (s > 60) {
    // direct tail, geometric decay
    qreal acc = 0;
    for (int n = 2; n <= 64; ++n) {
      const qreal t = q_pow(static_cast<qreal>(n), -s);
      acc += t;
      if (t < acc * 1e-40) break;
    }
    return acc;
  }
  constexpr int N = 32;
  qreal acc = 0;
  for (int n = 2; n < N; ++n) acc += q_pow(static_cast<qreal>(n), -s);
  const qreal Ns = q_pow(static_cast<qreal>(N), -s);
  acc += Ns * N / (s - 1) + Ns / 2;
  // Euler-Maclaurin correction: B_2k/(2k)! * (s)_{2k-1} * N^{-s-2k+1}
  qreal poch = s;            // (s)(s+1)...(s+2k-2), start k=1: just s
  qreal npow = Ns / N;       // N^{-s-1} accumulates N^-2 per step
  qreal fact = 2;            // (2k)!
  for (int k = 1; k <= kStirlingTerms; ++k) {
    acc += bernoulli_q(2 * k) / fact * poch * npow;
    // advance to k+1
    poch *= (s + 2 * k - 1) * (s + 2 * k);
    npow /= static_cast<qreal>(N) * N;
    fact *= (2 * k + 1) * (2 * k + 2);
  }
  return acc;
}

namespace {
qreal zeta_m1_cached(qreal s) {
  static std::map<double, qreal> cache;  // double key: s values are exact small reals
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto [it, fresh] = cache.try_emplace(to_double(s), 0);
  if (fresh) it->second = zeta_minus_1(s);
  return it->second;
}
}  // namespace

qreal prime_zeta(qreal s) {
  if (s < 2) throw std::domain_error("prime_zeta: s >= 2 required");
  qreal acc = 0;
  for (int k = 1; k <= 128; ++k) {
    const int mu = moebius_small(k);
    if (mu == 0) continue;
    const qreal zm1 = zeta_m1_cached(k * s);
    const qreal term = mu * q_log1p(zm1) / k;
    acc += term;
    if (zm1 < 1e-42) break;
  }
  return acc;
}

qreal prime_zeta_tail(qreal s, uint32_t cutoff) {
  static std::map<std::pair<double, uint32_t>, qreal> cache;
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = cache.find({to_double(s), cutoff});
    if (it != cache.end()) return it->second;
  }
  qreal direct = 0;
  auto primes = primes_up_to(cutoff);
  for (auto it = primes->rbegin(); it != primes->rend(); ++it)  // small terms first
    direct += q_pow(static_cast<qreal>(*it), -s);
  const qreal tail = prime_zeta(s) - direct;
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  cache[{to_double(s), cutoff}] = tail;
  return tail;
}

qreal prime_power_sum(int m, qreal c, const PrecisionBudget& budget) {
  if (m < 2) throw std::domain_error("prime_power_sum: m >= 2 required");
  if (c >= 2) throw std::domain_error("prime_power_sum: c < 2 required (pole at q = 2)");
  budget.validate();
  const uint32_t p0 = budget.prime_cutoff;
  auto primes = primes_up_to(p0);
  qreal acc = 0;
  for (auto it = primes->rbegin(); it != primes->rend(); ++it) {
    const qreal t = 1 / (static_cast<qreal>(*it) - c);
    qreal tp = t;
    for (int i = 1; i < m; ++i) tp *= t;
    acc += tp;
  }
  // tail: sum_{q>p0} q^-m (1 - c/q)^-m = sum_j C(m-1+j, j) c^j P_{>p0}(m+j)
  qreal binom = 1, cpow = 1;
  for (int j = 0; j <= budget.zeta_depth + 8; ++j) {
    const qreal term = binom * cpow * prime_zeta_tail(m + j, p0);
    acc += term;
    if (q_abs(term) < 1e-45 * (q_abs(acc) + 1e-30)) break;
    binom = binom * (m + j) / (j + 1);
    cpow *= c;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// gamma family
// ---------------------------------------------------------------------------

cplx lgamma_c(cplx z) {
  if (z.im == 0 && z.re <= 0 && z.re == q_floor(z.re))
    throw std::domain_error("lgamma_c: pole at nonpositive integer");
  cplx shift{0, 0};
  while (z.re < 40) {
    shift += log(z);
    z += cplx{1, 0};
  }
  const cplx lz = log(z);
  cplx acc = (z - cplx{0.5, 0}) * lz - z + cplx{q_log_2pi() / 2, 0};
  const cplx z2 = z * z;
  cplx zp = z;  // z^(2k-1)
  for (int k = 1; k <= kStirlingTerms; ++k) {
    acc += cplx{bernoulli_q(2 * k) / ((2 * k) * (2 * k - 1)), 0} / zp;
    zp *= z2;
  }
  return acc - shift;
}

cplx gamma_c(cplx z) { return exp(lgamma_c(z)); }

qreal polygamma(int m, qreal v) {
  if (!(v > 0)) throw std::domain_error("polygamma: v > 0 required");
  if (m < 0) throw std::domain_error("polygamma: order >= 0 required");
  qreal mfact = 1;
  for (int i = 2; i <= m; ++i) mfact *= i;
  const qreal sign = (m % 2 == 0) ? 1 : -1;  // (-1)^m
  qreal shift = 0;
  while (v < 60) {
    shift += sign * mfact / q_pow(v, static_cast<qreal>(m + 1));
    v += 1;
  }
  qreal asym;
  if (m == 0) {
    asym = q_log(v) - 1 / (2 * v);
    qreal vp = v * v;
    for (int k = 1; k <= kStirlingTerms; ++k) {
      asym -= bernoulli_q(2 * k) / (2 * k * vp);
      vp *= v * v;
    }
  } else {
    // (-1)^(m-1) [ (m-1)!/v^m + m!/(2 v^(m+1)) + sum_k B_2k (2k+m-1)!/((2k)! v^(2k+m)) ]
    const qreal vm = q_pow(v, static_cast<qreal>(m));
    qreal acc = (mfact / m) / vm + mfact / (2 * vm * v);
    qreal fact_num = mfact * (m + 1);  // (2k+m-1)! at k=1
    qreal fact_den = 2;                // (2k)!
    qreal vp = vm * v * v;             // v^(m+2k)
    for (int k = 1; k <= kStirlingTerms; ++k) {
      acc += bernoulli_q(2 * k) * fact_num / (fact_den * vp);
      fact_num *= (2 * k + m) * (2 * k + m + 1);
      fact_den *= (2 * k + 1) * (2 * k + 2);
      vp *= v * v;
    }
    asym = -sign * acc;
  }
  return asym - shift;
}

// ---------------------------------------------------------------------------
// erf / erfc
// ---------------------------------------------------------------------------

qreal erf_q(qreal x) {
  if (x < 0) return -erf_q(-x);
  if (x > 2) return 1 - erfc_q(x);
  // Taylor: 2/sqrt(pi) sum (-1)^k x^(2k+1) / (k! (2k+1))
  const qreal x2 = x * x;
  qreal term = x, acc = 0;
  for (int k = 0; k < 200; ++k) {
    acc += term / (2 * k + 1);
    term *= -x2 / (k + 1);
    if (q_abs(term) < 1e-45 * (q_abs(acc) + 1e-30)) break;
  }
  return acc * 2 / q_sqrt(q_pi());
}

qreal erfc_q(qreal x) {
  if (x <= 2) return 1 - erf_q(x);
  // Lentz continued fraction: sqrt(pi) e^{x^2} erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
  const qreal tiny = 1e-60;
  qreal f = x, C = x, D = 0;
  for (int n = 1; n < 400; ++n) {
    const qreal a = static_cast<qreal>(n) / 2;
    D = x + a * D;
    if (q_abs(D) < tiny) D = tiny;
    C = x + a / C;
    if (q_abs(C) < tiny) C = tiny;
    D = 1 / D;
    const qreal delta = C * D;
    f *= delta;
    if (q_abs(delta - 1) < 1e-40) break;
  }
  return q_exp(-x * x) / (q_sqrt(q_pi()) * f);
}

// ---------------------------------------------------------------------------
// Lambert W
// ---------------------------------------------------------------------------

qreal lambert_w(int branch, qreal x) {
  if (branch != 0 && branch != -1) throw std::domain_error("lambert_w: branch 0 or -1");
  const qreal inv_e = q_exp(static_cast<qreal>(-1));
  if (x < -inv_e) throw std::domain_error("lambert_w: x >= -1/e required");
  if (branch == -1 && x >= 0) throw std::domain_error("lambert_w: branch -1 requires x < 0");
  if (branch == 0 && x == 0) return 0;
  if (x == -inv_e) return -1;

  qreal w;
  if (branch == 0) {
    if (x < -0.25) {
      const qreal p = q_sqrt(2 * (q_exp(static_cast<qreal>(1)) * x + 1));
      w = -1 + p - p * p / 3 + 11 * p * p * p / 72;
    } else if (x < 3) {
      w = x / (1 + x);  // crude, Halley fixes it
    } else {
      const qreal l = q_log(x);
      w = l - q_log(l);
    }
  } else {
    if (x < -0.27) {
      const qreal p = q_sqrt(2 * (q_exp(static_cast<qreal>(1)) * x + 1));
      w = -1 - p - p * p / 3 - 11 * p * p * p / 72;
    } else {
      const qreal l1 = q_log(-x);
      const qreal l2 = q_log(-l1);
      w = l1 - l2 + l2 / l1;
    }
  }
  // Halley until the we^w residual is pinned
  for (int it = 0; it < 80; ++it) {
    if (q_abs(w + 1) < 1e-20) break;  // branch point, series value already exact
    const qreal ew = q_exp(w);
    const qreal f = w * ew - x;
    if (q_abs(f) <= 1e-15 * (q_abs(x) > 1 ? q_abs(x) : static_cast<qreal>(1))) {
      // keep polishing while the step is still significant
      const qreal denom = ew * (w + 1) - (w + 2) * f / (2 * (w + 1));
      const qreal step = f / denom;
      if (q_abs(step) < 1e-32 * (q_abs(w) + 1)) break;
      w -= step;
      continue;
    }
    const qreal denom = ew * (w + 1) - (w + 2) * f / (2 * (w + 1));
    w -= f / denom;
  }
  return w;
}

qreal q_entropy(qreal v) {
  if (!(v > 0)) throw std::domain_error("q_entropy: v > 0 required");
  return v * q_log(v) - v + 1;
}

// ---------------------------------------------------------------------------
// Euler products
// ---------------------------------------------------------------------------

namespace {

// log(1 - 1/q) for every prime q <= cutoff, aligned with primes_up_to(cutoff)
std::shared_ptr<const std::vector<qreal>> log1m_inv_table(uint32_t cutoff) {
  static std::map<uint32_t, std::shared_ptr<const std::vector<qreal>>> cache;
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto it = cache.find(cutoff);
  if (it != cache.end()) return it->second;
  auto primes = primes_up_to(cutoff);
  auto v = std::make_shared<std::vector<qreal>>(primes->size());
  for (std::size_t i = 0; i < primes->size(); ++i)
    (*v)[i] = q_log1p(static_cast<qreal>(-1) / (*primes)[i]);
  auto sp = std::shared_ptr<const std::vector<qreal>>(std::move(v));
  cache[cutoff] = sp;
  return sp;
}

}  // namespace

cplx log_euler_h(cplx z, NuMode mode, const PrecisionBudget& budget, qreal* err_out) {
  budget.validate();
  if (mode == NuMode::Omega && z.re >= 2)
    throw std::domain_error("log_euler_h: Omega mode requires Re z < 2");
  const uint32_t p0 = budget.prime_cutoff;
  const cplx w = (mode == NuMode::omega) ? cplx{1, 0} - z : z;  // tail expansion variable
  if (abs(w) > p0 / 2.0)
    throw std::domain_error("log_euler_h: |z| too large for the tail budget");

  auto primes = primes_up_to(p0);
  auto logs = log1m_inv_table(p0);
  cplx acc{0, 0};
  for (std::size_t i = primes->size(); i-- > 0;) {
    const qreal q = (*primes)[i];
    cplx local = z * cplx{(*logs)[i], 0};
    if (mode == NuMode::omega) {
      local += log(cplx{1, 0} + z / cplx{q - 1, 0});
    } else {
      local -= log(cplx{1, 0} - z / cplx{q, 0});
    }
    acc += local;
  }
  // tail over q > p0: coefficient of q^-j is (w - w^j)/j for both modes
  // (omega with w = 1-z, Omega with w = z up to sign: (z^j - z)/j = -(w - w^j)/j)
  const qreal sign = (mode == NuMode::omega) ? 1 : -1;
  cplx wp = w;  // w^j
  const int depth = budget.zeta_depth;
  for (int j = 2; j <= depth + 1; ++j) {
    wp *= w;
    const cplx coeff = (w - wp) / cplx{static_cast<qreal>(j), 0};
    acc += cplx{sign, 0} * coeff * cplx{prime_zeta_tail(j, p0), 0};
  }
  if (err_out) {
    const qreal wn = abs(w);
    *err_out = (wn + q_pow(wn, static_cast<qreal>(depth + 2))) / (depth + 2) *
                   prime_zeta_tail(depth + 2, p0) +
               1e-32 * (1 + abs(acc));
  }
  return acc;
}

EulerProductValue euler_h(cplx z, NuMode mode, const PrecisionBudget& budget) {
  EulerProductValue out;
  out.budget = budget;
  qreal err = 0;
  const cplx lg = log_euler_h(z, mode, budget, &err);
  out.value = exp(lg);
  out.error_bound = err * (1 + abs(out.value));
  return out;
}

qreal sigma1(qreal v, NuMode mode, const PrecisionBudget& budget) {
  budget.validate();
  if (!(v > -1 && v < 2)) throw std::domain_error("sigma1: -1 < v < 2 required");
  const uint32_t p0 = budget.prime_cutoff;
  auto primes = primes_up_to(p0);
  auto logs = log1m_inv_table(p0);
  qreal acc = 0;
  for (std::size_t i = primes->size(); i-- > 0;) {
    const qreal q = (*primes)[i];
    const qreal d = (mode == NuMode::omega) ? q - 1 + v : q - v;
    acc += (*logs)[i] + 1 / d;
  }
  // tail coefficient of q^-j: w^(j-1) - 1/j with w = 1-v (omega) or v (Omega)
  const qreal w = (mode == NuMode::omega) ? 1 - v : v;
  qreal wp = w;
  for (int j = 2; j <= budget.zeta_depth + 1; ++j) {
    acc += (wp - static_cast<qreal>(1) / j) * prime_zeta_tail(j, p0);
    wp *= w;
  }
  return acc;
}

qreal sigma2(qreal v, NuMode mode, const PrecisionBudget& budget) {
  if (!(v > -1 && v < 2)) throw std::domain_error("sigma2: -1 < v < 2 required");
  if (mode == NuMode::omega) return -prime_power_sum(2, 1 - v, budget);
  return prime_power_sum(2, v, budget);
}

JPair j_funcs(qreal v, NuMode mode, const PrecisionBudget& budget) {
  if (!(v > 0 && v < 2)) throw std::domain_error("j_funcs: 0 < v < 2 required");
  const qreal g = q_euler_gamma();
  const qreal s1 = sigma1(v, mode, budget);
  const qreal s2 = sigma2(v, mode, budget);
  JPair out;
  out.j1 = v * s1 - (digamma(1 + 1 / v) + (1 - v * v) * g) / v;
  out.j2 = v * v * s2 - polygamma(1, 1 + 1 / v) / (v * v);
  return out;
}

cplx h0(cplx z) {
  return exp(cplx{-q_euler_gamma(), 0} * z - lgamma_c(cplx{1, 0} + z));
}

cplx f_nu(cplx z, NuMode mode, const PrecisionBudget& budget) {
  return exp(cplx{q_euler_gamma(), 0} * z + log_euler_h(z, mode, budget));
}

qreal h0_dd_ratio(qreal v) {
  const qreal t = q_euler_gamma() + digamma(1 + v);
  return t * t - polygamma(1, 1 + v);
}

qreal fnu_dd_ratio(qreal v, NuMode mode, const PrecisionBudget& budget) {
  const qreal t = q_euler_gamma() + sigma1(v, mode, budget);
  return t * t + sigma2(v, mode, budget);
}

}  // namespace midp
