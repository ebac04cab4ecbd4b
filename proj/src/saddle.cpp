#include "midp/saddle.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace midp {

namespace {

std::mutex g_mutex;

// 2(1 + iz - e^{iz})/z^2 has Taylor coefficients -2 i^{k+2}/(k+2)!.
CJet q_denominator_series(int order) {
  CJet e(order);
  // i^k cycle starting at k=0 for coefficient index 0: i^{0+2} = -1
  cplx ipow{-1, 0};  // i^{k+2}
  qreal fact = 2;    // (k+2)!
  for (int k = 0; k <= order; ++k) {
    e[k] = cplx{-2 / fact, 0} * ipow;
    ipow *= cplx{0, 1};
    fact *= (k + 3);
  }
  return e;
}

}  // namespace

CJet q_series(int order) {
  if (order < 1) throw std::invalid_argument("q_series: order >= 1");
  const CJet e = q_denominator_series(order);
  const CJet inv = Jet<cplx>::constant(cplx{1, 0}, order) / e;
  return jet_sqrt(inv, cplx{1, 0});
}

CJet mu_series(int order, MuRoute route) {
  if (order < 1) throw std::invalid_argument("mu_series: order >= 1");
  const CJet q = q_series(order);
  if (route == MuRoute::reversion) {
    const CJet w = Jet<cplx>::identity(order) / q;
    return jet_revert(w);
  }
  // Lagrange: mu_n = [z^{n-1}] q(z)^n / n
  CJet mu(order);
  CJet qn = Jet<cplx>::constant(cplx{1, 0}, order);
  for (int n = 1; n <= order; ++n) {
    qn = qn * q;
    mu[n] = qn[n - 1] / cplx{static_cast<qreal>(n), 0};
  }
  return mu;
}

std::vector<mpq_class> stirling_d(int m_max) {
  if (m_max < 0 || m_max > 20) throw std::invalid_argument("stirling_d: 0 <= M <= 20");
  // exp of sum_k B_2k t^{2k-1} / (2k(2k-1)), t = 1/z
  Jet<mpq_class> s(m_max);
  const auto& bern = bernoulli_table();
  for (int k = 1; 2 * k - 1 <= m_max; ++k)
    s[2 * k - 1] = bern[2 * k] / mpq_class(2 * k * (2 * k - 1));
  return jet_exp0(s).coeffs();
}

qreal stirling_d_q(int n) {
  static std::vector<qreal> table = [] {
    auto d = stirling_d(20);
    std::vector<qreal> v(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      const qreal num = q_from_str(d[i].get_num().get_str(10).c_str());
      const qreal den = q_from_str(d[i].get_den().get_str(10).c_str());
      v[i] = num / den;
    }
    return v;
  }();
  if (n < 0 || n >= static_cast<int>(table.size()))
    throw std::out_of_range("stirling_d_q: index beyond table");
  return table[n];
}

// ---------------------------------------------------------------------------
// function handles
// ---------------------------------------------------------------------------

namespace {

struct OneFn final : AnalyticFn {
  cplx eval(const cplx&) const override { return {1, 0}; }
  CJet jet_at(qreal, int order) const override {
    return Jet<cplx>::constant(cplx{1, 0}, order);
  }
  qreal radius() const override { return 1e30; }
  const char* name() const override { return "1"; }
};

struct IdentityFn final : AnalyticFn {
  cplx eval(const cplx& z) const override { return z; }
  CJet jet_at(qreal v, int order) const override {
    CJet j(order);
    j[0] = cplx{v, 0};
    if (order >= 1) j[1] = cplx{1, 0};
    return j;
  }
  qreal radius() const override { return 1e30; }
  const char* name() const override { return "z"; }
};

struct H0Fn final : AnalyticFn {
  cplx eval(const cplx& z) const override { return h0(z); }
  CJet jet_at(qreal v, int order) const override {
    if (v <= -1) throw std::domain_error("h0 jet: center must be > -1");
    // log h0(v+w) = -gamma(v+w) - lgamma(1+v+w), expanded via polygamma
    CJet lg(order);
    lg[0] = cplx{-q_euler_gamma() * v - q_lgamma(1 + v), 0};
    qreal fact = 1;
    for (int m = 1; m <= order; ++m) {
      fact *= m;
      qreal c = -polygamma(m - 1, 1 + v) / fact;
      if (m == 1) c -= q_euler_gamma();
      lg[m] = cplx{c, 0};
    }
    const cplx c0 = lg[0];
    lg[0] = cplx{0, 0};
    return exp(c0) * jet_exp0(lg);
  }
  qreal radius() const override { return 1e30; }
  const char* name() const override { return "h0"; }
};

struct FnuFn final : AnalyticFn {
  NuMode mode;
  PrecisionBudget budget;
  FnuFn(NuMode m, const PrecisionBudget& b) : mode(m), budget(b) {}

  cplx eval(const cplx& z) const override { return f_nu(z, mode, budget); }
  CJet jet_at(qreal v, int order) const override {
    if (v >= radius()) throw std::domain_error("F_nu jet: center beyond radius");
    // log F = gamma z + log H_nu(z); derivatives of log H_nu are prime sums
    CJet lg(order);
    lg[0] = log_euler_h(cplx{v, 0}, mode, budget);
    if (order >= 1) lg[1] = cplx{q_euler_gamma() + sigma1(v, mode, budget), 0};
    for (int m = 2; m <= order; ++m) {
      // omega: (-1)^{m-1} S(m, 1-v)/m,  Omega: S(m, v)/m  with S = prime_power_sum
      qreal c;
      if (mode == NuMode::omega) {
        c = prime_power_sum(m, 1 - v, budget) / m;
        if (m % 2 == 0) c = -c;
      } else {
        c = prime_power_sum(m, v, budget) / m;
      }
      lg[m] = cplx{c, 0};
    }
    lg[0].re += q_euler_gamma() * v;
    const cplx c0 = lg[0];
    lg[0] = cplx{0, 0};
    return exp(c0) * jet_exp0(lg);
  }
  qreal radius() const override { return mode == NuMode::Omega ? 2.0 : 1e30; }
  const char* name() const override { return mode == NuMode::Omega ? "F_Omega" : "F_omega"; }
};

}  // namespace

const AnalyticFn& fn_one() {
  static const OneFn fn;
  return fn;
}
const AnalyticFn& fn_identity() {
  static const IdentityFn fn;
  return fn;
}
const AnalyticFn& fn_h0() {
  static const H0Fn fn;
  return fn;
}
std::shared_ptr<const AnalyticFn> make_fn_fnu(NuMode mode, const PrecisionBudget& budget) {
  return std::make_shared<FnuFn>(mode, budget);
}

// ---------------------------------------------------------------------------
// coefficient functional and contour integrals
// ---------------------------------------------------------------------------

namespace {

// mu jets are pure series data; cache by order
CJet mu_cached(int order) {
  static std::map<int, CJet> cache;
  std::lock_guard<std::mutex> lock(g_mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, mu_series(order)).first;
  return it->second;
}

}  // namespace

cplx coeff_functional(int m, const AnalyticFn& phi, qreal v, const PrecisionBudget& budget) {
  if (m < 0 || m > 20) throw std::invalid_argument("coeff_functional: 0 <= m <= 20");
  if (!(v > 0) || v >= phi.radius())
    throw std::domain_error("coeff_functional: v outside (0, radius)");
  const int need = 2 * m + 2;
  const int order = budget.series_order > need ? budget.series_order : need;
  const CJet mu = mu_cached(order);

  // jet of tau -> phi(v e^{i mu(tau)})
  CJet imu = cplx{0, 1} * mu;
  CJet e_tau = cplx{v, 0} * jet_exp0(imu);  // v e^{i mu}, constant term v
  e_tau[0] = cplx{0, 0};                    // compose against phi's jet at center v
  const CJet phi_jet = phi.jet_at(v, 2 * m);
  const CJet comp = jet_compose(phi_jet, e_tau.truncated(2 * m > 1 ? 2 * m : 1));

  cplx total{0, 0};
  for (int j = 0; j <= m; ++j) {
    // d_{m-j} * (2j)!/(2^j j!) * sum_{n<=2j} (2j-n+1) mu_{2j-n+1} c_n
    qreal factor = stirling_d_q(m - j);
    for (int i = 1; i <= j; ++i) factor *= static_cast<qreal>(2 * i - 1) / 1;  // (2j)!/(2^j j!) = prod odd
    cplx inner{0, 0};
    for (int n = 0; n <= 2 * j; ++n) {
      const int p = 2 * j - n + 1;
      inner += cplx{static_cast<qreal>(p), 0} * mu[p] * comp[n];
    }
    total += cplx{factor, 0} * inner;
  }
  return total / cplx{q_pow(v, static_cast<qreal>(m)), 0};
}

cplx contour_integral(int k, const AnalyticFn& phi, qreal xi, const PrecisionBudget& budget) {
  if (k < 1 || !(xi > 0)) throw std::invalid_argument("contour_integral: k >= 1, xi > 0");
  const qreal r = k / xi;
  if (r >= phi.radius()) throw std::domain_error("contour_integral: radius >= analyticity radius");

  const qreal tol = q_pow(10, -static_cast<qreal>(budget.target_digits < 12 ? budget.target_digits : 12));
  auto value_at = [&](int nodes) {
    cplx acc{0, 0};
    for (int j = 0; j < nodes; ++j) {
      const qreal theta = 2 * q_pi() * j / nodes;
      const cplx z = cplx{r, 0} * unit_circle(theta);
      const cplx f = exp(cplx{xi, 0} * z) * phi.eval(z) * pow_int(z, -k);
      acc += f;
    }
    return acc / cplx{static_cast<qreal>(nodes), 0};
  };
  int nodes = 64;
  cplx prev = value_at(nodes);
  while (nodes < budget.quad_node_cap) {
    nodes *= 2;
    const cplx cur = value_at(nodes);
    if (abs(cur - prev) <= tol * (abs(cur) + 1e-300)) return cur;
    prev = cur;
  }
  return prev;
}

cplx expand_integral(int k, const AnalyticFn& phi, qreal xi, int big_m,
                     const PrecisionBudget& budget) {
  if (k < 1 || !(xi > 0)) throw std::invalid_argument("expand_integral: k >= 1, xi > 0");
  const qreal r = k / xi;
  const qreal hi = phi.radius() < 20.0 ? 0.95 * phi.radius() : static_cast<qreal>(20);
  if (r < 0.05 || r > hi)
    throw std::domain_error("expand_integral: ratio k/xi outside the fixed window");
  cplx sum{0, 0};
  qreal xim = 1;
  for (int m = 0; m <= big_m; ++m) {
    sum += coeff_functional(m, phi, r, budget) / cplx{xim, 0};
    xim *= xi;
  }
  // xi^k / k!
  const qreal lead = q_exp(k * q_log(xi) - q_lgamma(static_cast<qreal>(k) + 1));
  return cplx{lead, 0} * sum;
}

qreal f_m(int m, qreal v, const PrecisionBudget& budget) {
  return coeff_functional(m, fn_h0(), v, budget).re;
}

qreal g_m(int m, qreal v, NuMode mode, const PrecisionBudget& budget) {
  auto fn = make_fn_fnu(mode, budget);
  return coeff_functional(m, *fn, v, budget).re;
}

}  // namespace midp
