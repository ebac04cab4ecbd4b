#include "midp/expansion.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "midp/saddle.hpp"

namespace midp {

qreal phi_star() { return q_phi() / q_sqrt5(); }

qreal kappa(qreal v) {
  if (!(v >= 0 && v <= 1)) throw std::domain_error("kappa: 0 <= v <= 1 required");
  return 2 * q_sqrt(v * (1 - v)) + v - 1;
}

qreal delta_of(qreal v) {
  if (!(v > 0 && v < 1)) throw std::domain_error("delta_of: 0 < v < 1 required");
  return q_sqrt((1 - v) / v);
}

qreal k_nu(qreal w, NuMode mode, const PrecisionBudget& budget) {
  if (!(w > 0 && w < 2)) throw std::domain_error("k_nu: 0 < w < 2 required");
  const qreal h = log_euler_h(cplx{w, 0}, mode, budget).re;
  return q_exp(h + q_euler_gamma() * (w - 1 / w) - q_lgamma(1 + 1 / w));
}

qreal rho_nu(qreal v, NuMode mode, const PrecisionBudget& budget) {
  if (!(v > 0.2 && v < 1)) throw std::domain_error("rho_nu: 1/5 < v < 1 required");
  const qreal d = delta_of(v);
  return q_pow(v, static_cast<qreal>(0.25)) * k_nu(d, mode, budget) /
         (2 * q_sqrt(q_pi()) * q_pow(1 - v, static_cast<qreal>(0.75)));
}

qreal rho_nu_plus(qreal v, NuMode mode, const PrecisionBudget& budget) {
  return delta_of(v) * rho_nu(v, mode, budget);
}

GeometryPoint geometry_point(qreal v, NuMode mode, const PrecisionBudget& budget) {
  GeometryPoint g;
  g.v = v;
  g.delta = delta_of(v);
  g.kappa = kappa(v);
  g.rho = rho_nu(v, mode, budget);
  g.rho_plus = g.delta * g.rho;
  return g;
}

qreal s1(qreal v, NuMode mode, const PrecisionBudget& budget) {
  if (!(v > 0.2 && v < 1)) throw std::domain_error("s1: 1/5 < v < 1 required");
  const qreal d = delta_of(v);  // < 2 precisely because v > 1/5
  const qreal g = q_euler_gamma();
  const JPair j = j_funcs(d, mode, budget);
  const qreal a_star =
      4 * (g + digamma(1 + 1 / d)) / d + j.j1 + j.j1 * j.j1 + j.j2 - static_cast<qreal>(0.75);
  const qreal b_v = h0_dd_ratio(1 / d) / 2;
  const qreal c_v = fnu_dd_ratio(d, mode, budget) / 2;
  const qreal root = q_sqrt(v * (1 - v));
  return a_star / (4 * root) - b_v * q_sqrt(v) / q_pow(1 - v, static_cast<qreal>(1.5)) -
         c_v * q_sqrt(1 - v) / q_pow(v, static_cast<qreal>(1.5));
}

qreal s1_plus(qreal v, NuMode mode, const PrecisionBudget& budget) {
  const qreal d = delta_of(v);
  const JPair j = j_funcs(d, mode, budget);
  return s1(v, mode, budget) + (2 * j.j1 + 1) / (4 * q_sqrt(v * (1 - v)));
}

RDerivs r_derivs(NuMode mode, const PrecisionBudget& budget) {
  const qreal v = phi_star();
  const qreal g = q_euler_gamma();
  const qreal d = delta_of(v);
  const qreal dp = -1 / (2 * v * v * d);
  const qreal dpp = 1 / (v * v * v * d) - 1 / (4 * v * v * v * v * d * d * d);
  const qreal s1d = sigma1(d, mode, budget);
  const qreal s2d = sigma2(d, mode, budget);
  const qreal psi_a = digamma(1 + 1 / d);
  const qreal psi_b = polygamma(1, 1 + 1 / d);
  // L(w) = log K_nu(w); the Gamma part differentiates through psi
  const qreal lp = s1d + g * (1 + 1 / (d * d)) + psi_a / (d * d);
  const qreal lpp = s2d - 2 * g / (d * d * d) - psi_b / (d * d * d * d) - 2 * psi_a / (d * d * d);
  RDerivs out;
  out.rp = 1 / (4 * v) + 3 / (4 * (1 - v)) + lp * dp;
  out.rpp = -1 / (4 * v * v) + 3 / (4 * (1 - v) * (1 - v)) + lpp * dp * dp + lp * dpp;
  return out;
}

RDerivs r_derivs_fd(NuMode mode, const PrecisionBudget& budget, qreal step) {
  const qreal v = phi_star();
  auto R = [&](qreal t) { return q_log(rho_nu(t, mode, budget)); };
  auto d1 = [&](qreal h) { return (R(v + h) - R(v - h)) / (2 * h); };
  auto d2 = [&](qreal h) { return (R(v + h) - 2 * R(v) + R(v - h)) / (h * h); };
  RDerivs out;
  out.rp = (4 * d1(step / 2) - d1(step)) / 3;  // Richardson
  out.rpp = (4 * d2(step / 2) - d2(step)) / 3;
  return out;
}

namespace {

struct ConstantCore {
  qreal a_nu, a_nu_iota, s1v, rp, rpp, j1, a1, a1p, c1;
};

ConstantCore constants_core(NuMode mode, const PrecisionBudget& budget) {
  const qreal phi = q_phi();
  const qreal r5 = q_sqrt5();
  const qreal g = q_euler_gamma();
  const qreal vstar = phi_star();

  ConstantCore c;
  // route 1: A_nu = phi e^{-gamma} H_nu(phi-1) / (sqrt5 Gamma(phi))
  const qreal h_at = log_euler_h(cplx{phi - 1, 0}, mode, budget).re;
  c.a_nu = q_exp(q_log(phi) - g + h_at - q_lgamma(phi)) / r5;
  // route 2: A_{nu,iota} = rho_nu(phi*) sqrt(pi/|K2|), K2 = -5 sqrt5/4
  const qreal abs_k2 = 5 * r5 / 4;
  c.a_nu_iota = rho_nu(vstar, mode, budget) * q_sqrt(q_pi() / abs_k2);
  const qreal a_route2 = phi * c.a_nu_iota;  // Gamma(1+phi) = phi Gamma(phi)
  if (q_abs(c.a_nu - a_route2) > 1e-8 * q_abs(c.a_nu)) {
    std::ostringstream os;
    os << "assemble_constants: A_nu route disagreement (" << to_string(mode)
       << "): product route " << q_to_string(c.a_nu, 20) << " vs saddle route "
       << q_to_string(a_route2, 20);
    throw std::runtime_error(os.str());
  }

  c.s1v = s1(vstar, mode, budget);
  const RDerivs rd = r_derivs(mode, budget);
  c.rp = rd.rp;
  c.rpp = rd.rpp;
  c.j1 = j_funcs(phi - 1, mode, budget).j1;

  c.a1 = c.s1v - 3 * r5 / 20 - 3 * c.rp / 10 + r5 / 25 * (c.rp * c.rp + c.rpp);
  c.a1p = c.a1 + phi / 2 - r5 / 5 * c.rp + r5 / 4 * (2 * c.j1 + 1);
  c.c1 = (phi * c.a1 + c.a1p) / (phi + 1);

  // fully expanded closed form of c1 as an independent route
  const qreal c1_expanded = c.s1v + (19 * r5 - 35) / 40 + (2 - 3 * r5) / 10 * c.rp +
                            r5 / 25 * (c.rp * c.rp + c.rpp) + (3 * r5 - 5) / 4 * c.j1;
  if (q_abs(c.c1 - c1_expanded) > 1e-8 * (q_abs(c.c1) + 1)) {
    std::ostringstream os;
    os << "assemble_constants: c1 route disagreement (" << to_string(mode) << "): "
       << q_to_string(c.c1, 20) << " vs " << q_to_string(c1_expanded, 20);
    throw std::runtime_error(os.str());
  }
  return c;
}

}  // namespace

ExpansionReport assemble_constants(NuMode mode, const PrecisionBudget& budget) {
  budget.validate();
  const ConstantCore base = constants_core(mode, budget);
  const ConstantCore fine = constants_core(mode, budget.doubled());

  ExpansionReport r;
  r.mode = mode;
  r.budget = budget;
  r.a_nu = to_double(base.a_nu);
  r.a_nu_iota = to_double(base.a_nu_iota);
  r.s1_at_phistar = to_double(base.s1v);
  r.rp = to_double(base.rp);
  r.rpp = to_double(base.rpp);
  r.j1_phim1 = to_double(base.j1);
  r.a1 = to_double(base.a1);
  r.a1_plus = to_double(base.a1p);
  r.c1 = to_double(base.c1);

  auto delta = [](qreal a, qreal b) { return to_double(q_abs(a - b)) + 1e-30; };
  r.error_estimate["A"] = delta(base.a_nu, fine.a_nu);
  r.error_estimate["s1"] = delta(base.s1v, fine.s1v);
  r.error_estimate["Rp"] = delta(base.rp, fine.rp);
  r.error_estimate["Rpp"] = delta(base.rpp, fine.rpp);
  r.error_estimate["a1"] = delta(base.a1, fine.a1);
  r.error_estimate["a1_plus"] = delta(base.a1p, fine.a1p);
  r.error_estimate["c1"] = delta(base.c1, fine.c1);
  return r;
}

qreal predict_phi(double x, double y, u32 k, NuMode mode, int big_m,
                  const PrecisionBudget& budget) {
  (void)mode;  // the f_m are mode-free; the exact counts are not
  if (!(x >= 3 && y >= 3 && y < x)) throw std::domain_error("predict_phi: need 3 <= y < x");
  if (k < 1) throw std::domain_error("predict_phi: k >= 1");
  const qreal lx = q_log(static_cast<qreal>(x));
  const qreal u = lx / q_log(static_cast<qreal>(y));
  const qreal lu = q_log(u);
  const qreal r = (static_cast<qreal>(k) - 1) / lu;
  if (!(r >= 0.3125 && r <= 17))
    throw std::domain_error("predict_phi: r_{k,y} outside window [5/16, 17]");
  qreal sum = 0, lum = 1;
  for (int m = 0; m <= big_m; ++m) {
    sum += f_m(m, r, budget) / lum;
    lum *= lu;
  }
  // x (log u)^{k-1} / ((k-1)! log x)
  const qreal lead = q_exp(q_log(static_cast<qreal>(x)) + (k - 1) * q_log(lu) -
                           q_lgamma(static_cast<qreal>(k)) - q_log(lx));
  return lead * sum;
}

qreal predict_lambda(double p, u32 k, NuMode mode, int big_m, const PrecisionBudget& budget) {
  if (!(p >= 3)) throw std::domain_error("predict_lambda: p >= 3");
  const qreal llp = q_log(q_log(static_cast<qreal>(p)));
  const qreal r = static_cast<qreal>(k) / llp;
  const qreal window_hi = static_cast<qreal>(5) / 3;  // < r_Omega = 2
  if (!(r >= static_cast<qreal>(17) / 128 && r <= window_hi))
    throw std::domain_error("predict_lambda: k/loglog p outside window [17/128, 5/3]");
  qreal sum = 0, lm = 1;
  for (int m = 0; m <= big_m; ++m) {
    sum += g_m(m, r, mode, budget) / lm;
    lm *= llp;
  }
  const qreal lead = q_exp(k * q_log(llp) - q_lgamma(static_cast<qreal>(k) + 1));
  return lead * sum;
}

SumPrediction predict_sum(double x, const ExpansionReport& report) {
  if (!(x >= 3)) throw std::domain_error("predict_sum: x >= 3");
  const double lx = std::log(x);
  const double llx = std::log(lx);
  const double base = x * std::pow(lx, 1.0 / to_double(q_phi()));
  SumPrediction s;
  s.j0 = report.a_nu * base;
  s.j1 = report.a_nu * base * (1 + report.c1 / llx);
  s.iota = report.a_nu_iota * base * (1 + report.a1 / llx);
  s.pi = report.a_nu_iota / to_double(q_phi()) * base * (1 + report.a1_plus / llx);
  return s;
}

}  // namespace midp
