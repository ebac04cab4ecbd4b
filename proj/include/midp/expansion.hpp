#pragma once

// Final assembly of the asymptotic objects: the exponent geometry kappa /
// K_nu / rho_nu, the first-order functionals s_{nu;1}, the derivatives of
// R_nu = log rho_nu at phi*, the constants A_nu, a_{nu,1}, a+_{nu,1},
// c_{nu,1}, and the predictions for Phi_{nu,k}, lambda_nu and S_nu.

#include <cstdint>
#include <map>
#include <string>

#include "midp/nu_mode.hpp"
#include "midp/quad.hpp"
#include "midp/special.hpp"

namespace midp {

using u32 = uint32_t;

qreal phi_star();           // phi/sqrt(5): the maximum of kappa
qreal kappa(qreal v);       // 2 sqrt(v(1-v)) + v - 1 on [0,1]
qreal delta_of(qreal v);    // sqrt((1-v)/v), 0 < v < 1

// K_nu(w) = H_nu(w) e^{gamma(w - 1/w)} / Gamma(1 + 1/w), 0 < w < 2
qreal k_nu(qreal w, NuMode mode, const PrecisionBudget& budget);
// rho_nu(v) = v^{1/4} K_nu(delta_v) / (2 sqrt(pi) (1-v)^{3/4}), 1/5 < v < 1
qreal rho_nu(qreal v, NuMode mode, const PrecisionBudget& budget);
qreal rho_nu_plus(qreal v, NuMode mode, const PrecisionBudget& budget);

struct GeometryPoint {
  qreal v, delta, kappa, rho, rho_plus;
};
GeometryPoint geometry_point(qreal v, NuMode mode, const PrecisionBudget& budget);

// s_{nu;1}(v) and s+_{nu;1}(v) on (1/5, 1)
qreal s1(qreal v, NuMode mode, const PrecisionBudget& budget);
qreal s1_plus(qreal v, NuMode mode, const PrecisionBudget& budget);

struct RDerivs {
  qreal rp, rpp;  // R'_nu(phi*), R''_nu(phi*)
};
RDerivs r_derivs(NuMode mode, const PrecisionBudget& budget);
// centered finite differences of log rho_nu with one Richardson step
RDerivs r_derivs_fd(NuMode mode, const PrecisionBudget& budget, qreal step);

struct ExpansionReport {
  NuMode mode = NuMode::omega;
  double a_nu = 0;        // A_nu, Gamma(phi) normalization
  double a_nu_iota = 0;   // A_{nu,iota} = A_nu/phi, Gamma(1+phi) normalization
  double s1_at_phistar = 0;
  double rp = 0, rpp = 0;
  double j1_phim1 = 0;    // j_{nu,1}(phi-1)
  double a1 = 0, a1_plus = 0, c1 = 0;
  PrecisionBudget budget;
  std::map<std::string, double> error_estimate;  // budget-doubling deltas
};

// Computes every constant twice (two algebraic routes for A_nu and c_1) and
// throws with diagnostics if the routes disagree beyond 1e-8.
ExpansionReport assemble_constants(NuMode mode, const PrecisionBudget& budget);

// Phi_{nu,k}(x,y) prediction; mode only participates in validation, the
// expansion coefficients f_m are mode-free.  Window: r_{k,y} in [5/16, 17].
qreal predict_phi(double x, double y, u32 k, NuMode mode, int big_m,
                  const PrecisionBudget& budget);

// lambda_nu(p,k) prediction; window: k/loglog p in [17/128, 5/3].
qreal predict_lambda(double p, u32 k, NuMode mode, int big_m, const PrecisionBudget& budget);

struct SumPrediction {
  double j0 = 0, j1 = 0;   // A_nu x (log x)^{1/phi} {1 (+ c1/loglog x)}
  double iota = 0;         // odd-parity component, J=1
  double pi = 0;           // even-parity component, J=1
};
SumPrediction predict_sum(double x, const ExpansionReport& report);

}  // namespace midp
