#pragma once

// Special functions and prime sums in quad precision: log-gamma, polygamma,
// erf/erfc, Lambert W (real branches), Bernoulli numbers, the prime zeta
// function, and the Euler products H_nu / F_nu with their log-derivative
// prime sums sigma_1, sigma_2.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "midp/nu_mode.hpp"
#include "midp/quad.hpp"

namespace midp {

// Knobs for every truncated evaluation.  prime_cutoff bounds the direct part
// of prime sums, zeta_depth the 1/p tail expansion order, series_order the
// power-series jets, target_digits the requested self-agreement.
struct PrecisionBudget {
  uint32_t prime_cutoff = 100000;
  int zeta_depth = 12;
  int series_order = 24;
  int target_digits = 25;
  int quad_node_cap = 1 << 18;

  void validate() const;
  PrecisionBudget doubled() const {
    PrecisionBudget b = *this;
    b.prime_cutoff *= 2;
    b.zeta_depth *= 2;
    b.series_order *= 2;
    b.quad_node_cap *= 2;
    return b;
  }
};

struct EulerProductValue {
  cplx value;
  qreal error_bound = 0;
  PrecisionBudget budget;
};

// Exact Bernoulli numbers B_0..B_n (B_1 = -1/2 convention), n <= 40.
const std::vector<mpq_class>& bernoulli_table();
qreal bernoulli_q(int n);

// zeta(s) - 1 for real s >= 2 (Euler-Maclaurin).
qreal zeta_minus_1(qreal s);

// prime zeta P(s) = sum_p p^-s for real s >= 2, via Moebius-weighted log zeta.
qreal prime_zeta(qreal s);

// sum over primes q > cutoff of q^-s, s >= 2 integer-ish real.
qreal prime_zeta_tail(qreal s, uint32_t cutoff);

// sum_q 1/(q - c)^m for m >= 2 and real c < 2 (tail-accelerated).
qreal prime_power_sum(int m, qreal c, const PrecisionBudget& budget);

// log Gamma, principal on the positive axis; exp(lgamma_c) is always Gamma.
cplx lgamma_c(cplx z);
cplx gamma_c(cplx z);

// polygamma psi^(m)(v) for real v > 0, m >= 0.
qreal polygamma(int m, qreal v);
inline qreal digamma(qreal v) { return polygamma(0, v); }

qreal erf_q(qreal x);
qreal erfc_q(qreal x);

// Real Lambert W, branch 0 or -1 (Halley).
qreal lambert_w(int branch, qreal x);

// Q(v) = v log v - v + 1.
qreal q_entropy(qreal v);

// log H_nu(z); Omega mode requires Re z < 2.  err_out (optional) receives the
// tail truncation estimate.
cplx log_euler_h(cplx z, NuMode mode, const PrecisionBudget& budget, qreal* err_out = nullptr);
EulerProductValue euler_h(cplx z, NuMode mode, const PrecisionBudget& budget);

// sigma_1 = (log H_nu)', sigma_2 = (log H_nu)'' as their own prime sums.
qreal sigma1(qreal v, NuMode mode, const PrecisionBudget& budget);
qreal sigma2(qreal v, NuMode mode, const PrecisionBudget& budget);

// j_{nu,1}(v) = v sigma1(v) - {psi(1+1/v) + (1-v^2) gamma}/v and
// j_{nu,2}(v) = v^2 sigma2(v) - psi'(1+1/v)/v^2, for 0 < v < 2.
struct JPair { qreal j1, j2; };
JPair j_funcs(qreal v, NuMode mode, const PrecisionBudget& budget);

// h0(z) = exp(-gamma z)/Gamma(1+z), entire.
cplx h0(cplx z);
// F_nu(z) = exp(gamma z) H_nu(z), |z| < r_nu.
cplx f_nu(cplx z, NuMode mode, const PrecisionBudget& budget);

// h0''/h0 at real v > -1:   (gamma + psi(1+v))^2 - psi'(1+v)
qreal h0_dd_ratio(qreal v);
// F_nu''/F_nu at real v:    (gamma + sigma1(v))^2 + sigma2(v)
qreal fnu_dd_ratio(qreal v, NuMode mode, const PrecisionBudget& budget);

}  // namespace midp
