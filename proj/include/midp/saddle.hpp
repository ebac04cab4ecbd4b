#pragma once

// The saddle-point engine: the series q(z) and its reverted series mu(s),
// Stirling coefficients d_n, the coefficient functionals C_{m,phi}(v), and
// the circle integrals I_{k,phi}(xi) both by quadrature and by the
// asymptotic expansion in 1/xi.

#include <gmpxx.h>

#include <memory>
#include <vector>

#include "midp/jet.hpp"
#include "midp/nu_mode.hpp"
#include "midp/quad.hpp"
#include "midp/special.hpp"

namespace midp {

using CJet = Jet<cplx>;

// q(z) = sqrt(z^2 / (2(1 + iz - e^{iz}))), principal root; q(0) = 1.
CJet q_series(int order);

enum class MuRoute { reversion, lagrange };

// mu = compositional inverse of z/q(z); both construction routes must agree.
CJet mu_series(int order, MuRoute route = MuRoute::reversion);

// Stirling coefficients d_0..d_M of Gamma(z+1) e^z / (z^z sqrt(2 pi z)) in
// powers of 1/z, as exact rationals (M <= 20).
std::vector<mpq_class> stirling_d(int m_max);
qreal stirling_d_q(int n);

// Analytic function handle: pointwise values on circles plus Taylor jets at
// real centers (jets power the functionals; no numerical differentiation).
struct AnalyticFn {
  virtual ~AnalyticFn() = default;
  virtual cplx eval(const cplx& z) const = 0;
  virtual CJet jet_at(qreal v, int order) const = 0;
  virtual qreal radius() const = 0;  // analyticity radius about 0
  virtual const char* name() const = 0;
};

const AnalyticFn& fn_one();
const AnalyticFn& fn_identity();
const AnalyticFn& fn_h0();
std::shared_ptr<const AnalyticFn> make_fn_fnu(NuMode mode, const PrecisionBudget& budget);

// C_{m,phi}(v); imaginary part is a numerical residue for our handles.
cplx coeff_functional(int m, const AnalyticFn& phi, qreal v, const PrecisionBudget& budget);

// I_{k,phi}(xi), trapezoid quadrature on |z| = k/xi with node doubling.
cplx contour_integral(int k, const AnalyticFn& phi, qreal xi, const PrecisionBudget& budget);

// (xi^k/k!) sum_{m<=M} C_{m,phi}(k/xi)/xi^m.
cplx expand_integral(int k, const AnalyticFn& phi, qreal xi, int big_m,
                     const PrecisionBudget& budget);

// f_m(v) = C_{m,h0}(v) and g_{nu,m}(v) = C_{m,F_nu}(v).
qreal f_m(int m, qreal v, const PrecisionBudget& budget);
qreal g_m(int m, qreal v, NuMode mode, const PrecisionBudget& budget);

}  // namespace midp
