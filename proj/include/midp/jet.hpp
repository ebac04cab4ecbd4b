#pragma once

// Truncated Taylor series ("jets") with exactly tracked truncation order.
// Templated over the coefficient field so the same algebra runs on quad
// complex numbers in production and on exact rationals in test oracles.
// Every operation below is algebraic: transcendental constant terms are the
// caller's problem (exp0/log1 require the appropriate normalization).

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace midp {

template <typename F>
class Jet {
 public:
  Jet() : c_(1) {}
  explicit Jet(int order) : c_(static_cast<std::size_t>(order) + 1) {
    if (order < 0) throw std::invalid_argument("jet order must be >= 0");
  }
  Jet(std::vector<F> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.resize(1);
  }

  static Jet identity(int order) {  // the series z
    Jet j(order);
    if (order >= 1) j.c_[1] = F(1);
    return j;
  }
  static Jet constant(const F& v, int order) {
    Jet j(order);
    j.c_[0] = v;
    return j;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const F& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  F& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  const std::vector<F>& coeffs() const { return c_; }

  Jet truncated(int order) const {
    Jet out(order);
    const int n = order < this->order() ? order : this->order();
    for (int k = 0; k <= n; ++k) out.c_[k] = c_[k];
    return out;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet out = a.truncated(common_order(a, b));
    for (int k = 0; k <= out.order(); ++k) out.c_[k] += b.c_[k];
    return out;
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    Jet out = a.truncated(common_order(a, b));
    for (int k = 0; k <= out.order(); ++k) out.c_[k] -= b.c_[k];
    return out;
  }
  friend Jet operator-(const Jet& a) {
    Jet out = a;
    for (auto& x : out.c_) x = -x;
    return out;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    const int n = common_order(a, b);
    Jet out(n);
    for (int i = 0; i <= n; ++i) {
      if (a.c_[i] == F(0)) continue;
      for (int j = 0; i + j <= n; ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return out;
  }
  friend Jet operator*(const F& s, const Jet& a) {
    Jet out = a;
    for (auto& x : out.c_) x = s * x;
    return out;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    if (b.c_[0] == F(0)) throw std::domain_error("jet division by series with zero constant");
    const int n = common_order(a, b);
    Jet out(n);
    for (int k = 0; k <= n; ++k) {
      F acc = a.c_[k];
      for (int j = 0; j < k; ++j) acc -= out.c_[j] * b.c_[k - j];
      out.c_[k] = acc / b.c_[0];
    }
    return out;
  }

  Jet derivative() const {
    if (order() == 0) return Jet(0);
    Jet out(order() - 1);
    for (int k = 1; k <= order(); ++k) out.c_[k - 1] = F(k) * c_[k];
    return out;
  }

  // divide by z^m (requires the low coefficients to vanish)
  Jet shifted_down(int m) const {
    for (int k = 0; k < m; ++k)
      if (!(c_[k] == F(0))) throw std::domain_error("jet shift: nonzero low coefficient");
    Jet out(order());
    for (int k = m; k <= order(); ++k) out.c_[k - m] = c_[k];
    return out;
  }

  template <typename X>
  X eval(const X& x) const {
    X acc = X(0);
    for (int k = order(); k >= 0; --k) acc = acc * x + X(c_[k]);
    return acc;
  }

 private:
  static int common_order(const Jet& a, const Jet& b) {
    return a.order() < b.order() ? a.order() : b.order();
  }
  std::vector<F> c_;
};

// exp of a jet with zero constant term (ODE recurrence n E_n = sum j S_j E_{n-j}).
template <typename F>
Jet<F> jet_exp0(const Jet<F>& s) {
  if (!(s[0] == F(0))) throw std::domain_error("jet_exp0: constant term must vanish");
  const int n = s.order();
  Jet<F> e(n);
  e[0] = F(1);
  for (int k = 1; k <= n; ++k) {
    F acc = F(0);
    for (int j = 1; j <= k; ++j) acc += F(j) * s[j] * e[k - j];
    e[k] = acc / F(k);
  }
  return e;
}

// log of a jet with unit constant term.
template <typename F>
Jet<F> jet_log1(const Jet<F>& f) {
  if (!(f[0] == F(1))) throw std::domain_error("jet_log1: constant term must be 1");
  const int n = f.order();
  Jet<F> d = f.derivative() / f.truncated(n > 0 ? n - 1 : 0);
  Jet<F> out(n);
  for (int k = 1; k <= n; ++k) out[k] = d[k - 1] / F(k);
  return out;
}

// sqrt given the square root of the constant term.
template <typename F>
Jet<F> jet_sqrt(const Jet<F>& f, const F& root0) {
  if (root0 == F(0)) throw std::domain_error("jet_sqrt: zero constant term");
  const int n = f.order();
  Jet<F> r(n);
  r[0] = root0;
  for (int k = 1; k <= n; ++k) {
    F acc = f[k];
    for (int j = 1; j < k; ++j) acc -= r[j] * r[k - j];
    r[k] = acc / (F(2) * root0);
  }
  return r;
}

// f(g) for g with zero constant term (Horner from the top).
template <typename F>
Jet<F> jet_compose(const Jet<F>& f, const Jet<F>& g) {
  if (!(g[0] == F(0))) throw std::domain_error("jet_compose: inner constant term must vanish");
  const int n = f.order() < g.order() ? f.order() : g.order();
  Jet<F> acc = Jet<F>::constant(f[f.order()], n);
  for (int k = f.order() - 1; k >= 0; --k) {
    acc = acc * g.truncated(n);
    acc[0] += f[k];
  }
  return acc;
}

// compositional inverse of f (f(0) = 0, f'(0) != 0), by Newton iteration.
template <typename F>
Jet<F> jet_revert(const Jet<F>& f) {
  if (!(f[0] == F(0))) throw std::domain_error("jet_revert: constant term must vanish");
  if (f[1] == F(0)) throw std::domain_error("jet_revert: vanishing linear term");
  const int n = f.order();
  Jet<F> g(n);
  g[1] = F(1) / f[1];
  const Jet<F> id = Jet<F>::identity(n);
  const Jet<F> fp = [&] {
    Jet<F> d(n);  // f' padded back to order n
    Jet<F> fd = f.derivative();
    for (int k = 0; k <= fd.order(); ++k) d[k] = fd[k];
    return d;
  }();
  int steps = 2;
  for (int m = n; m > 1; m /= 2) ++steps;  // Newton doubles correct coefficients
  for (int it = 0; it < steps; ++it) {
    Jet<F> err = jet_compose(f, g) - id;
    g = g - err / jet_compose(fp, g);
  }
  return g;
}

}  // namespace midp
