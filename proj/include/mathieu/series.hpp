#pragma once

#include <mathieu/errors.hpp>
#include <mathieu/poly.hpp>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace mathieu {

namespace detail {

inline Rational invert_coeff(const Rational& c) {
  if (c == 0) throw StructuralError("leading coefficient is zero");
  return Rational(1) / c;
}

inline Poly invert_coeff(const Poly& c) {
  if (c.is_zero() || !c.is_constant()) throw StructuralError("leading coefficient is not an invertible constant");
  return Poly(Rational(1) / c[0]);
}

inline bool is_zero_coeff(const Rational& c) { return c == 0; }
inline bool is_zero_coeff(const Poly& c) { return c.is_zero(); }

}  // namespace detail

/// Truncated Laurent series sum_{k=low}^{order} c_k x^k with exact coefficients.
///
/// `order` is the highest exponent that is known; everything above it is
/// unknown rather than zero. Coefficients are Rational or Poly (a polynomial
/// in a second variable such as the level B).
template <class C>
class Series {
 public:
  using coeff_type = C;

  Series() = default;
  Series(std::string var, int order, int low = 0) : var_(std::move(var)), low_(low), order_(order) {
    if (order < low - 1) throw DomainError("series order below its valuation");
    c_.assign(order - low + 1, C{});
  }

  static Series constant(std::string var, const C& value, int order) {
    Series s(std::move(var), order, 0);
    if (order >= 0) s.c_[0] = value;
    return s;
  }

  /// x itself, truncated at `order`.
  static Series identity(std::string var, int order) {
    Series s(std::move(var), order, 0);
    if (order >= 1) s.c_[1] = C(Rational(1));
    return s;
  }

  const std::string& var() const { return var_; }
  int low() const { return low_; }
  int order() const { return order_; }

  /// Coefficient of x^e; zero below the valuation.
  C operator[](int e) const {
    if (e > order_) throw TruncationError("coefficient x^" + std::to_string(e) + " beyond truncation order " + std::to_string(order_));
    if (e < low_) return C{};
    return c_[e - low_];
  }

  C& at(int e) {
    if (e < low_ || e > order_) throw TruncationError("coefficient index outside stored range");
    return c_[e - low_];
  }

  void set(int e, const C& v) { at(e) = v; }

  /// Lowest exponent with a nonzero coefficient, or order+1 if none.
  int valuation() const {
    for (int e = low_; e <= order_; ++e)
      if (!detail::is_zero_coeff(c_[e - low_])) return e;
    return order_ + 1;
  }

  Series truncated(int order) const {
    Series r(var_, std::min(order, order_), low_);
    for (int e = low_; e <= r.order_; ++e) r.c_[e - low_] = c_[e - low_];
    return r;
  }

  /// Same series stored with a different valuation window (lower coefficients must vanish).
  Series relowered(int low) const {
    Series r(var_, order_, low);
    for (int e = low_; e <= order_; ++e) {
      if (e < low) {
        if (!detail::is_zero_coeff(c_[e - low_])) throw StructuralError("nonzero coefficient below requested valuation");
        continue;
      }
      r.c_[e - low] = c_[e - low_];
    }
    return r;
  }

  /// Multiply by x^k.
  Series shifted(int k) const {
    Series r = *this;
    r.low_ += k;
    r.order_ += k;
    return r;
  }

  Series& operator*=(const Rational& s) {
    for (auto& c : c_) c *= s;
    return *this;
  }

  template <class F>
  auto map(F&& f) const {
    using D = decltype(f(std::declval<const C&>()));
    Series<D> r(var_, order_, low_);
    for (int e = low_; e <= order_; ++e) r.at(e) = f(c_[e - low_]);
    return r;
  }

  friend bool operator==(const Series& a, const Series& b) {
    if (a.var_ != b.var_ || a.order_ != b.order_) return false;
    int lo = std::min(a.low_, b.low_);
    for (int e = lo; e <= a.order_; ++e)
      if (!(a[e] == b[e])) return false;
    return true;
  }

 private:
  std::string var_ = "x";
  int low_ = 0;
  int order_ = -1;
  std::vector<C> c_;
};

template <class C>
void require_same_var(const Series<C>& a, const Series<C>& b) {
  if (a.var() != b.var()) throw DomainError("series variables differ: " + a.var() + " vs " + b.var());
}

template <class C>
Series<C> operator+(const Series<C>& a, const Series<C>& b) {
  require_same_var(a, b);
  Series<C> r(a.var(), std::min(a.order(), b.order()), std::min(a.low(), b.low()));
  for (int e = r.low(); e <= r.order(); ++e) r.at(e) = a[e] + b[e];
  return r;
}

template <class C>
Series<C> operator-(const Series<C>& a) {
  Series<C> r = a;
  r *= Rational(-1);
  return r;
}

template <class C>
Series<C> operator-(const Series<C>& a, const Series<C>& b) {
  return a + (-b);
}

template <class C>
Series<C> operator*(const Series<C>& a, const Series<C>& b) {
  require_same_var(a, b);
  int order = std::min(a.order() + b.low(), b.order() + a.low());
  Series<C> r(a.var(), order, a.low() + b.low());
  for (int i = a.low(); i <= a.order(); ++i) {
    C ai = a[i];
    if (detail::is_zero_coeff(ai)) continue;
    for (int j = b.low(); j <= b.order() && i + j <= order; ++j) {
      C bj = b[j];
      if (detail::is_zero_coeff(bj)) continue;
      r.at(i + j) += ai * bj;
    }
  }
  return r;
}

template <class C>
Series<C> operator*(const Rational& s, Series<C> a) {
  a *= s;
  return a;
}

/// Multiply every coefficient by a ring element (e.g. a polynomial in B).
template <class C>
Series<C> scale(Series<C> a, const C& s) {
  for (int e = a.low(); e <= a.order(); ++e) a.at(e) = a[e] * s;
  return a;
}

template <class C>
Series<C> derivative(const Series<C>& a) {
  Series<C> r(a.var(), a.order() - 1, a.low() - 1);
  for (int e = a.low(); e <= a.order(); ++e) r.at(e - 1) = a[e] * Rational(e);
  return a.low() == 0 ? r.relowered(0) : r;
}

/// Antiderivative with zero constant term.
template <class C>
Series<C> integrate(const Series<C>& a) {
  if (a.low() <= -1 && !detail::is_zero_coeff(a[-1])) throw StructuralError("cannot integrate a 1/x term");
  int low = std::max(a.low(), 0) + 1;
  Series<C> r(a.var(), a.order() + 1, low);
  for (int e = std::max(a.low(), 0); e <= a.order(); ++e) r.at(e + 1) = a[e] * (Rational(1) / Rational(e + 1));
  return r;
}

/// 1/a; the lowest stored coefficient must be invertible.
template <class C>
Series<C> reciprocal(const Series<C>& a) {
  int v = a.valuation();
  if (v > a.order()) throw StructuralError("reciprocal of a zero series");
  C inv0 = detail::invert_coeff(a[v]);
  int len = a.order() - v;
  Series<C> r(a.var(), -v + len, -v);
  for (int k = 0; k <= len; ++k) {
    C acc = (k == 0) ? C(Rational(1)) : C{};
    for (int j = 1; j <= k; ++j) acc -= a[v + j] * r[-v + k - j];
    r.at(-v + k) = acc * inv0;
  }
  return r;
}

template <class C>
Series<C> operator/(const Series<C>& a, const Series<C>& b) {
  return a * reciprocal(b);
}

/// exp(a) for a series without negative powers and with zero constant term.
template <class C>
Series<C> exp(const Series<C>& a) {
  if (a.valuation() < 1) throw StructuralError("exp needs a series with zero constant term");
  // E' = a' E, solved coefficientwise.
  int n = a.order();
  Series<C> r(a.var(), n, 0);
  r.at(0) = C(Rational(1));
  for (int k = 1; k <= n; ++k) {
    C acc{};
    for (int j = 1; j <= k; ++j) acc += a[j] * r[k - j] * Rational(j);
    r.at(k) = acc * (Rational(1) / Rational(k));
  }
  return r;
}

/// log(a) for a series with constant term one and no negative powers.
template <class C>
Series<C> log(const Series<C>& a) {
  if (a.valuation() < 0 || !(a[0] == C(Rational(1)))) throw StructuralError("log needs constant term one");
  Series<C> d = derivative(a) * reciprocal(a);
  return integrate(d.relowered(0)).truncated(a.order());
}

/// f(g(x)); g must have zero constant term and f no negative powers.
template <class C>
Series<C> compose(const Series<C>& f, const Series<C>& g) {
  if (g.valuation() < 1) throw StructuralError("inner series of a composition needs zero constant term");
  if (f.valuation() < 0) throw StructuralError("outer series of a composition has negative powers");
  int vg = g.valuation();
  int order = std::min(g.order(), (f.order() + 1) * vg - 1);
  // Horner: f0 + g (f1 + g (f2 + ...)).
  Series<C> acc = Series<C>::constant(g.var(), f[f.order()], order);
  for (int k = f.order() - 1; k >= 0; --k) {
    acc = (acc * g).truncated(order);
    acc = acc + Series<C>::constant(g.var(), f[k], order);
  }
  return acc.truncated(order);
}

/// Compositional inverse of f = c1 x + c2 x^2 + ... .
template <class C>
Series<C> reversion(const Series<C>& f) {
  if (f.valuation() != 1) throw StructuralError("reversion needs a series starting at x^1");
  int n = f.order();
  C inv1 = detail::invert_coeff(f[1]);
  Series<C> g(f.var(), n, 0);
  if (n >= 1) g.at(1) = inv1;
  for (int k = 2; k <= n; ++k) {
    // Coefficient of x^k in f(g) with g_k still zero; g_k then cancels it.
    Series<C> trial = compose(f.truncated(k), g.truncated(k));
    g.at(k) = -(trial[k]) * inv1;
  }
  return g;
}

/// Evaluate a rational-coefficient series at x.
template <class Real>
Real eval(const Series<Rational>& s, const Real& x) {
  Real acc = 0;
  for (int e = s.order(); e >= s.low(); --e) acc = acc * x + to_real<Real>(s[e]);
  if (s.low() != 0) {
    using std::pow;
    acc *= pow(x, s.low());
  }
  return acc;
}

/// Evaluate a polynomial-coefficient series at (x, y), y being the polynomial variable.
template <class Real>
Real eval(const Series<Poly>& s, const Real& x, const Real& y) {
  Real acc = 0;
  for (int e = s.order(); e >= s.low(); --e) acc = acc * x + s[e].template eval<Real>(y);
  if (s.low() != 0) {
    using std::pow;
    acc *= pow(x, s.low());
  }
  return acc;
}

/// Substitute the polynomial variable by an exact value.
inline Series<Rational> at_value(const Series<Poly>& s, const Rational& y) {
  return s.map([&](const Poly& p) { return p(y); });
}

/// d/dy applied to every polynomial coefficient.
inline Series<Poly> poly_derivative(const Series<Poly>& s) {
  return s.map([](const Poly& p) { return p.derivative(); });
}

/// Substitute the polynomial variable y -> inner(y) in every coefficient.
inline Series<Poly> poly_compose(const Series<Poly>& s, const Poly& inner) {
  return s.map([&](const Poly& p) { return p.compose(inner); });
}

/// Horner evaluation of the polynomial p at the series x (coefficients Rational or Poly).
template <class C>
Series<C> poly_at_series(const Poly& p, const Series<C>& x) {
  Series<C> acc = Series<C>::constant(x.var(), C(p[p.degree()]), x.order());
  for (int k = p.degree() - 1; k >= 0; --k) acc = acc * x + Series<C>::constant(x.var(), C(p[k]), x.order());
  return acc.truncated(x.order());
}

/// Given F(h, X) = X + sum_{k>=1} h^k f_k(X) with f_k polynomial in X, return the
/// series X(h) solving F(h, X(h)) = y0, where y0 is the value of F (a Rational or
/// the polynomial variable itself).
template <class C>
Series<C> invert_near_identity(const Series<Poly>& F, const C& y0, const ProgressFn& progress = {}) {
  if (F.valuation() < 0 || !(F[0] == Poly::x())) throw StructuralError("near-identity inversion needs F = X + O(h)");
  int n = F.order();
  Series<C> x = Series<C>::constant(F.var(), y0, n);
  for (int it = 1; it <= n; ++it) {
    if (progress && !progress(it, n)) throw Cancelled();
    // x <- y0 - sum_k h^k f_k(x); each pass fixes one more order.
    Series<C> corr(F.var(), it, 0);
    Series<C> xt = x.truncated(it);
    for (int k = 1; k <= it; ++k) {
      const Poly& fk = F[k];
      if (fk.is_zero()) continue;
      Series<C> term = poly_at_series(fk, xt.truncated(it - k)).shifted(k);
      corr = corr + term.relowered(0);
    }
    Series<C> next = Series<C>::constant(F.var(), y0, it) - corr;
    for (int e = 0; e <= it; ++e) x.at(e) = next[e];
  }
  return x;
}

/// Substitute X -> G(h, y) (a Series<Poly>) into F(h, X) with polynomial coefficients in X.
inline Series<Poly> substitute_poly_variable(const Series<Poly>& F, const Series<Poly>& G) {
  int n = std::min(F.order(), G.order() + std::max(F.low(), 0));
  Series<Poly> r(F.var(), n, F.low());
  for (int k = F.low(); k <= n; ++k) {
    const Poly& fk = F[k];
    if (fk.is_zero()) continue;
    if (fk.is_constant()) {
      r.at(k) += fk;
      continue;
    }
    if (k < 0) throw StructuralError("negative powers must have constant coefficients");
    Series<Poly> term = poly_at_series(fk, G.truncated(n - k)).shifted(k);
    for (int e = std::max(k, r.low()); e <= n; ++e) r.at(e) += term[e];
  }
  return r;
}

}  // namespace mathieu
