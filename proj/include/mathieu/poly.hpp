#pragma once

#include <mathieu/rational.hpp>

#include <vector>

namespace mathieu {

/// Dense univariate polynomial with exact rational coefficients.
///
/// Used for coefficients that depend polynomially on the level variable
/// B = N + 1/2 (or N, or E), and as a generic exact coefficient ring.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& constant);  // NOLINT: implicit on purpose
  Poly(long long constant) : Poly(Rational(constant)) {}
  explicit Poly(std::vector<Rational> coeffs);

  static Poly x() { return monomial(1); }
  static Poly monomial(int power, const Rational& c = Rational(1));

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  /// Coefficient of x^k, zero beyond the degree.
  Rational operator[](int k) const;
  const std::vector<Rational>& coeffs() const { return c_; }

  Poly derivative() const;
  Poly compose(const Poly& inner) const;
  /// p(x + shift)
  Poly shifted(const Rational& shift) const;

  Rational operator()(const Rational& x) const;

  template <class Real>
  Real eval(const Real& x) const {
    Real acc = 0;
    for (int k = degree(); k >= 0; --k) acc = acc * x + to_real<Real>(c_[k]);
    return acc;
  }

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator*(long long s, Poly a) { return a *= Rational(s); }
  friend Poly operator*(Poly a, long long s) { return a *= Rational(s); }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Exact Lagrange interpolation through (x_i, y_i).
  static Poly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

  /// Human-readable form in the given variable name, e.g. "3/4 + B^2".
  std::string str(const std::string& var = "B") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Alias used where the polynomial variable is the level B = N + 1/2.
using PolyB = Poly;

/// Division of a polynomial by an exact scalar.
inline Poly operator/(Poly a, const Rational& s) { return a *= Rational(1) / s; }

}  // namespace mathieu
