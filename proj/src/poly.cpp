#include <mathieu/errors.hpp>
#include <mathieu/poly.hpp>

#include <sstream>

namespace mathieu {

std::string to_string(const Rational& q) {
  BigInt den = denominator_of(q);
  if (den == 1) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + den.str();
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in rational '" + s + "'");
    return Rational(BigInt(s.substr(0, slash)), den);
  } catch (const std::runtime_error&) {
    throw DomainError("cannot parse rational '" + s + "'");
  }
}

Rational factorial(int n) {
  if (n < 0) throw DomainError("factorial of a negative integer");
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return Rational(r);
}

Rational binomial(const Rational& a, int k) {
  if (k < 0) return Rational(0);
  Rational r(1);
  for (int i = 0; i < k; ++i) r *= (a - i) / Rational(i + 1);
  return r;
}

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (base == 0) throw DomainError("zero to a negative power");
    return pow(Rational(1) / base, -exponent);
  }
  Rational r(1), b = base;
  while (exponent) {
    if (exponent & 1) r *= b;
    b *= b;
    exponent >>= 1;
  }
  return r;
}

Rational gamma_half_ratio(int k) {
  // Gamma(1/2) = sqrt(pi); step up with Gamma(z+1) = z Gamma(z), down with its inverse.
  Rational r(1);
  if (k >= 0) {
    for (int j = 0; j < k; ++j) r *= Rational(2 * j + 1, 2);
  } else {
    for (int j = 0; j > k; --j) r /= Rational(2 * j - 1, 2);
  }
  return r;
}

Poly::Poly(const Rational& constant) {
  if (constant != 0) c_.push_back(constant);
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(int power, const Rational& c) {
  std::vector<Rational> v(power + 1);
  v[power] = c;
  return Poly(std::move(v));
}

Rational Poly::operator[](int k) const {
  if (k < 0 || k > degree()) return Rational(0);
  return c_[k];
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::derivative() const {
  std::vector<Rational> d;
  for (int k = 1; k <= degree(); ++k) d.push_back(c_[k] * k);
  return Poly(std::move(d));
}

Poly Poly::compose(const Poly& inner) const {
  Poly acc;
  for (int k = degree(); k >= 0; --k) acc = acc * inner + Poly(c_[k]);
  return acc;
}

Poly Poly::shifted(const Rational& shift) const { return compose(Poly(std::vector<Rational>{shift, Rational(1)})); }

Rational Poly::operator()(const Rational& x) const {
  Rational acc(0);
  for (int k = degree(); k >= 0; --k) acc = acc * x + c_[k];
  return acc;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

Poly Poly::interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size() || xs.empty()) throw DomainError("interpolation needs matching, non-empty samples");
  // Newton divided differences.
  size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (size_t level = 1; level < n; ++level)
    for (size_t i = n - 1; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
  Poly result(dd[n - 1]);
  for (size_t i = n - 1; i-- > 0;) result = result * Poly(std::vector<Rational>{-xs[i], Rational(1)}) + Poly(dd[i]);
  return result;
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k <= degree(); ++k) {
    if (c_[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (k == 0) {
      os << to_string(c_[k]);
    } else {
      if (c_[k] != 1) os << to_string(c_[k]) << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

}  // namespace mathieu
