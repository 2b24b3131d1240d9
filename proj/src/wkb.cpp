#include <mathieu/elliptic.hpp>
#include <mathieu/wkb.hpp>

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <mutex>

namespace mathieu::wkb {

namespace {

using boost::math::constants::pi;

// K and E continued to negative parameter by the imaginary-modulus transformation.
template <class Real>
Real K_any(const Real& m) {
  using std::sqrt;
  if (m >= 0) return elliptic::ellip_K(m);
  Real n = -m;
  return elliptic::ellip_K(n / (1 + n)) / sqrt(1 + n);
}

template <class Real>
Real E_any(const Real& m) {
  using std::sqrt;
  if (m >= 0) return elliptic::ellip_E(m);
  Real n = -m;
  return sqrt(1 + n) * elliptic::ellip_E(n / (1 + n));
}

// Signed combination (4/pi)[E(m') - (1+u)/2 K(m')], m' = (1-u)/2. It is the
// tunnelling period below the barrier and minus it above.
template <class Real>
Real dual_combination(const Real& u) {
  Real mp = (1 - u) / 2;
  if (u == -1) return 4 / pi<Real>();
  return 4 / pi<Real>() * (E_any(mp) - (1 + u) / 2 * K_any(mp));
}

template <class Real>
Real a0_value(const Real& u) {
  using std::sqrt;
  if (u < -1) throw DomainError("u < -1 is below the potential minimum");
  if (u <= 1) {
    if (u == 1) return 4 / pi<Real>();
    Real m = (1 + u) / 2;
    return 4 / pi<Real>() * (elliptic::ellip_E(m) - (1 - u) / 2 * elliptic::ellip_K(m));
  }
  // Above the barrier the period runs over a full cell: reciprocal modulus.
  Real p = 2 / (u + 1);
  return 4 / pi<Real>() * elliptic::ellip_E(p) / sqrt(p);
}

template <class Real>
Real a0_derivative(const Real& u) {
  using std::sqrt;
  if (u < -1) throw DomainError("u < -1 is below the potential minimum");
  if (u == 1) return std::numeric_limits<Real>::infinity();
  if (u < 1) return elliptic::ellip_K((1 + u) / 2) / pi<Real>();
  Real p = 2 / (u + 1);
  return sqrt(p) * elliptic::ellip_K(p) / pi<Real>();
}

template <class Real>
Real im_dual_value(const Real& u) {
  if (u < -1) throw DomainError("u < -1 is below the potential minimum");
  Real f = dual_combination(u);
  return u <= 1 ? f : -f;
}

template <class Real>
Real im_dual_derivative(const Real& u) {
  if (u < -1) throw DomainError("u < -1 is below the potential minimum");
  if (u == -1) return -std::numeric_limits<Real>::infinity();
  Real k = K_any((1 - u) / 2) / pi<Real>();
  return u <= 1 ? -k : k;
}

}  // namespace

LeadingAction action_leading(double u) {
  return LeadingAction{u, a0_value(u), a0_derivative(u), im_dual_value(u), im_dual_derivative(u)};
}

double action_closed_form(int n, double u) {
  if (!(u > -1 && u < 1)) throw DomainError("closed forms for a_1, a_2 need -1 < u < 1");
  double m = (1 + u) / 2;
  double K = elliptic::ellip_K(m), E = elliptic::ellip_E(m);
  double s = 1 - u * u;
  const double PI = pi<double>();
  switch (n) {
    case 0:
      return a0_value(u);
    case 1:
      return ((1 - u) * K + 2 * u * E) / (48 * PI * s);
    case 2:
      return -1.0 / (46080 * PI * s * s * s) *
             ((1 - u) * (4 * u * u * u + 93 * u * u - 60 * u + 75) * K + 2 * (4 * u * u * u * u - 153 * u * u - 75) * E);
    default:
      throw DomainError("closed forms exist for n <= 2 only");
  }
}

double apply_order_operator(int n, double u, double y, double y_du) {
  double s = 1 - u * u;
  double p = 1 / (4 * s);
  double dp = u / (2 * s * s);
  double ddp = 1 / (2 * s * s) + 2 * u * u / (s * s * s);
  double y2 = p * y;
  switch (n) {
    case 0:
      return y;
    case 1:
      return (2 * u * y2 + y_du) / 48;
    case 2: {
      double y3 = dp * y + p * y_du;
      double y4 = ddp * y + 2 * dp * y_du + p * y2;
      return (28 * u * u * y4 + 120 * u * y3 + 75 * y2) / 23040;
    }
    default:
      throw DomainError("order-raising operators are known for n <= 2 only");
  }
}

ActionValue action_higher(double u) {
  if (!(u > -1 && u < 1)) throw DomainError("action_higher needs -1 < u < 1");
  LeadingAction lead = action_leading(u);
  ActionValue v{u, {}, {}};
  for (int n = 0; n <= 2; ++n) {
    v.a[n] = n == 0 ? lead.a0 : action_closed_form(n, u);
    v.aD[n] = {0.0, apply_order_operator(n, u, lead.im_aD0, lead.im_aD0_du)};
  }
  return v;
}

std::complex<double> wronskian_defect(double u) {
  LeadingAction l = action_leading(u);
  std::complex<double> w = l.a0 * std::complex<double>(0, l.im_aD0_du) - l.aD0() * l.a0_du;
  return w - std::complex<double>(0, -2 / pi<double>());
}

std::array<double, 2> picard_fuchs_residual(double u, double step) {
  if (!(u > -1 && u < 1)) throw DomainError("Picard-Fuchs check needs -1 < u < 1");
  Extended x(u), h(step);
  auto second = [&](auto f) {
    Extended d = (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
    return d - f(x) / (4 * (1 - x * x));
  };
  Extended r0 = second([](const Extended& t) { return a0_value(t); });
  Extended r1 = second([](const Extended& t) { return im_dual_value(t); });
  return {r0.convert_to<double>(), r1.convert_to<double>()};
}

double general_width_leading(double h, double u) {
  if (h <= 0) throw DomainError("h must be positive");
  LeadingAction l = action_leading(u);
  return h / pi<double>() / l.a0_du * std::exp(-2 * pi<double>() / h * l.im_aD0);
}

// ---------------------------------------------------------------------------
// Exact series.

double ActionSeries::evaluate(double u) const {
  switch (region) {
    case Region::Well:
      return eval(coeffs, u + 1);
    case Region::High:
      return std::sqrt(2 * u) * eval(coeffs, 1 / u);
    case Region::Top: {
      double w = u - 1;
      double L = std::log(32 / std::abs(w));
      return (eval(coeffs, w) + L * eval(log_coeffs, w)) / pi<double>();
    }
  }
  return 0;
}

namespace {

using TermMap = std::map<int, RecursionTerm>;

void accumulate(TermMap& m, int e, const Poly& even, const Poly& odd) {
  if (even.is_zero() && odd.is_zero()) return;
  auto& t = m[e];
  t.even += even;
  t.odd += odd;
}

void prune(TermMap& m) {
  for (auto it = m.begin(); it != m.end();) {
    if (it->second.even.is_zero() && it->second.odd.is_zero())
      it = m.erase(it);
    else
      ++it;
  }
}

// Relations for Q = 2(u - cos x): Q'' = 2u - Q and Q'^2 = 4 - (Q - 2u)^2.
const Poly kQp2Const = Poly(4) - Poly::monomial(2, 4);  // 4 - 4u^2
const Poly kQp2Lin = Poly::monomial(1, 4);              // 4u

TermMap derivative(const TermMap& f) {
  TermMap r;
  for (const auto& [e, t] : f) {
    Rational half_e(e, 2);
    accumulate(r, e - 2, Poly(), t.even * half_e);
    if (t.odd.is_zero()) continue;
    Poly c = t.odd * half_e;
    accumulate(r, e - 2, c * kQp2Const, Poly());
    accumulate(r, e, c * kQp2Lin + Poly::monomial(1, 2) * t.odd, Poly());
    accumulate(r, e + 2, -(c + t.odd), Poly());
  }
  prune(r);
  return r;
}

TermMap product(const TermMap& f, const TermMap& g) {
  TermMap r;
  for (const auto& [e1, t1] : f)
    for (const auto& [e2, t2] : g) {
      int e = e1 + e2;
      Poly bb = t1.odd * t2.odd;
      accumulate(r, e, t1.even * t2.even + bb * kQp2Const, t1.even * t2.odd + t2.even * t1.odd);
      if (!bb.is_zero()) {
        accumulate(r, e + 2, bb * kQp2Lin, Poly());
        accumulate(r, e + 4, -bb, Poly());
      }
    }
  prune(r);
  return r;
}

std::mutex cache_mutex;
std::vector<TermMap> cache;

}  // namespace

std::vector<TermMap> wkb_recursion(int max_order) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  if (cache.empty()) cache.push_back(TermMap{{1, RecursionTerm{Poly(1), Poly()}}});
  while (static_cast<int>(cache.size()) <= max_order) {
    int n = static_cast<int>(cache.size());
    // q_n = (q_{n-1}' - sum_{j=1}^{n-1} q_j q_{n-j}) / (2 q_0)
    TermMap s = derivative(cache[n - 1]);
    for (int j = 1; 2 * j <= n; ++j) {
      if (2 * j == n && j == n - j) {
        TermMap p = product(cache[j], cache[j]);
        for (const auto& [e, t] : p) accumulate(s, e, -t.even, -t.odd);
      } else {
        TermMap p = product(cache[j], cache[n - j]);
        for (const auto& [e, t] : p) accumulate(s, e, t.even * Rational(-2), t.odd * Rational(-2));
      }
    }
    prune(s);
    TermMap q;
    for (const auto& [e, t] : s) q[e - 1] = RecursionTerm{t.even * Rational(1, 2), t.odd * Rational(1, 2)};
    cache.push_back(std::move(q));
  }
  return std::vector<TermMap>(cache.begin(), cache.begin() + max_order + 1);
}

namespace {

// Even-order integrand; the Q'-terms and integer powers are total derivatives.
const TermMap& even_integrand(const std::vector<TermMap>& q, int n) {
  const TermMap& t = q[2 * n];
  for (const auto& [e, term] : t)
    if (e % 2 == 0 && !term.even.is_zero())
      throw StructuralError("even-order WKB integrand has a non-exact integer-power term");
  return t;
}

// Binomial(2k, k) / 8^k: expansion of (1 - s^2/2)^{-1/2} in s^2.
Rational measure_coeff(int k) {
  return factorial(2 * k) / (factorial(k) * factorial(k)) / pow(Rational(8), k);
}

}  // namespace

ActionSeries well_series(int n, int order) {
  if (n < 0 || order < 0) throw DomainError("negative order");
  auto q = wkb_recursion(2 * n);
  const TermMap& t = even_integrand(q, n);
  const std::string var = "u+1";
  Series<Rational> total(var, order, 0);
  for (const auto& [e, term] : t) {
    if (e % 2 == 0 || term.even.is_zero()) continue;
    int m = (e + 1) / 2;  // Q^{m - 1/2}
    // Finite-part integral over the well, divided by pi, as a series in v = u + 1.
    Series<Rational> base(var, order, 0);
    for (int k = std::max(0, -m); k + m <= order; ++k) {
      Rational g = gamma_half_ratio(k) * gamma_half_ratio(m) / factorial(k + m);
      base.at(k + m) += pow(Rational(2), m) * measure_coeff(k) * g;
    }
    Poly a = term.even.shifted(Rational(-1));  // A(u) with u = v - 1
    Series<Rational> poly_series(var, order, 0);
    for (int i = 0; i <= std::min(a.degree(), order); ++i) poly_series.at(i) = a[i];
    total = total + poly_series * base;
  }
  total *= Rational(n % 2 == 0 ? 1 : -1, 2);
  return ActionSeries{Region::Well, n, total, Series<Rational>(var, order, 0)};
}

ActionSeries well_series_a0_elliptic(int order) {
  // a_0 = 2 sum_k c_k^2 (v/2)^k [1/(1-2k) - (1 - v/2)],  c_k = (1/2)_k / k!
  Series<Rational> s("u+1", order, 0);
  Rational ck(1);
  for (int k = 0; k <= order; ++k) {
    Rational w = 2 * ck * ck * pow(Rational(1, 2), k);
    s.at(k) += w * (Rational(1) / Rational(1 - 2 * k) - 1);
    if (k + 1 <= order) s.at(k + 1) += w * Rational(1, 2);
    ck *= Rational(2 * k + 1, 2 * k + 2);
  }
  return ActionSeries{Region::Well, 0, s, Series<Rational>("u+1", order, 0)};
}

ActionSeries well_series_by_operator(int n, const ActionSeries& a0) {
  if (a0.region != Region::Well || a0.wkb_order != 0) throw DomainError("operator route needs the well-region a_0 series");
  const auto& s = a0.coeffs;
  const std::string& var = s.var();
  Series<Rational> u_ser(var, s.order(), 0);  // u = v - 1
  u_ser.at(0) = -1;
  if (s.order() >= 1) u_ser.at(1) = 1;
  auto d1 = derivative(s), d2 = derivative(d1);
  Series<Rational> r;
  if (n == 1) {
    r = Rational(1, 48) * (Rational(2) * (u_ser * d2) + d1);
  } else if (n == 2) {
    auto d3 = derivative(d2), d4 = derivative(d3);
    r = Rational(1, 23040) * (Rational(28) * (u_ser * u_ser * d4) + Rational(120) * (u_ser * d3) + Rational(75) * d2);
  } else {
    throw DomainError("order-raising operators are known for n <= 2 only");
  }
  return ActionSeries{Region::Well, n, r, Series<Rational>(var, r.order(), 0)};
}

ActionSeries high_series(int n, int order) {
  if (n < 0 || order < 0) throw DomainError("negative order");
  auto q = wkb_recursion(2 * n);
  const TermMap& t = even_integrand(q, n);
  const std::string var = "1/u";
  // Lowest power of w = 1/u that can appear.
  int low = 0;
  for (const auto& [e, term] : t)
    if (e % 2 != 0 && !term.even.is_zero()) low = std::min(low, 1 - (e + 1) / 2 - term.even.degree());
  Series<Rational> total(var, order, low);
  for (const auto& [e, term] : t) {
    if (e % 2 == 0 || term.even.is_zero()) continue;
    int m = (e + 1) / 2;
    Rational alpha = Rational(2 * m - 1, 2);
    // A(u) (2u)^{m-1} sum_{k even} binom(alpha, k) binom(k, k/2) 2^{-k} u^{-k}, in w = 1/u.
    for (int k = 0; 1 - m + k - term.even.degree() <= order; k += 2) {
      Rational ck = pow(Rational(2), m - 1) * binomial(alpha, k) * factorial(k) / (factorial(k / 2) * factorial(k / 2)) *
                    pow(Rational(1, 2), k);
      for (int i = 0; i <= term.even.degree(); ++i) {
        int p = 1 - m + k - i;
        if (p <= order) total.at(p) += ck * term.even[i];
      }
    }
  }
  total *= Rational(n % 2 == 0 ? 1 : -1);
  return ActionSeries{Region::High, n, total.relowered(0), Series<Rational>(var, order, 0)};
}

ActionSeries top_series(int order) {
  // a_0 = (4/pi)[E(m) - mu K(m)], mu = 1 - m = (1-u)/2, expanded with the
  // logarithmic series of K and E about m = 1; L = ln(32/|u-1|) = 2 ln(4/sqrt(mu)).
  const std::string var = "u-1";
  Series<Rational> reg(var, order, 0), logc(var, order, 0);
  reg.at(0) = 4;
  Rational kc(1), ec(1);  // ((1/2)_j / j!)^2 and (1/2)_j (3/2)_j / ((2)_j j!)
  Rational harmonic(0), odd_harmonic(0);
  for (int j = 0; j + 1 <= order; ++j) {
    if (j > 0) {
      harmonic += Rational(1, j);
      odd_harmonic += Rational(1, 2 * j - 1);
    }
    Rational r = harmonic - 2 * odd_harmonic;
    Rational s = r - Rational(1, (2 * j + 1) * (2 * j + 2));
    // mu^{j+1} [4 (e_j/2 - k_j) L/2 + 4 (e_j s_j / 2 - k_j r_j)], mu = -(u-1)/2
    Rational mu_pow = pow(Rational(-1, 2), j + 1);
    logc.at(j + 1) += mu_pow * 2 * (ec / 2 - kc);
    reg.at(j + 1) += mu_pow * 4 * (ec * s / 2 - kc * r);
    kc *= Rational(2 * j + 1, 2 * j + 2) * Rational(2 * j + 1, 2 * j + 2);
    ec *= Rational(2 * j + 1, 2) * Rational(2 * j + 3, 2) / (Rational(j + 2) * Rational(j + 1));
  }
  return ActionSeries{Region::Top, 0, reg, logc};
}

}  // namespace mathieu::wkb
