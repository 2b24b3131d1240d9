#include <mathieu/elliptic.hpp>
#include <mathieu/errors.hpp>
#include <mathieu/zerodim.hpp>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

namespace mathieu::zerodim {

namespace {

using boost::math::constants::pi;

Series<Rational> as_series(const std::vector<Rational>& c, int degree) {
  Series<Rational> s("z", degree, 0);
  for (int k = 0; k <= degree && k < static_cast<int>(c.size()); ++k) s.at(k) = c[k];
  return s;
}

benderwu::PotentialSeries from_series(std::string name, const Series<Rational>& s, int degree, std::optional<Rational> m = {}) {
  benderwu::PotentialSeries p{std::move(name), std::vector<Rational>(degree + 1), std::move(m)};
  for (int k = 0; k <= degree; ++k) p.taylor[k] = s[k];
  return p;
}

Rational double_factorial_odd(int j) {  // (2j - 1)!!
  Rational r(1);
  for (int i = 1; i <= 2 * j - 1; i += 2) r *= i;
  return r;
}

}  // namespace

double SaddleExpansion::prefactor() const { return 1 / std::sqrt(std::abs(to_double(curvature))); }

SaddleExpansion saddle_series(const benderwu::PotentialSeries& f, int order, std::complex<double> location) {
  if (order < 0) throw DomainError("negative order");
  const auto& c = f.taylor;
  auto coeff = [&](int k) { return k < static_cast<int>(c.size()) ? c[k] : Rational(0); };
  if (coeff(1) != 0) throw DomainError("expansion point is not a saddle (linear term present)");
  if (coeff(2) == 0) throw DomainError("degenerate saddle (vanishing quadratic term)");
  if (!f.polynomial && static_cast<int>(c.size()) < 2 * order + 3)
    throw DomainError("exponent needs Taylor degree 2 order + 2");
  // z = z_s + sqrt(h) t: e^{-f/h} = e^{-S/h} e^{-f2 t^2} exp(-sum_{k>=3} f_k eps^{k-2} t^k), eps = sqrt(h).
  const int eps_order = 2 * order;
  Series<Poly> g("eps", eps_order, 0);
  for (int k = 3; k <= eps_order + 2; ++k) g.at(k - 2) = Poly::monomial(k, -coeff(k));
  Series<Poly> e = exp(g);
  SaddleExpansion out;
  out.location = location;
  out.action = coeff(0);
  out.curvature = coeff(2);
  // int e^{-f2 t^2} t^{2j} dt = sqrt(pi/f2) (2j-1)!!/(2 f2)^j
  for (int r = 0; r <= order; ++r) {
    const Poly& p = e[2 * r];
    Rational acc(0);
    for (int j = 0; 2 * j <= p.degree(); ++j)
      if (p[2 * j] != 0) acc += p[2 * j] * double_factorial_odd(j) / pow(2 * out.curvature, j);
    out.T.push_back(acc);
  }
  return out;
}

benderwu::PotentialSeries sin2_about(int saddle, int degree) {
  // sin^2 z = (1 - cos 2z)/2 about 0; cos^2 w = (1 + cos 2w)/2 about pi/2
  if (saddle != 0 && saddle != 1) throw DomainError("sin^2 has saddles 0 (vacuum) and 1 (pi/2)");
  Series<Rational> s("z", degree, 0);
  Rational term(1);  // (2z)^k/k!
  for (int k = 0; k <= degree; ++k) {
    if (k > 0) term *= Rational(2, k);
    if (k % 2 == 0) {
      Rational cos_k = (k / 2) % 2 == 0 ? term : -term;
      s.at(k) = saddle == 0 ? (k == 0 ? Rational(0) : -cos_k / 2) : (k == 0 ? Rational(1) : cos_k / 2);
    }
  }
  return from_series(saddle == 0 ? "sin2_vacuum" : "sin2_saddle", s, degree);
}

benderwu::PotentialSeries lame_about(int saddle, const Rational& m, int degree) {
  if (m < 0 || m > 1) throw DomainError("elliptic parameter must lie in [0, 1]");
  auto t = elliptic::jacobi_taylor(m, degree);
  auto sn = as_series(t.sn, degree), cn = as_series(t.cn, degree), dn = as_series(t.dn, degree);
  switch (saddle) {
    case 0: {
      auto sd = sn * reciprocal(dn);
      return from_series("lame_vacuum", sd * sd, degree, m);
    }
    case 1:  // sd(K + w) = cn(w)/sqrt(1-m)
      if (m == 1) throw DomainError("the real saddle recedes to infinity at m = 1");
      return from_series("lame_real", action_real(m) * (cn * cn), degree, m);
    case 2: {  // sd(i K' + w) = i/(sqrt(m) cn(w))
      if (m == 0) throw DomainError("the imaginary saddle recedes to infinity at m = 0");
      auto nc = reciprocal(cn);
      return from_series("lame_imag", action_imag(m) * (nc * nc), degree, m);
    }
    default:
      throw DomainError("Lame saddles are 0 (vacuum), 1 (real), 2 (imaginary)");
  }
}

Rational action_real(const Rational& m) {
  if (m >= 1) throw DomainError("S1 diverges at m = 1");
  return Rational(1) / (Rational(1) - m);
}

Rational action_imag(const Rational& m) {
  if (m <= 0) throw DomainError("S2 diverges at m = 0");
  return Rational(-1) / m;
}

LameSaddles lame_saddles(const Rational& m, int order) {
  const int degree = 2 * order + 2;
  LameSaddles s;
  s.m = m;
  s.vacuum = saddle_series(lame_about(0, m, degree), order, 0);
  const double md = to_double(m);
  if (m < 1) s.real = saddle_series(lame_about(1, m, degree), order, elliptic::ellip_K(md));
  if (m > 0) s.imag = saddle_series(lame_about(2, m, degree), order, {0, elliptic::ellip_K(1 - md)});
  return s;
}

double z_quadrature(double h, double m) {
  if (!(h > 0)) throw DomainError("h must be positive");
  if (!(m >= 0 && m <= 1)) throw DomainError("elliptic parameter must lie in [0, 1]");
  using boost::math::quadrature::gauss_kronrod;
  double err = 0, value = 0;
  if (m == 1) {
    // e^{-sinh^2/h} < 1e-300 beyond asinh(sqrt(700 h))
    double L = std::asinh(std::sqrt(700 * h));
    auto f = [&](double z) { double s = std::sinh(z); return std::exp(-s * s / h); };
    value = gauss_kronrod<double, 61>::integrate(f, -L, L, 20, 1e-15, &err);
  } else {
    double K = elliptic::ellip_K(m);
    auto f = [&](double z) { double s = elliptic::jacobi_sd(z, m); return std::exp(-s * s / h); };
    // split at the vacuum so the Gaussian peak is resolved from both sides
    double e1 = 0, e2 = 0;
    value = gauss_kronrod<double, 61>::integrate(f, -K, 0.0, 20, 1e-15, &e1) +
            gauss_kronrod<double, 61>::integrate(f, 0.0, K, 20, 1e-15, &e2);
    err = e1 + e2;
  }
  const double norm = 1 / std::sqrt(h * pi<double>());
  if (err * norm > 1e-12) throw ConvergenceError("quadrature error estimate above 1e-12");
  return value * norm;
}

namespace {

/// (n-j-1)!/pi * a_j / S^{n-j} summed over j <= min(j_max, n-1).
Extended saddle_sum(const SaddleExpansion& s, int n, int j_max) {
  Extended acc = 0;
  const Extended pref = 1 / boost::multiprecision::sqrt(boost::multiprecision::abs(Extended(s.curvature.convert_to<Extended>())));
  const Extended S = s.action.convert_to<Extended>();
  for (int j = 0; j <= std::min(j_max, n - 1); ++j) {
    if (j >= static_cast<int>(s.T.size())) throw TruncationError("saddle series too short for j_max");
    acc += boost::math::tgamma(Extended(n - j)) / pi<Extended>() * pref * s.T[j].convert_to<Extended>() / pow(S, n - j);
  }
  return acc;
}

}  // namespace

std::vector<RelationRow> berry_howls_check(const LameSaddles& s, int n_max, int j_max) {
  if (n_max < 1 || j_max < 0) throw DomainError("need n_max >= 1 and j_max >= 0");
  if (static_cast<int>(s.vacuum.T.size()) <= n_max) throw TruncationError("vacuum series too short for n_max");
  std::vector<RelationRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    Extended lhs = s.vacuum.T[n].convert_to<Extended>();  // vacuum curvature is 1
    Extended rhs = 0, scale = 0;
    if (s.has_real()) {
      rhs += saddle_sum(s.real, n, j_max);
      scale = std::max(scale, Extended(abs(saddle_sum(s.real, n, 0))));
    }
    if (s.has_imag()) {
      rhs += saddle_sum(s.imag, n, j_max);
      scale = std::max(scale, Extended(abs(saddle_sum(s.imag, n, 0))));
    }
    scale = std::max(scale, Extended(abs(lhs)));
    RelationRow r;
    r.m = to_double(s.m);
    r.n = n;
    r.lhs = static_cast<double>(lhs);
    r.rhs = static_cast<double>(rhs);
    r.rel_defect = scale == 0 ? 0.0 : static_cast<double>(abs(lhs - rhs) / scale);
    rows.push_back(r);
  }
  return rows;
}

double exact_relation_check(const LameSaddles& s, int n_lo, int n_hi, int j_max) {
  if (n_lo < 1 || n_hi < n_lo) throw DomainError("invalid n range");
  double worst = 0;
  for (const auto& r : berry_howls_check(s, n_hi, j_max))
    if (r.n >= n_lo) worst = std::max(worst, r.rel_defect);
  return worst;
}

namespace {

/// Coefficients a_j of one saddle in Extended, cut before the smallest |a_j h^j|.
std::vector<Extended> cut_coefficients(const SaddleExpansion& s, const Extended& h) {
  const Extended pref = 1 / boost::multiprecision::sqrt(boost::multiprecision::abs(s.curvature.convert_to<Extended>()));
  std::vector<Extended> a;
  Extended prev = -1;
  for (std::size_t j = 0; j < s.T.size(); ++j) {
    Extended aj = pref * s.T[j].convert_to<Extended>();
    Extended size = abs(aj * pow(h, static_cast<int>(j)));
    if (j > 1 && size > prev && size != 0) break;
    a.push_back(aj);
    if (size != 0) prev = size;
  }
  return a;
}

struct SaddleTerms {
  Extended action;
  std::vector<Extended> a;
};

/// Truncated right side of the coefficient relation at order n and the sum
/// of the magnitudes of its terms.
std::pair<Extended, Extended> relation_rhs(const std::vector<SaddleTerms>& saddles, int n) {
  Extended acc = 0, mag = 0;
  for (const auto& s : saddles)
    for (int j = 0; j < std::min<int>(n, static_cast<int>(s.a.size())); ++j) {
      Extended t = boost::math::tgamma(Extended(n - j)) / pi<Extended>() * s.a[j] / pow(s.action, n - j);
      acc += t;
      mag += abs(t);
    }
  return {acc, mag};
}

}  // namespace

std::vector<BorelRow> borel_lateral_check(const LameSaddles& s, const std::vector<double>& hs) {
  std::vector<BorelRow> rows;
  const double md = to_double(s.m);
  for (double hd : hs) {
    if (!(hd > 0)) throw DomainError("h must be positive");
    const Extended h = hd;
    BorelRow r;
    r.h = hd;
    r.quadrature = z_quadrature(hd, md);
    std::vector<SaddleTerms> saddles;
    double S12 = 0;
    if (s.has_real()) {
      saddles.push_back({s.real.action.convert_to<Extended>(), cut_coefficients(s.real, h)});
      r.terms_real = static_cast<int>(saddles.back().a.size());
      S12 += to_double(s.real.action);
    }
    if (s.has_imag()) {
      saddles.push_back({s.imag.action.convert_to<Extended>(), cut_coefficients(s.imag, h)});
      r.terms_imag = static_cast<int>(saddles.back().a.size());
      S12 += std::abs(to_double(s.imag.action));
    }
    // Each saddle term j resums sum_{n>j} ((n-j-1)!/pi) a_j h^n / S^{n-j} to
    // (a_j/pi) h^j e^{-S/h} Ei(S/h), principal value for S > 0. The vacuum
    // coefficients not captured by the truncated relation are added order by
    // order up to their smallest term.
    Extended total = 0, imag = 0;
    for (const auto& sd : saddles) {
      const Extended t0 = sd.action / h;
      const Extended kernel = exp(-t0) * boost::math::expint(t0);
      for (std::size_t j = 0; j < sd.a.size(); ++j) {
        Extended term = sd.a[j] * pow(h, static_cast<int>(j));
        total += term / pi<Extended>() * kernel;
        if (t0 > 0) imag += term * exp(-t0);
      }
    }
    Extended prev = -1;
    for (int n = 0; n < static_cast<int>(s.vacuum.T.size()); ++n) {
      const Extended lhs = s.vacuum.T[n].convert_to<Extended>();
      const auto [rhs, mag] = relation_rhs(saddles, n);
      // orders where the relation cancels to working precision carry no term
      if (abs(lhs - rhs) <= 1e-40 * (abs(lhs) + mag)) continue;
      Extended c = (lhs - rhs) * pow(h, n);
      if (prev >= 0 && n > 1 && abs(c) > prev) break;
      total += c;
      prev = abs(c);
      r.terms_vacuum = n + 1;
    }
    r.principal_value = static_cast<double>(total);
    r.imag_ambiguity = static_cast<double>(imag);
    r.abs_error = std::abs(r.principal_value - r.quadrature);
    r.two_instanton_bound = std::exp(-S12 / hd);
    rows.push_back(r);
  }
  return rows;
}

double error_action_fit(const std::vector<BorelRow>& rows) {
  if (rows.size() < 2) throw DomainError("need at least two rows for a slope");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    double x = 1 / r.h, y = std::log(std::max(r.abs_error, 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(rows.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Json to_json(const RelationRow& r) {
  return Json{{"m", r.m}, {"n", r.n}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"rel_defect", r.rel_defect}};
}

Json to_json(const BorelRow& r) {
  return Json{{"h", r.h},
              {"quadrature", r.quadrature},
              {"principal_value", r.principal_value},
              {"imag_ambiguity", r.imag_ambiguity},
              {"abs_error", r.abs_error},
              {"two_instanton_bound", r.two_instanton_bound},
              {"terms_real", r.terms_real},
              {"terms_imag", r.terms_imag},
              {"terms_vacuum", r.terms_vacuum}};
}

}  // namespace mathieu::zerodim
