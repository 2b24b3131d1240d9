#include <mathieu/spectral.hpp>
#include <mathieu/wkb.hpp>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>
#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>

namespace mathieu::spectral {

namespace {

/// F(h; X) = sum_n h^{2n-1} a_n(h X) * 2 as a series in h with polynomial coefficients in X.
Series<Poly> weak_condition(int order) {
  // Coefficients through h^order of 2 sum_n h^{2n-1} sum_k c_{n,k} h^k X^k.
  Series<Poly> F("h", order, 0);
  for (int n = 0; 2 * n - 1 <= order; ++n) {
    int kmax = order - 2 * n + 1;
    auto a = wkb::well_series(n, kmax).coeffs;
    for (int k = 0; k <= kmax; ++k) {
      int d = 2 * n - 1 + k;
      if (a[k] == 0) continue;
      if (d < 0) throw StructuralError("well action does not vanish at the bottom");
      F.at(d) += Poly::monomial(k, 2 * a[k]);
    }
  }
  return F;
}

Poly truncate_poly(const Poly& p, int degree) {
  if (p.degree() <= degree) return p;
  std::vector<Rational> c(p.coeffs().begin(), p.coeffs().begin() + degree + 1);
  return Poly(std::move(c));
}

Series<Poly> truncate_coeffs(Series<Poly> s, int degree) {
  for (int e = s.low(); e <= s.order(); ++e) s.at(e) = truncate_poly(s[e], degree);
  return s;
}

template <class Real>
Real eval_series(const Series<Poly>& s, const Real& h, const Real& y, int order) {
  Real acc = 0;
  for (int e = std::min(order, s.order()); e >= s.low(); --e) acc = acc * h + s[e].template eval<Real>(y);
  if (s.low() != 0) {
    using std::pow;
    acc *= pow(h, s.low());
  }
  return acc;
}

}  // namespace

Series<Poly> bs_invert_weak(int order, const ProgressFn& progress) {
  if (order < 1) throw DomainError("weak inversion needs order >= 1");
  Series<Poly> F = weak_condition(order - 1);
  Series<Poly> w = invert_near_identity<Poly>(F, Poly::x(), progress);
  Series<Poly> u("h", order, 0);
  u.at(0) = Poly(-1);
  for (int k = 1; k <= order; ++k) u.at(k) = w[k - 1];
  return u;
}

Series<Rational> bs_invert_weak_at(const Rational& B, int order, const ProgressFn& progress) {
  if (order < 1) throw DomainError("weak inversion needs order >= 1");
  Series<Poly> F = weak_condition(order - 1);
  Series<Rational> w = invert_near_identity<Rational>(F, B, progress);
  Series<Rational> u("h", order, 0);
  u.at(0) = -1;
  for (int k = 1; k <= order; ++k) u.at(k) = w[k - 1];
  return u;
}

Rational StrongSeries::coefficient(int j, int k) const {
  if (k > s_order || j > h2_order) throw TruncationError("strong-coupling coefficient beyond computed order");
  return P[k][j] / 2;
}

double StrongSeries::evaluate(double h, double N) const {
  const double a = N * h / 2;
  const double s = 1 / (a * a);
  double acc = 0;
  for (int k = s_order; k >= 0; --k) acc = acc * s + P[k].eval<double>(h * h);
  return a * a / 2 * acc;
}

StrongSeries bs_invert_strong(int s_order, int h2_order, const ProgressFn& progress) {
  if (s_order < 0 || h2_order < 0) throw DomainError("negative order");
  // G(w) = sum_k (sum_n c_{n,k} y^n) w^k with a_n = sqrt(2u) sum_k c_{n,k} u^{-k}, y = h^2.
  Series<Poly> G("1/a^2", s_order, 0);
  for (int n = 0; n <= h2_order; ++n) {
    auto c = wkb::high_series(n, s_order).coeffs;
    for (int k = 0; k <= s_order; ++k)
      if (c[k] != 0) G.at(k) += Poly::monomial(n, c[k]);
  }
  // (N h/2)^2 = 2u G(1/u)^2, i.e. with s = 1/a^2, R = u^{-1}/(2 s) solves R = G(2 s R)^2.
  Series<Poly> R = Series<Poly>::constant("1/a^2", Poly(1), s_order);
  Series<Poly> two_s("1/a^2", s_order, 0);
  if (s_order >= 1) two_s.at(1) = Poly(2);
  for (int it = 1; it <= s_order; ++it) {
    if (progress && !progress(it, s_order)) throw Cancelled();
    Series<Poly> w = truncate_coeffs(two_s * R, h2_order);
    Series<Poly> g = truncate_coeffs(compose(G, w), h2_order);
    R = truncate_coeffs(g * g, h2_order);
  }
  StrongSeries out;
  out.s_order = s_order;
  out.h2_order = h2_order;
  out.P = truncate_coeffs(reciprocal(R), h2_order).truncated(s_order);
  return out;
}

Series<Rational> strong_resummed_coefficient(const StrongSeries& s, int p) {
  // Coefficient of (2/h)^{4p} in (8/h^2) u: sum_j 4^j P_{j+2p}[j] x^{j+2p-1}.
  int jmax = std::min(s.h2_order, s.s_order - 2 * p);
  if (jmax < 0) throw TruncationError("strong series too short for this coefficient");
  Series<Rational> out("1/N^2", jmax + 2 * p - 1, 2 * p - 1);
  for (int j = 0; j <= jmax; ++j) out.at(j + 2 * p - 1) = pow(Rational(4), j) * s.P[j + 2 * p][j];
  return out;
}

ZjjFunctions zjj_construct(int order, const ProgressFn& progress) {
  if (order < 1) throw DomainError("ZJJ construction needs order >= 1");
  // A through h^order needs E through h^{order+1}.
  Series<Poly> u = bs_invert_weak(order + 2, progress);
  ZjjFunctions f;
  Series<Poly> E("h", order + 1, 0);
  for (int k = 0; k <= order + 1; ++k) E.at(k) = u[k + 1];
  f.A_of_B = zjj_A_from_E(E).truncated(order);
  f.E_of_B = E.truncated(order);
  f.B_of_E = invert_near_identity<Poly>(f.E_of_B, Poly::x());
  f.A_of_E = substitute_poly_variable(f.A_of_B, f.B_of_E);
  return f;
}

Series<Poly> zjj_A_from_E(const Series<Poly>& E_of_B) {
  if (E_of_B.low() != 0 || !(E_of_B[0] == Poly::x())) throw StructuralError("E(h, B) must start with B");
  const int n = E_of_B.order();
  if (n < 2) throw TruncationError("E(h, B) must be known through h^2");
  // dA/dh = -(16/h^2)(1 + sum_{k>=1} e'_k h^k) - 2B/h.
  Poly one_over_h = -16 * E_of_B[1].derivative() - 2 * Poly::x();
  if (!one_over_h.is_zero()) throw StructuralError("1/h term of dA/dh does not cancel: " + one_over_h.str());
  Series<Poly> A("h", n - 1, -1);
  A.at(-1) = Poly(16);
  for (int k = 2; k <= n; ++k) A.at(k - 1) = (-16 * E_of_B[k].derivative()) / Rational(k - 1);
  return A;
}

namespace {

struct ZjjTerms {
  Extended main, mixed_real, mixed_imag, rhs_unit;
};

ZjjTerms zjj_terms(const ZjjFunctions& f, const Extended& h, const Extended& E, int order) {
  using std::exp;
  using std::pow;
  const Extended pi = boost::math::constants::pi<Extended>();
  Extended B = eval_series(f.B_of_E, h, E, order);
  Extended A = eval_series(f.A_of_E, h, E, order + 1);
  Extended g = boost::math::tgamma(Extended(0.5) + B);
  Extended c = boost::math::cos_pi(B), s = boost::math::sin_pi(B);
  ZjjTerms t;
  t.main = g * c / pi;
  t.mixed_real = c * exp(-A) / g;
  t.mixed_imag = s * exp(-A) / g;
  t.rhs_unit = 2 / boost::math::constants::root_two_pi<Extended>() * pow(32 / h, B) * exp(-A / 2);
  return t;
}

Extended zjj_real(const ZjjFunctions& f, const Extended& h, const Extended& E, double cos_theta, int order) {
  auto t = zjj_terms(f, h, E, order);
  return t.main + t.mixed_real - cos_theta * t.rhs_unit;
}

Extended solve_at_order(const ZjjFunctions& f, const Extended& h, int N, double cos_theta, int order) {
  using std::abs;
  // Centre: B(E*) = N + 1/2 by Newton on the truncated series.
  Extended target = Extended(N) + Extended(0.5);
  Extended E = target;
  Series<Poly> dB = poly_derivative(f.B_of_E);
  for (int it = 0; it < 100; ++it) {
    Extended step = (eval_series(f.B_of_E, h, E, order) - target) / eval_series(dB, h, E, order);
    E -= step;
    if (abs(step) < Extended(1e-45)) break;
  }
  auto g = [&](const Extended& x) { return zjj_real(f, h, x, cos_theta, order); };
  Extended g0 = g(E);
  if (g0 == 0) return E;
  for (Extended d = Extended(1e-40); d < 0.45; d *= 2) {
    for (int sign : {1, -1}) {
      Extended x = E + sign * d;
      Extended gx = g(x);
      if ((gx > 0) != (g0 > 0)) {
        Extended lo = std::min(E, x), hi = std::max(E, x);
        boost::math::tools::eps_tolerance<Extended> tol(160);
        std::uintmax_t iters = 200;
        auto r = boost::math::tools::toms748_solve(g, lo, hi, tol, iters);
        return (r.first + r.second) / 2;
      }
    }
  }
  throw ConvergenceError("no root of the quantization condition bracketed near level " + std::to_string(N));
}

}  // namespace

std::complex<double> zjj_condition(const ZjjFunctions& f, double h, double E, double cos_theta, LateralBranch branch,
                                   int order) {
  auto t = zjj_terms(f, Extended(h), Extended(E), order);
  Extended re = t.main + t.mixed_real - cos_theta * t.rhs_unit;
  Extended im = -static_cast<int>(branch) * t.mixed_imag;
  return {re.convert_to<double>(), im.convert_to<double>()};
}

ZjjEdge zjj_quantization_solve(const ZjjFunctions& f, double h, int N, double cos_theta, double tolerance) {
  if (!(h > 0)) throw DomainError("h must be positive");
  if (N < 0) throw DomainError("level must be non-negative");
  if (std::abs(std::abs(cos_theta) - 1) > 1e-12) throw DomainError("band edges need cos(theta) = +1 or -1");
  const int order = f.B_of_E.order();
  if (order < 2) throw TruncationError("ZJJ functions too short");
  const Extended H(h);
  Extended E = solve_at_order(f, H, N, cos_theta, order);
  Extended E_lo = solve_at_order(f, H, N, cos_theta, order - 1);
  ZjjEdge out;
  out.E = E.convert_to<double>();
  out.u = (-1 + H * E).convert_to<double>();
  out.uncertainty = (H * abs(E - E_lo)).convert_to<double>();
  Extended step = Extended(1e-20);
  Extended slope = (zjj_real(f, H, E + step, cos_theta, order) - zjj_real(f, H, E - step, cos_theta, order)) / (2 * step);
  auto t = zjj_terms(f, H, E, order);
  out.ambiguity = (H * abs(t.mixed_imag / slope)).convert_to<double>();
  if (tolerance > 0 && out.uncertainty > tolerance)
    throw ConvergenceError("truncation uncertainty " + std::to_string(out.uncertainty) + " exceeds tolerance");
  return out;
}

Series<Rational> characteristic_series(int n, bool sine, int order) {
  if (n < 0 || (sine && n == 0)) throw DomainError("invalid characteristic-value index");
  if (order < 0) throw DomainError("negative order");
  const int base = (n % 2 == 1) ? 1 : (sine ? 2 : 0);
  const int size = (n - base) / 2 + order + 2;
  auto index = [&](int i) { return base + 2 * i; };
  const int target = (n - base) / 2;
  // (V c)_i for the coupling matrix of this parity class.
  auto apply_V = [&](const std::vector<Rational>& c) {
    std::vector<Rational> r(size);
    for (int i = 0; i < size; ++i) {
      int ri = index(i);
      Rational acc(0);
      if (i + 1 < size) acc += c[i + 1];
      if (i >= 1) acc += (ri == 2 && base == 0) ? 2 * c[i - 1] : c[i - 1];
      if (ri == 1) acc += sine ? -c[i] : c[i];
      r[i] = acc;
    }
    return r;
  };
  std::vector<std::vector<Rational>> c;
  c.emplace_back(size);
  c[0][target] = 1;
  Series<Rational> a("q", order, 0);
  a.at(0) = Rational(n * n);
  for (int k = 1; k <= order; ++k) {
    auto vc = apply_V(c[k - 1]);
    a.at(k) = vc[target];
    std::vector<Rational> ck(size);
    for (int i = 0; i < size; ++i) {
      if (i == target) continue;
      Rational rhs = -vc[i];
      for (int j = 1; j <= k; ++j)
        if (a[j] != 0) rhs += a[j] * c[k - j][i];
      ck[i] = rhs / Rational(index(i) * index(i) - n * n);
    }
    c.push_back(std::move(ck));
  }
  return a;
}

std::pair<Series<Rational>, Series<Rational>> gap_edge_series(int N, int order) {
  if (N < 0) throw DomainError("negative level");
  auto to_edge = [&](const Series<Rational>& a) {
    Series<Rational> u("1/h", 2 * order - 2, -2);
    for (int k = 0; k <= order; ++k) u.at(2 * k - 2) = a[k] * pow(Rational(4), k) / 8;
    return u;
  };
  auto upper = to_edge(characteristic_series(N, false, order));
  if (N == 0) return {upper, upper};
  return {to_edge(characteristic_series(N, true, order)), upper};
}

std::pair<std::vector<Rational>, std::vector<Rational>> alphabeta_extract(int N, int count) {
  if (N < 1) throw DomainError("alpha/beta template needs N >= 1");
  if (count < 0) count = N;
  const int order = N + 2 * count;
  auto lo = characteristic_series(N, true, order), hi = characteristic_series(N, false, order);
  Rational norm = pow(Rational(2), N - 1) * factorial(N - 1);
  norm *= norm;
  std::vector<Rational> alpha, beta;
  for (int k = 0; k <= order; ++k) {
    Rational d = (hi[k] - lo[k]) / 2;
    if (d != 0 && (k < N || (k - N) % 2 != 0))
      throw StructuralError("edge splitting has a q^" + std::to_string(k) + " term outside the template");
  }
  for (int n = 0; n < count; ++n) {
    alpha.push_back((hi[2 * n] + lo[2 * n]) / 2 * pow(Rational(16), n) / (N * N));
    beta.push_back((hi[N + 2 * n] - lo[N + 2 * n]) / 2 * pow(Rational(16), n) * norm);
  }
  return {alpha, beta};
}

}  // namespace mathieu::spectral
