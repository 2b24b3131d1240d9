#include <mathieu/benderwu.hpp>
#include <mathieu/elliptic.hpp>
#include <mathieu/richardson.hpp>

#include <boost/multiprecision/integer.hpp>

#include <cmath>

namespace mathieu::benderwu {

namespace {

Rational exact_sqrt(const Rational& q) {
  if (q < 0) throw DomainError("negative curvature: not a minimum");
  BigInt n = numerator_of(q), d = denominator_of(q);
  BigInt rn = boost::multiprecision::sqrt(n), rd = boost::multiprecision::sqrt(d);
  if (rn * rn != n || rd * rd != d) throw DomainError("harmonic frequency sqrt(2 V2) must be rational");
  return Rational(rn, rd);
}

using Dense = std::vector<Rational>;

Rational coeff(const Dense& p, int d) { return (d >= 0 && d < static_cast<int>(p.size())) ? p[d] : Rational(0); }

}  // namespace

PotentialSeries mathieu_well(int degree) {
  PotentialSeries v{"mathieu", std::vector<Rational>(degree + 1), std::nullopt};
  // -cos y = sum_k (-1)^{k+1} y^{2k} / (2k)!
  for (int k = 0; 2 * k <= degree; ++k) v.taylor[2 * k] = Rational(k % 2 == 0 ? -1 : 1) / factorial(2 * k);
  return v;
}

PotentialSeries lame_well(const Rational& m, int degree) {
  if (m < 0 || m > 1) throw DomainError("elliptic parameter must lie in [0, 1]");
  auto t = elliptic::jacobi_taylor(m, degree);
  auto ser = [&](const std::vector<Rational>& c) {
    Series<Rational> s("x", degree, 0);
    for (int k = 0; k <= degree; ++k) s.at(k) = c[k];
    return s;
  };
  Series<Rational> sd = ser(t.sn) * reciprocal(ser(t.dn));
  Series<Rational> v = sd * sd;
  PotentialSeries out{"lame", std::vector<Rational>(degree + 1), m};
  for (int k = 0; k <= degree; ++k) out.taylor[k] = v[k] / 2;
  return out;
}

PotentialSeries potential_from_json(const Json& j) {
  PotentialSeries v;
  v.name = j.value("name", std::string("custom"));
  for (const auto& c : j.at("taylor")) v.taylor.push_back(rational_from_json(c));
  if (j.contains("m")) v.m = rational_from_json(j.at("m"));
  v.polynomial = j.value("polynomial", false);
  return v;
}

Json potential_to_json(const PotentialSeries& v) {
  Json j;
  j["name"] = v.name;
  j["taylor"] = Json::array();
  for (const auto& c : v.taylor) j["taylor"].push_back(rational_to_json(c));
  if (v.m) j["m"] = rational_to_json(*v.m);
  if (v.polynomial) j["polynomial"] = true;
  return j;
}

Series<Rational> rs_series(const PotentialSeries& v, int N, int order, const ProgressFn& progress) {
  if (N < 0 || order < 0) throw DomainError("level and order must be non-negative");
  const int jmax = 2 * std::max(order - 1, 0);
  if (!v.polynomial && static_cast<int>(v.taylor.size()) < jmax + 3 && order >= 2)
    throw DomainError("potential needs Taylor coefficients through degree " + std::to_string(jmax + 2));
  auto vk = [&](int k) { return k < static_cast<int>(v.taylor.size()) ? v.taylor[k] : Rational(0); };
  if (vk(1) != 0) throw DomainError("x = 0 is not a critical point of the potential");
  const Rational omega = exact_sqrt(2 * vk(2));
  if (omega == 0) throw DomainError("degenerate minimum (zero curvature)");

  // P_0: (L - omega N) P_0 = 0 with [y^N] P_0 = 1, L = -(1/2) d^2 + omega y d.
  std::vector<Dense> P;
  Dense p0(N + 1);
  p0[N] = 1;
  for (int d = N - 2; d >= 0; d -= 2) p0[d] = Rational((d + 2) * (d + 1), 2) * p0[d + 2] / (omega * (d - N));
  P.push_back(p0);
  std::vector<Rational> eps(jmax + 1);

  for (int j = 1; j <= jmax; ++j) {
    if (progress && !progress(j, jmax)) throw Cancelled();
    int deg = N + 3 * j;
    Dense rhs(deg + 1);  // sum_{i<j} eps_i P_{j-i} - sum_k v_k y^k P_{j-k+2}
    for (int i = 1; i < j; ++i) {
      if (eps[i] == 0) continue;
      for (size_t d = 0; d < P[j - i].size(); ++d) rhs[d] += eps[i] * P[j - i][d];
    }
    for (int k = 3; k <= j + 2; ++k) {
      Rational c = vk(k);
      if (c == 0) continue;
      const Dense& q = P[j - k + 2];
      for (size_t d = 0; d < q.size(); ++d)
        if (q[d] != 0) rhs[d + k] -= c * q[d];
    }
    Dense pj(deg + 3);
    for (int d = deg; d > N; --d)
      pj[d] = (coeff(rhs, d) + Rational((d + 2) * (d + 1), 2) * coeff(pj, d + 2)) / (omega * (d - N));
    // Solvability at degree N fixes eps_j; the y^N coefficient of P_j stays zero.
    eps[j] = -Rational((N + 2) * (N + 1), 2) * coeff(pj, N + 2) - coeff(rhs, N);
    for (int d = N - 1; d >= 0; --d)
      pj[d] = (coeff(rhs, d) + eps[j] * coeff(p0, d) + Rational((d + 2) * (d + 1), 2) * coeff(pj, d + 2)) /
              (omega * (d - N));
    while (!pj.empty() && pj.back() == 0) pj.pop_back();
    P.push_back(std::move(pj));
  }

  Series<Rational> E("h", order, 0);
  E.at(0) = vk(0);
  if (order >= 1) E.at(1) = omega * Rational(2 * N + 1, 2);
  for (int j = 1; j <= jmax; ++j) {
    if (j % 2) {
      if (eps[j] != 0) throw StructuralError("half-integer power of h in the energy");
      continue;
    }
    E.at(1 + j / 2) = eps[j];
  }
  return E;
}

Series<Poly> polynomial_in_N(const PotentialSeries& v, int order, const ProgressFn& progress) {
  std::vector<Series<Rational>> levels;
  std::vector<Rational> bs;
  for (int N = 0; N <= order + 1; ++N) {
    if (progress && !progress(N, order + 1)) throw Cancelled();
    levels.push_back(rs_series(v, N, order));
    bs.push_back(Rational(2 * N + 1, 2));
  }
  Series<Poly> out("h", order, 0);
  for (int k = 0; k <= order; ++k) {
    std::vector<Rational> xs(bs.begin(), bs.begin() + order + 1), ys;
    for (int i = 0; i <= order; ++i) ys.push_back(levels[i][k]);
    Poly p = Poly::interpolate(xs, ys);
    if (p(bs.back()) != levels.back()[k]) throw StructuralError("h^" + std::to_string(k) + " coefficient is not polynomial in the level");
    if (p.degree() > k) throw StructuralError("h^" + std::to_string(k) + " coefficient has degree above " + std::to_string(k));
    out.at(k) = p;
  }
  return out;
}

Series<Rational> lame_series(const Rational& m, int order) {
  auto v = lame_well(m, 2 * (order + 1) + 2);
  auto e = rs_series(v, 0, order + 1);
  Series<Rational> out("h", order, 0);
  for (int k = 0; k <= order; ++k) out.at(k) = 2 * e[k + 1];
  return out;
}

LargeOrderFit large_order_fit(const std::vector<Rational>& coeffs, FitModel model, int richardson_order) {
  LargeOrderFit fit;
  fit.richardson_order = richardson_order;
  fit.odd_vanish = true;
  for (size_t n = 1; n < coeffs.size(); n += 2)
    if (coeffs[n] != 0) fit.odd_vanish = false;

  std::vector<Extended> est;
  int first = 0;
  if (model == FitModel::SingleAction) {
    if (coeffs.size() < 25) throw DomainError("large-order fit needs at least 25 coefficients");
    // Skip the low orders where sign changes are not yet systematic.
    first = static_cast<int>(coeffs.size()) / 3;
    std::vector<Extended> r;
    for (size_t n = first; n + 1 < coeffs.size(); ++n) {
      if (coeffs[n] == 0) throw StructuralError("zero coefficient in single-action fit; use the two-action model");
      r.push_back(to_real<Extended>(coeffs[n + 1]) / to_real<Extended>(coeffs[n]));
    }
    for (size_t i = 0; i + 1 < r.size(); ++i) est.push_back(1 / (r[i + 1] - r[i]));
    fit.alternating = r.back() < 0;
  } else {
    std::vector<Extended> even;
    for (size_t n = 0; n < coeffs.size(); n += 2) even.push_back(to_real<Extended>(coeffs[n]));
    if (even.size() < 13) throw DomainError("two-action fit needs at least 25 coefficients");
    first = static_cast<int>(even.size()) / 3;
    std::vector<Extended> rho;
    for (size_t k = first; k + 1 < even.size(); ++k) {
      if (even[k] == 0) throw StructuralError("zero even coefficient in two-action fit");
      using std::abs;
      using std::sqrt;
      rho.push_back(sqrt(abs(even[k + 1] / even[k])));
    }
    for (size_t i = 0; i + 1 < rho.size(); ++i) est.push_back(2 / (rho[i + 1] - rho[i]));
    fit.alternating = false;
  }
  for (const auto& e : est) fit.raw.push_back(e.convert_to<double>());
  int order = std::min(richardson_order, static_cast<int>(est.size()) - 2);
  if (order < 1) throw DomainError("too few coefficients for acceleration");
  Extended s_hi = richardson(est, first, order);
  Extended s_lo = richardson(std::vector<Extended>(est.begin(), est.end() - 1), first, order);
  fit.action = s_hi.convert_to<double>();
  fit.action_error = std::abs((s_hi - s_lo).convert_to<double>());
  if (!std::isfinite(fit.action) || fit.action_error > 0.1 * std::abs(fit.action))
    throw ConvergenceError("Richardson acceleration did not settle (spread " + std::to_string(fit.action_error) + ")");
  return fit;
}

}  // namespace mathieu::benderwu
