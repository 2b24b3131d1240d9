#include <doctest.h>

#include <mathieu/errors.hpp>
#include <mathieu/zerodim.hpp>

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>

using namespace mathieu;
using namespace mathieu::zerodim;

namespace {

// Gamma(r + 1/2)^2 / (pi r!) = ((2r-1)!!/2^r)^2 / r!
Rational sin2_vacuum_closed_form(int r) {
  Rational dfact(1);
  for (int i = 1; i <= 2 * r - 1; i += 2) dfact *= i;
  return pow(dfact / pow(Rational(2), r), 2) / factorial(r);
}

std::vector<Rational> row(std::initializer_list<std::pair<long, long>> c) {
  std::vector<Rational> out;
  for (auto [n, d] : c) out.push_back(rat(n, d));
  return out;
}

}  // namespace

TEST_CASE("sin^2 vacuum series equals the Gamma-function closed form") {
  auto v = saddle_series(sin2_about(0, 42), 20);
  REQUIRE(v.T.size() == 21);
  for (int r = 0; r <= 20; ++r) CHECK(v.T[r] == sin2_vacuum_closed_form(r));
  CHECK(v.action == 0);
  CHECK(v.curvature == 1);
}

TEST_CASE("sin^2 non-perturbative saddle series alternates with the vacuum coefficients") {
  auto s = saddle_series(sin2_about(1, 22), 10);
  CHECK(s.action == 1);
  CHECK(s.curvature == -1);
  CHECK(s.T[1] == rat(-1, 4));
  CHECK(s.T[2] == rat(9, 32));
  CHECK(s.T[3] == rat(-75, 128));
  for (int r = 0; r <= 10; ++r) CHECK(s.T[r] == (r % 2 ? -1 : 1) * sin2_vacuum_closed_form(r));
}

TEST_CASE("Lame vacuum rows at selected elliptic parameters") {
  struct Case {
    Rational m;
    std::vector<Rational> coeffs;
  };
  std::vector<Case> cases = {
      {Rational(0), row({{1, 1}, {1, 4}, {9, 32}, {75, 128}, {3675, 2048}, {59535, 8192}})},
      {Rational(1), row({{1, 1}, {-1, 4}, {9, 32}, {-75, 128}, {3675, 2048}, {-59535, 8192}})},
      {rat(1, 4), row({{1, 1}, {1, 8}, {9, 64}, {105, 512}, {1995, 4096}, {48195, 32768}})},
      {rat(3, 4), row({{1, 1}, {-1, 8}, {9, 64}, {-105, 512}, {1995, 4096}, {-48195, 32768}})},
      {rat(1, 2), row({{1, 1}, {0, 1}, {3, 32}, {0, 1}, {315, 2048}, {0, 1}})},
  };
  for (const auto& c : cases) {
    CAPTURE(to_double(c.m));
    auto v = saddle_series(lame_about(0, c.m, 12), 5);
    for (int n = 0; n <= 5; ++n) CHECK(v.T[n] == c.coeffs[n]);
  }
}

TEST_CASE("coefficient duality between m and 1 - m") {
  for (auto m : {rat(1, 3), rat(1, 4), rat(1, 10), rat(2, 7)}) {
    auto a = saddle_series(lame_about(0, m, 34), 16);
    auto b = saddle_series(lame_about(0, Rational(1) - m, 34), 16);
    for (int n = 0; n <= 16; ++n) CHECK(a.T[n] == (n % 2 ? -1 : 1) * b.T[n]);
  }
  auto half = saddle_series(lame_about(0, rat(1, 2), 42), 20);
  for (int n = 1; n <= 20; n += 2) CHECK(half.T[n] == 0);
}

TEST_CASE("saddle actions and locations") {
  auto s = lame_saddles(rat(1, 4), 4);
  CHECK(s.real.action == rat(4, 3));
  CHECK(s.imag.action == -4);
  CHECK(s.vacuum.action == 0);
  CHECK(s.real.location.real() == doctest::Approx(1.6857503548125961));
  CHECK(s.imag.location.imag() == doctest::Approx(2.1565156474996432));
  auto s0 = lame_saddles(Rational(0), 4);
  CHECK(s0.has_real());
  CHECK(!s0.has_imag());
  auto s1 = lame_saddles(Rational(1), 4);
  CHECK(!s1.has_real());
  CHECK(s1.has_imag());
  // the real saddle at m = 0 is the sin^2 saddle
  auto sin2 = saddle_series(sin2_about(1, 10), 4);
  for (int r = 0; r <= 4; ++r) CHECK(s0.real.T[r] == sin2.T[r]);
}

TEST_CASE("saddle_series input validation") {
  benderwu::PotentialSeries linear{"linear", {0, 1, 1}, {}, true};
  CHECK_THROWS_AS(saddle_series(linear, 2), DomainError);
  benderwu::PotentialSeries flat{"quartic", {0, 0, 0, 0, 1}, {}, true};
  CHECK_THROWS_AS(saddle_series(flat, 2), DomainError);
  CHECK_THROWS_AS(saddle_series(sin2_about(0, 6), 5), DomainError);
  CHECK_THROWS_AS(lame_about(0, rat(3, 2), 6), DomainError);
  CHECK_THROWS_AS(lame_about(1, Rational(1), 6), DomainError);
  CHECK_THROWS_AS(lame_about(2, Rational(0), 6), DomainError);
  CHECK_THROWS_AS(sin2_about(2, 6), DomainError);
  // a polynomial exponent needs no extra Taylor degree
  benderwu::PotentialSeries quartic{"quartic", {0, 0, 1, 0, 1}, {}, true};
  auto q = saddle_series(quartic, 3);
  CHECK(q.T[1] == rat(-3, 4));
}

TEST_CASE("quadrature against Bessel-function closed forms") {
  for (double h : {0.05, 0.2, 1.0}) {
    double x = 1 / (2 * h);
    // sin^2: pi e^{-x} I0(x) / sqrt(h pi)
    double z0 = std::sqrt(M_PI / h) * std::exp(-x) * boost::math::cyl_bessel_i(0, x);
    CHECK(z_quadrature(h, 0) == doctest::Approx(z0).epsilon(1e-12));
    // sinh^2: e^{x} K0(x) / sqrt(h pi)
    double z1 = std::exp(x) * boost::math::cyl_bessel_k(0, x) / std::sqrt(h * M_PI);
    CHECK(z_quadrature(h, 1) == doctest::Approx(z1).epsilon(1e-12));
  }
  CHECK_THROWS_AS(z_quadrature(0, 0.5), DomainError);
  CHECK_THROWS_AS(z_quadrature(0.1, 1.5), DomainError);
}

TEST_CASE("quadrature shows the asymptotic-series signature at m = 0") {
  const double h = 0.1;
  auto v = saddle_series(sin2_about(0, 62), 30);
  double z = z_quadrature(h, 0);
  std::vector<double> err;
  double partial = 0;
  for (int n = 0; n <= 30; ++n) {
    partial += to_double(v.T[n]) * std::pow(h, n);
    err.push_back(std::abs(z - partial));
  }
  auto best = std::min_element(err.begin(), err.end()) - err.begin();
  // errors shrink towards n ~ S1/h and grow again beyond it
  CHECK(best >= 5);
  CHECK(best <= 15);
  CHECK(err[30] > 100 * err[best]);
  CHECK(err[0] > 100 * err[best]);
  // optimal truncation error sits at the e^{-S1/h} scale
  double ratio = err[best] / std::exp(-1 / h);
  CHECK(ratio > 0.05);
  CHECK(ratio < 5);
}

TEST_CASE("quadrature at m = 1/2 is even in h to tested order") {
  auto v = saddle_series(lame_about(0, rat(1, 2), 14), 6);
  for (double h : {0.02, 0.04}) {
    double even = 1 + to_double(v.T[2]) * h * h + to_double(v.T[4]) * std::pow(h, 4);
    // remainder is the h^6 term; odd orders contribute nothing
    double rem = z_quadrature(h, 0.5) - even;
    CHECK(rem / (to_double(v.T[6]) * std::pow(h, 6)) == doctest::Approx(1).epsilon(0.1));
  }
}

TEST_CASE("large-order dominance follows the nearer saddle") {
  SUBCASE("m = 1/4: non-alternating, ratio ~ n/S1") {
    auto s = lame_saddles(rat(1, 4), 24);
    for (int n = 10; n < 24; ++n) CHECK(s.vacuum.T[n] > 0);
    double r = to_double(s.vacuum.T[24] / s.vacuum.T[23]);
    CHECK(r / (23.0 / (4.0 / 3)) == doctest::Approx(1).epsilon(0.05));
    for (const auto& row : berry_howls_check(s, 24, 4))
      if (row.n >= 15) CHECK(row.rel_defect < 1e-4);
  }
  SUBCASE("m = 3/4: alternating, ratio ~ -n/|S2|") {
    auto s = lame_saddles(rat(3, 4), 24);
    for (int n = 10; n < 24; ++n) CHECK((s.vacuum.T[n] > 0) == (n % 2 == 0));
    double r = to_double(s.vacuum.T[24] / s.vacuum.T[23]);
    CHECK(-r / (23.0 / (4.0 / 3)) == doctest::Approx(1).epsilon(0.05));
    for (const auto& row : berry_howls_check(s, 24, 4))
      if (row.n >= 15) CHECK(row.rel_defect < 1e-4);
  }
  SUBCASE("m = 1/2: odd orders cancel between the two saddles") {
    auto s = lame_saddles(rat(1, 2), 24);
    for (const auto& row : berry_howls_check(s, 24, 4)) {
      if (row.n % 2) {
        CHECK(row.lhs == 0);
        CHECK(std::abs(row.rhs) < 1e-30 * std::tgamma(row.n));
      } else if (row.n >= 12) {
        CHECK(row.rel_defect < 1e-3);
      }
    }
  }
}

TEST_CASE("coefficient relation: defect and refinement in j_max") {
  auto s = lame_saddles(rat(1, 4), 22);
  CHECK(exact_relation_check(s, 20, 20, 6) <= 1e-3);
  double prev = 1e300;
  for (int j = 0; j <= 6; ++j) {
    double d = exact_relation_check(s, 20, 20, j);
    CHECK(d < prev);
    prev = d;
  }
  // the defect decreases with n at fixed j_max
  auto rows = berry_howls_check(s, 22, 3);
  for (int n = 8; n < 22; ++n) CHECK(rows[n].rel_defect < rows[n - 1].rel_defect);
  auto half = lame_saddles(rat(1, 2), 22);
  auto r21 = berry_howls_check(half, 21, 6).back();
  CHECK(r21.n == 21);
  CHECK(r21.lhs == 0);
  CHECK(r21.rel_defect < 1e-30);
  CHECK_THROWS_AS(berry_howls_check(s, 30, 3), TruncationError);
  CHECK_THROWS_AS(exact_relation_check(s, 5, 4, 3), DomainError);
}

TEST_CASE("coefficient relation reduces to the single-saddle form as m -> 0") {
  auto s0 = lame_saddles(Rational(0), 22);
  auto small = lame_saddles(rat(1, 1000), 22);
  double d0 = exact_relation_check(s0, 20, 20, 6);
  CHECK(d0 < 1e-3);
  // the imaginary saddle at S2 = -1000 shifts nothing visible
  CHECK(exact_relation_check(small, 20, 20, 6) == doctest::Approx(d0).epsilon(0.05));
  // sin^2 single-saddle statement on the closed form
  auto row = berry_howls_check(s0, 20, 6).back();
  CHECK(row.lhs == doctest::Approx(to_double(sin2_vacuum_closed_form(20))));
}

TEST_CASE("principal-value resummation reproduces the quadrature") {
  auto s = lame_saddles(rat(1, 4), 30);
  auto rows = borel_lateral_check(s, {0.05});
  CHECK(rows[0].abs_error <= 1e-6 * rows[0].quadrature);
  CHECK(rows[0].abs_error < 1e-14);
  // ambiguity of the lateral sums is the real-saddle weight a_0 e^{-S1/h} at leading order
  CHECK(rows[0].imag_ambiguity / (std::sqrt(0.75) * std::exp(-4 / 3.0 / 0.05)) == doctest::Approx(1).epsilon(0.01));

  SUBCASE("m = 1/2: real average equals the quadrature, error within the two-saddle scale") {
    auto half = lame_saddles(rat(1, 2), 30);
    auto r = borel_lateral_check(half, {0.15, 0.2, 0.25, 0.3, 0.4, 0.5});
    for (const auto& x : r) CHECK(x.abs_error < x.two_instanton_bound);
    CHECK(-error_action_fit(r) == doctest::Approx(4.0).epsilon(0.2));
  }
  SUBCASE("m = 1/4: first-stage error decays at twice the real-saddle action") {
    auto r = borel_lateral_check(s, {0.15, 0.2, 0.25, 0.3, 0.4, 0.5});
    CHECK(-error_action_fit(r) == doctest::Approx(2 * 4.0 / 3).epsilon(0.2));
  }
  CHECK_THROWS_AS(borel_lateral_check(s, {-0.1}), DomainError);
  CHECK_THROWS_AS(error_action_fit({}), DomainError);
}

TEST_CASE("JSON reports") {
  auto s = lame_saddles(rat(1, 4), 8);
  auto j = to_json(berry_howls_check(s, 8, 2).back());
  for (const char* k : {"m", "n", "lhs", "rhs", "rel_defect"}) CHECK(j.contains(k));
  CHECK(j["n"] == 8);
  auto b = to_json(borel_lateral_check(s, {0.2}).front());
  CHECK(b["h"] == 0.2);
  CHECK(b.contains("imag_ambiguity"));
}
