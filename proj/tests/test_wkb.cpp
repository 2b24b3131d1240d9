#include <doctest.h>

#include <mathieu/elliptic.hpp>
#include <mathieu/wkb.hpp>

#include <cmath>

using namespace mathieu;
using namespace mathieu::wkb;

namespace {

std::vector<Rational> head(const Series<Rational>& s, int lo, int hi) {
  std::vector<Rational> v;
  for (int e = lo; e <= hi; ++e) v.push_back(s[e]);
  return v;
}

std::vector<Rational> R(std::initializer_list<std::pair<long long, long long>> l) {
  std::vector<Rational> v;
  for (auto [n, d] : l) v.push_back(rat(n, d));
  return v;
}

}  // namespace

TEST_CASE("leading periods at special points") {
  CHECK(action_leading(-1).a0 == 0.0);
  CHECK(std::abs(action_leading(1).a0 - 4 / M_PI) < 1e-12);
  CHECK(std::abs(action_leading(1).im_aD0) < 1e-12);
  CHECK(std::abs(2 * M_PI * action_leading(-1).im_aD0 - 8) < 1e-12);
  CHECK_THROWS_AS(action_leading(-1.5), DomainError);
}

TEST_CASE("well-region series from the all-orders recursion") {
  CHECK(head(well_series(0, 5).coeffs, 1, 5) == R({{1, 2}, {1, 32}, {3, 512}, {25, 16384}, {245, 524288}}));
  CHECK(head(well_series(1, 4).coeffs, 0, 4) ==
        R({{1, 128}, {5, 2048}, {35, 32768}, {525, 1048576}, {8085, 33554432}}));
  CHECK(head(well_series(2, 4).coeffs, 0, 4) ==
        R({{17, 262144}, {721, 8388608}, {10941, 134217728}, {141757, 2147483648LL}, {3342339, 68719476736LL}}));
  CHECK(well_series(0, 12).coeffs == well_series_a0_elliptic(12).coeffs);
}

TEST_CASE("property: the order-raising operators reproduce the recursion exactly") {
  auto a0 = well_series_a0_elliptic(14);
  auto a1 = well_series_by_operator(1, a0);
  auto a2 = well_series_by_operator(2, a0);
  CHECK(a1.coeffs == well_series(1, a1.coeffs.order()).coeffs);
  CHECK(a2.coeffs == well_series(2, a2.coeffs.order()).coeffs);
}

TEST_CASE("high-region series") {
  CHECK(head(high_series(0, 8).coeffs, 0, 8) == R({{1, 1}, {0, 1}, {-1, 16}, {0, 1}, {-15, 1024}, {0, 1}, {-105, 16384}, {0, 1}, {-15015, 4194304}}));
  // a_1 = -(1/(16 (2u)^{5/2})) (1 + 35/(32u^2) + ...) = sqrt(2u) * (-1/128) u^{-3} (1 + ...)
  auto a1 = high_series(1, 11).coeffs;
  Rational p1 = rat(-1, 128);
  CHECK(head(a1, 0, 11) == std::vector<Rational>{0, 0, 0, p1, 0, p1 * rat(35, 32), 0, p1 * rat(1155, 1024), 0,
                                                  p1 * rat(75075, 65536), 0, p1 * rat(4849845, 4194304)});
  auto a2 = high_series(2, 12).coeffs;
  Rational p2 = rat(-1, 64 * 16);  // -1/(64 (2u)^{7/2}) = sqrt(2u) (-1/1024) u^{-4}
  CHECK(head(a2, 4, 12) == std::vector<Rational>{p2, 0, p2 * rat(273, 64), 0, p2 * rat(5005, 512), 0,
                                                  p2 * rat(2297295, 131072), 0, p2 * rat(115426311, 4194304)});
}

TEST_CASE("top-region series") {
  auto t = top_series(10);
  CHECK(t.coeffs[0] == 4);
  CHECK(t.coeffs[1] == rat(1, 2));
  CHECK(t.log_coeffs[0] == 0);
  CHECK(t.log_coeffs[1] == rat(1, 2));
  for (double u : {0.9, 0.97, 0.995}) CHECK(std::abs(t.evaluate(u) - action_leading(u).a0) < 1e-9);
}

TEST_CASE("series agree with the closed forms") {
  CHECK(std::abs(well_series(0, 40).evaluate(-0.9) - action_leading(-0.9).a0) < 1e-10);
  CHECK(std::abs(well_series(1, 40).evaluate(-0.5) - action_closed_form(1, -0.5)) < 1e-8);
  CHECK(std::abs(well_series(2, 40).evaluate(-0.6) - action_closed_form(2, -0.6)) < 1e-8);
  CHECK(std::abs(high_series(0, 30).evaluate(5.0) - action_leading(5.0).a0) < 1e-10);
}

TEST_CASE("higher actions and their duals") {
  for (double u : {-0.8, -0.3, 0.2, 0.7}) {
    auto v = action_higher(u);
    auto l = action_leading(u);
    CHECK(std::abs(apply_order_operator(1, u, l.a0, l.a0_du) - v.a[1]) < 1e-10 * std::abs(v.a[1]));
    CHECK(std::abs(apply_order_operator(2, u, l.a0, l.a0_du) - v.a[2]) < 1e-10 * std::abs(v.a[2]));
    CHECK(v.aD[1].real() == 0.0);
  }
  CHECK_THROWS_AS(action_higher(1.0), DomainError);
  CHECK_THROWS_AS(action_closed_form(3, 0.0), DomainError);
}

TEST_CASE("property: Wronskian and Picard-Fuchs") {
  for (double u : {0.0, 0.9, -0.9}) CHECK(std::abs(wronskian_defect(u)) <= 1e-11);
  for (int i = 1; i < 50; ++i) {
    double u = -0.98 + 1.96 * i / 50.0;
    CHECK(std::abs(wronskian_defect(u)) <= 1e-11);
  }
  for (int i = 0; i <= 19; ++i) {
    double u = -0.95 + 0.1 * i;
    auto r = picard_fuchs_residual(u);
    CHECK(std::abs(r[0]) <= 1e-8);
    CHECK(std::abs(r[1]) <= 1e-8);
  }
}

TEST_CASE("dual period near and above the barrier top") {
  CHECK(std::abs(action_leading(1 - 1e-9).im_aD0) < 1e-8);
  // -i a^D ~ (u - 1)/2 on both sides with Im a^D >= 0.
  CHECK(std::abs(action_leading(0.999).im_aD0 - 0.0005) < 1e-5);
  CHECK(std::abs(action_leading(1.001).im_aD0 - 0.0005) < 1e-5);
  // Above the barrier: pi Im a^D ~ sqrt(2u) (ln(8u) - 2).
  double u = 400;
  CHECK(std::abs(M_PI * action_leading(u).im_aD0 / (std::sqrt(2 * u) * (std::log(8 * u) - 2)) - 1) < 1e-3);
  // Below: pi Im a^D ~ 4 + ((1+u)/2)(ln((1+u)/32) - 1).
  double w = -1 + 1e-4;
  CHECK(std::abs(M_PI * action_leading(w).im_aD0 - (4 + (1 + w) / 2 * (std::log((1 + w) / 32) - 1))) < 1e-6);
}

TEST_CASE("recursion integrands are total derivatives at odd orders") {
  auto q = wkb_recursion(6);
  CHECK(q.size() == 7);
  CHECK(q[0].size() == 1);
}
