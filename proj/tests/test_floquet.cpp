#include <doctest.h>

#include <mathieu/errors.hpp>
#include <mathieu/floquet.hpp>
#include <mathieu/nonpert.hpp>
#include <mathieu/spectral.hpp>

#include <json.hpp>

#include <cmath>
#include <sstream>

using namespace mathieu;
using namespace mathieu::floquet;

namespace {

double d(const Extended& x) { return static_cast<double>(x); }

HillConfig at(double h, double lambda = 1) { return HillConfig{h, lambda, 0, Tier::Double}; }

}  // namespace

TEST_CASE("free particle edges are k^2/2 with k = m/2") {
  auto s = spectrum(9, at(1, 0));
  for (int i = 0; i < 9; ++i) {
    int m = (i + 1) / 2;
    CHECK(d(s.values[i]) == doctest::Approx(m * m / 8.0).epsilon(1e-14));
  }
  CHECK(discriminant(0.5, at(1, 0)) == doctest::Approx(1).epsilon(1e-11));
  for (double u : {0.1, 0.3, 0.77})
    CHECK(discriminant(u, at(1, 0)) == doctest::Approx(std::cos(2 * M_PI * std::sqrt(2 * u))).epsilon(1e-10));
}

TEST_CASE("lowest band centre matches the optimally truncated weak-coupling series") {
  const double h = 0.5;
  auto s = spectrum(2, at(h));
  double centre = (d(s.values[0]) + d(s.values[1])) / 2;
  auto u = spectral::bs_invert_weak_at(Rational(1, 2), 32);
  // Sum up to the smallest term.
  double sum = 0, smallest = 1e300;
  for (int k = u.low(); k <= u.order(); ++k) {
    double term = to_double(u[k]) * std::pow(h, k);
    if (std::abs(term) > smallest && k > 4) break;
    smallest = std::min(smallest, std::abs(term));
    sum += term;
  }
  CHECK(std::abs(centre - sum) < 1e-6);
}

TEST_CASE("gap edges at h = 6 match the strong-coupling series") {
  const double h = 6;
  auto s = spectrum(8, at(h));
  auto [u0, u0b] = spectral::gap_edge_series(0, 14);
  CHECK(eval(u0, 1 / h) == doctest::Approx(d(s.values[0])).epsilon(1e-6));
  for (int N = 1; N <= 3; ++N) {
    auto [lower, upper] = spectral::gap_edge_series(N, 14);
    CHECK(eval(lower, 1 / h) == doctest::Approx(d(s.values[2 * N - 1])).epsilon(1e-6));
    CHECK(eval(upper, 1 / h) == doctest::Approx(d(s.values[2 * N])).epsilon(1e-6));
  }
}

TEST_CASE("discriminant roots agree with the Hill-matrix edges") {
  for (double h : {0.5, 1.0, 2.0}) {
    auto cfg = at(h);
    auto s = spectrum(9, cfg);
    for (int i = 0; i < 8; ++i) {
      double u = d(s.values[i]);
      double left = i > 0 ? d(s.values[i - 1]) : u - 1;
      double delta = std::min(u - left, d(s.values[i + 1]) - u) / 2;
      int target = (i % 4 == 0 || i % 4 == 3) ? 1 : -1;
      double root = discriminant_root(u - delta, u + delta, target, cfg);
      CHECK(std::abs(root - u) < 1e-9);
    }
  }
}

TEST_CASE("discriminant is inside [-1, 1] on bands and outside on gaps") {
  auto cfg = at(1.0);
  auto s = spectrum(10, cfg);
  for (int N = 0; N < 5; ++N) {
    double band_mid = (d(s.values[2 * N]) + d(s.values[2 * N + 1])) / 2;
    CHECK(std::abs(discriminant(band_mid, cfg)) < 1);
    if (N >= 1) {
      double gap_mid = (d(s.values[2 * N - 1]) + d(s.values[2 * N])) / 2;
      double D = discriminant(gap_mid, cfg);
      CHECK(std::abs(D) > 1);
      // periodic gaps (even N) above +1, antiperiodic (odd N) below -1
      CHECK((D > 0) == (N % 2 == 0));
    }
  }
}

TEST_CASE("band edges interlace and are labelled") {
  for (double h : {0.3, 1.0, 4.0}) {
    auto edges = band_edges(20, at(h));
    REQUIRE(edges.size() == 42);
    // high gaps at strong coupling are narrower than double precision resolves
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) CHECK(edges[i].u <= edges[i + 1].u);
    for (std::size_t i = 0; i + 1 < 10; ++i) CHECK(edges[i].u < edges[i + 1].u);
    CHECK(edges[5].N == 2);
    CHECK(edges[5].edge == EdgeKind::Top);
    for (const auto& e : edges) CHECK(e.converged_digits >= 8);
  }
}

TEST_CASE("truncation doubling changes edges by less than the reported digits") {
  auto s = spectrum(10, HillConfig{0.7, 1, 40, Tier::Double});
  auto t = spectrum(10, HillConfig{0.7, 1, 80, Tier::Double});
  for (int i = 0; i < 10; ++i) CHECK(std::abs(d(s.values[i] - t.values[i])) <= s.errors[i]);
}

TEST_CASE("shifting the potential by pi leaves the spectrum unchanged") {
  auto plus = spectrum(12, at(0.8, 1));
  auto minus = spectrum(12, at(0.8, -1));
  for (int i = 0; i < 12; ++i) CHECK(d(plus.values[i]) == doctest::Approx(d(minus.values[i])).epsilon(1e-12));
  CHECK(discriminant(0.1, at(0.8, 1)) == doctest::Approx(discriminant(0.1, at(0.8, -1))).epsilon(1e-8));
}

TEST_CASE("extended tier resolves exponentially narrow bands") {
  auto w = width_num(0.15, 0, WidthKind::Band);
  CHECK(w.tier == Tier::Extended);
  CHECK(w.resolved);
  // independent 50-digit dense diagonalisation of the same truncated operators
  CHECK(w.value == doctest::Approx(2.3657008650730104657e-23).epsilon(1e-12));
  CHECK(width_num(0.5, 0, WidthKind::Band).tier == Tier::Double);
  CHECK_THROWS_AS(width_num(1, 0, WidthKind::Gap), DomainError);
}

TEST_CASE("band widths approach the one-instanton formula monotonically") {
  for (int N = 0; N <= 2; ++N) {
    double prev = 1e300;
    for (double h : {0.5, 0.4, 0.3, 0.25, 0.2}) {
      double ratio = nonpert::band_width(h, N).leading / width_num(h, N, WidthKind::Band).value;
      double dev = std::abs(ratio - 1);
      CHECK(dev < prev);
      prev = dev;
    }
  }
  double r = nonpert::band_width(0.3, 0).leading / width_num(0.3, 0, WidthKind::Band).value;
  CHECK(std::abs(r - 1) < 0.05);
  // fluctuation factor brings the agreement far below the leading error
  double rf = nonpert::band_width(0.3, 1, 4).with_fluctuations / width_num(0.3, 1, WidthKind::Band).value;
  CHECK(std::abs(rf - 1) < 5e-5);
}

TEST_CASE("gap widths match the strong-coupling formula") {
  for (double h : {4.0, 6.0, 8.0})
    for (int N = 1; N <= 3; ++N) {
      double num = width_num(h, N, WidthKind::Gap).value;
      CHECK(nonpert::gap_width(h, N, 1).leading / num == doctest::Approx(1).epsilon(0.10));
      CHECK(nonpert::gap_width(h, N).with_fluctuations / num == doctest::Approx(1).epsilon(0.002));
    }
  // ratio approaches 1 as h grows
  for (int N = 1; N <= 3; ++N) {
    double prev = 1e300;
    for (double h : {3.0, 4.0, 6.0, 8.0}) {
      double dev = std::abs(nonpert::gap_width(h, N, 1).leading / width_num(h, N, WidthKind::Gap).value - 1);
      CHECK(dev < prev);
      prev = dev;
    }
  }
}

TEST_CASE("edges cross u = 1 at Q = (pi^2/16)(N -+ 1/4)^2") {
  for (int N = 3; N <= 10; ++N) {
    for (int sign : {-1, 1}) {
      double predicted = nonpert::crossing_Q(N, sign);
      int index = sign < 0 ? 2 * N - 1 : 2 * N;
      double Q = crossing_Q_numeric(index, 0.8 * predicted, 1.2 * predicted);
      CHECK(Q == doctest::Approx(predicted).epsilon(0.02));
    }
  }
}

TEST_CASE("near the barrier top bands and gaps have comparable widths") {
  // h = 2: 8/(pi h) = 1.27, the edges of band 1 straddle u = 1
  auto s = spectrum(6, at(2.0));
  double band = d(s.values[3] - s.values[2]);
  double gap_below = d(s.values[2] - s.values[1]);
  CHECK(d(s.values[2]) < 1);
  CHECK(d(s.values[3]) > 1);
  CHECK(band / gap_below < 2);
  CHECK(band / gap_below > 0.5);
  for (int N = 3; N <= 10; ++N) {
    double h = 8 / (M_PI * (N + 0.5));
    auto t = spectrum(2 * N + 3, at(h));
    double b = d(t.values[2 * N + 1] - t.values[2 * N]);
    double g_lo = d(t.values[2 * N] - t.values[2 * N - 1]);
    double g_hi = d(t.values[2 * N + 2] - t.values[2 * N + 1]);
    CHECK(b / g_lo < 2);
    CHECK(b / g_lo > 0.5);
    CHECK(b / g_hi < 2);
    CHECK(b / g_hi > 0.5);
  }
}

TEST_CASE("upper band edges follow u = 1 +- pi h/16") {
  for (int N = 3; N <= 10; ++N) {
    // band N centred on u = 1: its top sits on the upper curve
    double hb = 8 / (M_PI * (N + 0.5));
    auto sb = spectrum(2 * N + 2, at(hb));
    CHECK(d(sb.values[2 * N + 1]) == doctest::Approx(nonpert::barrier_top(hb).u_upper).epsilon(0.05));
    // gap N centred on u = 1: the top of band N-1 sits on the lower curve
    double hg = 8 / (M_PI * N);
    auto sg = spectrum(2 * N + 1, at(hg));
    CHECK(d(sg.values[2 * N - 1]) == doctest::Approx(nonpert::barrier_top(hg).u_lower).epsilon(0.05));
  }
}

TEST_CASE("nearest crossing of u = 1 at h = 0.5 is within half a level of the prediction") {
  const double h = 0.5;
  auto s = spectrum(30, at(h));
  int i = 0;
  while (d(s.values[i + 1]) < 1) ++i;
  // s_i < 1 < s_{i+1}: inside band i/2 if i is even, inside gap (i+1)/2 if odd
  auto top = nonpert::barrier_top(h);
  if (i % 2 == 0)
    CHECK(std::abs(i / 2 - top.band_center_N) <= 0.5);
  else
    CHECK(std::abs((i + 1) / 2 - top.gap_center_N) <= 0.5);
}

TEST_CASE("general width at u = 0 lies between neighbouring band widths") {
  const double h = 0.5;
  auto s = spectrum(8, at(h));
  int N = 0;
  while (d(s.values[2 * N + 1]) < 0) ++N;
  auto g = nonpert::general_width(h, 0.0);
  CHECK(g.value > 0);
  CHECK(!g.condensation);
  double below = width_num(h, N - 1, WidthKind::Band).value;
  double above = width_num(h, N, WidthKind::Band).value;
  CHECK(g.value > below);
  CHECK(g.value < above);
}

TEST_CASE("band-edge dataset versus h") {
  std::vector<double> grid{0.5, 1.0, 2.0};
  auto ds = figure_bands_vs_hbar(grid, 20);
  REQUIRE(ds.rows.size() == 3 * 40);
  for (std::size_t p = 0; p < 3; ++p)
    for (std::size_t j = 0; j + 1 < 40; ++j) CHECK(ds.rows[p * 40 + j].u <= ds.rows[p * 40 + j + 1].u);
  bool has_min = false, has_max = false;
  for (auto& [k, v] : ds.metadata) {
    has_min |= k == "potential_min" && v == "-1";
    has_max |= k == "potential_max" && v == "1";
  }
  CHECK(has_min);
  CHECK(has_max);
  std::ostringstream csv;
  write_csv(csv, ds);
  CHECK(csv.str().find("hbar,Q,N,edge,u,err\n") != std::string::npos);
  CHECK(csv.str().find("0.5,16,0,bottom,") != std::string::npos);
  std::ostringstream js;
  write_json(js, ds);
  auto parsed = nlohmann::json::parse(js.str());
  CHECK(parsed["rows"].size() == 120);
  CHECK(parsed["rows"][0]["u"].get<double>() == ds.rows[0].u);
  CHECK_THROWS_AS(figure_bands_vs_hbar({1.0, 0.5}), DomainError);
}

TEST_CASE("barrier-top dataset carries guides and verticals") {
  std::vector<double> Q;
  for (double q = 5; q <= 20; q += 0.5) Q.push_back(q);
  auto ds = figure_barrier_top(Q);
  int guides = 0;
  for (const auto& r : ds.rows) {
    if (r.edge == "guide_upper") {
      ++guides;
      CHECK(r.u == doctest::Approx(1 + M_PI * r.hbar / 16));
    } else if (r.edge == "bottom" || r.edge == "top") {
      CHECK(std::abs(r.u - 1) <= 0.5);
    }
  }
  CHECK(guides == static_cast<int>(Q.size()));
  bool n3 = false;
  for (auto& [k, v] : ds.metadata) n3 |= k == "vertical_N3";
  CHECK(n3);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(spectrum(0, at(1)), DomainError);
  CHECK_THROWS_AS(spectrum(4, at(-1)), DomainError);
  CHECK_THROWS_AS(spectrum(4, HillConfig{1, 1, 4, Tier::Double}), DomainError);
  CHECK_THROWS_AS(discriminant_root(-0.9, -0.89, 1, at(0.5)), DomainError);
}
