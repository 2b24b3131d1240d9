#include <doctest.h>

#include <mathieu/elliptic.hpp>
#include <mathieu/rational.hpp>

#include <cmath>

using namespace mathieu;
using namespace mathieu::elliptic;

TEST_CASE("complete integrals at special points") {
  CHECK(ellip_K(0.0) == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(ellip_E(0.0) == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(ellip_E(1.0) == 1.0);
  CHECK_THROWS_AS(ellip_K(1.0), DomainError);
  CHECK_THROWS_AS(ellip_K(-0.1), DomainError);
  CHECK_THROWS_AS(ellip_E(1.1), DomainError);
  // Frozen from the AGM, cross-checked against the Maclaurin series below.
  CHECK(std::abs(ellip_K(0.5) - 1.8540746773013719) < 1e-15);
  CHECK(std::abs(ellip_K_series(0.5, 200) - 1.8540746773013719) < 1e-14);
}

TEST_CASE("property: AGM matches the Maclaurin series on a grid") {
  for (int i = 1; i <= 99; ++i) {
    double m = i / 100.0;
    int terms = 4000;
    Extended ms(i);
    ms /= 100;
    double series = ellip_K_series(ms, terms).convert_to<double>();
    if (m > 0.95) continue;  // series converges too slowly there; covered by extended check below
    CHECK(std::abs(ellip_K(m) - series) <= 1e-13 * series);
  }
  // Near m = 1 compare against the extended-precision AGM.
  for (double m : {0.96, 0.98, 0.99}) {
    double ext = ellip_K(Extended(m)).convert_to<double>();
    CHECK(std::abs(ellip_K(m) - ext) <= 1e-14 * ext);
  }
}

TEST_CASE("parameter derivatives") {
  double m = 0.5;
  CHECK(ellip_dE(m) == doctest::Approx((ellip_E(m) - ellip_K(m)) / 1.0).epsilon(1e-15));
  double h = 1e-5, x = 0.3;
  CHECK(std::abs(ellip_dK(x) - (ellip_K(x + h) - ellip_K(x - h)) / (2 * h)) < 1e-8);
  CHECK(std::abs(ellip_dE(x) - (ellip_E(x + h) - ellip_E(x - h)) / (2 * h)) < 1e-8);
  CHECK_THROWS_AS(ellip_dK(1.0), DomainError);
}

TEST_CASE("property: Legendre relation on a grid") {
  for (int i = 1; i <= 50; ++i) {
    double m = i / 51.0;
    CHECK(std::abs(legendre_defect(m)) <= 1e-13);
  }
  CHECK(std::abs(legendre_defect(0.5)) <= 1e-13);
  CHECK(std::abs(legendre_defect(0.1)) <= 1e-13);
  CHECK(std::abs(legendre_defect(1e-6)) <= 1e-10);
  CHECK(abs(legendre_defect(Extended("0.3"))) < Extended("1e-45"));
}

TEST_CASE("Jacobi functions") {
  CHECK(jacobi_sd(0.0, 0.3) == 0.0);
  for (double z = -3; z <= 3; z += 0.25) {
    CHECK(std::abs(jacobi_sd(z, 0.0) - std::sin(z)) < 1e-12);
    CHECK(std::abs(jacobi_sd(z, 1.0) - std::sinh(z)) < 1e-12 * std::max(1.0, std::cosh(z)));
    double sd0 = jacobi_sd(z, 0.0), sd1 = jacobi_sd(z, 1.0);
    CHECK(std::abs(sd0 * sd0 - std::sin(z) * std::sin(z)) < 1e-12);
    CHECK(std::abs(sd1 * sd1 - std::sinh(z) * std::sinh(z)) < 1e-12 * std::cosh(z) * std::cosh(z));
  }
  for (double m : {0.25, 0.5, 0.75}) {
    double K = ellip_K(m);
    for (double z : {0.1, 0.7, 1.3}) {
      CHECK(std::abs(jacobi_sd(z + 2 * K, m) + jacobi_sd(z, m)) < 1e-12);
      auto j = jacobi(z, m);
      CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1) < 1e-14);
    }
  }
  auto zi = jacobi_sd(std::complex<double>(0, 0.4), 0.25);
  CHECK(zi.real() == 0.0);
  CHECK(std::abs(zi.imag() - jacobi_sd(0.4, 0.75)) < 1e-15);
  CHECK_THROWS_AS(jacobi_sd(std::complex<double>(0.1, 0.1), 0.25), DomainError);
}

TEST_CASE("exact Jacobi Taylor coefficients") {
  auto t = jacobi_taylor(rat(1, 4), 7);
  // sn = z - (1+m) z^3/6 + (1 + 14m + m^2) z^5/120 - ...
  CHECK(t.sn[1] == 1);
  CHECK(t.sn[3] == -rat(5, 4) / 6);
  CHECK(t.sn[5] == (1 + rat(14, 4) + rat(1, 16)) / 120);
  CHECK(t.cn[2] == rat(-1, 2));
  CHECK(t.dn[2] == rat(-1, 8));
  double z = 0.3, acc = 0, pw = 1;
  auto t20 = jacobi_taylor(rat(1, 4), 21);
  for (int k = 0; k <= 21; ++k, pw *= z) acc += to_double(t20.sn[k]) * pw;
  CHECK(std::abs(acc - jacobi(z, 0.25).sn) < 1e-15);
}
