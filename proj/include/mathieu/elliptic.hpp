#pragma once

#include <mathieu/errors.hpp>
#include <mathieu/rational.hpp>

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace mathieu::elliptic {

// Complete elliptic integrals in the parameter convention K(m), E(m), with
// m = k^2 in [0, 1]. Every routine is templated on the real scalar so the same
// code serves double and the extended tier.

namespace detail {

template <class Real>
Real tolerance() {
  return std::numeric_limits<Real>::epsilon() * 4;
}

template <class Real>
void check_param(const Real& m) {
  if (!(m >= 0 && m <= 1)) throw DomainError("elliptic parameter m must lie in [0, 1]");
}

/// Arithmetic-geometric mean of (1, sqrt(1-m)) together with sum 2^{n-1} c_n^2.
template <class Real>
std::pair<Real, Real> agm_with_csum(const Real& m) {
  using std::abs;
  using std::sqrt;
  Real a = 1, b = sqrt(Real(1) - m);
  Real csum = m / 2;  // n = 0 term, c_0^2 = m
  Real pow2 = 1;
  for (int it = 0; it < 200; ++it) {
    Real c = (a - b) / 2;
    Real an = (a + b) / 2;
    b = sqrt(a * b);
    a = an;
    csum += pow2 * c * c;
    pow2 *= 2;
    if (abs(c) <= tolerance<Real>() * abs(a)) return {a, csum};
  }
  throw ConvergenceError("AGM iteration did not converge");
}

}  // namespace detail

template <class Real>
Real ellip_K(const Real& m) {
  detail::check_param(m);
  if (m == 1) throw DomainError("K(m) diverges at m = 1");
  const Real pi = boost::math::constants::pi<Real>();
  return pi / (2 * detail::agm_with_csum(m).first);
}

template <class Real>
Real ellip_E(const Real& m) {
  detail::check_param(m);
  if (m == 1) return Real(1);
  const Real pi = boost::math::constants::pi<Real>();
  auto [a, csum] = detail::agm_with_csum(m);
  Real K = pi / (2 * a);
  return K * (Real(1) - csum);
}

/// dK/dm = (E - (1-m) K) / (2 m (1-m)), with the m -> 0 limit pi/8.
template <class Real>
Real ellip_dK(const Real& m) {
  detail::check_param(m);
  if (m == 1) throw DomainError("dK/dm diverges at m = 1");
  if (m == 0) return boost::math::constants::pi<Real>() / 8;
  Real K = ellip_K(m), E = ellip_E(m);
  return (E - (Real(1) - m) * K) / (2 * m * (Real(1) - m));
}

/// dE/dm = (E - K) / (2 m), with the m -> 0 limit -pi/8.
template <class Real>
Real ellip_dE(const Real& m) {
  detail::check_param(m);
  if (m == 1) throw DomainError("dE/dm diverges at m = 1");
  if (m == 0) return -boost::math::constants::pi<Real>() / 8;
  return (ellip_E(m) - ellip_K(m)) / (2 * m);
}

/// E K' + E' K - K K' - pi/2 with primes denoting the complementary parameter 1 - m.
template <class Real>
Real legendre_defect(const Real& m) {
  detail::check_param(m);
  if (m == 0 || m == 1) throw DomainError("Legendre relation needs 0 < m < 1");
  Real mc = Real(1) - m;
  Real K = ellip_K(m), E = ellip_E(m), Kc = ellip_K(mc), Ec = ellip_E(mc);
  return E * Kc + Ec * K - K * Kc - boost::math::constants::half_pi<Real>();
}

template <class Real>
struct SnCnDn {
  Real sn, cn, dn;
};

/// Jacobi sn, cn, dn for real argument by descending Landen transformation.
template <class Real>
SnCnDn<Real> jacobi(const Real& u, const Real& m) {
  using std::asin;
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sqrt;
  using std::tanh;
  detail::check_param(m);
  if (m == 0) return {sin(u), cos(u), Real(1)};
  if (m == 1) {
    Real s = Real(1) / cosh(u);
    return {tanh(u), s, s};
  }
  std::vector<Real> a{Real(1)}, c{sqrt(m)};
  Real b = sqrt(Real(1) - m);
  for (int it = 0; it < 200; ++it) {
    Real an = (a.back() + b) / 2;
    Real cn = (a.back() - b) / 2;
    b = sqrt(a.back() * b);
    a.push_back(an);
    c.push_back(cn);
    using std::abs;
    if (abs(cn) <= detail::tolerance<Real>()) break;
  }
  int n = static_cast<int>(a.size()) - 1;
  Real phi = a[n] * u;
  for (int i = 0; i < n; ++i) phi *= 2;
  for (int i = n; i >= 1; --i) phi = (phi + asin(c[i] * sin(phi) / a[i])) / 2;
  Real sn = sin(phi), cn = cos(phi);
  return {sn, cn, sqrt(Real(1) - m * sn * sn)};
}

/// sd = sn/dn for real argument.
template <class Real>
Real jacobi_sd(const Real& x, const Real& m) {
  auto j = jacobi(x, m);
  using std::abs;
  if (abs(j.dn) < detail::tolerance<Real>()) throw DomainError("sd has a pole here (dn = 0)");
  return j.sn / j.dn;
}

/// sd(z | m) for z real or purely imaginary. On the imaginary axis
/// sd(i y | m) = i sd(y | 1 - m) by Jacobi's imaginary transformation.
template <class Real>
std::complex<Real> jacobi_sd(const std::complex<Real>& z, const Real& m) {
  if (z.imag() == 0) return {jacobi_sd(z.real(), m), Real(0)};
  if (z.real() == 0) return {Real(0), jacobi_sd(z.imag(), Real(1) - m)};
  throw DomainError("jacobi_sd supports real or purely imaginary arguments only");
}

/// Maclaurin series of K(m) in m, used as an independent check of the AGM.
template <class Real>
Real ellip_K_series(const Real& m, int terms) {
  Real coeff = 1, acc = 0, mp = 1;
  for (int n = 0; n < terms; ++n) {
    acc += coeff * coeff * mp;
    coeff *= Real(2 * n + 1) / Real(2 * n + 2);
    mp *= m;
  }
  return boost::math::constants::half_pi<Real>() * acc;
}

/// Exact Maclaurin coefficients of sn, cn, dn at a rational parameter m, from
/// sn' = cn dn, cn' = -sn dn, dn' = -m sn cn. Index k holds the z^k coefficient.
struct JacobiTaylor {
  std::vector<Rational> sn, cn, dn;
};
JacobiTaylor jacobi_taylor(const Rational& m, int order);

}  // namespace mathieu::elliptic
