#include <mathieu/elliptic.hpp>
#include <mathieu/rational.hpp>

namespace mathieu::elliptic {

// Instantiate the common scalar types once so template errors surface in the library build.
template double ellip_K<double>(const double&);
template double ellip_E<double>(const double&);
template double ellip_dK<double>(const double&);
template double ellip_dE<double>(const double&);
template double legendre_defect<double>(const double&);
template SnCnDn<double> jacobi<double>(const double&, const double&);

template Extended ellip_K<Extended>(const Extended&);
template Extended ellip_E<Extended>(const Extended&);
template Extended legendre_defect<Extended>(const Extended&);

JacobiTaylor jacobi_taylor(const Rational& m, int order) {
  if (order < 0) throw DomainError("negative order");
  JacobiTaylor t{std::vector<Rational>(order + 1), std::vector<Rational>(order + 1), std::vector<Rational>(order + 1)};
  t.cn[0] = 1;
  t.dn[0] = 1;
  auto conv = [](const std::vector<Rational>& a, const std::vector<Rational>& b, int k) {
    Rational acc(0);
    for (int i = 0; i <= k; ++i) acc += a[i] * b[k - i];
    return acc;
  };
  for (int k = 0; k < order; ++k) {
    Rational inv(1, k + 1);
    t.sn[k + 1] = conv(t.cn, t.dn, k) * inv;
    t.cn[k + 1] = -conv(t.sn, t.dn, k) * inv;
    t.dn[k + 1] = -m * conv(t.sn, t.cn, k) * inv;
  }
  return t;
}

}  // namespace mathieu::elliptic
