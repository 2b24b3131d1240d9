#include <mathieu/nonpert.hpp>
#include <mathieu/spectral.hpp>
#include <mathieu/wkb.hpp>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

namespace mathieu::nonpert {

using boost::math::constants::pi;

Series<Poly> p_inst_from(const Series<Poly>& u_pert, int order) {
  if (order < 0) throw DomainError("negative order");
  if (u_pert.low() != 0 || u_pert.order() < order + 2) throw TruncationError("u_pert needed through h^(order+2)");
  const Poly B = Poly::x();
  Series<Poly> du = poly_derivative(u_pert).truncated(order + 2);
  // Bracket du/dB - h + B h^2/8 must start at h^3.
  Series<Poly> bracket = du;
  bracket.at(1) -= Poly(1);
  bracket.at(2) += B * Rational(1, kInstantonAction);
  for (int k = 0; k <= 2; ++k)
    if (!bracket[k].is_zero()) throw StructuralError("instanton bracket is not O(h^3): h^" + std::to_string(k) + " term " + bracket[k].str());
  // 8 int_0^h h'^{k-3} dh' = 8 h^{k-2}/(k-2).
  Series<Poly> exponent("h", order, 0);
  for (int k = 3; k <= order + 2; ++k) exponent.at(k - 2) = bracket[k] * Rational(kInstantonAction, k - 2);
  // (1/h) du/dB
  Series<Poly> lead("h", order, 0);
  for (int k = 0; k <= order; ++k) lead.at(k) = du[k + 1];
  return (lead * exp(exponent)).truncated(order);
}

Series<Poly> p_inst(int order, const ProgressFn& progress) {
  return p_inst_from(spectral::bs_invert_weak(order + 2, progress), order);
}

namespace {

double factorial_d(int n) { return std::tgamma(n + 1.0); }

}  // namespace

WidthEstimate band_width(double h, int N, int order) {
  if (!(h > 0)) throw DomainError("h must be positive");
  if (N < 0) throw DomainError("level must be non-negative");
  WidthEstimate w;
  w.h = h;
  w.N = N;
  w.kind = WidthKind::Band;
  w.order_used = order;
  const double B = N + 0.5;
  // Prefactor 4/sqrt(2 pi): matches the Hill-matrix widths as h -> 0.
  w.leading = 4 * h / std::sqrt(2 * pi<double>()) / factorial_d(N) * std::pow(32 / h, B) * std::exp(-kInstantonAction / h);
  auto P = p_inst(order);
  w.with_fluctuations = w.leading * eval(P, h, B);
  if (N * h >= 1) w.warning = "N h >= 1: outside the weak-coupling regime";
  return w;
}

WidthEstimate gap_width(double h, int N, int terms) {
  if (!(h > 0)) throw DomainError("h must be positive");
  if (N < 1) throw DomainError("gap widths are defined for N >= 1");
  if (terms < 0) terms = N;
  if (terms < 1) throw DomainError("need at least one template term");
  WidthEstimate w;
  w.h = h;
  w.N = N;
  w.kind = WidthKind::Gap;
  w.order_used = terms;
  // log of (h^2/4) (2/h)^{2N} / (2^{N-1} (N-1)!)^2 for stability at large N.
  double lg = 2 * std::log(h) - std::log(4.0) + 2 * N * std::log(2 / h) -
              2 * ((N - 1) * std::log(2.0) + std::lgamma(static_cast<double>(N)));
  w.leading = std::exp(lg);
  auto [alpha, beta] = spectral::alphabeta_extract(N, terms);
  double sum = 0, hp = 1;
  for (int n = 0; n < terms; ++n, hp /= std::pow(h, 4)) sum += to_double(beta[n]) * hp;
  w.with_fluctuations = w.leading * sum;
  if (N * h <= 1) w.warning = "N h <= 1: outside the strong-coupling regime";
  return w;
}

double gap_width_stirling(double h, int N) {
  if (!(h > 0) || N < 1) throw DomainError("need h > 0 and N >= 1");
  return N * h * h / (2 * pi<double>()) * std::exp(2 * N * (1 - std::log(N * h)));
}

GeneralWidth general_width(double h, double u) {
  if (!(h > 0)) throw DomainError("h must be positive");
  if (std::abs(std::abs(u) - 1) < 1e-12) throw DomainError("du/da_0 is singular at u = +-1");
  GeneralWidth g;
  auto l = wkb::action_leading(u);
  g.exponent = 2 * pi<double>() / h * l.im_aD0;
  g.value = wkb::general_width_leading(h, u);
  g.condensation = g.exponent < 2;
  return g;
}

BarrierTop barrier_top(double h) {
  if (!(h > 0)) throw DomainError("h must be positive");
  const double x = 8 / (pi<double>() * h);
  return {x - 0.5, x, x - 0.25, x + 0.25, 1 - pi<double>() * h / 16, 1 + pi<double>() * h / 16};
}

double crossing_Q(int N, int sign) {
  double n = N + 0.25 * (sign >= 0 ? 1 : -1);
  return pi<double>() * pi<double>() / 16 * n * n;
}

Extended large_order_prediction(int N, int n) {
  if (N < 0 || n + 2 * N < 1) throw DomainError("invalid level or order");
  using std::pow;
  Extended nf = boost::math::tgamma(Extended(N + 1));
  return -pow(Extended(32), 2 * N + 1) / (pi<Extended>() * nf * nf) * boost::math::tgamma(Extended(n + 2 * N)) /
         pow(Extended(16), n + 2 * N);
}

Extended large_order_prediction_printed(int N, int n) {
  if (N < 0 || n < 0) throw DomainError("invalid level or order");
  using std::pow;
  Extended nf = boost::math::tgamma(Extended(N + 1));
  return -pow(Extended(2), 2 * N) / (pi<Extended>() * nf * nf) * boost::math::tgamma(Extended(n + 2 * N + 1)) /
         pow(Extended(16), n + 2 * N + 1);
}

}  // namespace mathieu::nonpert
