#pragma once

#include <mathieu/series.hpp>

#include <array>
#include <complex>
#include <map>
#include <vector>

namespace mathieu::wkb {

// WKB periods of the cosine potential V(x) = cos x with -(h^2/2) psi'' + V psi = u psi.
//
// a(h, u) = sum_n h^{2n} a_n(u) is the perturbative ("electric") period, a^D
// the tunnelling ("dual") period. Orientation: Im a_0^D >= 0 for every u >= -1,
// so tunnelling factors read exp(-(2 pi / h) Im a^D). With this orientation the
// Wronskian a_0 a_0^D' - a_0^D a_0' equals -2i/pi below the barrier.

/// Leading periods and their u-derivatives. a^D is purely imaginary for real
/// u >= -1; only its imaginary part is stored.
struct LeadingAction {
  double u;
  double a0, a0_du;
  double im_aD0, im_aD0_du;
  std::complex<double> aD0() const { return {0.0, im_aD0}; }
};

LeadingAction action_leading(double u);

/// (u, [a_0, a_1, a_2], [a_0^D, a_1^D, a_2^D]).
struct ActionValue {
  double u;
  std::array<double, 3> a;
  std::array<std::complex<double>, 3> aD;
};

/// a_n and a_n^D for n <= 2 on -1 < u < 1. a_1, a_2 use the closed
/// elliptic forms; a_n^D is obtained from a_0^D by the order-raising operators.
ActionValue action_higher(double u);

/// The closed elliptic form of a_n (n = 1, 2) on -1 < u < 1.
double action_closed_form(int n, double u);

/// Apply the order-raising differential operator for a_n (n = 1, 2) to a
/// solution y of the Picard-Fuchs equation y'' = y / (4 (1 - u^2)), given y and y'.
double apply_order_operator(int n, double u, double y, double y_du);

/// a_0 a_0^D' - a_0^D a_0' - (-2i/pi); vanishes below the barrier.
std::complex<double> wronskian_defect(double u);

/// Residual of y'' - y/(4(1-u^2)) for a_0 and Im a_0^D by central differences.
std::array<double, 2> picard_fuchs_residual(double u, double step = 1e-4);

/// (h/pi) (du/da_0) exp(-(2 pi/h) Im a_0^D): leading band width below the barrier
/// and gap width above it.
double general_width_leading(double h, double u);

enum class Region { Well, High, Top };

/// Exact expansion of one WKB period coefficient a_n(u) in a region.
///
///   Well: a_n = sum_k c_k (u+1)^k
///   High: a_n = sqrt(2u) sum_k c_k u^{-k}
///   Top : a_0 = (1/pi) sum_k (c_k + d_k L) (u-1)^k,  L = ln(32/|u-1|)
struct ActionSeries {
  Region region;
  int wkb_order;
  Series<Rational> coeffs;
  Series<Rational> log_coeffs;  // Top region only

  double evaluate(double u) const;
};

/// Well-region series of a_n to (u+1)^order via the all-orders WKB recursion.
ActionSeries well_series(int n, int order);

/// Well-region a_0 from the hypergeometric expansion of the elliptic closed form.
ActionSeries well_series_a0_elliptic(int order);

/// Apply the order-raising operator for a_n (n = 1, 2) to a well-region a_0 series.
ActionSeries well_series_by_operator(int n, const ActionSeries& a0);

/// High-region (u >> 1) series of a_n to u^{-order}.
ActionSeries high_series(int n, int order);

/// Top-region (u near 1) series of a_0 to (u-1)^order, including the log terms.
ActionSeries top_series(int order);

/// Integrands of the WKB recursion. Term e holds Q^{e/2} (A(u) + Q' B(u)) with
/// Q = 2(u - V); exposed for testing the total-derivative structure.
struct RecursionTerm {
  Poly even, odd;
};
std::vector<std::map<int, RecursionTerm>> wkb_recursion(int max_order);

}  // namespace mathieu::wkb
