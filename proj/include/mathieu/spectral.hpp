#pragma once

#include <mathieu/series.hpp>
#include <mathieu/transseries.hpp>

#include <complex>
#include <utility>
#include <vector>

namespace mathieu::spectral {

// Conventions: -(h^2/2) psi'' + cos(x) psi = u psi, B = N + 1/2.
// Weak-coupling series are in "h"; strong-coupling edges are in "1/h".

/// Perturbative band centre u(h, B) = -1 + h B - (h^2/16)(B^2 + 1/4) - ..., exact through h^order,
/// from inverting sum_n h^{2n} a_n(u) = (h/2) B with the well-region action series.
Series<Poly> bs_invert_weak(int order, const ProgressFn& progress = {});

/// Same inversion at a fixed exact level value B; cheaper at high order.
Series<Rational> bs_invert_weak_at(const Rational& B, int order, const ProgressFn& progress = {});

/// Strong-coupling gap centre from sum_n h^{2n} a_n(u) = (h/2) N with the
/// high-region action series: u = (a^2/2) sum_k P_k(h^2) a^{-2k}, a = N h / 2.
struct StrongSeries {
  int s_order = 0;      // highest k
  int h2_order = 0;     // highest power of h^2 kept in each P_k
  Series<Poly> P;       // variable "1/a^2"; coefficients are polynomials in h^2

  /// Coefficient of h^{2j} a^{2-2k} in u.
  Rational coefficient(int j, int k) const;
  double evaluate(double h, double N) const;
};
StrongSeries bs_invert_strong(int s_order, int h2_order, const ProgressFn& progress = {});

/// Series of the gap-edge form in the variable x = 1/N^2: the coefficient of
/// (2/h)^{4 p} in (8/h^2) u, resummed over the h-expansion, through x^{terms}.
Series<Rational> strong_resummed_coefficient(const StrongSeries& s, int p);

/// Zinn-Justin-Jentschura functions, all as series in h with polynomial
/// coefficients (in B for *_of_B, in E for *_of_E). A_of_B and A_of_E start at
/// 16/h.
struct ZjjFunctions {
  Series<Poly> E_of_B;
  Series<Poly> B_of_E;
  Series<Poly> A_of_B;
  Series<Poly> A_of_E;
};

/// order: highest power of h in E_of_B and B_of_E.
ZjjFunctions zjj_construct(int order, const ProgressFn& progress = {});

/// A(h, B) from dA/dh = -(16/h^2) dE/dB - 2B/h with zero h^0 term. The output is
/// exact through h^{order(E_of_B) - 1}. Throws StructuralError if the 1/h term
/// of the integrand does not cancel.
Series<Poly> zjj_A_from_E(const Series<Poly>& E_of_B);

/// Left side minus right side of the exact quantization condition, multiplied
/// by (32/h)^B e^{-A/2}:
///   Gamma(1/2+B) cos(pi B)/pi + e^{-+ i pi B} e^{-A}/Gamma(1/2+B) - (2 cos theta/sqrt(2 pi)) (32/h)^B e^{-A/2},
/// with (-1)^{-B} continued from above (Above) or below (Below). A and B are the
/// truncated series evaluated at (h, E) with terms through h^order.
std::complex<double> zjj_condition(const ZjjFunctions& f, double h, double E, double cos_theta, LateralBranch branch,
                                   int order);

struct ZjjEdge {
  double u = 0;             // -1 + h E
  double E = 0;
  double uncertainty = 0;   // |u(order) - u(order - 1)|
  double ambiguity = 0;     // size of the branch-dependent imaginary part at the root, in u units
};

/// Root of the real part of the condition nearest the perturbative level N for
/// Bloch angle theta (cos_theta = +1 or -1). Throws ConvergenceError if no root
/// is bracketed, or if `tolerance` > 0 and the uncertainty exceeds it.
ZjjEdge zjj_quantization_solve(const ZjjFunctions& f, double h, int N, double cos_theta, double tolerance = 0);

/// Parity classes of the Fourier recurrence for y'' + (a - 2 q cos 2z) y = 0.
enum class FourierClass { CosEven, CosOdd, SinOdd, SinEven };

/// Characteristic value of index n (a_n for cosine classes, b_n for sine) as an
/// exact power series in q through q^order.
Series<Rational> characteristic_series(int n, bool sine, int order);

/// Strong-coupling gap edges u_N^- = (h^2/8) b_N(4/h^2) and u_N^+ = (h^2/8) a_N(4/h^2),
/// as series in 1/h with low power -2, through q^order. For N = 0 both entries
/// hold u_0 = (h^2/8) a_0.
std::pair<Series<Rational>, Series<Rational>> gap_edge_series(int N, int order);

/// alpha_n(N), beta_n(N) for n < count (count defaults to N) from
///   u^{+-} = (h^2 N^2/8) sum alpha_n h^{-4n} +- (h^2/8) (2/h)^{2N}/(2^{N-1}(N-1)!)^2 sum beta_n h^{-4n}.
/// Throws StructuralError if the splitting starts below (2/h)^{2N} or has odd offsets.
std::pair<std::vector<Rational>, std::vector<Rational>> alphabeta_extract(int N, int count = -1);

}  // namespace mathieu::spectral
