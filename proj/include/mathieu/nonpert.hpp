#pragma once

#include <mathieu/series.hpp>

#include <string>

namespace mathieu::nonpert {

/// Instanton action of the cosine potential.
inline constexpr int kInstantonAction = 8;

/// One-instanton fluctuation factor
///   P(h, B) = (1/h) du/dB exp[ 8 int_0^h dh'/h'^3 (du/dB - h' + B h'^2/8) ],
/// normalized to P(0, B) = 1, exact through h^order. Needs u_pert through h^{order+2}.
Series<Poly> p_inst(int order, const ProgressFn& progress = {});

/// Same construction from a given perturbative series u(h, B) (coefficients
/// polynomial in B). Throws StructuralError if the bracket is not O(h^3).
Series<Poly> p_inst_from(const Series<Poly>& u_pert, int order);

enum class WidthKind { Band, Gap };

struct WidthEstimate {
  double h = 0;
  int N = 0;
  WidthKind kind = WidthKind::Band;
  double leading = 0;
  double with_fluctuations = 0;
  int order_used = 0;
  std::string warning;  // empty inside the regime of validity
};

/// Width of band N for N h << 1:
///   (4 h/sqrt(2 pi)) (1/N!) (32/h)^{N+1/2} e^{-8/h} P(h, N + 1/2),
/// with P truncated at h^order (leading: P = 1).
WidthEstimate band_width(double h, int N, int order = 4);

/// Width of gap N >= 1 for N h >> 1:
///   (h^2/4) (2/h)^{2N} / (2^{N-1} (N-1)!)^2 * sum_{n < terms} beta_n(N) h^{-4n}
/// (leading: terms = 1). terms defaults to N.
WidthEstimate gap_width(double h, int N, int terms = -1);

/// Large-N form (N h^2/(2 pi)) (e/(N h))^{2N} of the leading gap width.
double gap_width_stirling(double h, int N);

struct GeneralWidth {
  double value = 0;
  double exponent = 0;        // (2 pi/h) Im a_0^D
  bool condensation = false;  // exponent < 2: the tunnelling factor is not small
};

/// (h/pi) (du/da_0) e^{-(2 pi/h) Im a_0^D}, valid below and above the barrier.
GeneralWidth general_width(double h, double u);

/// Barrier-top matching: the level values at which band centres, gap centres
/// and edges sit at u = 1 for a given h, and the edge splitting 1 -+ pi h/16.
struct BarrierTop {
  double band_center_N;   // N + 1/2 = 8/(pi h)
  double gap_center_N;    // N = 8/(pi h)
  double edge_plus_N;     // N + 1/4 = 8/(pi h): upper edge of gap N at u = 1
  double edge_minus_N;    // N - 1/4 = 8/(pi h): lower edge of gap N at u = 1
  double u_lower;         // 1 - pi h/16
  double u_upper;         // 1 + pi h/16
};
BarrierTop barrier_top(double h);

/// Q = 4/h^2 at which an edge of gap N sits at u = 1: (pi^2/16) (N + sign/4)^2,
/// sign = +1 for the upper edge, -1 for the lower one.
double crossing_Q(int N, int sign);

/// Leading large-order asymptote of the h^n coefficient of u_pert at level N:
///   -(32^{2N+1}/(pi (N!)^2)) Gamma(n + 2N)/16^{n+2N}.
Extended large_order_prediction(int N, int n);

/// The printed variant -(2^{2N}/(pi (N!)^2)) Gamma(n+2N+1)/16^{n+2N+1}, kept for comparison.
Extended large_order_prediction_printed(int N, int n);

}  // namespace mathieu::nonpert
