#pragma once

#include <mathieu/benderwu.hpp>
#include <mathieu/series_json.hpp>

#include <complex>
#include <vector>

namespace mathieu::zerodim {

// Exponential integrals I(h) = int dz exp(-f(z)/h) in one dimension and the
// fluctuation series about their saddles.

/// Fluctuation series about one saddle z_s of f:
///   (1/sqrt(h pi)) int dz e^{-f/h} ~ e^{-S/h} (1/sqrt(f2)) sum_r T_r h^r,  T_0 = 1,
/// with S = f(z_s) and f2 = f''(z_s)/2. For f2 < 0 the prefactor is imaginary;
/// the real coefficients a_r = T_r / sqrt|f2| are returned by coefficient().
struct SaddleExpansion {
  std::complex<double> location;
  Rational action;            // S
  Rational curvature;         // f2
  std::vector<Rational> T;    // normalized coefficients, T[0] = 1

  double prefactor() const;   // 1/sqrt|f2|
  double coefficient(int r) const { return prefactor() * to_double(T.at(r)); }
};

/// Gaussian-moment expansion about a non-degenerate saddle. `f` holds the
/// Taylor coefficients of the exponent about the saddle (taylor[1] = 0,
/// taylor[2] != 0) and needs degree >= 2 order + 2 unless it is polynomial.
SaddleExpansion saddle_series(const benderwu::PotentialSeries& f, int order, std::complex<double> location = 0);

/// Exponents about the saddles of sin^2 z (vacuum z = 0 and z = pi/2) and of
/// sd^2(z | m) (vacuum, real saddle K(m), imaginary saddle i K(1-m)).
benderwu::PotentialSeries sin2_about(int saddle, int degree);
benderwu::PotentialSeries lame_about(int saddle, const Rational& m, int degree);

/// All three Lame saddle expansions through h^order. For m = 0 the imaginary
/// saddle is absent and for m = 1 the real one; the missing entry has T empty.
struct LameSaddles {
  Rational m;
  SaddleExpansion vacuum, real, imag;
  bool has_real() const { return !real.T.empty(); }
  bool has_imag() const { return !imag.T.empty(); }
};
LameSaddles lame_saddles(const Rational& m, int order);

/// Actions of the real and imaginary saddles: S1 = 1/(1-m), S2 = -1/m.
Rational action_real(const Rational& m);
Rational action_imag(const Rational& m);

/// (1/sqrt(h pi)) int_{-K}^{K} exp(-sd^2(z|m)/h) dz by adaptive Gauss-Kronrod
/// quadrature; m = 1 integrates sinh^2 over the real line. Throws
/// ConvergenceError if the error estimate exceeds 1e-12.
double z_quadrature(double h, double m);

/// One row of the coefficient relation
///   a0_n = sum_{j <= j_max, j < n} ((n-j-1)!/pi) (a1_j/S1^{n-j} + a2_j/S2^{n-j}).
/// rel_defect is |lhs - rhs| / scale with scale the larger of |lhs| and the
/// magnitude of the leading single-saddle term, so interfering cases are
/// measured against the size of what cancels.
struct RelationRow {
  double m = 0;
  int n = 0;
  double lhs = 0, rhs = 0, rel_defect = 0;
};

std::vector<RelationRow> berry_howls_check(const LameSaddles& s, int n_max, int j_max);

/// Largest rel_defect over n in [n_lo, n_hi].
double exact_relation_check(const LameSaddles& s, int n_lo, int n_hi, int j_max);

/// Borel-type evaluation of the vacuum partition function from the saddle
/// series, principal value at the pole on the real-saddle ray:
///   Z(h) = 1 + sum_k sum_j (a_j^(k)/pi) h^j e^{-S_k/h} Ei(S_k/h),
/// with each saddle series cut at its smallest term. The lateral sums differ
/// by +-i * imag_ambiguity.
struct BorelRow {
  double h = 0;
  double quadrature = 0;
  double principal_value = 0;
  double imag_ambiguity = 0;
  double abs_error = 0;
  double two_instanton_bound = 0;  // e^{-(S1 + |S2|)/h}
  int terms_real = 0, terms_imag = 0, terms_vacuum = 0;
};
std::vector<BorelRow> borel_lateral_check(const LameSaddles& s, const std::vector<double>& hs);

/// Least-squares slope of ln|abs_error| against 1/h: minus the effective action.
double error_action_fit(const std::vector<BorelRow>& rows);

Json to_json(const RelationRow& r);
Json to_json(const BorelRow& r);

}  // namespace mathieu::zerodim
