#pragma once

#include <mathieu/series.hpp>
#include <mathieu/series_json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mathieu::benderwu {

/// Potential as a Taylor series about a harmonic minimum at x = 0:
/// V(x) = sum_k taylor[k] x^k, with taylor[1] = 0 and sqrt(2 taylor[2]) rational.
struct PotentialSeries {
  std::string name;
  std::vector<Rational> taylor;
  std::optional<Rational> m;
  bool polynomial = false;  // taylor is the complete potential; higher terms are zero
};

/// cos x about its minimum x = pi: V = -cos y.
PotentialSeries mathieu_well(int degree);

/// sd^2(x | m) / 2 about x = 0. With -(h^2/2) d^2 + V, the ground state energy
/// is h/2 times the Lame energy for kinetic term xdot^2/4 and potential
/// (1/h) sd^2(sqrt(h) x | m); see lame_series.
PotentialSeries lame_well(const Rational& m, int degree);

/// {"name": ..., "taylor": [[num, den], ...], "m": [num, den] (optional), "polynomial": bool (optional)}
PotentialSeries potential_from_json(const Json& j);
Json potential_to_json(const PotentialSeries& v);

/// Rayleigh-Schroedinger energy of level N for -(h^2/2) psi'' + V psi = E psi,
/// exact through h^order, by the polynomial-times-Gaussian recursion in
/// x = sqrt(h) y.
Series<Rational> rs_series(const PotentialSeries& v, int N, int order, const ProgressFn& progress = {});

/// Each h^k coefficient of rs_series as an exact polynomial in B = N + 1/2,
/// interpolated from levels N = 0..order+1 and verified on one extra level.
Series<Poly> polynomial_in_N(const PotentialSeries& v, int order, const ProgressFn& progress = {});

/// Ground state of the Lame problem in its own normalization:
/// E(h | m) = 1 + O(h), where H = p^2 + (1/h) sd^2(sqrt(h) x | m).
Series<Rational> lame_series(const Rational& m, int order);

enum class FitModel { SingleAction, TwoAction };

/// Result of a large-order analysis of c_n ~ K Gamma(n + b) / S^{n + b}.
/// For the single-action model `action` is signed: negative means the
/// coefficients alternate. For the two-action model the even subsequence is
/// used and `action` is the common modulus |S|.
struct LargeOrderFit {
  double action = 0;
  double action_error = 0;   // spread between the last two Richardson estimates
  int richardson_order = 0;
  bool odd_vanish = false;   // every odd coefficient is exactly zero
  bool alternating = false;
  std::vector<double> raw;   // unaccelerated action estimates
};

LargeOrderFit large_order_fit(const std::vector<Rational>& coeffs, FitModel model, int richardson_order = 4);

}  // namespace mathieu::benderwu
