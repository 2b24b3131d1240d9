#pragma once

#include <mathieu/rational.hpp>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace mathieu::floquet {

// Numerical reference spectrum of -(h^2/2) psi'' + lambda cos(x) psi = u psi.
//
// The sorted band-edge values s_0 <= s_1 <= ... are the union of the periodic
// (Bloch momentum 0) and antiperiodic (momentum 1/2) eigenvalues. Band N is
// [s_{2N}, s_{2N+1}], gap N >= 1 is [s_{2N-1}, s_{2N}].

enum class Tier { Double, Extended };

struct HillConfig {
  double hbar = 1;
  double lambda = 1;    // 0 switches the potential off
  int truncation = 0;   // Fourier modes -M..M; 0 picks M adaptively
  Tier tier = Tier::Double;
};

enum class EdgeKind { Bottom, Top };

struct SpectralPoint {
  double hbar = 0;
  int N = 0;
  EdgeKind edge = EdgeKind::Bottom;
  double u = 0;
  double err = 0;            // truncation estimate |u(M) - u(M/2)| plus rounding
  int converged_digits = 0;
};

/// Sorted edges s_0..s_{count-1} with per-value error estimates.
struct Spectrum {
  std::vector<Extended> values;
  std::vector<double> errors;
  int truncation = 0;
  Tier tier = Tier::Double;
};

/// Lowest `count` band-edge values. Doubles M until successive truncations agree
/// to the tier's working precision; throws ConvergenceError past M = 4096.
Spectrum spectrum(int count, const HillConfig& cfg);

/// Band edges of bands 0..n_max, labelled.
std::vector<SpectralPoint> band_edges(int n_max, const HillConfig& cfg);

/// cos(theta) = (psi_1(pi) + psi_2'(pi))/2 for the fundamental system at x = -pi,
/// integrated with an adaptive Runge-Kutta-Fehlberg 7(8) stepper at `tol`.
double discriminant(double u, const HillConfig& cfg, double tol = 1e-13);

/// Root of discriminant(u) = target (+1 or -1) in [lo, hi]; the bracket must
/// contain a sign change.
double discriminant_root(double lo, double hi, int target, const HillConfig& cfg);

enum class WidthKind { Band, Gap };

struct NumericWidth {
  double value = 0;
  double error = 0;
  Tier tier = Tier::Double;
  bool resolved = true;  // false when the width is not above its error bound
};

/// Width of band N or gap N >= 1. Switches to the extended tier when the
/// double-precision width is below 1e-8 or not resolved.
NumericWidth width_num(double hbar, int N, WidthKind kind, double lambda = 1);

/// One row of the band-edge datasets: `hbar,Q,N,edge,u,err`.
struct DataRow {
  double hbar = 0;
  double Q = 0;
  int N = 0;
  std::string edge;  // "bottom", "top", or "guide_upper"/"guide_lower" for the 1 +- pi h/16 curves
  double u = 0;
  double err = 0;
};

struct Dataset {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<DataRow> rows;
};

/// Band edges of the first `bands` bands at each h of a monotone grid, with the
/// potential extrema u = -1, 1 recorded in the metadata.
Dataset figure_bands_vs_hbar(const std::vector<double>& hbar_grid, int bands = 20);

/// Band edges near u = 1 over a monotone grid in Q = 4/h^2, keeping edges in
/// [1 - window, 1 + window]. Adds the curves 1 +- pi h/16 as guide rows and the
/// verticals (pi^2/16)(N +- 1/4)^2 inside the grid range as metadata.
Dataset figure_barrier_top(const std::vector<double>& Q_grid, double window = 0.5);

void write_csv(std::ostream& os, const Dataset& d);
void write_json(std::ostream& os, const Dataset& d);

/// Q at which the sorted edge s_index crosses u = 1, searched in [Q_lo, Q_hi].
double crossing_Q_numeric(int index, double Q_lo, double Q_hi);

}  // namespace mathieu::floquet
