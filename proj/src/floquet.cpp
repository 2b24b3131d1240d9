#include <mathieu/errors.hpp>
#include <mathieu/floquet.hpp>

#include <Eigen/Eigenvalues>
#include <boost/math/constants/constants.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

namespace mathieu::floquet {

namespace {

using boost::math::constants::pi;

constexpr int kMaxTruncation = 4096;

/// One parity block of the Hill operator. Bloch momentum 0 uses cos(n x)
/// (n = 0..M) and sin(n x) (n = 1..M); momentum 1/2 uses cos((n+1/2) x) and
/// sin((n+1/2) x) (n = 0..M-1). Diagonal: (h^2/2) k^2 + shift * lambda/2;
/// off-diagonal: (lambda/2) sqrt(weight). Splitting by parity removes the exact
/// degeneracies of the full Fourier matrix. The extended tier forms the entries
/// in extended precision so all blocks see the same operator.
struct Tridiagonal {
  double hbar = 1;
  double lambda = 1;
  std::vector<double> k2;
  std::vector<int> shift;
  std::vector<int> weight;  // size k2.size() - 1
  double diag(std::size_t i) const { return hbar * hbar / 2 * k2[i] + shift[i] * lambda / 2; }
  double off(std::size_t i) const { return lambda / 2 * std::sqrt(static_cast<double>(weight[i])); }
  Extended diag_ext(std::size_t i) const {
    return Extended(hbar) * Extended(hbar) / 2 * k2[i] + Extended(shift[i]) * Extended(lambda) / 2;
  }
  Extended off2_ext(std::size_t i) const { return Extended(lambda) * Extended(lambda) / 4 * weight[i]; }
  double norm() const { return hbar * hbar / 2 * k2.back() + 2 * std::abs(lambda); }
};

std::vector<Tridiagonal> hill_blocks(double hbar, double lambda, int M) {
  std::vector<Tridiagonal> blocks;
  auto make = [&](bool half, bool odd) {
    Tridiagonal t;
    t.hbar = hbar;
    t.lambda = lambda;
    int first = (!half && odd) ? 1 : 0;
    int last = half ? M - 1 : M;
    for (int n = first; n <= last; ++n) {
      double k = half ? n + 0.5 : n;
      t.k2.push_back(k * k);
      t.shift.push_back(half && n == 0 ? (odd ? -1 : 1) : 0);
      if (n < last) t.weight.push_back(!half && !odd && n == 0 ? 2 : 1);
    }
    blocks.push_back(std::move(t));
  };
  for (bool half : {false, true})
    for (bool odd : {false, true}) make(half, odd);
  return blocks;
}

std::vector<double> eigen_double(const Tridiagonal& t, int count) {
  const int n = static_cast<int>(t.k2.size());
  Eigen::VectorXd d(n), e(std::max(n - 1, 0));
  for (int i = 0; i < n; ++i) d[i] = t.diag(i);
  for (int i = 0; i + 1 < n; ++i) e[i] = t.off(i);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("tridiagonal eigenvalue iteration failed");
  std::vector<double> v(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  v.resize(std::min(count, n));
  return v;
}

/// Number of eigenvalues below x (Sturm sequence of the LDL^T pivots).
int sturm_count(const std::vector<Extended>& diag, const Extended& x, const std::vector<Extended>& off2) {
  int neg = 0;
  Extended d = 0;
  const Extended tiny = std::numeric_limits<Extended>::min() * 1e10;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    d = diag[i] - x - (i == 0 ? Extended(0) : off2[i - 1] / d);
    if (d == 0) d = -tiny;
    if (d < 0) ++neg;
  }
  return neg;
}

/// Lowest `count` eigenvalues by bisection in extended precision, seeded by the
/// double-precision values.
std::vector<Extended> eigen_extended(const Tridiagonal& t, int count) {
  auto seeds = eigen_double(t, count);
  std::vector<Extended> diag, off2;
  for (std::size_t i = 0; i < t.k2.size(); ++i) diag.push_back(t.diag_ext(i));
  for (std::size_t i = 0; i + 1 < t.k2.size(); ++i) off2.push_back(t.off2_ext(i));
  const double pad = 64 * std::numeric_limits<double>::epsilon() * t.norm() + 1e-300;
  const Extended target = Extended(1e-45) * (1 + Extended(t.norm()));
  std::vector<Extended> out;
  for (int j = 0; j < static_cast<int>(seeds.size()); ++j) {
    // smallest x with sturm_count(x) > j
    Extended lo = seeds[j] - pad, hi = seeds[j] + pad;
    if (sturm_count(diag, lo, off2) > j || sturm_count(diag, hi, off2) <= j) {
      lo = -Extended(t.norm()) - 1;
      hi = Extended(t.norm()) + 1;
    }
    while (hi - lo > target) {
      Extended mid = (lo + hi) / 2;
      if (sturm_count(diag, mid, off2) > j)
        hi = mid;
      else
        lo = mid;
    }
    out.push_back((lo + hi) / 2);
  }
  return out;
}

std::vector<Extended> merged_values(double hbar, double lambda, int M, int count, Tier tier) {
  const int per = count / 2 + 2;
  std::vector<Extended> all;
  for (const auto& t : hill_blocks(hbar, lambda, M)) {
    if (tier == Tier::Double) {
      for (double v : eigen_double(t, per)) all.emplace_back(v);
    } else {
      for (auto& v : eigen_extended(t, per)) all.push_back(v);
    }
  }
  std::sort(all.begin(), all.end());
  if (static_cast<int>(all.size()) < count) throw DomainError("truncation too small for the requested number of edges");
  all.resize(count);
  return all;
}

double rounding_bound(double hbar, double lambda, int M, Tier tier) {
  double norm = hbar * hbar / 2 * M * M + std::abs(lambda);
  return (tier == Tier::Double ? 8 * std::numeric_limits<double>::epsilon() : 1e-44) * norm;
}

int initial_truncation(int count, double hbar) {
  return std::max(8, count / 2 + 10 + static_cast<int>(std::ceil(8 / hbar)));
}

}  // namespace

Spectrum spectrum(int count, const HillConfig& cfg) {
  if (count < 1) throw DomainError("need at least one edge");
  if (!(cfg.hbar > 0)) throw DomainError("hbar must be positive");
  if (cfg.truncation != 0 && cfg.truncation < 8) throw DomainError("truncation must be at least 8");
  const double tol = cfg.tier == Tier::Double ? 1e-13 : 1e-35;
  int M = cfg.truncation != 0 ? cfg.truncation : initial_truncation(count, cfg.hbar);
  const bool fixed = cfg.truncation != 0;
  while (true) {
    auto coarse = merged_values(cfg.hbar, cfg.lambda, std::max(M / 2, count / 2 + 2), count, cfg.tier);
    auto fine = merged_values(cfg.hbar, cfg.lambda, M, count, cfg.tier);
    Spectrum s;
    s.truncation = M;
    s.tier = cfg.tier;
    s.values = fine;
    double worst = 0;
    const double round = rounding_bound(cfg.hbar, cfg.lambda, M, cfg.tier);
    for (int i = 0; i < count; ++i) {
      double diff = static_cast<double>(abs(fine[i] - coarse[i]));
      double scale = 1 + std::abs(static_cast<double>(fine[i]));
      worst = std::max(worst, diff / scale);
      s.errors.push_back(diff + round);
    }
    if (fixed || worst <= tol) return s;
    M *= 2;
    if (M > kMaxTruncation) throw ConvergenceError("band edges did not converge under truncation doubling");
  }
}

std::vector<SpectralPoint> band_edges(int n_max, const HillConfig& cfg) {
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  auto s = spectrum(2 * n_max + 2, cfg);
  std::vector<SpectralPoint> out;
  for (int i = 0; i < 2 * n_max + 2; ++i) {
    SpectralPoint p;
    p.hbar = cfg.hbar;
    p.N = i / 2;
    p.edge = i % 2 == 0 ? EdgeKind::Bottom : EdgeKind::Top;
    p.u = static_cast<double>(s.values[i]);
    p.err = s.errors[i];
    double rel = p.err / (std::abs(p.u) + 1e-300);
    p.converged_digits = rel <= 0 ? 17 : std::clamp(static_cast<int>(std::floor(-std::log10(rel))), 0, 17);
    out.push_back(p);
  }
  return out;
}

double discriminant(double u, const HillConfig& cfg, double tol) {
  namespace odeint = boost::numeric::odeint;
  if (!(cfg.hbar > 0)) throw DomainError("hbar must be positive");
  using State = std::array<double, 4>;
  const double c = 2 / (cfg.hbar * cfg.hbar);
  auto rhs = [&](const State& y, State& dy, double x) {
    double w = c * (cfg.lambda * std::cos(x) - u);
    dy[0] = y[1];
    dy[1] = w * y[0];
    dy[2] = y[3];
    dy[3] = w * y[2];
  };
  State y{1, 0, 0, 1};
  auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<State>());
  std::size_t steps = odeint::integrate_adaptive(stepper, rhs, y, -pi<double>(), pi<double>(), 1e-3);
  if (steps > 1000000 || !std::isfinite(y[0]) || !std::isfinite(y[3]))
    throw ConvergenceError("monodromy integration failed");
  return (y[0] + y[3]) / 2;
}

double discriminant_root(double lo, double hi, int target, const HillConfig& cfg) {
  if (target != 1 && target != -1) throw DomainError("target must be +1 or -1");
  auto f = [&](double u) { return discriminant(u, cfg) - target; };
  double flo = f(lo), fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0)) throw DomainError("discriminant bracket has no sign change");
  boost::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(48), iters);
  if (iters >= 200) throw ConvergenceError("discriminant root did not converge");
  return (r.first + r.second) / 2;
}

NumericWidth width_num(double hbar, int N, WidthKind kind, double lambda) {
  if (N < 0 || (kind == WidthKind::Gap && N < 1)) throw DomainError("invalid band or gap label");
  const int lo_idx = kind == WidthKind::Band ? 2 * N : 2 * N - 1;
  auto compute = [&](Tier tier) {
    HillConfig cfg{hbar, lambda, 0, tier};
    auto s = spectrum(lo_idx + 2, cfg);
    NumericWidth w;
    w.tier = tier;
    w.value = static_cast<double>(s.values[lo_idx + 1] - s.values[lo_idx]);
    w.error = s.errors[lo_idx] + s.errors[lo_idx + 1];
    w.resolved = w.value > w.error;
    return w;
  };
  auto w = compute(Tier::Double);
  if (w.value < 1e-8 || w.value < 1e3 * w.error) w = compute(Tier::Extended);
  return w;
}

namespace {

template <class F>
auto parallel_map(std::size_t n, F f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<R> out(n);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) out[i] = f(i);
    }));
  for (auto& j : jobs) j.get();
  return out;
}

void check_monotone(const std::vector<double>& g) {
  if (g.empty()) throw DomainError("empty grid");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] > 0)) throw DomainError("grid values must be positive");
    if (i > 0 && !(g[i] > g[i - 1])) throw DomainError("grid must be strictly increasing");
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

Dataset figure_bands_vs_hbar(const std::vector<double>& hbar_grid, int bands) {
  check_monotone(hbar_grid);
  if (bands < 1) throw DomainError("need at least one band");
  auto per_point = parallel_map(hbar_grid.size(), [&](std::size_t i) {
    double h = hbar_grid[i];
    auto s = spectrum(2 * bands, HillConfig{h, 1, 0, Tier::Double});
    std::vector<DataRow> rows;
    for (int j = 0; j < 2 * bands; ++j)
      rows.push_back({h, 4 / (h * h), j / 2, j % 2 == 0 ? "bottom" : "top", static_cast<double>(s.values[j]), s.errors[j]});
    return rows;
  });
  Dataset d;
  d.metadata = {{"figure", "band edges vs hbar"}, {"potential_min", "-1"}, {"potential_max", "1"}, {"bands", std::to_string(bands)}};
  for (auto& r : per_point) d.rows.insert(d.rows.end(), r.begin(), r.end());
  return d;
}

Dataset figure_barrier_top(const std::vector<double>& Q_grid, double window) {
  check_monotone(Q_grid);
  if (!(window > 0)) throw DomainError("window must be positive");
  auto per_point = parallel_map(Q_grid.size(), [&](std::size_t i) {
    double Q = Q_grid[i], h = 2 / std::sqrt(Q);
    int bands = static_cast<int>(std::ceil(2 * std::sqrt(2 * (1 + window)) / h)) + 3;
    auto s = spectrum(2 * bands, HillConfig{h, 1, 0, Tier::Double});
    std::vector<DataRow> rows;
    for (int j = 0; j < 2 * bands; ++j) {
      double u = static_cast<double>(s.values[j]);
      if (std::abs(u - 1) <= window) rows.push_back({h, Q, j / 2, j % 2 == 0 ? "bottom" : "top", u, s.errors[j]});
    }
    rows.push_back({h, Q, -1, "guide_upper", 1 + pi<double>() * h / 16, 0});
    rows.push_back({h, Q, -1, "guide_lower", 1 - pi<double>() * h / 16, 0});
    return rows;
  });
  Dataset d;
  d.metadata = {{"figure", "band edges vs Q near u = 1"}, {"barrier_top", "1"}};
  const double c = pi<double>() * pi<double>() / 16;
  for (int N = 1;; ++N) {
    double lo = c * (N - 0.25) * (N - 0.25), hi = c * (N + 0.25) * (N + 0.25);
    if (lo > Q_grid.back()) break;
    if (hi < Q_grid.front()) continue;
    d.metadata.push_back({"vertical_N" + std::to_string(N), fmt(lo) + " " + fmt(hi)});
  }
  for (auto& r : per_point) d.rows.insert(d.rows.end(), r.begin(), r.end());
  return d;
}

void write_csv(std::ostream& os, const Dataset& d) {
  for (const auto& [k, v] : d.metadata) os << "# " << k << ": " << v << "\n";
  os << "hbar,Q,N,edge,u,err\n";
  for (const auto& r : d.rows)
    os << fmt(r.hbar) << ',' << fmt(r.Q) << ',' << r.N << ',' << r.edge << ',' << fmt(r.u) << ',' << fmt(r.err) << "\n";
}

void write_json(std::ostream& os, const Dataset& d) {
  // Numbers are emitted by hand so they carry 17 significant digits like the CSV.
  os << "{\"metadata\":{";
  for (std::size_t i = 0; i < d.metadata.size(); ++i)
    os << (i ? "," : "") << nlohmann::json(d.metadata[i].first).dump() << ":" << nlohmann::json(d.metadata[i].second).dump();
  os << "},\"rows\":[";
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    const auto& r = d.rows[i];
    os << (i ? "," : "") << "{\"hbar\":" << fmt(r.hbar) << ",\"Q\":" << fmt(r.Q) << ",\"N\":" << r.N
       << ",\"edge\":" << nlohmann::json(r.edge).dump() << ",\"u\":" << fmt(r.u) << ",\"err\":" << fmt(r.err) << "}";
  }
  os << "]}\n";
}

double crossing_Q_numeric(int index, double Q_lo, double Q_hi) {
  if (index < 0 || !(Q_lo > 0) || !(Q_hi > Q_lo)) throw DomainError("invalid crossing search");
  auto f = [&](double Q) {
    auto s = spectrum(index + 1, HillConfig{2 / std::sqrt(Q), 1, 0, Tier::Double});
    return static_cast<double>(s.values[index]) - 1;
  };
  double flo = f(Q_lo), fhi = f(Q_hi);
  if ((flo > 0) == (fhi > 0)) throw DomainError("edge does not cross u = 1 in the Q range");
  boost::uintmax_t iters = 100;
  auto r = boost::math::tools::toms748_solve(f, Q_lo, Q_hi, flo, fhi, boost::math::tools::eps_tolerance<double>(40), iters);
  return (r.first + r.second) / 2;
}

}  // namespace mathieu::floquet
