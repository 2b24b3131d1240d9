// Command-line front end: coefficient tables, spectra, width comparisons and
// plot-ready datasets as CSV or JSON.

#include <mathieu/benderwu.hpp>
#include <mathieu/errors.hpp>
#include <mathieu/floquet.hpp>
#include <mathieu/nonpert.hpp>
#include <mathieu/series_json.hpp>
#include <mathieu/spectral.hpp>
#include <mathieu/wkb.hpp>
#include <mathieu/zerodim.hpp>

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <variant>

#include <unistd.h>

#ifndef MATHIEU_VERSION
#define MATHIEU_VERSION "0.0.0"
#endif

using namespace mathieu;

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitUsage = 64;

// ---------------------------------------------------------------- output

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

using Cell = std::variant<std::string, double, long long>;

struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> r) { rows.push_back(std::move(r)); }
};

std::string cell_text(const Cell& c) {
  if (auto s = std::get_if<std::string>(&c)) return *s;
  if (auto d = std::get_if<double>(&c)) return format_double(*d);
  return std::to_string(std::get<long long>(c));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

void write_table_csv(std::ostream& os, const Table& t) {
  for (const auto& [k, v] : t.metadata) os << "# " << k << ": " << v << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(cell_text(r[i]));
    os << "\n";
  }
}

// Numbers are emitted with 17 significant digits, the same text as the CSV.
void write_table_json(std::ostream& os, const Table& t) {
  os << "{\n  \"metadata\": {";
  for (std::size_t i = 0; i < t.metadata.size(); ++i)
    os << (i ? ",\n    " : "\n    ") << Json(t.metadata[i].first).dump() << ": " << Json(t.metadata[i].second).dump();
  os << "\n  },\n  \"columns\": " << Json(t.columns).dump() << ",\n  \"rows\": [";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << (r ? ",\n    [" : "\n    [");
    for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
      const Cell& c = t.rows[r][i];
      os << (i ? ", " : "");
      if (auto s = std::get_if<std::string>(&c)) {
        os << Json(*s).dump();
      } else if (auto d = std::get_if<double>(&c)) {
        os << (std::isfinite(*d) ? format_double(*d) : std::string("null"));
      } else {
        os << std::get<long long>(c);
      }
    }
    os << "]";
  }
  os << "\n  ]\n}\n";
}

void write_table_pretty(std::ostream& os, const Table& t) {
  for (const auto& [k, v] : t.metadata) os << k << ": " << v << "\n";
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
  for (const auto& r : t.rows)
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], cell_text(r[i]).size());
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << cells[i];
    os << "\n";
  };
  line(t.columns);
  for (const auto& r : t.rows) {
    std::vector<std::string> cells;
    for (const auto& c : r) cells.push_back(cell_text(c));
    line(cells);
  }
}

// ---------------------------------------------------------------- config

/// Global options shared by every subcommand.
struct GlobalOptions {
  std::string format = "csv";
  std::string output;
  std::string precision = "double";
  bool pretty = false;
};

/// FNV-1a 64-bit hash of a string.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

/// Canonical "key=value;..." text of every option of a subcommand, defaults
/// included, in declaration order.
std::string canonical_config(const CLI::App& sub, const GlobalOptions& g) {
  std::string out = sub.get_name();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_name() == "--help") continue;
    std::string value;
    for (const auto& r : opt->results()) value += (value.empty() ? "" : " ") + r;
    if (value.empty()) value = opt->get_default_str();
    if (opt->get_type_size() == 0 && value.empty()) value = opt->count() ? "true" : "false";
    out += ";" + opt->get_name() + "=" + value;
  }
  out += ";format=" + g.format + ";precision=" + g.precision;
  return out;
}

void stamp(Table& t, const std::string& config, const std::string& truncation, const std::string& precision) {
  t.metadata.insert(t.metadata.begin(), {{"version", MATHIEU_VERSION},
                                         {"config", config},
                                         {"config_hash", hex(fnv1a(config))},
                                         {"truncation", truncation},
                                         {"precision", precision}});
}

// ---------------------------------------------------------------- cache

/// Content-addressed cache for exact series under $MATHIEU_CACHE_DIR.
Json cached(const std::string& key, const std::function<Json()>& compute) {
  const char* dir = std::getenv("MATHIEU_CACHE_DIR");
  if (!dir || !*dir) return compute();
  namespace fs = std::filesystem;
  fs::path path = fs::path(dir) / (hex(fnv1a(key)) + ".json");
  if (std::ifstream in{path}) {
    try {
      Json j = Json::parse(in);
      if (j.value("key", "") == key) return j.at("value");
    } catch (const Json::exception&) {
      // unreadable entry: recompute and overwrite
    }
  }
  Json value = compute();
  std::error_code ec;
  fs::create_directories(dir, ec);
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out{tmp};
    out << Json{{"key", key}, {"value", value}}.dump();
  }
  fs::rename(tmp, path, ec);
  if (ec) fs::remove(tmp, ec);
  return value;
}

Series<Poly> cached_poly_series(const std::string& key, const std::function<Series<Poly>()>& compute) {
  return poly_series_from_json(cached(key, [&] { return series_to_json(compute(), "B"); }));
}

// ---------------------------------------------------------------- tables

std::string rational_text(const Rational& q) { return to_string(q); }

/// Rows (order, power, coefficient) of a series with polynomial coefficients.
void add_poly_series(Table& t, const Series<Poly>& s, const std::string& name = "") {
  for (int k = s.low(); k <= s.order(); ++k) {
    const Poly& p = s[k];
    for (int e = 0; e <= std::max(0, p.degree()); ++e) {
      std::vector<Cell> row;
      if (!name.empty()) row.push_back(name);
      row.push_back(static_cast<long long>(k));
      row.push_back(static_cast<long long>(e));
      row.push_back(rational_text(p[e]));
      t.add(std::move(row));
    }
  }
}

void add_rational_series(Table& t, const Series<Rational>& s) {
  for (int k = s.low(); k <= s.order(); ++k) t.add({static_cast<long long>(k), rational_text(s[k]), to_double(s[k])});
}

// ---------------------------------------------------------------- commands

struct Output {
  Table table;
  std::optional<floquet::Dataset> dataset;
  std::string truncation = "n/a";
  std::string precision = "exact";
};

Output cmd_pert(int order, bool poly, std::optional<int> N) {
  Output o;
  o.truncation = "h^" + std::to_string(order);
  if (N) {
    if (*N < 0) throw DomainError("level N must be non-negative");
    auto s = spectral::bs_invert_weak_at(Rational(2 * *N + 1, 2), order);
    o.table.metadata.push_back({"series", "u_N(h) + 1 at N = " + std::to_string(*N)});
    o.table.columns = {"order", "coefficient", "value"};
    add_rational_series(o.table, s);
    return o;
  }
  (void)poly;  // the polynomial-in-B table is the default form
  auto s = cached_poly_series("pert/v1/order=" + std::to_string(order), [&] { return spectral::bs_invert_weak(order); });
  o.table.metadata.push_back({"series", "u(h, B) + 1, coefficient of h^order B^power"});
  o.table.columns = {"order", "power", "coefficient"};
  add_poly_series(o.table, s);
  return o;
}

Output cmd_strong(int s_order, int h2_order, std::optional<int> N, std::optional<double> h) {
  Output o;
  o.truncation = "a^-" + std::to_string(2 * s_order) + ", h^" + std::to_string(2 * h2_order);
  auto s = spectral::bs_invert_strong(s_order, h2_order);
  o.table.metadata.push_back({"series", "u = sum_{j,k} c_{j,k} h^{2j} a^{2-2k}, a = N h/2"});
  if (N && h) o.table.metadata.push_back({"value", format_double(s.evaluate(*h, *N))});
  o.table.columns = {"j", "k", "coefficient"};
  for (int k = 0; k <= s_order; ++k)
    for (int j = 0; j <= h2_order; ++j) o.table.add({static_cast<long long>(j), static_cast<long long>(k), rational_text(s.coefficient(j, k))});
  return o;
}

Output cmd_pinst(int order, std::optional<int> N) {
  Output o;
  o.truncation = "h^" + std::to_string(order);
  auto p = cached_poly_series("pinst/v1/order=" + std::to_string(order), [&] { return nonpert::p_inst(order); });
  if (N) {
    if (*N < 0) throw DomainError("level N must be non-negative");
    o.table.metadata.push_back({"series", "P_inst at N = " + std::to_string(*N) + " in powers of h/8"});
    o.table.columns = {"order", "coefficient", "value"};
    Rational B(2 * *N + 1, 2), scale(1);
    for (int k = 0; k <= order; ++k, scale *= 8) {
      Rational c = p[k](B) * scale;
      o.table.add({static_cast<long long>(k), rational_text(c), to_double(c)});
    }
    return o;
  }
  o.table.metadata.push_back({"series", "P_inst(h, B), coefficient of h^order B^power"});
  o.table.columns = {"order", "power", "coefficient"};
  add_poly_series(o.table, p);
  return o;
}

Output cmd_zjj(int order) {
  Output o;
  o.truncation = "h^" + std::to_string(order);
  Json j = cached("zjj/v1/order=" + std::to_string(order), [&] {
    auto f = spectral::zjj_construct(order);
    return Json{{"E_of_B", series_to_json(f.E_of_B, "B")},
                {"B_of_E", series_to_json(f.B_of_E, "E")},
                {"A_of_B", series_to_json(f.A_of_B, "B")},
                {"A_of_E", series_to_json(f.A_of_E, "E")}};
  });
  o.table.metadata.push_back({"series", "function, coefficient of h^order times (B or E)^power"});
  o.table.columns = {"function", "order", "power", "coefficient"};
  for (const char* name : {"E_of_B", "B_of_E", "A_of_B", "A_of_E"}) add_poly_series(o.table, poly_series_from_json(j.at(name)), name);
  return o;
}

Output cmd_actions(const std::vector<double>& us, const std::string& region, int n, int order) {
  Output o;
  if (!region.empty()) {
    o.truncation = "order " + std::to_string(order);
    wkb::ActionSeries s = region == "well"   ? wkb::well_series(n, order)
                          : region == "high" ? wkb::high_series(n, order)
                                             : (n == 0 ? wkb::top_series(order) : throw DomainError("top-region series exist for n = 0 only"));
    o.table.metadata.push_back({"series", "a_" + std::to_string(n) + " in the " + region + " region"});
    o.table.columns = {"k", "coefficient", "log_coefficient"};
    for (int k = s.coeffs.low(); k <= s.coeffs.order(); ++k) {
      std::string lc = s.region == wkb::Region::Top && k <= s.log_coeffs.order() ? rational_text(s.log_coeffs[k]) : "0";
      o.table.add({static_cast<long long>(k), rational_text(s.coeffs[k]), lc});
    }
    return o;
  }
  if (us.empty()) throw DomainError("give --u values or --series");
  o.precision = "double";
  o.table.metadata.push_back({"quantity", "WKB periods a_n(u) and dual periods a_n^D(u), n = 0, 1, 2"});
  o.table.columns = {"u", "a0", "a1", "a2", "re_aD0", "im_aD0", "re_aD1", "im_aD1", "re_aD2", "im_aD2"};
  for (double u : us) {
    auto v = wkb::action_higher(u);
    o.table.add({u, v.a[0], v.a[1], v.a[2], v.aD[0].real(), v.aD[0].imag(), v.aD[1].real(), v.aD[1].imag(), v.aD[2].real(), v.aD[2].imag()});
  }
  return o;
}

floquet::Tier tier_of(const std::string& precision) {
  return precision == "extended" ? floquet::Tier::Extended : floquet::Tier::Double;
}

Output cmd_spectrum(double hbar, int bands, int truncation, const std::string& precision) {
  Output o;
  o.precision = precision;
  floquet::HillConfig cfg{hbar, 1.0, truncation, tier_of(precision)};
  auto edges = floquet::band_edges(bands - 1, cfg);
  floquet::Dataset d;
  for (const auto& e : edges)
    d.rows.push_back({e.hbar, 4 / (hbar * hbar), e.N, e.edge == floquet::EdgeKind::Bottom ? "bottom" : "top", e.u, e.err});
  o.truncation = truncation ? "M = " + std::to_string(truncation) : "adaptive";
  o.dataset = std::move(d);
  return o;
}

std::vector<double> grid(double lo, double hi, int points) {
  if (points < 2 || !(hi > lo)) throw DomainError("grid needs points >= 2 and max > min");
  std::vector<double> g;
  for (int i = 0; i < points; ++i) g.push_back(lo + (hi - lo) * i / (points - 1));
  return g;
}

Output cmd_widths(const std::string& kind, int N, const std::vector<double>& hs, int order) {
  Output o;
  o.precision = "double/extended (per row)";
  o.truncation = "asymptotic order " + std::to_string(order);
  const bool band = kind == "band";
  if (!band && kind != "gap") throw DomainError("--kind must be band or gap");
  o.table.columns = {"hbar", "N", "kind", "asymptotic_leading", "asymptotic", "numeric", "numeric_err", "tier", "ratio", "warning"};
  for (double h : hs) {
    auto a = band ? nonpert::band_width(h, N, order) : nonpert::gap_width(h, N, order < 0 ? -1 : order + 1);
    auto w = floquet::width_num(h, N, band ? floquet::WidthKind::Band : floquet::WidthKind::Gap);
    o.table.add({h, static_cast<long long>(N), kind, a.leading, a.with_fluctuations, w.value, w.error,
                 std::string(w.tier == floquet::Tier::Extended ? "extended" : "double"), a.with_fluctuations / w.value, a.warning});
  }
  return o;
}

Output cmd_zerodim(const std::string& m_text, int n_max, int j_max, const std::vector<double>& hs) {
  Output o;
  Rational m = parse_rational(m_text);
  const int order = std::max(n_max, 30);
  auto s = zerodim::lame_saddles(m, order);
  o.truncation = "saddle series h^" + std::to_string(order);
  o.precision = "exact coefficients, extended relation sums";
  o.table.metadata.push_back({"S1", s.has_real() ? rational_text(s.real.action) : "none"});
  o.table.metadata.push_back({"S2", s.has_imag() ? rational_text(s.imag.action) : "none"});
  if (hs.empty()) {
    o.table.columns = {"m", "n", "lhs", "rhs", "rel_defect"};
    for (const auto& r : zerodim::berry_howls_check(s, n_max, j_max))
      o.table.add({r.m, static_cast<long long>(r.n), r.lhs, r.rhs, r.rel_defect});
    return o;
  }
  auto rows = zerodim::borel_lateral_check(s, hs);
  if (rows.size() >= 2) o.table.metadata.push_back({"error_log_slope", format_double(zerodim::error_action_fit(rows))});
  o.table.columns = {"h", "quadrature", "principal_value", "imag_ambiguity", "abs_error", "two_instanton_bound"};
  for (const auto& r : rows) o.table.add({r.h, r.quadrature, r.principal_value, r.imag_ambiguity, r.abs_error, r.two_instanton_bound});
  return o;
}

Output cmd_benderwu(const std::string& potential, const std::string& m_text, int order, std::optional<int> N,
                    const std::string& potential_file) {
  Output o;
  o.truncation = "h^" + std::to_string(order);
  benderwu::PotentialSeries v;
  if (!potential_file.empty()) {
    std::ifstream in(potential_file);
    if (!in) throw DomainError("cannot read potential file " + potential_file);
    v = benderwu::potential_from_json(Json::parse(in));
  } else if (potential == "mathieu") {
    v = benderwu::mathieu_well(2 * order + 4);
  } else if (potential == "lame") {
    if (m_text.empty()) throw DomainError("the Lame potential needs --m");
    if (!N) {
      o.table.metadata.push_back({"series", "Lame ground state E(h | m), E = 1 + O(h)"});
      o.table.columns = {"order", "coefficient", "value"};
      add_rational_series(o.table, benderwu::lame_series(parse_rational(m_text), order));
      return o;
    }
    v = benderwu::lame_well(parse_rational(m_text), 2 * order + 4);
  } else {
    throw DomainError("unknown potential " + potential);
  }
  if (N) {
    if (*N < 0) throw DomainError("level N must be non-negative");
    o.table.metadata.push_back({"series", v.name + ": energy of level " + std::to_string(*N)});
    o.table.columns = {"order", "coefficient", "value"};
    add_rational_series(o.table, benderwu::rs_series(v, *N, order));
    return o;
  }
  o.table.metadata.push_back({"series", v.name + ": energy, coefficient of h^order B^power"});
  o.table.columns = {"order", "power", "coefficient"};
  add_poly_series(o.table, benderwu::polynomial_in_N(v, order));
  return o;
}

void emit(const Output& out, const GlobalOptions& g, const std::string& config) {
  std::ofstream file;
  if (!g.output.empty()) {
    file.open(g.output);
    if (!file) throw DomainError("cannot write " + g.output);
  }
  std::ostream& os = g.output.empty() ? std::cout : file;
  if (out.dataset) {
    floquet::Dataset d = *out.dataset;
    d.metadata.insert(d.metadata.begin(), {{"version", MATHIEU_VERSION},
                                           {"config", config},
                                           {"config_hash", hex(fnv1a(config))},
                                           {"truncation", out.truncation},
                                           {"precision", out.precision}});
    if (g.format == "json") floquet::write_json(os, d);
    else floquet::write_csv(os, d);
    return;
  }
  Table t = out.table;
  stamp(t, config, out.truncation, out.precision);
  if (g.pretty) write_table_pretty(os, t);
  else if (g.format == "json") write_table_json(os, t);
  else write_table_csv(os, t);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mathieu spectrum: exact series, non-perturbative widths and numerical reference data"};
  app.set_version_flag("--version", MATHIEU_VERSION);
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("-o,--output", g.output, "Output file (default stdout)");
  app.add_option("--precision", g.precision, "Numerical tier for the oracle")
      ->check(CLI::IsMember({"double", "extended"}))
      ->capture_default_str();
  app.add_flag("--pretty", g.pretty, "Aligned human-readable table instead of CSV/JSON");
  app.fallthrough();

  Output out;
  std::function<void()> action;

  int order = 5;
  bool poly = false;
  std::optional<int> N;
  auto* pert = app.add_subcommand("pert", "Weak-coupling series u(h, B)");
  pert->add_option("--order", order, "Highest power of h")->capture_default_str()->check(CLI::NonNegativeNumber);
  pert->add_flag("--poly", poly, "Coefficients as exact polynomials in B = N + 1/2 (default)");
  pert->add_option("--N", N, "Evaluate at level N instead");
  pert->callback([&] { action = [&] { out = cmd_pert(order, poly, N); }; });

  int s_order = 6, h2_order = 3;
  std::optional<double> h_opt;
  auto* strong = app.add_subcommand("strong", "Strong-coupling (high-energy) series of the gap centres");
  strong->add_option("--s-order", s_order, "Highest power of 1/a^2")->capture_default_str()->check(CLI::NonNegativeNumber);
  strong->add_option("--h2-order", h2_order, "Highest power of h^2")->capture_default_str()->check(CLI::NonNegativeNumber);
  strong->add_option("--N", N, "Level for the evaluated value");
  strong->add_option("--hbar", h_opt, "h for the evaluated value");
  strong->callback([&] { action = [&] { out = cmd_strong(s_order, h2_order, N, h_opt); }; });

  int pinst_order = 2;
  auto* pinst = app.add_subcommand("pinst", "One-instanton fluctuation factor");
  pinst->add_option("--order", pinst_order, "Highest power of h")->capture_default_str()->check(CLI::NonNegativeNumber);
  pinst->add_option("--N", N, "Evaluate at level N in powers of h/8");
  pinst->callback([&] { action = [&] { out = cmd_pinst(pinst_order, N); }; });

  int zjj_order = 4;
  auto* zjj = app.add_subcommand("zjj", "Functions of the exact quantization condition");
  zjj->add_option("--order", zjj_order, "Highest power of h")->capture_default_str()->check(CLI::PositiveNumber);
  zjj->callback([&] { action = [&] { out = cmd_zjj(zjj_order); }; });

  std::vector<double> us;
  std::string region;
  int wkb_n = 0, series_order = 8;
  auto* actions = app.add_subcommand("actions", "WKB periods: numeric values or exact regional series");
  actions->add_option("--u", us, "Energies in (-1, 1) for numeric values");
  actions->add_option("--series", region, "Exact series in a region")->check(CLI::IsMember({"well", "high", "top"}));
  actions->add_option("--n", wkb_n, "WKB order of the period")->capture_default_str()->check(CLI::Range(0, 2));
  actions->add_option("--order", series_order, "Series truncation")->capture_default_str()->check(CLI::NonNegativeNumber);
  actions->callback([&] { action = [&] { out = cmd_actions(us, region, wkb_n, series_order); }; });

  double hbar = 1;
  int bands = 10, truncation = 0;
  auto* spectrum = app.add_subcommand("spectrum", "Band edges at one h from the Hill matrix");
  spectrum->add_option("--hbar", hbar, "Planck constant")->capture_default_str()->check(CLI::PositiveNumber);
  spectrum->add_option("--bands", bands, "Number of bands")->capture_default_str()->check(CLI::PositiveNumber);
  spectrum->add_option("--truncation", truncation, "Fourier cutoff M (0 = adaptive)")->capture_default_str()->check(CLI::NonNegativeNumber);
  spectrum->callback([&] { action = [&] { out = cmd_spectrum(hbar, bands, truncation, g.precision); }; });

  double hmin = 0.2, hmax = 4;
  int points = 40, fig_bands = 20;
  auto* figure1 = app.add_subcommand("figure1", "Band edges against h");
  figure1->add_option("--hbar-min", hmin, "Smallest h")->capture_default_str()->check(CLI::PositiveNumber);
  figure1->add_option("--hbar-max", hmax, "Largest h")->capture_default_str()->check(CLI::PositiveNumber);
  figure1->add_option("--points", points, "Grid points")->capture_default_str();
  figure1->add_option("--bands", fig_bands, "Bands per h")->capture_default_str()->check(CLI::PositiveNumber);
  figure1->callback([&] {
    action = [&] {
      out.dataset = floquet::figure_bands_vs_hbar(grid(hmin, hmax, points), fig_bands);
      out.truncation = "adaptive";
      out.precision = "double";
    };
  });

  double qmin = 5, qmax = 60, window = 0.5;
  int qpoints = 200;
  auto* figure2 = app.add_subcommand("figure2", "Band edges near the barrier top against Q = 4/h^2");
  figure2->add_option("--Q-min", qmin, "Smallest Q")->capture_default_str()->check(CLI::PositiveNumber);
  figure2->add_option("--Q-max", qmax, "Largest Q")->capture_default_str()->check(CLI::PositiveNumber);
  figure2->add_option("--points", qpoints, "Grid points")->capture_default_str();
  figure2->add_option("--window", window, "Half-width of the u window around 1")->capture_default_str()->check(CLI::PositiveNumber);
  figure2->callback([&] {
    action = [&] {
      out.dataset = floquet::figure_barrier_top(grid(qmin, qmax, qpoints), window);
      out.truncation = "adaptive";
      out.precision = "double";
    };
  });

  std::string kind = "band";
  int width_N = 0, width_order = 2;
  std::vector<double> width_h{0.5};
  auto* widths = app.add_subcommand("widths", "Asymptotic band or gap widths against the numerical spectrum");
  widths->add_option("--kind", kind, "band or gap")->capture_default_str()->check(CLI::IsMember({"band", "gap"}));
  widths->add_option("--N", width_N, "Band or gap index")->capture_default_str()->check(CLI::NonNegativeNumber);
  widths->add_option("--hbar", width_h, "One or more values of h")->capture_default_str();
  widths->add_option("--order", width_order, "Fluctuation order (band) or extra template terms (gap)")->capture_default_str();
  widths->callback([&] { action = [&] { out = cmd_widths(kind, width_N, width_h, width_order); }; });

  std::string m_text = "1/4";
  int n_max = 20, j_max = 6;
  std::vector<double> zd_h;
  auto* zerodim = app.add_subcommand("zerodim", "Saddle-series relations and resummation of the elliptic integral");
  zerodim->add_option("--m", m_text, "Elliptic parameter as a rational")->capture_default_str();
  zerodim->add_option("--n-max", n_max, "Largest vacuum order")->capture_default_str()->check(CLI::PositiveNumber);
  zerodim->add_option("--j-max", j_max, "Saddle orders kept in the relation")->capture_default_str()->check(CLI::NonNegativeNumber);
  zerodim->add_option("--hbar", zd_h, "Values of h for the resummation check (omit for the coefficient relation)");
  zerodim->callback([&] { action = [&] { out = cmd_zerodim(m_text, n_max, j_max, zd_h); }; });

  std::string potential = "mathieu", bw_m, potential_file;
  int bw_order = 6;
  auto* bw = app.add_subcommand("benderwu", "Rayleigh-Schroedinger series for a potential well");
  bw->add_option("--potential", potential, "mathieu or lame")->capture_default_str()->check(CLI::IsMember({"mathieu", "lame"}));
  bw->add_option("--m", bw_m, "Elliptic parameter for the Lame well");
  bw->add_option("--potential-file", potential_file, "JSON potential description");
  bw->add_option("--order", bw_order, "Highest power of h")->capture_default_str()->check(CLI::NonNegativeNumber);
  bw->add_option("--N", N, "Single level instead of the polynomial table");
  bw->callback([&] { action = [&] { out = cmd_benderwu(potential, bw_m, bw_order, N, potential_file); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string config = canonical_config(*sub, g);
  try {
    action();
    emit(out, g, config);
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const Cancelled& e) {
    std::cerr << "cancelled: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const std::exception& e) {
    // domain, structural and truncation errors: the request cannot be served
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return 0;
}
