#pragma once

#include <mathieu/series.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <utility>

namespace mathieu {

/// Which side of the positive real axis ln(-1/h) is continued from.
/// ln(-1/h) = ln(1/h) + i pi * sign.
enum class LateralBranch { Above = 1, Below = -1 };

/// Trans-series in a small parameter h:
///
///   sum_{(k, l)} (h^{-p_k(B)} e^{-S/h})^k-type monomial * (ln(-1/h))^l * F_{k,l}(h, B)
///
/// Sectors are indexed by instanton number k and log power l, with l <= max(k-1, 0).
/// Each sector stores its power of (scale/h) as a polynomial in the level variable B
/// (for the one-instanton sector typically B), so factors such as (32/h)^{N+1/2} stay
/// exact; multiplying sectors adds exponents. The logarithm stays symbolic until
/// evaluation, where the lateral branch is chosen explicitly.
class TransSeries {
 public:
  struct Sector {
    Poly exponent;        // p_k(B)
    Series<Poly> fluct;   // F_{k,l}(h, B)
  };
  using Key = std::pair<int, int>;

  TransSeries(Rational action, Rational scale) : action_(std::move(action)), scale_(std::move(scale)) {}

  const Rational& action() const { return action_; }
  const Rational& scale() const { return scale_; }
  const std::map<Key, Sector>& sectors() const { return sectors_; }

  void set(int instanton, int log_power, Poly exponent, Series<Poly> fluct) {
    if (instanton < 0 || log_power < 0 || log_power > std::max(instanton - 1, 0))
      throw StructuralError("log power exceeds max(k - 1, 0) in trans-series sector");
    sectors_[{instanton, log_power}] = Sector{std::move(exponent), std::move(fluct)};
  }

  /// Add `fluct` into a sector, creating it if absent.
  void add(int instanton, int log_power, const Poly& exponent, const Series<Poly>& fluct) {
    auto it = sectors_.find({instanton, log_power});
    if (it == sectors_.end()) {
      set(instanton, log_power, exponent, fluct);
      return;
    }
    if (!(it->second.exponent == exponent)) throw StructuralError("sector exponents disagree");
    it->second.fluct = it->second.fluct + fluct;
  }

  bool has(int instanton, int log_power) const { return sectors_.count({instanton, log_power}) != 0; }
  const Sector& sector(int instanton, int log_power) const { return sectors_.at({instanton, log_power}); }

  /// Product, keeping sectors up to `max_instanton`.
  TransSeries times(const TransSeries& o, int max_instanton) const {
    if (action_ != o.action_ || scale_ != o.scale_) throw DomainError("trans-series with different actions or scales");
    TransSeries r(action_, scale_);
    for (const auto& [ka, sa] : sectors_)
      for (const auto& [kb, sb] : o.sectors_) {
        int k = ka.first + kb.first;
        if (k > max_instanton) continue;
        r.add(k, ka.second + kb.second, sa.exponent + sb.exponent, sa.fluct * sb.fluct);
      }
    return r;
  }

  /// Multiply every sector by an ordinary series (sector (0,0)-type factor).
  TransSeries times(const Series<Poly>& f) const {
    TransSeries r(action_, scale_);
    for (const auto& [key, s] : sectors_) r.set(key.first, key.second, s.exponent, s.fluct * f);
    return r;
  }

  /// Value at real (h, B) on the chosen lateral branch of ln(-1/h).
  std::complex<double> evaluate(double h, double B, LateralBranch branch = LateralBranch::Above) const {
    const std::complex<double> lg(std::log(1.0 / h), M_PI * static_cast<int>(branch));
    std::complex<double> total = 0;
    for (const auto& [key, s] : sectors_) {
      double w = std::exp(-key.first * to_double(action_) / h) * std::pow(to_double(scale_) / h, s.exponent.eval(B));
      total += w * std::pow(lg, key.second) * eval(s.fluct, h, B);
    }
    return total;
  }

 private:
  Rational action_;
  Rational scale_;
  std::map<Key, Sector> sectors_;
};

/// u(h, nu) evaluated at nu = B + dnu, expanded as a trans-series:
///   u(B + dnu) = sum_j (1/j!) d^j u/dB^j dnu^j, keeping sectors up to `max_instanton`.
/// `u` has coefficients polynomial in the level variable; dnu must have no (0, 0) sector.
inline TransSeries substitute_level(const Series<Poly>& u, const TransSeries& dnu, int max_instanton) {
  if (dnu.has(0, 0)) throw StructuralError("level shift must be non-perturbative (no (0,0) sector)");
  for (const auto& [key, s] : dnu.sectors())
    if (s.fluct.var() != u.var()) throw DomainError("series variables differ");
  TransSeries out(dnu.action(), dnu.scale());
  out.set(0, 0, Poly(0), u);
  TransSeries power = dnu;
  Series<Poly> deriv = u;
  Rational inv_fact(1);
  for (int j = 1; j <= max_instanton; ++j) {
    deriv = poly_derivative(deriv);
    if (deriv.valuation() > deriv.order()) break;
    inv_fact /= j;
    for (const auto& [key, s] : power.sectors()) {
      Series<Poly> term = deriv * s.fluct;
      term *= inv_fact;
      out.add(key.first, key.second, s.exponent, term);
    }
    power = power.times(dnu, max_instanton);
  }
  return out;
}

}  // namespace mathieu
