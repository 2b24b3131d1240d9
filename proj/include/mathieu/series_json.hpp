#pragma once

#include <mathieu/series.hpp>

#include <json.hpp>

namespace mathieu {

using Json = nlohmann::json;

/// Exact rationals serialize as ["num", "den"] (strings, so big integers survive).
Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j);

/// {"variable", "order", "low", "coeffs": [[num, den], ...]}
Json series_to_json(const Series<Rational>& s);
Series<Rational> rational_series_from_json(const Json& j);

/// As above with each coefficient a list of [num, den] in the polynomial variable.
Json series_to_json(const Series<Poly>& s, const std::string& poly_variable);
Series<Poly> poly_series_from_json(const Json& j);

}  // namespace mathieu
