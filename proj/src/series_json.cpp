#include <mathieu/series_json.hpp>

namespace mathieu {

Json rational_to_json(const Rational& q) { return Json::array({numerator_of(q).str(), denominator_of(q).str()}); }

Rational rational_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("rational must be a [num, den] pair");
  auto part = [](const Json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
  return parse_rational(part(j[0]) + "/" + part(j[1]));
}

Json poly_to_json(const Poly& p) {
  Json arr = Json::array();
  for (const auto& c : p.coeffs()) arr.push_back(rational_to_json(c));
  return arr;
}

Poly poly_from_json(const Json& j) {
  std::vector<Rational> c;
  for (const auto& x : j) c.push_back(rational_from_json(x));
  return Poly(std::move(c));
}

Json series_to_json(const Series<Rational>& s) {
  Json coeffs = Json::array();
  for (int e = s.low(); e <= s.order(); ++e) coeffs.push_back(rational_to_json(s[e]));
  return Json{{"variable", s.var()}, {"order", s.order()}, {"low", s.low()}, {"coeffs", coeffs}};
}

Series<Rational> rational_series_from_json(const Json& j) {
  int low = j.value("low", 0);
  Series<Rational> s(j.at("variable").get<std::string>(), j.at("order").get<int>(), low);
  const auto& coeffs = j.at("coeffs");
  if (static_cast<int>(coeffs.size()) != s.order() - low + 1) throw DomainError("coefficient count does not match order");
  for (int e = low; e <= s.order(); ++e) s.at(e) = rational_from_json(coeffs[e - low]);
  return s;
}

Json series_to_json(const Series<Poly>& s, const std::string& poly_variable) {
  Json coeffs = Json::array();
  for (int e = s.low(); e <= s.order(); ++e) coeffs.push_back(poly_to_json(s[e]));
  return Json{{"variable", s.var()},       {"order", s.order()}, {"low", s.low()},
              {"poly_variable", poly_variable}, {"coeffs", coeffs}};
}

Series<Poly> poly_series_from_json(const Json& j) {
  int low = j.value("low", 0);
  Series<Poly> s(j.at("variable").get<std::string>(), j.at("order").get<int>(), low);
  const auto& coeffs = j.at("coeffs");
  if (static_cast<int>(coeffs.size()) != s.order() - low + 1) throw DomainError("coefficient count does not match order");
  for (int e = low; e <= s.order(); ++e) s.at(e) = poly_from_json(coeffs[e - low]);
  return s;
}

}  // namespace mathieu
