#include "pgn/templates/template_io.hpp"

#include <stdexcept>

namespace pgn {

nlohmann::json rational_to_json(const Rational& r) {
  if (is_double_exact(r)) {
    if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
    return r.get_d();
  }
  return to_string(r);
}

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(mpz_class(j.dump()));
  if (j.is_number_float()) return from_double(j.get<double>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_array() && j.size() == 2) {
    Rational p = rational_from_json(j[0]), q = rational_from_json(j[1]);
    if (p.get_den() != 1 || q.get_den() != 1 || q == 0)
      throw std::invalid_argument("fraction pair must hold integers with q != 0");
    Rational r = p / q;
    r.canonicalize();
    return r;
  }
  throw std::invalid_argument("expected a number, \"p/q\" string or [p,q] pair");
}

namespace {

nlohmann::json fraction_pair(const Rational& r) {
  auto part = [](const mpz_class& z) -> nlohmann::json {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
  };
  return nlohmann::json::array({part(r.get_num()), part(r.get_den())});
}

}  // namespace

nlohmann::json template_to_json(const Template& L) {
  nlohmann::json j;
  j["m"] = L.m();
  j["n"] = L.n();
  auto& bp = j["breakpoints"] = nlohmann::json::array();
  for (const auto& b : L.breakpoints()) bp.push_back(rational_to_json(b));
  auto& sv = j["startValues"] = nlohmann::json::array();
  for (const auto& v : L.start_values()) sv.push_back(rational_to_json(v));
  auto& sl = j["slopes"] = nlohmann::json::array();
  for (std::size_t k = 0; k < L.segments(); ++k) {
    auto row = nlohmann::json::array();
    for (const auto& s : L.slopes(k)) row.push_back(fraction_pair(s));
    sl.push_back(std::move(row));
  }
  return j;
}

Template template_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("template must be a JSON object");
  for (const char* key : {"m", "n", "breakpoints", "startValues", "slopes"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("template lacks \"") + key + "\"");
  if (!j["m"].is_number_integer() || !j["n"].is_number_integer())
    throw std::invalid_argument("m and n must be integers");
  const int m = j["m"].get<int>(), n = j["n"].get<int>();
  RVec bp, sv;
  for (const auto& x : j["breakpoints"]) bp.push_back(rational_from_json(x));
  for (const auto& x : j["startValues"]) sv.push_back(rational_from_json(x));
  std::vector<RVec> slopes;
  for (const auto& row : j["slopes"]) {
    if (!row.is_array()) throw std::invalid_argument("each slopes entry must be an array");
    RVec r;
    for (const auto& x : row) r.push_back(rational_from_json(x));
    slopes.push_back(std::move(r));
  }
  return Template(m, n, std::move(bp), std::move(sv), std::move(slopes));
}

}  // namespace pgn
