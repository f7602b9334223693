#pragma once

#include <stdexcept>
#include <vector>

#include "bernprim/bernstein.hpp"
#include "json.hpp"

namespace bernprim {

/// Canonical form: {"degree": n, "coeffs": [c0, ..., cn]}.
inline nlohmann::ordered_json poly_to_json(const BernsteinPoly& p) {
  nlohmann::ordered_json j;
  j["degree"] = p.degree();
  j["coeffs"] = std::vector<double>(p.coeffs().begin(), p.coeffs().end());
  return j;
}

template <class Json>
BernsteinPoly poly_from_json(const Json& j) {
  const int degree = j.at("degree").template get<int>();
  auto coeffs = j.at("coeffs").template get<std::vector<double>>();
  if (degree < 0 || static_cast<std::size_t>(degree) + 1 != coeffs.size())
    throw std::invalid_argument("poly_from_json: degree does not match coefficient count");
  return BernsteinPoly(std::move(coeffs));
}

}  // namespace bernprim
