#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hirsch/errors.hpp"
#include "hirsch/function.hpp"

#include "json.hpp"

namespace hirsch {

// FunctionSpec wire format:
//   {"kind": "expr"|"catalog"|"pwl"|"composite"|"numeric_inverse",
//    "body": ..., "domain": [[lo, hi, loClosed, hiClosed], ...],
//    "overrides": [[x, y], ...]}
// +infinity in a bound serializes as null (JSON has no Infinity literal).

inline nlohmann::json domain_to_json(const DomainSet& dom) {
  nlohmann::json out = nlohmann::json::array();
  for (const Interval& iv : dom.intervals) {
    nlohmann::json hi = std::isfinite(iv.hi) ? nlohmann::json(iv.hi) : nlohmann::json(nullptr);
    out.push_back(nlohmann::json::array({iv.lo, hi, iv.lo_closed, iv.hi_closed}));
  }
  return out;
}

inline DomainSet domain_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "domain must be an array of intervals");
  DomainSet dom;
  for (const auto& el : j) {
    if (!el.is_array() || el.size() != 4)
      throw Error(ErrorKind::ParseError, "each domain interval is [lo, hi, loClosed, hiClosed]");
    Interval iv;
    iv.lo = el[0].get<double>();
    if (el[1].is_null() || (el[1].is_string() && el[1].get<std::string>() == "inf"))
      iv.hi = kInf;
    else
      iv.hi = el[1].get<double>();
    iv.lo_closed = el[2].get<bool>();
    iv.hi_closed = std::isfinite(iv.hi) && el[3].get<bool>();
    iv.validate();
    dom.intervals.push_back(iv);
  }
  dom.validate();
  return dom;
}

inline nlohmann::json spec_to_json(const FunctionSpec& f);

namespace detail {

inline nlohmann::json body_to_json(const FunctionSpec& f, std::string& kind) {
  return std::visit(
      [&](const auto& body) -> nlohmann::json {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, ExprPtr>) {
          kind = "expr";
          return f.text.empty() ? print_expr(body) : f.text;
        } else if constexpr (std::is_same_v<T, CatalogFamily>) {
          kind = "catalog";
          switch (body.kind) {
            case CatalogFamily::Kind::PowerLaw:
              return {{"family", "power"}, {"c", body.c}};
            case CatalogFamily::Kind::ConstantC:
              return {{"family", "constant"}, {"C", body.C}};
            case CatalogFamily::Kind::ExpShift:
              return {{"family", "expshift"}, {"a", body.a}, {"b", body.b}};
            case CatalogFamily::Kind::Null:
              return {{"family", "null"}};
          }
          return nullptr;
        } else if constexpr (std::is_same_v<T, PiecewiseLinear>) {
          kind = "pwl";
          nlohmann::json knots = nlohmann::json::array();
          for (const auto& [x, y] : body.knots) knots.push_back({x, y});
          return {{"knots", knots}, {"clampRight", body.clamp_right}};
        } else if constexpr (std::is_same_v<T, PiecewiseComposite>) {
          kind = "composite";
          nlohmann::json pieces = nlohmann::json::array();
          for (const auto& p : body.pieces) pieces.push_back(spec_to_json(p));
          return {{"pieces", pieces}};
        } else {  // MonotoneInverse
          kind = "numeric_inverse";
          return {{"phi", spec_to_json(*body.phi)},
                  {"interval", {body.bracket.lo, body.bracket.hi, body.bracket.lo_closed,
                                body.bracket.hi_closed}},
                  {"tol", body.tol},
                  {"increasing", body.increasing},
                  {"zeroAtOrigin", body.zero_at_origin}};
        }
      },
      f.body);
}

}  // namespace detail

inline nlohmann::json spec_to_json(const FunctionSpec& f) {
  std::string kind;
  nlohmann::json body = detail::body_to_json(f, kind);
  nlohmann::json overrides = nlohmann::json::array();
  for (const auto& [x, y] : f.point_overrides) overrides.push_back({x, y});
  return {{"kind", kind}, {"body", body}, {"domain", domain_to_json(f.domain)},
          {"overrides", overrides}};
}

inline FunctionSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("body"))
    throw Error(ErrorKind::ParseError, "function spec needs \"kind\" and \"body\"");
  const std::string kind = j.at("kind").get<std::string>();

  FunctionSpec f;
  if (kind == "expr") {
    std::string text = j.at("body").get<std::string>();
    f = parse_expression(text);
  } else if (kind == "catalog") {
    const auto& body = j.at("body");
    const std::string family = body.at("family").get<std::string>();
    if (family == "power")
      f = make_power_law(body.at("c").get<double>());
    else if (family == "constant")
      f = make_constant(body.at("C").get<double>());
    else if (family == "expshift")
      f = make_exp_shift(body.at("a").get<double>(), body.at("b").get<double>());
    else if (family == "null")
      f = make_null();
    else
      throw Error(ErrorKind::ParseError, "unknown catalog family: " + family);
  } else if (kind == "pwl") {
    const auto& body = j.at("body");
    std::vector<std::pair<double, double>> knots;
    for (const auto& k : body.at("knots"))
      knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
    bool clamp = body.value("clampRight", false);
    try {
      f = make_piecewise_linear(std::move(knots), clamp);
    } catch (const Error& e) {
      throw Error(ErrorKind::ParseError, e.what());
    }
  } else if (kind == "composite") {
    std::vector<FunctionSpec> pieces;
    for (const auto& p : j.at("body").at("pieces")) pieces.push_back(spec_from_json(p));
    f = make_composite(std::move(pieces));
  } else if (kind == "numeric_inverse") {
    const auto& body = j.at("body");
    MonotoneInverse inv;
    inv.phi = std::make_shared<const FunctionSpec>(spec_from_json(body.at("phi")));
    const auto& iv = body.at("interval");
    inv.bracket = Interval{iv.at(0).get<double>(), iv.at(1).get<double>(), iv.at(2).get<bool>(),
                           iv.at(3).get<bool>()};
    inv.tol = body.value("tol", 1e-10);
    inv.increasing = body.value("increasing", true);
    inv.zero_at_origin = body.value("zeroAtOrigin", false);
    f.body = std::move(inv);
  } else {
    throw Error(ErrorKind::ParseError, "unknown function kind: " + kind);
  }

  // A composite's domain is always the union of its pieces; a declared
  // domain field is echo only there.
  if (kind != "composite" && j.contains("domain") && !j.at("domain").empty()) {
    try {
      f.domain = domain_from_json(j.at("domain"));
    } catch (const Error& e) {
      throw Error(ErrorKind::ParseError, e.what());
    }
  }
  if (j.contains("overrides")) {
    for (const auto& ov : j.at("overrides")) {
      double x = ov.at(0).get<double>();
      double y = ov.at(1).get<double>();
      if (y < 0.0) throw Error(ErrorKind::ParseError, "override values must be >= 0");
      f.point_overrides[x] = y;
    }
  }
  return f;
}

}  // namespace hirsch
