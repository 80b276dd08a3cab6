#pragma once

#include <fstream>

#include <json.hpp>

#include "projmet/convex.hpp"

namespace projmet {

/// Numeric field of a body document: a JSON number, or an exact rational
/// string like "2/3" (any mode; required for exactness in rational mode).
template <class F>
F spec_number(const nlohmann::json& j) {
  if (j.is_string()) {
    Rational r = parse_rational(j.get<std::string>());
    if constexpr (num_traits<F>::is_exact)
      return r;
    else
      return num_traits<Rational>::to_double(r);
  }
  if (j.is_number()) return num_traits<F>::from_double(j.get<double>());
  fail(ErrorCode::InvalidSpec, "expected a number or rational string");
}

template <class F>
Vec<F> spec_point(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    fail(ErrorCode::InvalidSpec, "expected a coordinate array");
  Vec<F> p;
  for (const auto& c : j) p.push_back(spec_number<F>(c));
  return p;
}

/// Parses the single-document body schema:
///   {"type":"polygon","vertices":[[x,y],...]}
///   {"type":"polytope-h","halfspaces":[[n...,c],...]}
///   {"type":"ellipsoid","center":[...],"shape":[[...]]}
template <class F>
ConvexBody<F> parse_body(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    fail(ErrorCode::InvalidSpec, "body document needs a \"type\" tag");
  const std::string type = j["type"].get<std::string>();

  if (type == "polygon") {
    if (!j.contains("vertices"))
      fail(ErrorCode::InvalidSpec, "polygon body needs \"vertices\"");
    std::vector<Vec<F>> verts;
    for (const auto& v : j["vertices"]) {
      verts.push_back(spec_point<F>(v));
      if (verts.back().size() != 2)
        fail(ErrorCode::InvalidSpec, "polygon vertices must be planar");
    }
    return ConvexBody<F>(Polytope<F>::from_vertices(std::move(verts)));
  }

  if (type == "polytope-h") {
    if (!j.contains("halfspaces"))
      fail(ErrorCode::InvalidSpec, "polytope-h body needs \"halfspaces\"");
    std::vector<Halfspace<F>> hs;
    int dim = -1;
    for (const auto& row : j["halfspaces"]) {
      Vec<F> entries = spec_point<F>(row);
      if (entries.size() < 3)
        fail(ErrorCode::InvalidSpec, "halfspace rows are [n..., c]");
      F offset = entries.back();
      entries.pop_back();
      if (dim < 0) dim = static_cast<int>(entries.size());
      if (static_cast<int>(entries.size()) != dim)
        fail(ErrorCode::InvalidSpec, "inconsistent halfspace dimensions");
      hs.push_back({std::move(entries), std::move(offset)});
    }
    if (dim < 0) fail(ErrorCode::InvalidSpec, "no halfspaces given");
    return ConvexBody<F>(Polytope<F>::from_halfspaces(dim, std::move(hs)));
  }

  if (type == "ellipsoid") {
    if constexpr (num_traits<F>::is_exact) {
      fail(ErrorCode::InvalidSpec, "ellipsoid bodies are float-mode only");
    } else {
      if (!j.contains("center") || !j.contains("shape"))
        fail(ErrorCode::InvalidSpec, "ellipsoid body needs \"center\" and \"shape\"");
      Vec<double> center = spec_point<double>(j["center"]);
      Mat<double> shape;
      for (const auto& row : j["shape"]) shape.push_back(spec_point<double>(row));
      return ConvexBody<F>(Ellipsoid(std::move(center), std::move(shape)));
    }
  }

  fail(ErrorCode::InvalidSpec, "unknown body type '" + type + "'");
}

template <class F>
ConvexBody<F> load_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidSpec, "cannot open body file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidSpec, std::string("JSON parse error: ") + e.what());
  }
  return parse_body<F>(j);
}

}  // namespace projmet
