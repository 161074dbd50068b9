#pragma once

/// \file io.hpp
/// \brief JSON forms of functions, weights, cocycles, the appendix
/// construction and reports.

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tworlicz/appendix_a.hpp"
#include "tworlicz/criteria.hpp"
#include "tworlicz/errors.hpp"
#include "tworlicz/lattice.hpp"
#include "tworlicz/numerics.hpp"
#include "tworlicz/orlicz.hpp"
#include "tworlicz/twist.hpp"

namespace tworlicz::io {

using tworlicz::Json;

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline double number(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) throw FormatError(std::string("field '") + key + "' is not a number");
  return v.get<double>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// DiscreteFunction: {"dim": d, "entries": [{"point": [...], "re": x, "im": y}]}
// ---------------------------------------------------------------------------

inline Json to_json(const DiscreteFunction& f) {
  Json j;
  j["dim"] = f.dim();
  Json entries = Json::array();
  for (const auto& [p, v] : f.entries()) {
    Json e;
    e["point"] = p.to_vector();
    e["re"] = v.real();
    e["im"] = v.imag();
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

inline DiscreteFunction function_from_json(const Json& j) {
  try {
    const Json& dj = detail::field(j, "dim");
    if (!dj.is_number_integer()) throw FormatError("dim must be an integer");
    DiscreteFunction f(dj.get<int>());
    for (const auto& e : detail::field(j, "entries")) {
      const auto coords = detail::field(e, "point").get<std::vector<std::int64_t>>();
      if (static_cast<int>(coords.size()) != f.dim())
        throw FormatError("point of dimension " + std::to_string(coords.size()) + " in a Z^" +
                          std::to_string(f.dim()) + " function");
      f.add(Point::from_vector(coords), {detail::number(e, "re"), detail::number(e, "im")});
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(e.what());
  } catch (const DimensionError& e) {
    throw FormatError(e.what());
  }
}

// ---------------------------------------------------------------------------
// Weights: {"kind": "poly", "beta": 2.0} etc.
// ---------------------------------------------------------------------------

inline Json to_json(const Weight& w) {
  Json j;
  switch (w.kind()) {
    case WeightKind::Polynomial: j["kind"] = "poly"; break;
    case WeightKind::SubExp: j["kind"] = "subexp"; break;
    case WeightKind::SubExp2: j["kind"] = "subexp2"; break;
    case WeightKind::Exponential: j["kind"] = "exp"; break;
    case WeightKind::Trivial: j["kind"] = "trivial"; break;
    case WeightKind::Custom: throw FormatError("custom weight " + w.name() + " cannot be serialized");
  }
  for (const auto& [k, v] : w.params()) j[k] = v;
  return j;
}

/// Accepts the object form or a short string such as "poly:2".
inline Weight weight_from_json(const Json& j) {
  if (j.is_string()) return weight_from_spec(j.get<std::string>());
  const Json& kj = detail::field(j, "kind");
  if (!kj.is_string()) throw FormatError("weight kind must be a string");
  const std::string kind = kj.get<std::string>();
  if (kind == "poly") return polynomial_weight(detail::number(j, "beta"));
  if (kind == "subexp") return subexp_weight(detail::number(j, "alpha"), detail::number(j, "C"));
  if (kind == "subexp2") return subexp2_weight(detail::number(j, "gamma"), detail::number(j, "C"));
  if (kind == "exp") return exponential_weight(detail::number(j, "C"));
  if (kind == "trivial") return trivial_weight();
  throw FormatError("unknown weight kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Cocycles
// ---------------------------------------------------------------------------

inline Json to_json(const Cocycle& c) {
  Json j;
  std::visit(
      [&j](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, cocycle_node::Trivial>) {
          j["kind"] = "trivial";
        } else if constexpr (std::is_same_v<T, cocycle_node::Coboundary>) {
          j["kind"] = "coboundary";
          j["weight"] = to_json(n.weight);
        } else if constexpr (std::is_same_v<T, cocycle_node::Heisenberg>) {
          j["kind"] = "heisenberg";
          j["theta"] = n.theta;
        } else if constexpr (std::is_same_v<T, cocycle_node::Product>) {
          j["kind"] = "product";
          Json f = Json::array();
          for (const auto& c2 : n.factors) f.push_back(to_json(c2));
          j["factors"] = std::move(f);
        } else if constexpr (std::is_same_v<T, cocycle_node::Modulus>) {
          j["kind"] = "modulus";
          j["of"] = to_json(*n.inner);
        } else if constexpr (std::is_same_v<T, cocycle_node::Torus>) {
          j["kind"] = "torus";
          j["of"] = to_json(*n.inner);
        } else {
          throw FormatError("custom cocycle " + n.name + " cannot be serialized");
        }
      },
      c.node());
  return j;
}

inline Cocycle cocycle_from_spec(const std::string& spec);

/// Object form, or a string handled by cocycle_from_spec.
inline Cocycle cocycle_from_json(const Json& j) {
  if (j.is_string()) return cocycle_from_spec(j.get<std::string>());
  const Json& kj = detail::field(j, "kind");
  if (!kj.is_string()) throw FormatError("cocycle kind must be a string");
  const std::string kind = kj.get<std::string>();
  if (kind == "trivial") return trivial_cocycle();
  if (kind == "coboundary") return coboundary(weight_from_json(detail::field(j, "weight")));
  if (kind == "heisenberg") return heisenberg_cocycle(detail::number(j, "theta"));
  if (kind == "product") {
    std::vector<Cocycle> factors;
    for (const auto& f : detail::field(j, "factors")) factors.push_back(cocycle_from_json(f));
    if (factors.empty()) throw FormatError("product of no factors");
    return cocycle_product(std::move(factors));
  }
  if (kind == "modulus") return cocycle_from_json(detail::field(j, "of")).modulus_part();
  if (kind == "torus") return cocycle_from_json(detail::field(j, "of")).torus_part();
  throw FormatError("unknown cocycle kind '" + kind + "'");
}

/// "trivial", "heisenberg:0.5", "coboundary:poly:1", "a*b" for products,
/// or inline JSON.
inline Cocycle cocycle_from_spec(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') {
    try {
      return cocycle_from_json(Json::parse(spec));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(e.what());
    }
  }
  if (spec.find('*') != std::string::npos) {
    std::vector<Cocycle> factors;
    for (const auto& part : tworlicz::detail::split_top(spec, '*')) factors.push_back(cocycle_from_spec(part));
    return cocycle_product(std::move(factors));
  }
  if (spec == "trivial") return trivial_cocycle();
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "heisenberg") return heisenberg_cocycle(tworlicz::detail::parse_double(rest, "theta"));
  if (head == "coboundary") return coboundary(weight_from_spec(rest));
  throw ParamError("unknown cocycle spec '" + spec + "'");
}

// ---------------------------------------------------------------------------
// Appendix construction
// ---------------------------------------------------------------------------

namespace detail {

inline std::string real_str(const appendix::Real& x) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<appendix::Real>::max_digits10) << x;
  return os.str();
}

inline appendix::Real real_from(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw FormatError(std::string("field '") + key + "' must be a decimal string");
  try {
    return appendix::Real(v.get<std::string>());
  } catch (const std::exception& e) {
    throw FormatError(std::string("bad decimal in '") + key + "': " + e.what());
  }
}

inline std::vector<appendix::Real> reals_from(const Json& j, const char* key) {
  std::vector<appendix::Real> out;
  for (const auto& v : field(j, key)) {
    if (!v.is_string()) throw FormatError(std::string("entries of '") + key + "' must be strings");
    out.emplace_back(v.get<std::string>());
  }
  return out;
}

}  // namespace detail

/// Anchors are exact integers; real quantities are decimal strings with
/// enough digits to reproduce the 50-digit values exactly.
inline Json to_json(const appendix::PiecewiseRho& rho) {
  Json j;
  j["n1"] = rho.n1;
  j["anchors"] = rho.anchors;
  Json tp = Json::array(), jn = Json::array();
  for (const auto& x : rho.touch_points) tp.push_back(detail::real_str(x));
  for (const auto& x : rho.junctions) jn.push_back(detail::real_str(x));
  j["touch_points"] = std::move(tp);
  j["junctions"] = std::move(jn);
  j["chord_slope"] = detail::real_str(rho.chord_slope);
  Json segs = Json::array();
  for (const auto& s : rho.segments) {
    Json e;
    e["label"] = s.label;
    e["a"] = detail::real_str(s.a);
    e["b"] = detail::real_str(s.b);
    e["slope"] = detail::real_str(s.slope);
    e["intercept"] = detail::real_str(s.intercept);
    segs.push_back(std::move(e));
  }
  j["segments"] = std::move(segs);
  return j;
}

inline appendix::PiecewiseRho rho_from_json(const Json& j) {
  try {
    appendix::PiecewiseRho rho;
    rho.n1 = detail::field(j, "n1").get<std::uint64_t>();
    rho.anchors = detail::field(j, "anchors").get<std::vector<std::uint64_t>>();
    rho.touch_points = detail::reals_from(j, "touch_points");
    rho.junctions = detail::reals_from(j, "junctions");
    rho.chord_slope = detail::real_from(j, "chord_slope");
    for (const auto& e : detail::field(j, "segments")) {
      appendix::Segment s;
      s.label = detail::field(e, "label").get<std::string>();
      s.a = detail::real_from(e, "a");
      s.b = detail::real_from(e, "b");
      s.slope = detail::real_from(e, "slope");
      s.intercept = detail::real_from(e, "intercept");
      rho.segments.push_back(std::move(s));
    }
    return rho;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(e.what());
  }
}

inline Json to_json(const appendix::ConstructionLog& log) {
  Json j;
  j["notes"] = log.notes;
  Json c = Json::array();
  for (const auto& r : log.candidates) {
    Json e;
    e["k"] = r.k;
    e["candidate"] = r.candidate;
    e["junction"] = tworlicz::detail::num(r.junction);
    e["admissible"] = r.admissible;
    e["phase"] = r.phase;
    c.push_back(std::move(e));
  }
  j["candidates"] = std::move(c);
  return j;
}

inline Json to_json(const appendix::CounterexampleReport& r) {
  using tworlicz::detail::num;
  Json j;
  j["horizon"] = r.horizon;
  static const char* names[5] = {"(i) rho(0)=0, increasing", "(ii) concave",
                                 "(iii) slopes decrease to 0", "(iv) rho(n) >= 2 ln n",
                                 "(v) a_n nonincreasing, n_k a_{n_k} = 1"};
  Json parts = Json::array();
  for (int i = 0; i < 5; ++i) {
    Json p;
    p["property"] = names[i];
    p["passed"] = r.parts[i].passed;
    p["detail"] = r.parts[i].detail;
    parts.push_back(std::move(p));
  }
  j["parts"] = std::move(parts);
  j["tangent_slopes"] = r.tangent_slopes;
  j["rho_over_n_at_anchors"] = r.rho_over_n_at_anchors;
  j["rho_over_n_at_horizon"] = num(r.rho_over_n_at_horizon);
  j["max_second_difference"] = num(r.max_second_difference);
  j["min_rho_minus_2log"] = num(r.min_rho_minus_2log);
  j["inverse_weight_sum_bound"] = num(r.inverse_weight_sum_bound);
  j["min_a_increment"] = num(r.min_a_increment);
  j["max_anchor_identity_error"] = num(r.max_anchor_identity_error);
  j["max_anchor_product_error"] = num(r.max_anchor_product_error);
  j["limit_note"] = r.limit_note;
  return j;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline Json to_json(const Tolerances& t) {
  Json j;
  j["root"] = t.root;
  j["quadrature"] = t.quadrature;
  j["limit_rel"] = t.limit_rel;
  j["limit_margin"] = t.limit_margin;
  j["norm_rel"] = t.norm_rel;
  j["sample"] = t.sample;
  return j;
}

inline Json to_json(const CriterionReport& r) {
  Json j;
  j["criterion"] = r.id;
  j["verdict"] = to_string(r.verdict);
  j["summary"] = r.summary;
  j["evidence"] = r.evidence;
  j["derived"] = r.derived;
  return j;
}

/// Wraps a payload with the tolerance header every report carries.
inline Json with_header(const std::string& command, Json payload,
                        const Tolerances& tol = default_tolerances()) {
  Json j;
  j["command"] = command;
  j["tolerances"] = to_json(tol);
  j["report"] = std::move(payload);
  return j;
}

}  // namespace tworlicz::io
