#ifndef TROPCRIT_IO_HPP
#define TROPCRIT_IO_HPP

#include <json.hpp>

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tropcrit/delzant.hpp"
#include "tropcrit/lift.hpp"
#include "tropcrit/mutation.hpp"
#include "tropcrit/toric.hpp"

namespace tropcrit {

using Json = nlohmann::ordered_json;

struct InstanceOptions {
  std::optional<Rational> order;
  std::optional<double> tol;
  std::optional<unsigned> seed;
  RatMatrix query_points;
};

struct Instance {
  std::string kind;  // laurent | toric | delzant | mutation
  std::optional<LaurentPoly> laurent;
  std::optional<ToricInstance> toric;
  std::optional<DelzantInstance> delzant;
  std::optional<Mutation> mutation;
  InstanceOptions options;
};

namespace io_detail {

[[noreturn]] inline void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace io_detail

// Rationals: "p/q" strings or JSON integers.
inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      io_detail::fail(e.what());
    }
  }
  io_detail::fail("expected a rational, got " + j.dump());
}

inline Json to_json(const Rational& q) { return to_string(q); }

inline RatVector rat_vector_from_json(const Json& j) {
  if (!j.is_array()) io_detail::fail("expected an array of rationals, got " + j.dump());
  RatVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

inline Json to_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

inline Json to_json(const RealVector& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

inline Json to_json(const ExtendedRational& q) { return q.str(); }

/// Series literal: {"terms": [[exponent, coefficient], ...], "trunc": q}, or a
/// bare number for a constant.
inline PuiseuxSeries series_from_json(const Json& j) {
  if (j.is_number()) return PuiseuxSeries::constant(j.get<double>());
  const Json& terms = io_detail::field(j, "terms");
  if (!terms.is_array()) io_detail::fail("series terms must be an array");
  std::vector<PuiseuxSeries::Term> ts;
  for (const auto& t : terms) {
    if (!t.is_array() || t.size() != 2 || !t[1].is_number()) io_detail::fail("series term must be [exponent, coefficient]");
    ts.push_back({rational_from_json(t[0]), t[1].get<double>()});
  }
  ExtendedRational trunc = ExtendedRational::infinity();
  if (j.contains("trunc") && !j.at("trunc").is_null()) trunc = rational_from_json(j.at("trunc"));
  try {
    return PuiseuxSeries(std::move(ts), trunc);
  } catch (const Error& e) {
    io_detail::fail(e.what());
  }
}

inline Json to_json(const PuiseuxSeries& s) {
  Json terms = Json::array();
  for (const auto& t : s.terms()) terms.push_back(Json::array({to_string(t.exponent), t.coeff}));
  Json out = {{"terms", terms}};
  if (s.trunc().is_finite()) out["trunc"] = to_string(s.trunc().value());
  return out;
}

inline std::vector<LaurentTerm> terms_from_json(const Json& j) {
  if (!j.is_array()) io_detail::fail("terms must be an array");
  std::vector<LaurentTerm> out;
  for (const auto& t : j)
    out.push_back({series_from_json(io_detail::field(t, "coeff")), rat_vector_from_json(io_detail::field(t, "exponent"))});
  return out;
}

inline Json to_json(const std::vector<LaurentTerm>& terms) {
  Json out = Json::array();
  for (const auto& t : terms) out.push_back({{"coeff", to_json(t.coeff)}, {"exponent", to_json(t.exponent)}});
  return out;
}

inline LaurentPoly laurent_from_json(const Json& j) {
  const Json& dim = io_detail::field(j, "dim");
  if (!dim.is_number_unsigned()) io_detail::fail("dim must be a nonnegative integer");
  auto terms = terms_from_json(io_detail::field(j, "terms"));
  try {
    return LaurentPoly(dim.get<std::size_t>(), std::move(terms));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotPositive) throw;
    io_detail::fail(e.what());
  }
}

inline Json to_json(const LaurentPoly& w) { return {{"dim", w.dim()}, {"terms", to_json(w.terms())}}; }

inline Instance instance_from_json(const Json& j) {
  Instance inst;
  const Json& kind = io_detail::field(j, "kind");
  if (!kind.is_string()) io_detail::fail("kind must be a string");
  inst.kind = kind.get<std::string>();
  if (inst.kind == "laurent") {
    inst.laurent = laurent_from_json(j);
  } else if (inst.kind == "toric") {
    ToricInstance t;
    for (const auto& r : io_detail::field(j, "rays")) t.rays.push_back(rat_vector_from_json(r));
    t.coefficients = rat_vector_from_json(io_detail::field(j, "coefficients"));
    inst.toric = std::move(t);
  } else if (inst.kind == "delzant") {
    DelzantInstance d;
    for (const auto& f : io_detail::field(j, "facets"))
      d.facets.push_back({rat_vector_from_json(io_detail::field(f, "normal")), rational_from_json(io_detail::field(f, "constant"))});
    inst.delzant = std::move(d);
  } else if (inst.kind == "mutation") {
    inst.laurent = laurent_from_json(io_detail::field(j, "laurent"));
    const Json& m = io_detail::field(j, "mutation");
    Mutation mu;
    const Json& pivot = io_detail::field(m, "pivot");
    if (!pivot.is_number_unsigned()) io_detail::fail("pivot must be a nonnegative integer");
    mu.pivot = pivot.get<std::size_t>();
    mu.binomial = terms_from_json(io_detail::field(m, "binomial"));
    inst.mutation = std::move(mu);
  } else {
    io_detail::fail("unknown instance kind \"" + inst.kind + "\"");
  }

  if (j.contains("options")) {
    const Json& o = j.at("options");
    if (!o.is_object()) io_detail::fail("options must be an object");
    if (o.contains("order")) inst.options.order = rational_from_json(o.at("order"));
    if (o.contains("tol")) {
      if (!o.at("tol").is_number()) io_detail::fail("tol must be a number");
      inst.options.tol = o.at("tol").get<double>();
    }
    if (o.contains("seed")) {
      if (!o.at("seed").is_number_unsigned()) io_detail::fail("seed must be a nonnegative integer");
      inst.options.seed = o.at("seed").get<unsigned>();
    }
    if (o.contains("query_points"))
      for (const auto& q : o.at("query_points")) inst.options.query_points.push_back(rat_vector_from_json(q));
  }
  return inst;
}

inline Json to_json(const Instance& inst) {
  Json out = {{"kind", inst.kind}};
  if (inst.kind == "laurent") {
    out.update(to_json(*inst.laurent));
  } else if (inst.kind == "toric") {
    Json rays = Json::array();
    for (const auto& r : inst.toric->rays) rays.push_back(to_json(r));
    out["rays"] = rays;
    out["coefficients"] = to_json(inst.toric->coefficients);
  } else if (inst.kind == "delzant") {
    Json facets = Json::array();
    for (const auto& f : inst.delzant->facets) facets.push_back({{"normal", to_json(f.normal)}, {"constant", to_string(f.constant)}});
    out["facets"] = facets;
  } else if (inst.kind == "mutation") {
    out["laurent"] = to_json(*inst.laurent);
    out["mutation"] = {{"pivot", inst.mutation->pivot}, {"binomial", to_json(inst.mutation->binomial)}};
  }
  Json opts = Json::object();
  if (inst.options.order) opts["order"] = to_string(*inst.options.order);
  if (inst.options.tol) opts["tol"] = *inst.options.tol;
  if (inst.options.seed) opts["seed"] = *inst.options.seed;
  if (!inst.options.query_points.empty()) {
    Json qs = Json::array();
    for (const auto& q : inst.options.query_points) qs.push_back(to_json(q));
    opts["query_points"] = qs;
  }
  if (!opts.empty()) out["options"] = opts;
  return out;
}

inline Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    io_detail::fail(std::string("invalid JSON: ") + e.what());
  }
  try {
    return instance_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    io_detail::fail(std::string("malformed instance: ") + e.what());
  }
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) io_detail::fail("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

// ---- reports ----

inline Json stages_to_json(const std::vector<NewtonStage>& stages) {
  Json out = Json::array();
  for (const auto& s : stages) {
    Json dirs = Json::array();
    for (const auto& d : s.face_directions) dirs.push_back(to_json(d));
    out.push_back({{"height", to_string(s.height)}, {"support", s.support}, {"face_directions", dirs}});
  }
  return out;
}

inline Json to_json(const NondegeneracyCertificate& c) {
  Json samples = Json::array();
  for (const auto& s : c.samples)
    samples.push_back({{"direction", to_json(s.direction)},
                       {"valuation", to_json(s.valuation)},
                       {"leading_coeff", s.leading_coeff},
                       {"ok", s.ok}});
  return {{"ok", c.ok}, {"samples", samples}, {"level_min_eigenvalues", to_json(c.level_min_eigenvalues)}};
}

struct Certificates {
  bool trop_max_equal = false;
  bool tropical_critical = false;
  bool coefficient_conditions = false;
  bool residual = false;
  std::optional<NondegeneracyCertificate> nondegeneracy;

  bool ok() const {
    return trop_max_equal && tropical_critical && coefficient_conditions && residual &&
           (!nondegeneracy || nondegeneracy->ok);
  }
};

/// Re-runs every self-check on a solved instance.
inline Certificates certify(const LaurentPoly& w, const CritResult& res, int samples = 10, unsigned seed = 0) {
  Certificates c;
  c.trop_max_equal = trop_eval(w, res.d_crit) == trop_max(w);
  c.tropical_critical = check_tropical_critical(w, res.d_crit).ok;
  c.coefficient_conditions = check_coeff_conditions(w, res.d_crit, res.d_coeff).ok;
  c.residual = res.residual_ok();
  c.nondegeneracy = check_nondegenerate(w, res, samples, seed);
  return c;
}

inline Json to_json(const Certificates& c) {
  Json out = {{"ok", c.ok()},
              {"trop_max_equal", c.trop_max_equal},
              {"tropical_critical", c.tropical_critical},
              {"coefficient_conditions", c.coefficient_conditions},
              {"residual_valuation", c.residual}};
  if (c.nondegeneracy) out["nondegeneracy"] = to_json(*c.nondegeneracy);
  out["strong_nondegeneracy"] = "unverified";
  return out;
}

inline Json crit_report(const Instance& inst, const LaurentPoly& w, const CritResult& res,
                        const std::optional<Certificates>& certs) {
  Json series = Json::array();
  for (const auto& s : res.w_crit) series.push_back(to_json(s));
  Json coords = Json::array();
  TorusPoint p = res.point();
  for (std::size_t j = 0; j < w.dim(); ++j) coords.push_back(to_json(p.coordinate(j, ExtendedRational(res.trunc_order))));
  Json lift = Json::array();
  for (const auto& rec : res.lift_log)
    lift.push_back({{"nu", to_string(rec.nu)}, {"epsilon", to_string(rec.epsilon)}, {"correction", to_json(rec.correction)}});

  Json out = {{"instance", to_json(inst)}};
  out["tropical"] = {{"tau", to_string(res.tau)}, {"d_crit", to_json(res.d_crit)}, {"stages", stages_to_json(res.stages)}};
  out["coefficient"] = {{"d_coeff", to_json(res.d_coeff)}};
  out["series"] = {{"trunc_order", to_string(res.trunc_order)},
                   {"w_crit", series},
                   {"p_crit", coords},
                   {"lift_steps", lift}};
  Json cert = {{"residual_valuation", to_json(res.residual_valuation)}};
  if (certs) cert.update(to_json(*certs));
  out["certificates"] = cert;
  return out;
}

inline Json trop_report(const Instance& inst, const LaurentPoly& w, const CanonicalPoint& cp) {
  Json out = {{"instance", to_json(inst)}};
  Json queries = Json::array();
  for (const auto& q : inst.options.query_points)
    queries.push_back({{"point", to_json(q)}, {"trop", to_string(trop_eval(w, q))}, {"in_polytope", polytope_membership(w, q)}});
  out["tropical"] = {{"tau", to_string(trop_eval(w, cp.d_crit))},
                     {"d_crit", to_json(cp.d_crit)},
                     {"stages", stages_to_json(cp.stages)},
                     {"queries", queries}};
  out["certificates"] = {{"tropical_critical", check_tropical_critical(w, cp.d_crit).ok}};
  return out;
}

inline Json toric_report(const Instance& inst, const ToricReport& rep) {
  Json out = {{"instance", to_json(inst)}};
  out["tropical"] = {{"tau", to_string(rep.trop_max)},
                     {"d_crit", to_json(rep.d_crit)},
                     {"integral_divisor", rep.integral_divisor},
                     {"integrally_balanced", rep.integrally_balanced},
                     {"distinguished_divisor", to_json(rep.distinguished)},
                     {"stages", stages_to_json(rep.stages)}};
  return out;
}

inline Json delzant_report(const Instance& inst, const DelzantReport& rep) {
  Json out = {{"instance", to_json(inst)}};
  out["tropical"] = {{"tau", to_string(rep.trop_max)},
                     {"d_crit", to_json(rep.d_crit)},
                     {"facet_slacks", to_json(rep.slacks)},
                     {"interior", rep.interior}};
  if (rep.critical) {
    out["coefficient"] = {{"d_coeff", to_json(rep.critical->d_coeff)}};
    Json series = Json::array();
    for (const auto& s : rep.critical->w_crit) series.push_back(to_json(s));
    out["series"] = {{"trunc_order", to_string(rep.critical->trunc_order)}, {"w_crit", series}};
  }
  Json cert = {{"smoothness", "unverified"}};
  if (rep.nondegeneracy) cert["nondegeneracy"] = to_json(*rep.nondegeneracy);
  out["certificates"] = cert;
  return out;
}

inline Json mutation_report(const Instance& inst, const MutationReport& rep) {
  Json out = {{"instance", to_json(inst)}};
  out["pullback"] = to_json(rep.pullback);
  out["tropical"] = {{"d_crit", to_json(rep.d_crit)},
                     {"d_crit_pullback", to_json(rep.d_crit_pullback)},
                     {"trop_phi_image", to_json(rep.trop_image)}};
  out["certificates"] = {{"source_complete", rep.source_complete},
                         {"pullback_complete", rep.pullback_complete},
                         {"tropical_transport", rep.tropical_ok},
                         {"series_transport", rep.series_ok},
                         {"compared_order", to_string(rep.compared_order)},
                         {"max_deviation", rep.max_deviation},
                         {"scope", "single-pivot exchange or monomial maps only"}};
  return out;
}

}  // namespace tropcrit

#endif  // TROPCRIT_IO_HPP
