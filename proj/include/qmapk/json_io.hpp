#pragma once

// JSON wire formats. All numbers are exact "num/den" strings; binary forms
// are arrays lowest x-power first; the infinity cluster of a divisor is the
// string "inf". Emission is canonical (sorted keys, canonical cluster
// order), so identical inputs produce byte-identical outputs.

#include <json.hpp>

#include "qmapk/dvr.hpp"
#include "qmapk/elliptic.hpp"
#include "qmapk/pencil.hpp"
#include "qmapk/quasimap.hpp"

namespace qmapk {

using Json = nlohmann::json;

// ---- rationals ----------------------------------------------------------------

inline Json to_json(const Rat& r) { return rat_to_string(r); }

inline Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  if (!j.is_string()) throw Error(ErrorKind::ParseError, "expected a rational string");
  return rat_from_string(j.get<std::string>());
}

// ---- points ---------------------------------------------------------------------

inline Json to_json(const RationalPoint& p) { return point_to_string(p); }

inline RationalPoint point_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return RationalPoint::infinity();
  return RationalPoint::affine(rat_from_json(j));
}

inline RationalPoint point_from_string(const std::string& s) {
  if (s == "inf") return RationalPoint::infinity();
  return RationalPoint::affine(rat_from_string(s));
}

// ---- binary forms ----------------------------------------------------------------

inline Json to_json(const BForm& f) {
  Json arr = Json::array();
  for (const auto& c : f.c) arr.push_back(rat_to_string(c));
  return arr;
}

inline BForm form_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw Error(ErrorKind::ParseError, "a binary form is a nonempty coefficient array");
  std::vector<Rat> c;
  for (const auto& v : j) c.push_back(rat_from_json(v));
  return BForm(static_cast<int>(c.size()) - 1, std::move(c));
}

// ---- divisors ---------------------------------------------------------------------

inline Json to_json(const QDivisor& d) {
  Json arr = Json::array();
  for (const auto& t : d.terms()) {
    Json item;
    if (t.form == form_y()) item["form"] = "inf";
    else item["form"] = to_json(t.form);
    item["coeff"] = rat_to_string(t.coeff);
    arr.push_back(item);
  }
  return arr;
}

inline QDivisor divisor_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "a divisor is an array of terms");
  std::vector<std::pair<BForm, Rat>> pairs;
  for (const auto& item : j) {
    if (!item.contains("form") || !item.contains("coeff"))
      throw Error(ErrorKind::ParseError, "divisor term needs 'form' and 'coeff'");
    BForm f = item["form"].is_string() && item["form"].get<std::string>() == "inf"
                  ? form_y()
                  : form_from_json(item["form"]);
    pairs.emplace_back(f, rat_from_json(item["coeff"]));
  }
  return QDivisor::from_pairs(pairs);
}

// ---- homogeneous ideal generators ---------------------------------------------------

inline Json to_json(const HomPoly& g) {
  Json arr = Json::array();
  for (const auto& t : g.terms) {
    Json term;
    term["coeff"] = rat_to_string(t.coeff);
    term["exponents"] = t.exponents;
    arr.push_back(term);
  }
  return arr;
}

inline HomPoly generator_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "a generator is an array of terms");
  HomPoly g;
  for (const auto& term : j) {
    MonomialTerm t;
    t.coeff = rat_from_json(term.at("coeff"));
    for (const auto& e : term.at("exponents")) t.exponents.push_back(e.get<unsigned>());
    g.terms.push_back(std::move(t));
  }
  return g;
}

// ---- quasimaps ------------------------------------------------------------------------

inline Json to_json(const Quasimap& q) {
  Json j;
  j["degree"] = q.degree;
  j["weight"] = rat_to_string(q.weight);
  Json secs = Json::array();
  for (const auto& f : q.sections) secs.push_back(to_json(f));
  j["sections"] = secs;
  j["boundary"] = to_json(q.boundary);
  j["r"] = q.denom_bound;
  if (q.target) {
    Json t;
    size_t nvars = q.sections.size();
    t["ambient_dim"] = nvars - 1;
    Json gens = Json::array();
    for (const auto& g : *q.target) gens.push_back(to_json(g));
    t["generators"] = gens;
    j["target"] = t;
  }
  return j;
}

inline Quasimap quasimap_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "a quasimap is a JSON object");
  for (const char* key : {"degree", "weight", "sections"})
    if (!j.contains(key))
      throw Error(ErrorKind::ParseError, std::string("quasimap misses '") + key + "'");
  int m = j["degree"].get<int>();
  Rat u = rat_from_json(j["weight"]);
  std::vector<BForm> secs;
  for (const auto& s : j["sections"]) secs.push_back(form_from_json(s));
  QDivisor b = j.contains("boundary") ? divisor_from_json(j["boundary"]) : QDivisor::zero();
  unsigned r = j.contains("r") ? j["r"].get<unsigned>() : 1;
  std::optional<std::vector<HomPoly>> target;
  if (j.contains("target")) {
    std::vector<HomPoly> gens;
    for (const auto& g : j["target"].at("generators")) gens.push_back(generator_from_json(g));
    size_t nvars = j["target"].contains("ambient_dim")
                       ? j["target"]["ambient_dim"].get<size_t>() + 1
                       : secs.size();
    if (nvars != secs.size())
      throw Error(ErrorKind::ParseError, "ambient_dim does not match the section count");
    target = std::move(gens);
  }
  return make_quasimap(m, u, std::move(secs), std::move(b), r, std::move(target));
}

// ---- classification ----------------------------------------------------------------------

inline Json to_json(const StabilityClass& c, const Quasimap& q) {
  Json j;
  j["class"] = stability_name(c.kind);
  j["delta"] = rat_to_string(delta(q));
  NumericInvariants inv = invariants(q);
  j["mu"] = rat_to_string(inv.mu);
  j["v"] = rat_to_string(inv.v);
  j["fixed_degree"] = inv.fixed_degree;
  j["movable_degree"] = inv.movable_degree;
  if (c.witness) {
    Json w;
    w["form"] = to_json(c.witness->cluster);
    w["mult"] = rat_to_string(c.witness->mult);
    j["witness"] = w;
  }
  return j;
}

// ---- degenerations -------------------------------------------------------------------------

inline Json to_json(const DegenerationReport& r) {
  Json j;
  j["center"] = to_json(r.center);
  j["central_fiber"] = to_json(r.central_fiber);
  j["central_class"] = stability_name(classify(r.central_fiber).kind);
  j["beta"] = rat_to_string(r.beta);
  j["product_type"] = r.product_type;
  return j;
}

// ---- DVR families ----------------------------------------------------------------------------

inline Json to_json(const TForm& f) {
  Json rows = Json::array();
  for (const auto& p : f.c) {
    Json row = Json::array();
    if (p.empty()) row.push_back("0");
    for (const auto& v : p) row.push_back(rat_to_string(v));
    rows.push_back(row);
  }
  return rows;
}

inline TForm tform_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw Error(ErrorKind::ParseError, "a t-form is a matrix indexed by (x-power, t-power)");
  std::vector<TPoly> c;
  for (const auto& row : j) {
    TPoly p;
    for (const auto& v : row) p.push_back(rat_from_json(v));
    tpoly_trim(p);
    c.push_back(std::move(p));
  }
  return TForm(static_cast<int>(c.size()) - 1, std::move(c));
}

inline Json to_json(const DvrQuasimapFamily& fam) {
  Json j;
  j["degree"] = fam.degree;
  j["weight"] = rat_to_string(fam.weight);
  Json secs = Json::array();
  for (const auto& f : fam.sections) secs.push_back(to_json(f));
  j["sections"] = secs;
  Json b = Json::array();
  for (const auto& [form, coeff] : fam.boundary) {
    Json item;
    item["form"] = to_json(form);
    item["coeff"] = rat_to_string(coeff);
    b.push_back(item);
  }
  j["boundary"] = b;
  return j;
}

inline DvrQuasimapFamily dvr_family_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "a family is a JSON object");
  for (const char* key : {"degree", "weight", "sections"})
    if (!j.contains(key))
      throw Error(ErrorKind::ParseError, std::string("family misses '") + key + "'");
  int m = j["degree"].get<int>();
  Rat u = rat_from_json(j["weight"]);
  std::vector<TForm> secs;
  for (const auto& s : j["sections"]) secs.push_back(tform_from_json(s));
  std::vector<std::pair<TForm, Rat>> boundary;
  if (j.contains("boundary"))
    for (const auto& item : j["boundary"])
      boundary.emplace_back(tform_from_json(item.at("form")), rat_from_json(item.at("coeff")));
  return make_dvr_family(m, u, std::move(secs), std::move(boundary));
}

inline Json to_json(const ReductionReport& r) {
  Json j;
  j["base_change_exponent"] = r.base_change_exponent;
  j["iterations"] = r.iterations;
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    Json st;
    st["center"] = to_json(s.center);
    st["shift"] = s.shift;
    Json rows = Json::array();
    for (int a = 0; a < 2; ++a) {
      Json row = Json::array();
      for (int b = 0; b < 2; ++b) {
        Json e;
        e["coeff"] = rat_to_string(s.matrix[a][b].coeff);
        e["s_power"] = s.matrix[a][b].s_power;
        row.push_back(e);
      }
      rows.push_back(row);
    }
    st["matrix"] = rows;
    steps.push_back(st);
  }
  j["steps"] = steps;
  j["result"] = to_json(r.result);
  Quasimap fiber = special_fiber(r.result);
  j["special_fiber_class"] = stability_name(classify(fiber).kind);
  return j;
}

// ---- pencils -----------------------------------------------------------------------------------

inline Json to_json(const BiForm& f) {
  Json rows = Json::array();
  for (const auto& row : f.c) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(rat_to_string(v));
    rows.push_back(r);
  }
  return rows;
}

inline BiForm biform_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw Error(ErrorKind::ParseError, "a pencil form is a matrix indexed by (x-power, s-power)");
  std::vector<std::vector<Rat>> c;
  size_t width = 0;
  for (const auto& row : j) {
    std::vector<Rat> r;
    for (const auto& v : row) r.push_back(rat_from_json(v));
    if (width == 0) width = r.size();
    if (r.size() != width || width == 0)
      throw Error(ErrorKind::ParseError, "ragged pencil coefficient matrix");
    c.push_back(std::move(r));
  }
  return BiForm(static_cast<int>(c.size()) - 1, static_cast<int>(width) - 1, std::move(c));
}

inline Json to_json(const PencilFamily& p) {
  Json j;
  j["fiber_degree"] = p.fiber_degree;
  j["base_degree"] = p.base_degree;
  j["weight"] = rat_to_string(p.weight);
  Json secs = Json::array();
  for (const auto& f : p.sections) secs.push_back(to_json(f));
  j["sections"] = secs;
  Json b = Json::array();
  for (const auto& [form, coeff] : p.boundary) {
    Json item;
    item["form"] = to_json(form);
    item["coeff"] = rat_to_string(coeff);
    b.push_back(item);
  }
  j["boundary"] = b;
  return j;
}

inline PencilFamily pencil_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "a pencil is a JSON object");
  for (const char* key : {"fiber_degree", "base_degree", "weight", "sections"})
    if (!j.contains(key))
      throw Error(ErrorKind::ParseError, std::string("pencil misses '") + key + "'");
  std::vector<BiForm> secs;
  for (const auto& s : j["sections"]) secs.push_back(biform_from_json(s));
  std::vector<std::pair<BiForm, Rat>> boundary;
  if (j.contains("boundary"))
    for (const auto& item : j["boundary"])
      boundary.emplace_back(biform_from_json(item.at("form")), rat_from_json(item.at("coeff")));
  return make_pencil(j["fiber_degree"].get<int>(), j["base_degree"].get<int>(),
                     rat_from_json(j["weight"]), std::move(secs), std::move(boundary));
}

inline Json to_json(const NefnessReport& r) {
  Json j;
  j["cm_degree"] = rat_to_string(r.cm);
  j["hypothesis_met"] = r.hypothesis_met;
  j["consistent"] = r.consistent;
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    Json e;
    e["point"] = to_json(s.point);
    if (s.degenerate) {
      e["degenerate"] = true;
    } else {
      e["class"] = stability_name(s.cls);
      e["mu_t"] = rat_to_string(s.mu_t);
      e["hypothesis_ok"] = s.hypothesis_ok;
    }
    samples.push_back(e);
  }
  j["samples"] = samples;
  return j;
}

// ---- elliptic -----------------------------------------------------------------------------------

inline WeierstrassModel weierstrass_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("k") || !j.contains("A") || !j.contains("B"))
    throw Error(ErrorKind::ParseError, "a Weierstrass model needs 'k', 'A' and 'B'");
  int k = j["k"].get<int>();
  auto padded = [&](const Json& arr, int deg) {
    std::vector<Rat> c;
    for (const auto& v : arr) c.push_back(rat_from_json(v));
    if (static_cast<int>(c.size()) == 1 && c[0] == 0) c.assign(deg + 1, Rat(0));
    if (static_cast<int>(c.size()) != deg + 1)
      throw Error(ErrorKind::ParseError, "coefficient array length does not match 4k/6k+1");
    return BForm(deg, std::move(c));
  };
  return make_weierstrass(k, padded(j["A"], 4 * k), padded(j["B"], 6 * k));
}

inline Json to_json(const EllipticReport& r) {
  Json j;
  j["k"] = r.k;
  Json prof = Json::array();
  for (const auto& e : r.profile) {
    Json p;
    p["cluster"] = to_json(e.cluster);
    p["ord_a"] = e.ord_a == kOrdInfinity ? Json("inf") : Json(e.ord_a);
    p["ord_b"] = e.ord_b == kOrdInfinity ? Json("inf") : Json(e.ord_b);
    p["ord_delta"] = e.ord_d;
    p["type"] = kodaira_name(e.type);
    if (e.type == KodairaType::In || e.type == KodairaType::Instar) p["n"] = e.n;
    p["lct"] = rat_to_string(e.lct);
    prof.push_back(p);
  }
  j["kodaira"] = prof;
  j["disc_divisor"] = to_json(r.disc_divisor);
  j["moduli_degree"] = rat_to_string(r.moduli_degree);
  if (r.adiabatic) j["adiabatic"] = adiabatic_name(*r.adiabatic);
  j["associated"] = to_json(r.associated);
  j["associated_class"] = to_json(r.associated_class, r.associated);
  return j;
}

}  // namespace qmapk
