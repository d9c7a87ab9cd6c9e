// qmapk: batch front door for the quasimap K-stability calculus.
// Reads JSON from a file (or stdin), prints a JSON report on stdout.
// Exit codes: 0 success, 1 domain error (structured JSON on stdout),
// 2 malformed input or usage.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qmapk/json_io.hpp"

using namespace qmapk;

namespace {

Json read_input(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

double approx(const Rat& r) { return r.get_d(); }

void emit(const Json& j, const std::string& format) {
  if (format == "pretty") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << j.dump() << "\n";
  }
}

/// Approximate decimals for humans, clearly marked; machine fields stay exact.
void annotate_pretty(Json& j, const Quasimap& q) {
  j["approx"] = Json{{"delta", approx(delta(q))}, {"mu", approx(invariants(q).mu)}};
}

unsigned iteration_cap_from_env() {
  const char* env = std::getenv("QMAPK_MAX_ITERS");
  if (!env) return dvr_default_iteration_cap();
  char* end = nullptr;
  unsigned long v = std::strtoul(env, &end, 10);
  if (end == env || v == 0) return dvr_default_iteration_cap();
  return static_cast<unsigned>(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact K-stability calculus for quasimaps from P^1"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "output format: json or pretty")
      ->check(CLI::IsMember({"json", "pretty"}));

  std::string in_classify, in_delta, in_degen, in_dvr, in_cm, in_ell1, in_ell2, in_resc;
  std::string in_isom_a, in_isom_b;
  std::string point_str = "0";
  unsigned l_factor = 1;
  unsigned samples = 0;
  unsigned max_iters = 0;

  auto* c_classify = app.add_subcommand("classify", "K-stability class of a quasimap");
  c_classify->add_option("input", in_classify, "quasimap JSON (default stdin)");

  auto* c_delta = app.add_subcommand("delta", "literal delta invariant of a quasimap");
  c_delta->add_option("input", in_delta, "quasimap JSON (default stdin)");

  auto* c_degen = app.add_subcommand("degenerate", "Gm-degeneration at a point");
  c_degen->add_option("input", in_degen, "quasimap JSON (default stdin)");
  c_degen->add_option("--point", point_str, "center: a rational a/b or 'inf'");

  auto* c_dvr = app.add_subcommand("reduce-dvr", "semistable reduction over Q[t]_(t)");
  c_dvr->add_option("input", in_dvr, "family JSON (default stdin)");
  c_dvr->add_option("--max-iters", max_iters, "iteration cap (overrides QMAPK_MAX_ITERS)");

  auto* c_cm = app.add_subcommand("cm-degree", "CM degree of a pencil, with nefness probe");
  c_cm->add_option("input", in_cm, "pencil JSON (default stdin)");
  c_cm->add_option("--samples", samples, "number of probe fibers to classify");

  auto* c_ell = app.add_subcommand("elliptic", "analyze a Weierstrass elliptic surface");
  c_ell->add_option("action", in_ell1, "'analyze' or the input path");
  c_ell->add_option("input", in_ell2, "model JSON (default stdin)");

  auto* c_resc = app.add_subcommand("rescale", "Veronese rescaling of a quasimap");
  c_resc->add_option("input", in_resc, "quasimap JSON (default stdin)");
  c_resc->add_option("--l", l_factor, "rescaling exponent")->required();

  auto* c_isom = app.add_subcommand("isom", "decide isomorphism of two quasimaps");
  c_isom->add_option("a", in_isom_a, "first quasimap JSON")->required();
  c_isom->add_option("b", in_isom_b, "second quasimap JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_classify->parsed()) {
      Quasimap q = quasimap_from_json(read_input(in_classify));
      Json out = to_json(classify(q), q);
      if (format == "pretty") annotate_pretty(out, q);
      emit(out, format);
    } else if (c_delta->parsed()) {
      Quasimap q = quasimap_from_json(read_input(in_delta));
      Json out;
      out["delta"] = rat_to_string(delta(q));
      if (format == "pretty") out["approx"] = approx(delta(q));
      emit(out, format);
    } else if (c_degen->parsed()) {
      Quasimap q = quasimap_from_json(read_input(in_degen));
      DegenerationReport rep = degenerate_at(q, point_from_string(point_str));
      emit(to_json(rep), format);
    } else if (c_dvr->parsed()) {
      DvrQuasimapFamily fam = dvr_family_from_json(read_input(in_dvr));
      unsigned cap = max_iters > 0 ? max_iters : iteration_cap_from_env();
      ReductionReport rep = semistable_reduction(fam, cap);
      emit(to_json(rep), format);
    } else if (c_cm->parsed()) {
      PencilFamily p = pencil_from_json(read_input(in_cm));
      Json out;
      out["cm_degree"] = rat_to_string(cm_degree(p));
      if (format == "pretty") out["approx"] = approx(cm_degree(p));
      if (samples > 0) out["probe"] = to_json(nefness_probe(p, default_sample_points(samples)));
      emit(out, format);
    } else if (c_ell->parsed()) {
      std::string path = in_ell1;
      if (in_ell1 == "analyze") path = in_ell2;
      WeierstrassModel w = weierstrass_from_json(read_input(path));
      emit(to_json(elliptic_report(w)), format);
    } else if (c_resc->parsed()) {
      Quasimap q = quasimap_from_json(read_input(in_resc));
      emit(to_json(rescale(q, l_factor)), format);
    } else if (c_isom->parsed()) {
      Quasimap a = quasimap_from_json(read_input(in_isom_a));
      Quasimap b = quasimap_from_json(read_input(in_isom_b));
      Json out;
      out["isomorphic"] = are_isomorphic(a, b);
      emit(out, format);
    }
  } catch (const Error& e) {
    Json err;
    err["error"] = Json{{"kind", error_kind_name(e.kind())}, {"message", e.what()}};
    std::cout << err.dump() << "\n";
    return e.kind() == ErrorKind::ParseError ? 2 : 1;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = Json{{"kind", "Internal"}, {"message", e.what()}};
    std::cout << err.dump() << "\n";
    return 1;
  }
  return 0;
}
