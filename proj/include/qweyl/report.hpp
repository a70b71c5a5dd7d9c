#pragma once

// Report values for the command-line driver.  Every command produces one
// ordered JSON value with top-level keys {command, config, results,
// discrepancies, pass}; the text and LaTeX views are rendered from it.

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qweyl/reference_forms.hpp"
#include "qweyl/spq6.hpp"

namespace qweyl {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string target;  // expand target or derive stage
  std::string mode = "both";
  int order = 2;
  std::vector<int> orders;  // convergence only
  std::vector<double> thetas;
  int cutoff = 5;
  double tol = 1e-10;
  int coord = 1;
  std::string denominator = "exact";
  bool mutate_r = false;
  std::optional<std::string> q_special;
  std::string format = "text";
  std::string output;
};

inline BetaDenominator parse_denominator(const std::string& s) {
  if (s == "exact") return BetaDenominator::exact;
  if (s == "first-order") return BetaDenominator::first_order;
  throw UsageError("unknown denominator '" + s + "' (expected exact or first-order)");
}

inline void validate(const RunConfig& c) {
  if (c.order < 0) throw UsageError("--order must be >= 0");
  for (int d : c.orders)
    if (d < 0) throw UsageError("--order must be >= 0");
  if (c.cutoff < 1) throw UsageError("--cutoff must be >= 1");
  if (!(c.tol > 0)) throw UsageError("--tol must be > 0");
  for (double t : c.thetas)
    if (!std::isfinite(t)) throw UsageError("--theta must be a finite real number");
  if (c.coord < 1 || c.coord > 3) throw UsageError("--coord must be 1, 2 or 3");
  parse_denominator(c.denominator);
}

namespace report_detail {

inline Json term_strings(const TermList& terms) {
  Json a = Json::array();
  for (const Term& t : terms) a.push_back(render_plain({t}));
  return a;
}

inline Json comparison_json(const Comparison& c) {
  Json j;
  j["name"] = c.name;
  j["status"] = status_name(c.status);
  j["compared_order"] = c.compared_order;
  if (c.status != ComparisonStatus::not_comparable) {
    j["reference"] = c.reference;
    j["engine"] = c.engine;
    j["difference"] = c.difference;
  }
  return j;
}

inline void add_comparisons(Json& results, Json& discrepancies, const std::vector<Comparison>& cs) {
  Json& list = results["reference_comparison"];
  if (list.is_null()) list = Json::array();
  for (const Comparison& c : cs) {
    list.push_back(comparison_json(c));
    if (c.status == ComparisonStatus::mismatch)
      discrepancies.push_back({{"name", c.name}, {"difference", c.difference}});
  }
}

inline Json field_json(const VectorField& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(c.str());
  return a;
}

inline Json field_latex(const VectorField& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(render_latex(c.to_terms()));
  return a;
}

inline Json config_json(const RunConfig& c) {
  Json j;
  if (c.command == "verify-aq") {
    j["mode"] = c.mode;
    j["order"] = c.order;
    j["theta"] = c.thetas;
    j["cutoff"] = c.cutoff;
    j["tol"] = c.tol;
  } else if (c.command == "expand") {
    j["target"] = c.target;
    j["coord"] = c.coord;
    j["order"] = c.order;
    j["denominator"] = c.denominator;
  } else if (c.command == "derive") {
    j["stage"] = c.target;
    j["order"] = c.order;
    j["denominator"] = c.denominator;
  } else if (c.command == "check-spq6") {
    j["mutate_r"] = c.mutate_r;
    j["q_special"] = c.q_special ? Json(*c.q_special) : Json(nullptr);
  } else if (c.command == "oracle-convergence") {
    j["order"] = c.orders;
    j["theta"] = c.thetas;
  }
  return j;
}

inline Json make_report(const RunConfig& c, Json results, Json discrepancies, bool pass) {
  Json r;
  r["command"] = c.command;
  r["config"] = config_json(c);
  r["results"] = std::move(results);
  r["discrepancies"] = std::move(discrepancies);
  r["pass"] = pass;
  return r;
}

}  // namespace report_detail

// ---------------------------------------------------------------------------

inline Json run_verify_aq(RunConfig c) {
  using namespace report_detail;
  if (c.mode != "series" && c.mode != "numeric" && c.mode != "both")
    throw UsageError("--mode must be series, numeric or both");
  if (c.thetas.empty() && c.mode != "series") c.thetas = {0.3, 0.05};
  validate(c);
  Json results, disc = Json::array();
  bool pass = true;
  auto record = [&](const char* key, const std::vector<RelationResult>& rs, bool numeric) {
    Json& list = results[key];
    if (list.is_null()) list = Json::array();
    for (const RelationResult& r : rs) {
      Json j{{"name", r.name}, {"family", r.family}, {"mode", r.mode}};
      if (numeric)
        j["max_residual"] = r.max_abs;
      else
        j["residual"] = r.residual;
      j["pass"] = r.pass;
      list.push_back(j);
      if (!r.pass) {
        pass = false;
        disc.push_back({{"name", r.name}, {"mode", r.mode}});
      }
    }
  };
  if (c.mode != "numeric") record("series", verify_relations_series(c.order), false);
  if (c.mode != "series")
    for (double t : c.thetas) record("numeric", verify_relations_numeric(t, c.cutoff, c.tol), true);
  return make_report(c, std::move(results), std::move(disc), pass);
}

inline Json run_expand(const RunConfig& c) {
  using namespace report_detail;
  validate(c);
  const BetaDenominator mode = parse_denominator(c.denominator);
  Json results, disc = Json::array();
  results["target"] = c.target;
  results["coordinate"] = c.coord;
  results["order"] = c.order;
  auto emit = [&](const TermList& terms) {
    results["operator"] = render_plain(terms);
    results["terms"] = term_strings(terms);
    results["latex"] = render_latex(terms);
  };
  if (c.target == "beta") {
    const auto op = beta_series<GaussianRational>(c.coord, c.order, mode);
    emit(op.to_terms());
    if (c.coord == 1) add_comparisons(results, disc, {compare_beta(op, c.order)});
  } else if (c.target == "qpower") {
    emit(qpower_series<GaussianRational>(later_coordinates(c.coord), c.order).to_terms());
  } else if (c.target == "X") {
    emit(build_realized<GaussianRational>(RealizedKind::X, c.coord, c.order, mode).to_terms());
  } else if (c.target == "dX") {
    emit(build_realized<GaussianRational>(RealizedKind::dX, c.coord, c.order, mode).to_terms());
  } else if (c.target == "P") {
    emit(build_realized<ParamPoly>(RealizedKind::P, c.coord, c.order, mode).to_terms());
    const Amplitude wave = apply_momentum(c.coord, c.order, mode);
    results["plane_wave_amplitude"] = wave.str();
    results["plane_wave_amplitude_latex"] = render_latex(wave.to_terms());
    static const char* names[] = {"momentum_x", "momentum_y", "momentum_z"};
    add_comparisons(results, disc,
                    {compare_amplitude(names[c.coord - 1], wave, c.order, reference::momentum(c.coord))});
  } else {
    throw UsageError("unknown expand target '" + c.target + "' (beta, qpower, X, dX, P)");
  }
  return make_report(c, std::move(results), std::move(disc), true);
}

inline Json run_derive(const RunConfig& c) {
  using namespace report_detail;
  validate(c);
  if (c.target != "momentum" && c.target != "gauge" && c.target != "bfield")
    throw UsageError("unknown derive stage '" + c.target + "' (momentum, gauge, bfield)");
  const BetaDenominator mode = parse_denominator(c.denominator);
  Json results, disc = Json::array();
  results["stage"] = c.target;
  results["order"] = c.order;
  const std::array<Amplitude, 3> momenta{apply_momentum(1, c.order, mode), apply_momentum(2, c.order, mode),
                                         apply_momentum(3, c.order, mode)};
  results["momentum"] = field_json(momenta);
  results["momentum_latex"] = field_latex(momenta);
  std::vector<Comparison> cmp = compare_momenta(c.order, momenta);
  if (c.target != "momentum") {
    const VectorField a = gauge_potential(c.order, mode);
    results["A"] = field_json(a);
    results["A_latex"] = field_latex(a);
    if (c.target == "bfield") {
      const VectorField b = curl(a);
      results["B"] = field_json(b);
      results["B_latex"] = field_latex(b);
      results["divergence"] = divergence(b).str();
      const FieldDecomposition d = decompose(b, c.order);
      Json dec;
      Json pieces = Json::array();
      for (const FieldPiece& p : d.pieces)
        pieces.push_back({{"label", p.label}, {"components", field_json(p.field)}});
      dec["pieces"] = pieces;
      dec["structured"] = field_json(d.structured);
      dec["remainder"] = field_json(d.remainder);
      dec["position_dependent"] = d.position_dependent;
      results["decomposition"] = dec;
      const auto f = compare_fields(c.order, b);
      const auto g = compare_imaginary_factor(c.order, b);
      cmp.insert(cmp.end(), f.begin(), f.end());
      cmp.insert(cmp.end(), g.begin(), g.end());
    }
  }
  add_comparisons(results, disc, cmp);
  return make_report(c, std::move(results), std::move(disc), true);
}

inline RMatrix mutated_r(const RMatrix& r) {
  RMatrix m = r;
  m.add(1, 2, 1, 2, laurent::q(1));
  return m;
}

inline Json run_check_spq6(const RunConfig& c) {
  using namespace report_detail;
  validate(c);
  const RMatrix rhat = c.mutate_r ? mutated_r(braided_r()) : braided_r();
  std::optional<GaussianRational> special;
  if (c.q_special) special = parse_gaussian(*c.q_special);
  if (special && special->is_zero()) throw UsageError("--q-special must be nonzero");

  Json results, disc = Json::array();
  results["convention"] = spq6_convention();
  results["mutated"] = c.mutate_r;
  const bool braid = braid_defect(rhat).is_zero();
  const bool cubic = cubic_defect(rhat).is_zero();
  results["braid_identity"] = braid;
  results["cubic_identity"] = cubic;
  Json pairs = Json::array();
  bool all = true;
  for (const PairResidual& p : proposition_residuals(rhat, symplectic_metric())) {
    Json j{{"i", p.i}, {"j", p.j}, {"residual_terms", term_strings(p.residual.to_terms())}, {"pass", p.pass()}};
    if (special)
      j["residual_at_q_special"] = p.residual.substitute(laurent::q_index, *special).str();
    pairs.push_back(j);
    if (!p.pass()) {
      all = false;
      disc.push_back({{"name", "pair(" + std::to_string(p.i) + "," + std::to_string(p.j) + ")"},
                      {"difference", p.residual.str()}});
    }
  }
  results["pairs"] = pairs;
  results["summary"] = {{"all_pass", all}, {"convention", spq6_convention()}};
  Json reduced = Json::array();
  for (PartnerReading rd : {PartnerReading::four_minus_j, PartnerReading::seven_minus_j})
    for (int j : reduced_relation_indices(rd)) {
      const AqElement r = reduced_relation_residual(j, rd);
      Json e{{"reading", reading_name(rd)}, {"j", j}, {"residual", r.str()}, {"zero", r.is_zero()}};
      if (special) e["residual_at_q_special"] = r.substitute(laurent::q_index, *special).str();
      reduced.push_back(e);
    }
  results["reduced_relation"] = reduced;
  if (special) results["q_special"] = special->str();
  return make_report(c, std::move(results), std::move(disc), all && braid && cubic);
}

inline Json run_oracle_convergence(RunConfig c) {
  using namespace report_detail;
  if (c.orders.empty()) c.orders = {1, 2, 3};
  if (c.thetas.empty()) c.thetas = {1e-1, 1e-2, 1e-3};
  validate(c);
  if (c.thetas.size() < 2) throw UsageError("oracle-convergence needs at least two --theta values");
  for (double t : c.thetas)
    if (t <= 0) throw UsageError("--theta values must be positive for a log-log fit");
  Json rows = Json::array(), disc = Json::array();
  bool pass = true;
  for (const ConvergenceRow& r : convergence_table(c.orders, c.thetas)) {
    const double expected = r.order + 1;
    const bool ok = std::abs(r.slope - expected) <= 0.1;
    const std::string name = kind_name(r.kind) + std::to_string(r.coordinate);
    rows.push_back({{"operator", name}, {"order", r.order}, {"theta", r.thetas}, {"max_abs_error", r.errors},
                    {"slope", r.slope}, {"expected_slope", expected}, {"pass", ok}});
    if (!ok) {
      pass = false;
      disc.push_back({{"name", name + " order " + std::to_string(r.order)}, {"slope", r.slope}});
    }
  }
  Json results;
  results["slope_tolerance"] = 0.1;
  results["rows"] = rows;
  return make_report(c, std::move(results), std::move(disc), pass);
}

inline Json run_command(const RunConfig& c) {
  if (c.command == "verify-aq") return run_verify_aq(c);
  if (c.command == "expand") return run_expand(c);
  if (c.command == "derive") return run_derive(c);
  if (c.command == "check-spq6") return run_check_spq6(c);
  if (c.command == "oracle-convergence") return run_oracle_convergence(c);
  throw UsageError("unknown command '" + c.command + "'");
}

// ---------------------------------------------------------------------------
// Views

namespace report_detail {

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline bool all_scalars(const Json& a) {
  for (const auto& e : a)
    if (e.is_structured()) return false;
  return true;
}

inline void text_lines(const Json& v, const std::string& indent, std::ostringstream& out) {
  for (const auto& [key, val] : v.items()) {
    if (key.size() > 6 && key.compare(key.size() - 6, 6, "_latex") == 0) continue;
    if (key == "latex") continue;
    if (val.is_object()) {
      out << indent << key << ":\n";
      text_lines(val, indent + "  ", out);
    } else if (val.is_array() && all_scalars(val)) {
      if (val.empty()) {
        out << indent << key << ": []\n";
      } else if (val.size() <= 4 && std::all_of(val.begin(), val.end(), [](const Json& e) { return !e.is_string(); })) {
        out << indent << key << ": " << val.dump() << "\n";
      } else {
        out << indent << key << ":\n";
        for (const auto& e : val) out << indent << "  - " << scalar_text(e) << "\n";
      }
    } else if (val.is_array()) {
      out << indent << key << ":\n";
      for (const auto& e : val) {
        if (e.is_object()) {
          std::ostringstream item;
          text_lines(e, indent + "  ", item);
          std::string s = item.str();
          s.replace(indent.size(), 2, "- ");
          out << s;
        } else {
          out << indent << "  - " << scalar_text(e) << "\n";
        }
      }
    } else {
      out << indent << key << ": " << scalar_text(val) << "\n";
    }
  }
}

inline void latex_lines(const Json& v, const std::string& path, std::ostringstream& out) {
  for (const auto& [key, val] : v.items()) {
    const std::string here = path.empty() ? key : path + "." + key;
    const bool is_latex = key == "latex" || (key.size() > 6 && key.compare(key.size() - 6, 6, "_latex") == 0);
    if (is_latex && val.is_string()) {
      out << "% " << here << "\n\\[\n  " << val.get<std::string>() << "\n\\]\n";
    } else if (is_latex && val.is_array()) {
      static const char* axis[] = {"x", "y", "z"};
      out << "% " << here << "\n\\begin{align*}\n";
      for (std::size_t k = 0; k < val.size(); ++k)
        out << "  " << (k < 3 ? axis[k] : "?") << ": &\\quad " << val[k].get<std::string>()
            << (k + 1 < val.size() ? " \\\\\n" : "\n");
      out << "\\end{align*}\n";
    } else if (val.is_object()) {
      latex_lines(val, here, out);
    }
  }
}

}  // namespace report_detail

inline std::string render_text(const Json& report) {
  std::ostringstream out;
  report_detail::text_lines(report, "", out);
  return out.str();
}

inline std::string render_latex_report(const Json& report) {
  std::ostringstream out;
  out << "% " << report["command"].get<std::string>() << "\n";
  std::ostringstream eqs;
  report_detail::latex_lines(report["results"], "", eqs);
  out << eqs.str();
  out << "% pass: " << (report["pass"].get<bool>() ? "true" : "false") << "\n";
  const std::string text = render_text(report);
  if (eqs.str().empty()) {
    out << "\\begin{verbatim}\n" << text << "\\end{verbatim}\n";
  }
  return out.str();
}

inline std::string render_report(const Json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  if (format == "text") return render_text(report);
  if (format == "latex") return render_latex_report(report);
  throw UsageError("--format must be text, json or latex");
}

}  // namespace qweyl
