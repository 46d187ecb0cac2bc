#include "chow/report.hpp"

#include <sstream>

#include <json.hpp>

#include "chow/errors.hpp"

namespace chow {

namespace {

using nlohmann::json;
using State = HypothesisChecklist::State;

std::string space_name(Mode mode) {
  return mode == Mode::Divisor ? "E" : "X";
}

std::string divisor_via(int m) {
  return "graded piece of the abutment at total degree " + std::to_string(-m);
}

std::string variety_via(int m) {
  if (m == 1) return "kernel of the units incidence map";
  if (m == 0) return "kernel of Pic(resolution) -> E_2^{0,0}";
  if (m == -1)
    return "cokernel of Pic(resolution) -> E_2^{0,0} with the torus step at "
           "(1,-1)";
  return "exceptional-divisor group at degree " + std::to_string(m + 1);
}

std::string smooth_via(int m) {
  if (m == 1) return "kernel of the units incidence map";
  if (m == 0) return "kernel of the picard comparison map, plus unliftable units";
  return "cokernel of the picard comparison map";
}

void append(std::vector<std::string>& into, const std::vector<std::string>& from) {
  into.insert(into.end(), from.begin(), from.end());
}

void fill_divisor_side(Report& r, const DivisorOutcome& d,
                       const ResolutionData& data) {
  r.dimension = d.dimension;
  r.rule = d.rule;
  r.hypotheses = d.hypotheses;
  r.gamma = d.gamma;
  r.e2 = d.e2;
  r.has_page = true;
  DualComplex gamma = DualComplex::build(data.strata);
  r.components = gamma.component_count();
  r.dot = gamma.export_dot();
  append(r.caveats, d.caveats);
  append(r.caveats, d.abutment.caveats);
}

std::string state_str(State s) {
  switch (s) {
    case State::Pass: return "pass";
    case State::Fail: return "FAIL";
    case State::NotApplicable: return "n/a";
  }
  fail(ErrorCode::Internal, "unhandled hypothesis state");
}

std::vector<std::pair<std::string, State>> hypothesis_lines(
    const HypothesisChecklist& hy) {
  return {{"connected", hy.connected},
          {"irreducible", hy.irreducible},
          {"H^2(Gamma) = 0", hy.h2_zero},
          {"Gamma acyclic", hy.acyclic},
          {"units rank 1", hy.units_rank_one},
          {"units surjective", hy.units_surjective}};
}

json fg_json(const FgAbGroup& g) {
  json torsion = json::array();
  for (const Int& d : g.torsion) torsion.push_back(d.str());
  return json{{"free_rank", g.free_rank}, {"torsion", torsion}};
}

json piece_json(const GradedPiece& gp) {
  return json{{"p", gp.p},
              {"q", gp.q},
              {"torus_rank", gp.torus_rank},
              {"finite", fg_json(gp.finite)},
              {"discrete", fg_json(gp.discrete)}};
}

json mixed_json(const MixedGroup& m) {
  json pieces = json::array();
  for (const GradedPiece& gp : m.pieces) pieces.push_back(piece_json(gp));
  return json{{"torus_rank", m.torus_rank}, {"finite", fg_json(m.finite)},
              {"discrete", fg_json(m.discrete)}, {"graded", m.graded},
              {"pieces", pieces}, {"rendered", m.to_string()}};
}

json entry_json(int p, int q, const PageEntry& e) {
  json torsion = json::array();
  const FgAbGroup& fin =
      e.kind == PageEntry::Kind::Torus ? e.diag.finite : e.discrete;
  for (const Int& d : fin.torsion) torsion.push_back(d.str());
  return json{{"p", p},
              {"q", q},
              {"kind", e.kind == PageEntry::Kind::Torus ? "torus" : "discrete"},
              {"rank", e.rank()},
              {"torsion", torsion},
              {"rendered", e.to_string()}};
}

}  // namespace

Report run(const Config& config) {
  Report r;
  r.mode = config.mode;
  switch (config.mode) {
    case Mode::Divisor: {
      DivisorOutcome outcome = chc1_divisor(config.data);
      r.determinate = outcome.determinate;
      fill_divisor_side(r, outcome, config.data);
      for (auto it = outcome.chc.rbegin(); it != outcome.chc.rend(); ++it)
        r.degrees.push_back({it->first, it->second, divisor_via(it->first)});
      break;
    }
    case Mode::Variety:
    case Mode::Surface: {
      if (!config.resolution_pic)
        fail(ErrorCode::SchemaError,
             "variety and surface modes need a 'resolution' block");
      VarietyOutcome outcome =
          config.mode == Mode::Surface
              ? chc1_surface(config.data, *config.resolution_pic,
                             config.resolution_restrictions)
              : chc1_variety(config.data, *config.resolution_pic,
                             config.resolution_restrictions);
      r.determinate = outcome.determinate;
      fill_divisor_side(r, outcome.divisor, config.data);
      if (outcome.determinate) {
        for (auto it = outcome.chc.rbegin(); it != outcome.chc.rend(); ++it)
          r.degrees.push_back({it->first, it->second, variety_via(it->first)});
      } else {
        r.degrees.push_back({1, outcome.units_degree, variety_via(1)});
      }
      r.has_sequences = true;
      r.sequences = outcome.sequences;
      append(r.caveats, outcome.caveats);
      break;
    }
    case Mode::Smooth2Res: {
      if (!config.smooth)
        fail(ErrorCode::SchemaError,
             "smooth_2resolution mode needs a 'smooth_2resolution' block");
      Smooth2ResOutcome outcome = chc1_smooth_2resolution(*config.smooth);
      r.determinate = true;
      for (auto it = outcome.chc.rbegin(); it != outcome.chc.rend(); ++it)
        r.degrees.push_back({it->first, it->second, smooth_via(it->first)});
      r.has_sequences = true;
      r.sequences = outcome.sequences;
      r.caveats = outcome.caveats;
      break;
    }
  }
  return r;
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  const std::string space = space_name(r.mode);
  out << "chowcalc report\n";
  out << "mode: " << mode_name(r.mode) << "\n";
  if (r.mode != Mode::Smooth2Res)
    out << "dimension: " << r.dimension << "\n";
  out << "status: "
      << (r.determinate ? "determinate" : "indeterminate (hypotheses fail)")
      << "\n";
  if (!r.rule.empty()) out << "rule: " << r.rule << "\n";

  if (r.mode != Mode::Smooth2Res) {
    out << "\nhypotheses:\n";
    for (const auto& [label, state] : hypothesis_lines(r.hypotheses))
      out << "  " << label << ": " << state_str(state) << "\n";

    out << "\ndual complex: " << r.components << " component(s)\n";
    for (std::size_t t = 0; t < r.gamma.size(); ++t)
      out << "  H^" << t << "(Gamma) = " << r.gamma[t].to_string() << "\n";

    out << "\nE_2 page:\n";
    if (r.e2.entries.empty()) out << "  (all entries vanish)\n";
    for (const auto& [key, entry] : r.e2.entries)
      out << "  (" << key.first << "," << key.second
          << ") = " << entry.to_string() << "\n";
  }

  out << "\nchow groups:\n";
  if (r.degrees.empty())
    out << "  no table: the implemented criteria do not determine the page\n";
  for (const DegreeRow& row : r.degrees)
    out << "  CHC^1(" << space << ", " << row.m
        << ") = " << row.value.to_string() << "   [" << row.via << "]\n";
  if (r.determinate)
    out << "  every degree outside the table vanishes\n";

  if (r.has_sequences) {
    out << "\nfour-term sequences (exact):\n";
    for (const ExactSequence& seq : r.sequences.sequences) {
      out << "  " << seq.label << ": 0";
      for (const SequenceTerm& term : seq.terms)
        out << " -> " << term.name << " = " << term.value.to_string();
      out << " -> 0\n";
    }
    out << "  rank balance: " << (r.sequences.rank_balance ? "holds" : "FAILS")
        << "\n";
    out << "  torsion divisibility: "
        << (r.sequences.torsion_consistent ? "consistent" : "INCONSISTENT")
        << "\n";
    for (const std::string& note : r.sequences.notes)
      out << "  note: " << note << "\n";
  }

  if (!r.caveats.empty()) {
    out << "\ncaveats:\n";
    for (const std::string& caveat : r.caveats) out << "  - " << caveat << "\n";
  }
  return out.str();
}

std::string render_machine_json(const Report& r) {
  json out;
  out["schema_version"] = 1;
  out["mode"] = mode_name(r.mode);
  out["determinate"] = r.determinate;
  out["rule"] = r.rule;

  if (r.mode != Mode::Smooth2Res) {
    out["dimension"] = r.dimension;
    json hy;
    for (const auto& [label, state] : hypothesis_lines(r.hypotheses))
      hy[label] = state_str(state);
    out["hypotheses"] = hy;
    json gamma = json::array();
    for (const FgAbGroup& g : r.gamma) gamma.push_back(fg_json(g));
    out["dual_complex"] =
        json{{"components", r.components}, {"cohomology", gamma}};
    json e2 = json::array();
    for (const auto& [key, entry] : r.e2.entries)
      e2.push_back(entry_json(key.first, key.second, entry));
    out["e2"] = e2;
  }

  json degrees = json::array();
  for (const DegreeRow& row : r.degrees)
    degrees.push_back(
        json{{"m", row.m}, {"value", mixed_json(row.value)}, {"via", row.via}});
  out["degrees"] = degrees;

  if (r.has_sequences) {
    json segments = json::array();
    for (const ExactSequence& seq : r.sequences.sequences) {
      json terms = json::array();
      for (const SequenceTerm& term : seq.terms)
        terms.push_back(json{{"name", term.name}, {"value", mixed_json(term.value)}});
      segments.push_back(json{{"label", seq.label}, {"terms", terms}});
    }
    out["sequences"] = json{{"segments", segments},
                            {"rank_balance", r.sequences.rank_balance},
                            {"torsion_consistent", r.sequences.torsion_consistent},
                            {"notes", r.sequences.notes}};
  }

  out["caveats"] = r.caveats;
  return out.dump(2) + "\n";
}

}  // namespace chow
