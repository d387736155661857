#include "jetcc/report.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace jetcc {

namespace {

std::string yesno(bool b) { return b ? "yes" : "no"; }

std::string pad_left(const std::string& s, size_t w) {
  return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, size_t w) {
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

// Right-aligned plain table; first row is the header.
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> width;
  for (const auto& r : rows)
    for (size_t c = 0; c < r.size(); ++c) {
      if (width.size() <= c) width.resize(c + 1, 0);
      width[c] = std::max(width[c], r[c].size());
    }
  std::ostringstream out;
  for (const auto& r : rows) {
    out << "  ";
    for (size_t c = 0; c < r.size(); ++c) {
      if (c) out << "  ";
      out << pad_left(r[c], width[c]);
    }
    out << "\n";
  }
  return out.str();
}

bool is_identity(const QMatrix& a) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != Rational(i == j ? 1 : 0)) return false;
  return true;
}

std::string marks_string(const JanetRow& row, int n) {
  std::string out;
  for (int j = 1; j <= n; ++j) {
    if (j > 1) out += " ";
    if (j <= row.cls)
      out += std::to_string(j);
    else if (std::find(row.cross_vars.begin(), row.cross_vars.end(), j) !=
             row.cross_vars.end())
      out += "×";  // ×
    else
      out += "•";  // •
  }
  return out;
}

std::string equation_string(const PDESystem& sys, const LinForm& lhs,
                            const LinForm& rhs) {
  return form_to_string(lhs, sys.unknowns, sys.vars) + " = " +
         form_to_string(rhs, sys.sources, sys.vars);
}

Json system_json(const SystemFile& file) {
  const PDESystem& sys = file.system;
  Json j;
  j["text"] = emit_system(file);
  j["vars"] = sys.vars;
  j["unknowns"] = sys.unknowns;
  j["sources"] = sys.sources;
  j["order"] = std::max(sys.order(), 0);
  Json eqs = Json::array();
  for (size_t i = 0; i < sys.eqs.size(); ++i) {
    const Equation& e = sys.eqs[i];
    Json je;
    je["label"] = file.labels[i];
    je["lhs"] = form_to_string(e.lhs, sys.unknowns, sys.vars);
    je["rhs"] = form_to_string(e.rhs, sys.sources, sys.vars);
    eqs.push_back(je);
  }
  j["equations"] = eqs;
  return j;
}

void render_system(std::ostringstream& txt, const SystemFile& file) {
  const PDESystem& sys = file.system;
  txt << "== system ==\n";
  txt << "  vars:    ";
  for (const auto& v : sys.vars) txt << " " << v;
  txt << "\n  unknowns:";
  for (const auto& u : sys.unknowns) txt << " " << u;
  txt << "\n  sources: ";
  for (const auto& s : sys.sources) txt << " " << s;
  txt << "\n  order:    " << std::max(sys.order(), 0) << "\n";
  for (size_t i = 0; i < sys.eqs.size(); ++i)
    txt << "  eq " << file.labels[i] << ": "
        << equation_string(sys, sys.eqs[i].lhs, sys.eqs[i].rhs) << "\n";
}

Json dims_section(const PDESystem& sys, int depth, std::ostringstream& txt) {
  int q = std::max(sys.order(), 0);
  Json j;
  Json levels = Json::array();
  std::vector<std::vector<std::string>> table;
  table.push_back({"level", "dim J(E)", "dim R", "dim g", "pi(next)", "dim B",
                   "dim Q"});
  for (int r = 0; r <= depth; ++r) {
    int level = q + r;
    SolveResult up = solve_at(sys, level + 1, false);
    CCDims cd = cc_dims(sys, r);
    long long dim_g = symbol_at_level(sys, level).dim();
    long long projected = up.projected_dim(level);
    Json row;
    row["level"] = level;
    row["dim_jet"] = cd.dim_jet_E;
    row["dim_R"] = cd.dim_R;
    row["dim_symbol"] = dim_g;
    row["dim_projected"] = projected;
    row["dim_B"] = cd.dim_B;
    row["dim_Q"] = cd.dim_Q;
    levels.push_back(row);
    table.push_back({std::to_string(level), std::to_string(cd.dim_jet_E),
                     std::to_string(cd.dim_R), std::to_string(dim_g),
                     std::to_string(projected), std::to_string(cd.dim_B),
                     std::to_string(cd.dim_Q)});
  }
  FiTestResult fi = fi_test(sys, depth);
  j["levels"] = levels;
  j["fi_ok"] = fi.ok;
  j["fi_failed_at"] = fi.failed_at;
  txt << "== dims (levels " << q << ".." << q + depth << ") ==\n";
  txt << render_table(table);
  txt << "  formally integrable to depth " << depth << ": " << yesno(fi.ok);
  if (!fi.ok) txt << " (first failure at level " << q + fi.failed_at << ")";
  txt << "\n";
  return j;
}

Json tabular_section(const PDESystem& sys, unsigned long seed,
                     std::ostringstream& txt) {
  int q = std::max(sys.order(), 0);
  RegularizeResult reg = delta_regularize(sys, 0, seed);
  JanetTabular disp = system_tabular(reg.sys, q);
  int n = sys.nvars();

  Json j;
  j["level"] = q;
  j["seed"] = seed;
  j["tries"] = reg.tries;
  j["coordinates_changed"] = !is_identity(reg.change);
  Json change = Json::array();
  for (const auto& row : reg.change) {
    Json jr = Json::array();
    for (const auto& e : row) jr.push_back(rat_to_string(e));
    change.push_back(jr);
  }
  j["change"] = change;
  j["delta_involutive"] = reg.delta_verdict;
  j["janet_involutive"] = reg.janet_verdict;
  j["verdicts_agree"] = reg.agree;
  j["characters"] = disp.characters;
  j["cartan_sum"] = disp.cartan_sum;
  j["rank_next"] = disp.rank_next;
  j["cartan_equal"] = disp.cartan_equal;
  Json rows = Json::array();
  const PDESystem& shown = reg.sys;
  for (const auto& row : disp.rows) {
    Json jr;
    jr["label"] = row.label;
    jr["pivot"] = jet_name(row.pivot, shown.unknowns);
    jr["class"] = row.cls;
    jr["cross_vars"] = row.cross_vars;
    jr["equation"] = equation_string(shown, row.lhs, row.rhs);
    rows.push_back(jr);
  }
  j["rows"] = rows;

  txt << "== tabular (level " << q << ", seed " << seed << ") ==\n";
  txt << "  regularization tries: " << reg.tries << ", coordinates "
      << (is_identity(reg.change) ? "unchanged" : "changed") << "\n";
  txt << "  delta involutive: " << yesno(reg.delta_verdict)
      << " | janet involutive: " << yesno(reg.janet_verdict)
      << " | verdicts agree: " << yesno(reg.agree) << "\n";
  txt << "  characters (alpha^1..alpha^" << n << "): (";
  for (int i = 0; i < n; ++i)
    txt << (i ? ", " : "") << disp.characters[i];
  txt << ") | cartan sum: " << disp.cartan_sum
      << " | rank at level " << q + 1 << ": " << disp.rank_next
      << " | equal: " << yesno(disp.cartan_equal) << "\n";
  size_t w = 0;
  for (const auto& row : disp.rows)
    w = std::max(w, equation_string(shown, row.lhs, row.rhs).size());
  for (const auto& row : disp.rows)
    txt << "  " << pad_right(equation_string(shown, row.lhs, row.rhs), w)
        << " | " << marks_string(row, n) << "\n";
  return j;
}

Json cc_json(const PDESystem& sys, const GeneratingCC& run) {
  Json j;
  Json term;
  term["found"] = run.termination.found;
  term["r"] = run.termination.r;
  term["s"] = run.termination.s;
  term["t"] = run.termination.t;
  j["termination"] = term;
  j["scanned_to"] = run.scanned_to;
  j["complete"] = run.complete;
  Json per = Json::array();
  for (const auto& [o, oc] : run.per_order) {
    Json row;
    row["order"] = o;
    row["dim_Q"] = oc.dim_Q;
    row["new_generators"] = oc.new_generators;
    row["identities"] = oc.identities;
    per.push_back(row);
  }
  j["per_order"] = per;
  Json gens = Json::array();
  for (const auto& g : run.generators) {
    Json jg;
    jg["label"] = g.label;
    jg["order"] = g.order();
    jg["form"] = form_to_string(g.form, sys.sources, sys.vars);
    gens.push_back(jg);
  }
  j["generators"] = gens;
  return j;
}

void render_cc(std::ostringstream& txt, const PDESystem& sys,
               const GeneratingCC& run) {
  txt << "== compatibility conditions (scanned to order " << run.scanned_to
      << ", " << (run.complete ? "complete" : "INCOMPLETE: cap hit") << ") ==\n";
  if (run.termination.found)
    txt << "  termination bound: t = " << run.termination.t << " via (r, s) = ("
        << run.termination.r << ", " << run.termination.s
        << "), certified formally integrable\n";
  else
    txt << "  termination bound: not found within the cap\n";
  std::vector<std::vector<std::string>> table;
  table.push_back({"order", "dim Q", "new", "identities"});
  for (const auto& [o, oc] : run.per_order)
    table.push_back({std::to_string(o), std::to_string(oc.dim_Q),
                     std::to_string(oc.new_generators),
                     std::to_string(oc.identities)});
  txt << render_table(table);
  if (run.generators.empty()) {
    txt << "  no generating compatibility conditions\n";
  } else {
    txt << "  generators:\n";
    for (const auto& g : run.generators)
      txt << "    " << g.label << " (order " << g.order()
          << "): " << form_to_string(g.form, sys.sources, sys.vars) << "\n";
  }
}

Json syzygy_json(const PDESystem& d1, const SyzygyResult& res) {
  Json j;
  j["search_order"] = res.search_order;
  j["complete"] = res.run.complete;
  Json rel = Json::array();
  for (const auto& r : res.relations) {
    Json jr;
    jr["label"] = r.label;
    jr["order"] = r.order();
    jr["form"] = form_to_string(r.form, d1.sources, d1.vars);
    rel.push_back(jr);
  }
  j["relations"] = rel;
  return j;
}

void render_syzygies(std::ostringstream& txt, const PDESystem& d1,
                     const SyzygyResult& res) {
  txt << "== syzygies (search order " << res.search_order << ", "
      << (res.run.complete ? "complete" : "INCOMPLETE: cap hit") << ") ==\n";
  if (res.relations.empty()) {
    txt << "  no relations among the generators\n";
  } else {
    for (const auto& r : res.relations)
      txt << "  " << r.label << " (order " << r.order()
          << "): " << form_to_string(r.form, d1.sources, d1.vars) << " = 0\n";
  }
}

Json resolution_json(const ResolutionReport& rep) {
  Json j;
  j["ranks"] = rep.ranks;
  j["orders"] = rep.orders;
  j["euler"] = rep.euler;
  j["differential_rank"] = rep.differential_rank;
  j["complete"] = rep.complete;
  return j;
}

void render_resolution(std::ostringstream& txt, const ResolutionReport& rep) {
  txt << "== resolution ==\n  ranks: ";
  for (size_t i = 0; i < rep.ranks.size(); ++i)
    txt << (i ? " " : "") << rep.ranks[i];
  txt << "\n  orders:";
  for (int o : rep.orders) txt << " " << o;
  txt << "\n  euler characteristic (differential rank): " << rep.euler
      << "\n  complete: " << yesno(rep.complete) << "\n";
}

Json invariants_section(const PDESystem& sys, std::ostringstream& txt) {
  Json j;
  txt << "== invariants ==\n";

  PPResult pp = pp_procedure(sys);
  Json jpp;
  Json chain = Json::array();
  for (const auto& [s, d] : pp.chain) chain.push_back(Json::array({s, d}));
  jpp["chain"] = chain;
  jpp["stable_s"] = pp.stable_s;
  jpp["certified"] = pp.certified;
  jpp["j_star"] = pp.certificate.j_star;
  j["pp"] = jpp;
  txt << "  pp chain:";
  for (const auto& [s, d] : pp.chain)
    txt << " (s=" << s << ", dim " << d << ")";
  txt << " | stable at s = " << pp.stable_s
      << " | certified: " << yesno(pp.certified)
      << " (j* = " << pp.certificate.j_star << ")\n";

  std::array<long long, 6> con = connecting_sequence_dims(sys, 0);
  long long alt = 0;
  long long sign = 1;
  for (long long v : con) {
    alt += sign * v;
    sign = -sign;
  }
  j["connecting_r0"] = con;
  j["connecting_r0_alternating_sum"] = alt;
  txt << "  connecting sequence (r = 0): (";
  for (size_t i = 0; i < con.size(); ++i) txt << (i ? ", " : "") << con[i];
  txt << ") | alternating sum: " << alt << "\n";

  Json jc = Json::array();
  for (int r = 0; r <= 1; ++r) {
    JetCohomology h = jet_cohomology_dims(sys, r);
    Json row;
    row["r"] = r;
    row["h_R"] = h.h_R;
    row["h_S"] = h.h_S;
    row["h_J"] = h.h_J;
    jc.push_back(row);
    txt << "  jet cohomology (r = " << r << "): H_R = " << h.h_R
        << ", H_S = " << h.h_S << ", H_J = " << h.h_J
        << " | additive: " << yesno(h.h_S == h.h_R + h.h_J) << "\n";
  }
  j["jet_cohomology"] = jc;

  try {
    SequenceDims sd = sequence_dims(sys);
    Json js;
    js["spencer"] = sd.spencer;
    js["trivial"] = sd.trivial;
    js["janet"] = sd.janet;
    j["sequence_dims"] = js;
    auto alt_of = [](const std::vector<long long>& v) {
      long long a = 0, s = 1;
      for (long long x : v) {
        a += s * x;
        s = -s;
      }
      return a;
    };
    txt << "  sequence dims: spencer (";
    for (size_t i = 0; i < sd.spencer.size(); ++i)
      txt << (i ? ", " : "") << sd.spencer[i];
    txt << "), trivial (";
    for (size_t i = 0; i < sd.trivial.size(); ++i)
      txt << (i ? ", " : "") << sd.trivial[i];
    txt << "), janet (";
    for (size_t i = 0; i < sd.janet.size(); ++i)
      txt << (i ? ", " : "") << sd.janet[i];
    txt << ") | alternating sums: " << alt_of(sd.spencer) << ", "
        << alt_of(sd.trivial) << ", " << alt_of(sd.janet) << "\n";
  } catch (const PreconditionError& e) {
    Json js;
    js["skipped"] = e.failing_check;
    j["sequence_dims"] = js;
    txt << "  sequence dims: skipped (precondition " << e.failing_check
        << " not met)\n";
  }
  return j;
}

}  // namespace

Report run_command(const SystemFile& file, const std::string& command,
                   const ReportOptions& opt) {
  const PDESystem& sys = file.system;
  Report rep;
  std::ostringstream txt;
  rep.structured["schema"] = "jetcc-report-v1";
  rep.structured["command"] = command;
  rep.structured["seed"] = opt.seed;
  rep.structured["max_order"] = opt.max_order;
  rep.structured["depth"] = opt.depth;
  rep.structured["system"] = system_json(file);
  render_system(txt, file);

  bool incomplete = false;
  auto run_cc = [&]() {
    GeneratingCC run = generating_cc(sys, opt.max_order);
    if (!run.complete) incomplete = true;
    return run;
  };

  if (command == "dims") {
    txt << "\n";
    rep.structured["dims"] = dims_section(sys, opt.depth, txt);
  } else if (command == "tabular") {
    txt << "\n";
    rep.structured["tabular"] = tabular_section(sys, opt.seed, txt);
  } else if (command == "cc") {
    GeneratingCC run = run_cc();
    txt << "\n";
    rep.structured["cc"] = cc_json(sys, run);
    render_cc(txt, sys, run);
  } else if (command == "syzygies") {
    GeneratingCC run = run_cc();
    txt << "\n";
    rep.structured["cc"] = cc_json(sys, run);
    render_cc(txt, sys, run);
    SyzygyResult res = syzygies(sys, run.generators, opt.max_order);
    if (!res.run.complete) incomplete = true;
    PDESystem d1 = cc_system(sys, run.generators);
    txt << "\n";
    rep.structured["syzygies"] = syzygy_json(d1, res);
    render_syzygies(txt, d1, res);
  } else if (command == "resolution") {
    ResolutionReport res = resolution(sys, opt.max_order);
    if (!res.complete) incomplete = true;
    txt << "\n";
    rep.structured["resolution"] = resolution_json(res);
    render_resolution(txt, res);
  } else if (command == "full") {
    txt << "\n";
    rep.structured["dims"] = dims_section(sys, opt.depth, txt);
    txt << "\n";
    rep.structured["tabular"] = tabular_section(sys, opt.seed, txt);
    GeneratingCC run = run_cc();
    txt << "\n";
    rep.structured["cc"] = cc_json(sys, run);
    render_cc(txt, sys, run);
    SyzygyResult res = syzygies(sys, run.generators, opt.max_order);
    if (!res.run.complete) incomplete = true;
    PDESystem d1 = cc_system(sys, run.generators);
    txt << "\n";
    rep.structured["syzygies"] = syzygy_json(d1, res);
    render_syzygies(txt, d1, res);
    ResolutionReport rr = resolution(sys, opt.max_order);
    if (!rr.complete) incomplete = true;
    txt << "\n";
    rep.structured["resolution"] = resolution_json(rr);
    render_resolution(txt, rr);
    txt << "\n";
    rep.structured["invariants"] = invariants_section(sys, txt);
  } else {
    throw ParseError("unknown command '" + command + "'", 0, 0);
  }

  rep.exit_code = incomplete ? 2 : 0;
  rep.text = txt.str();
  return rep;
}

}  // namespace jetcc
