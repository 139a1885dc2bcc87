#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "imml/calculi.hpp"
#include "imml/generators.hpp"
#include "imml/json_io.hpp"
#include "imml/search.hpp"
#include "imml/transforms.hpp"

using namespace imml;

namespace {

// Exit codes: 0 true / ok, 1 false / failed check, 2 usage, parse or
// validation error.
constexpr int kTrue = 0, kFalse = 1, kError = 2;

struct Globals {
  bool json = false;
  std::uint64_t seed = 1;
  unsigned timeout_ms = 0;
  bool no_validate = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Dialect dialect_option(const std::string& name) {
  try {
    return dialect_from_name(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// cnm documents read both L_□◇ and L_▽; ▽ wins only if the modal parse fails.
Formula parse_for(ModelKind kind, const std::string& text, const std::string& dialect) {
  if (!dialect.empty()) return parse(text, dialect_option(dialect));
  if (kind == ModelKind::CNM) {
    try {
      return parse(text, Dialect::Modal);
    } catch (const SyntaxError&) {
      return parse(text, Dialect::Nabla);
    }
  }
  return parse(text, kind_dialect(kind));
}

Consecution consecution_for(ModelKind kind, const std::string& text, const std::string& dialect) {
  if (!dialect.empty()) return parse_consecution(text, dialect_option(dialect));
  if (kind == ModelKind::CNM) {
    try {
      return parse_consecution(text, Dialect::Modal);
    } catch (const SyntaxError&) {
      return parse_consecution(text, Dialect::Nabla);
    }
  }
  return parse_consecution(text, kind_dialect(kind));
}

const std::vector<std::string>& labels_of(const AnyModel& m) {
  return std::visit([](const auto& x) -> const std::vector<std::string>& { return x.labels; }, m);
}

World find_label(const std::vector<std::string>& labels, const std::string& name, const char* what) {
  auto it = std::find(labels.begin(), labels.end(), name);
  if (it == labels.end()) throw UsageError(std::string("unknown ") + what + " '" + name + "'");
  return static_cast<World>(it - labels.begin());
}

void emit(const Globals& g, const json& doc, const std::string& text) {
  if (g.json)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
}

void write_doc(const json& doc, const std::string& out, bool compact = false) {
  const int indent = compact ? -1 : 2;
  if (out.empty() || out == "-") {
    std::cout << doc.dump(indent) << "\n";
  } else {
    std::ofstream f(out);
    if (!f) throw UsageError("cannot write " + out);
    f << doc.dump(indent) << "\n";
  }
}

std::string reports_text(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << (r.ok ? "ok   " : "FAIL ") << r.check << "\n";
    for (const auto& w : r.witnesses) os << "       " << w << "\n";
  }
  return os.str();
}

bool all_ok(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.ok; });
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_parse(const Globals& g, const std::string& text, const std::string& dialect) {
  Formula f = parse(text, dialect_option(dialect.empty() ? "modal" : dialect));
  json doc = {{"formula", print(f)}, {"modal_depth", modal_depth(f)}, {"modality_depth", modality_depth(f)},
              {"size", f.size()}};
  emit(g, doc, print(f));
  return kTrue;
}

int cmd_eval(const Globals& g, const std::string& file, const std::string& world, const std::string& text,
             const std::string& state, const std::string& dialect, bool trace) {
  AnyModel m = load_model(file, !g.no_validate);
  ModelKind kind = model_kind(m);
  Formula f = parse_for(kind, text, dialect);
  if (!kind_accepts(kind, f)) throw UsageError(print(f) + " is outside the language of " + std::string(kind_name(kind)) + " models");
  World w = find_label(labels_of(m), world, "world");
  bool value = false;
  std::string explanation;
  switch (kind) {
    case ModelKind::INM: {
      const auto& x = std::get<INModel>(m);
      value = eval_inm(x, w, f);
      if (trace) explanation = trace_inm(x, w, f);
      break;
    }
    case ModelKind::CNM: {
      const auto& x = std::get<CNModel>(m);
      value = eval_cnm(x, w, f);
      if (trace) explanation = trace_cnm(x, w, f);
      break;
    }
    case ModelKind::IK2: {
      const auto& x = std::get<IK2Model>(m);
      value = eval_ik2(x, w, f);
      if (trace) explanation = trace_ik2(x, w, f);
      break;
    }
    case ModelKind::Classical: {
      const auto& x = std::get<NbhdModel>(m);
      value = eval_classical(x, w, f);
      if (trace) explanation = trace_classical(x, w, f);
      break;
    }
    case ModelKind::IFOM: {
      const auto& x = std::get<IFOMStructure>(m);
      if (state.empty()) throw UsageError("ifom evaluation needs --state");
      World d = find_label(x.state_labels, state, "state");
      value = eval_modal_ifom(x, w, d, f);
      bool via_st = eval_fo_kripke(x, w, standard_translation(f, Var{Sort::State, 0}), {{Var{Sort::State, 0}, d}});
      if (trace)
        explanation = std::string("pair semantics: ") + (value ? "true" : "false") +
                      "\nstandard translation " + print(standard_translation(f, Var{Sort::State, 0})) + ": " +
                      (via_st ? "true" : "false") + "\n";
      break;
    }
  }
  json doc = {{"world", world}, {"formula", print(f)}, {"value", value}};
  if (!state.empty()) doc["state"] = state;
  if (trace) doc["trace"] = explanation;
  emit(g, doc, (trace ? explanation : std::string()) + (value ? "true" : "false"));
  return value ? kTrue : kFalse;
}

int cmd_check_model(const Globals& g, const std::string& file, const std::string& level) {
  AnyModel m = load_model(file, false);
  std::vector<CheckReport> reports;
  switch (model_kind(m)) {
    case ModelKind::INM: {
      InmLevel l = level == "basic"       ? InmLevel::Basic
                   : level == "coherent"  ? InmLevel::Coherent
                   : level == "cartesian" ? InmLevel::Cartesian
                                          : throw UsageError("--level must be basic, coherent or cartesian");
      reports = check_inm(std::get<INModel>(m), l);
      break;
    }
    case ModelKind::CNM: {
      const auto& c = std::get<CNModel>(m);
      reports = check_cnm(c);
      CheckReport full("full");
      if (!check_full(c)) full.fail("some world with neighbourhoods sees a world without");
      reports.push_back(full);
      break;
    }
    case ModelKind::IK2: reports = check_ik2_frame(std::get<IK2Model>(m)); break;
    case ModelKind::IFOM: reports = check_ifom(std::get<IFOMStructure>(m)); break;
    case ModelKind::Classical: reports.emplace_back("well-formed"); break;
  }
  emit(g, reports_to_json(reports), reports_text(reports));
  return all_ok(reports) ? kTrue : kFalse;
}

int cmd_translate(const Globals& g, const std::string& text, const std::string& to) {
  std::string out;
  if (to == "bimodal") {
    out = print(translate_bimodal(parse(text, Dialect::Modal)));
  } else if (to == "box") {
    out = print(embed_box(parse(text, Dialect::Nabla)));
  } else if (to == "dia") {
    out = print(embed_dia(parse(text, Dialect::Nabla)));
  } else if (to == "st") {
    out = print(standard_translation(parse(text, Dialect::Modal), Var{Sort::State, 0}));
  } else {
    throw UsageError("--to must be bimodal, box, dia or st");
  }
  emit(g, json{{"input", text}, {"to", to}, {"output", out}}, out);
  return kTrue;
}

int cmd_transform(const Globals& g, const std::string& name, const std::string& file, const std::string& out,
                  std::size_t coh_levels, std::size_t unravel_len, const std::string& root) {
  AnyModel m = load_model(file, !g.no_validate);
  auto need_inm = [&]() -> const INModel& {
    if (!std::holds_alternative<INModel>(m)) throw UsageError(name + " needs an inm document");
    return std::get<INModel>(m);
  };
  json doc;
  if (name == "bullet") {
    if (!std::holds_alternative<IFOMStructure>(m)) throw UsageError("bullet needs an ifom document");
    doc = model_to_json(bullet(std::get<IFOMStructure>(m)).model);
  } else if (name == "circle") {
    doc = model_to_json(circle(need_inm()));
  } else if (name == "coh") {
    doc = model_to_json(coherent_completion(need_inm(), coh_levels).model);
  } else if (name == "unravel") {
    const INModel& x = need_inm();
    World s = root.empty() ? 0 : find_label(x.labels, root, "world");
    doc = model_to_json(unravel(x, s, unravel_len).model);
  } else if (name == "hat") {
    doc = model_to_json(hat(need_inm()).model);
  } else if (name == "fullify") {
    if (!std::holds_alternative<CNModel>(m)) throw UsageError("fullify needs a cnm document");
    doc = model_to_json(fullify(std::get<CNModel>(m)));
  } else if (name == "star") {
    doc = model_to_json(star(need_inm()));
  } else {
    throw UsageError("unknown transform '" + name + "'");
  }
  (void)g;
  write_doc(doc, out);
  return kTrue;
}

SearchBounds parse_bounds(const std::string& text) {
  std::vector<std::size_t> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      v.push_back(std::stoul(part));
    } catch (const std::exception&) {
      throw UsageError("--bounds expects W,N,A[,S], got '" + text + "'");
    }
  }
  if (v.size() < 3 || v.size() > 4) throw UsageError("--bounds expects W,N,A[,S], got '" + text + "'");
  SearchBounds b;
  b.max_worlds = v[0];
  b.max_nbhds = v[1];
  b.max_atoms = v[2];
  if (v.size() == 4) b.max_states = v[3];
  return b;
}

int cmd_search(const Globals& g, const std::string& text, const std::string& kind_text, const std::string& bounds_text,
               unsigned workers, bool coherent, bool cartesian, bool full, const std::string& dialect) {
  ModelKind kind;
  try {
    kind = kind_from_name(kind_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Consecution c = consecution_for(kind, text, dialect);
  SearchBounds b = parse_bounds(bounds_text);
  b.require_coherent = coherent;
  b.require_cartesian = cartesian;
  b.require_full = full;
  SearchOptions o;
  o.workers = workers;
  o.timeout = std::chrono::milliseconds(g.timeout_ms);
  SearchResult r = find_countermodel(c, kind, b, o);
  json doc = search_result_to_json(r);
  doc["consecution"] = print(c);
  doc["kind"] = std::string(kind_name(kind));
  std::ostringstream os;
  if (r.found) {
    os << "counterexample at world " << labels_of(*r.model)[r.world] << " after " << r.examined << " models\n"
       << model_to_json(*r.model).dump(2);
  } else {
    os << "none within bounds (" << r.examined << " models" << (r.timed_out ? ", timed out" : "") << ")";
  }
  emit(g, doc, os.str());
  return r.found ? kFalse : kTrue;
}

int cmd_proof(const Globals& g, const std::string& action, const std::string& file, const std::string& calculus,
              const std::string& hyp, const std::string& out, bool compact) {
  std::string calc_name = calculus;
  if (calc_name.empty()) calc_name = action == "compile" ? "IM_Calc" : "IK2";
  CalculusSpec spec;
  try {
    spec = builtin_calculus(calc_name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Derivation d = derivation_from_json(load_json(file), spec.dialect);
  if (action == "check") {
    CheckResult r = check_derivation(spec, d);
    json doc = {{"calculus", spec.name}, {"ok", r.ok}, {"conclusion", print(d.conclusion)}, {"size", d.size()}};
    if (!r.ok) {
      doc["path"] = r.path;
      doc["reason"] = r.reason;
    }
    emit(g, doc, r.ok ? "ok: " + print(d.conclusion) : "error at " + r.path + ": " + r.reason);
    return r.ok ? kTrue : kFalse;
  }
  if (action == "compile") {
    if (spec.name != "IM_Calc") throw UsageError("compile reads IM_Calc derivations");
    write_doc(derivation_to_json(compile_proof(d)), out, compact);
    return kTrue;
  }
  if (action == "deduce") {
    if (hyp.empty()) throw UsageError("deduce needs --hyp");
    write_doc(derivation_to_json(deduce(spec, d, parse(hyp, spec.dialect))), out, compact);
    return kTrue;
  }
  throw UsageError("proof action must be check, compile or deduce");
}

int cmd_path(const Globals& g, const std::string& relation, const std::string& file, const std::string& a,
             const std::string& b) {
  const INModel m = [&] {
    AnyModel any = load_model(file, !g.no_validate);
    if (!std::holds_alternative<INModel>(any)) throw UsageError("path needs an inm document");
    return std::get<INModel>(any);
  }();
  UrPath p, q;
  try {
    p = parse_path(a, m);
    q = parse_path(b, m);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  bool value;
  if (relation == "leq")
    value = leq_ur(p, q, m.up);
  else if (relation == "rtilde")
    value = p.ord == q.ord;
  else
    throw UsageError("path relation must be leq or rtilde");
  json doc = {{"relation", relation}, {"left", format_path(p, m)}, {"right", format_path(q, m)}, {"value", value}};
  emit(g, doc, value ? "true" : "false");
  return value ? kTrue : kFalse;
}

int cmd_generate(const Globals& g, const std::string& kind_text, std::size_t worlds, std::size_t nbhds,
                 std::size_t atoms, bool coherent) {
  Rng rng(g.seed);
  ModelKind kind;
  try {
    kind = kind_from_name(kind_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  AnyModel m;
  switch (kind) {
    case ModelKind::INM: {
      INModel x = random_inm(rng, worlds, nbhds, atoms);
      m = coherent ? make_coherent(std::move(x)) : std::move(x);
      break;
    }
    case ModelKind::CNM: m = random_cnm(rng, worlds, nbhds, atoms); break;
    case ModelKind::IK2: m = star(make_coherent(random_inm(rng, worlds, nbhds, atoms))); break;
    case ModelKind::IFOM: m = random_ifom(rng, worlds, std::max<std::size_t>(worlds, 2), nbhds, atoms); break;
    case ModelKind::Classical: m = random_classical(rng, worlds, nbhds, atoms); break;
  }
  std::cout << model_to_json(m).dump(2) << "\n";
  return kTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Models, transforms, calculi and countermodel search for intuitionistic monotone modal logic"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Print machine-readable JSON");
  app.add_option("--seed", g.seed, "Seed for sampled runs");
  app.add_option("--timeout-ms", g.timeout_ms, "Wall-clock cap for search (0 = none)");
  app.add_flag("--no-validate", g.no_validate, "Skip the kind's checker when loading documents");

  std::function<int()> run;

  std::string text, dialect;
  auto* parse_cmd = app.add_subcommand("parse", "Parse and pretty-print a formula");
  parse_cmd->add_option("formula", text)->required();
  parse_cmd->add_option("--dialect", dialect, "modal, nabla or bimodal");
  parse_cmd->callback([&] { run = [&] { return cmd_parse(g, text, dialect); }; });

  std::string file, world, state;
  bool trace = false;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula at a world (exit 0 true, 1 false)");
  eval_cmd->add_option("model", file)->required();
  eval_cmd->add_option("world", world)->required();
  eval_cmd->add_option("formula", text)->required();
  eval_cmd->add_option("--state", state, "State element (ifom documents)");
  eval_cmd->add_option("--dialect", dialect);
  eval_cmd->add_flag("--trace", trace, "Explain the verdict clause by clause");
  eval_cmd->callback([&] { run = [&] { return cmd_eval(g, file, world, text, state, dialect, trace); }; });

  std::string level = "cartesian";
  auto* check_cmd = app.add_subcommand("check-model", "Run the structural checkers (exit 0 all pass)");
  check_cmd->add_option("model", file)->required();
  check_cmd->add_option("--level", level, "inm: basic, coherent or cartesian");
  check_cmd->callback([&] { run = [&] { return cmd_check_model(g, file, level); }; });

  std::string to = "bimodal";
  auto* tr_cmd = app.add_subcommand("translate", "Syntactic translations");
  tr_cmd->add_option("formula", text)->required();
  tr_cmd->add_option("--to", to, "bimodal, box, dia or st");
  tr_cmd->callback([&] { run = [&] { return cmd_translate(g, text, to); }; });

  std::string name, out, root;
  std::size_t coh_levels = 2, unravel_len = 2;
  auto* tf_cmd = app.add_subcommand("transform", "Model transformations; writes a model document");
  tf_cmd->add_option("name", name, "bullet, circle, coh, unravel, hat, fullify or star")->required();
  tf_cmd->add_option("model", file)->required();
  tf_cmd->add_option("-o,--output", out, "Output file (default stdout)");
  tf_cmd->add_option("--coh-levels", coh_levels);
  tf_cmd->add_option("--unravel-len", unravel_len);
  tf_cmd->add_option("--root", root, "Basepoint for unravel");
  tf_cmd->callback([&] { run = [&] { return cmd_transform(g, name, file, out, coh_levels, unravel_len, root); }; });

  std::string kind = "inm", bounds = "2,1,1";
  unsigned workers = 0;
  bool coherent = false, cartesian = false, full = false;
  auto* search_cmd = app.add_subcommand("search", "Bounded countermodel search (exit 0 none found, 1 found)");
  search_cmd->add_option("consecution", text, "\"G1, G2 |- phi\" or just \"phi\"")->required();
  search_cmd->add_option("--kind", kind, "inm, cnm, ik2, ifom or classical");
  search_cmd->add_option("--bounds", bounds, "W,N,A[,S]: worlds, neighbourhoods, atoms, states");
  search_cmd->add_option("--workers", workers, "0 = available cores");
  search_cmd->add_option("--dialect", dialect);
  search_cmd->add_flag("--coherent", coherent);
  search_cmd->add_flag("--cartesian", cartesian);
  search_cmd->add_flag("--full", full);
  search_cmd->callback([&] {
    run = [&] { return cmd_search(g, text, kind, bounds, workers, coherent, cartesian, full, dialect); };
  });

  std::string action, calculus, hyp;
  auto* proof_cmd = app.add_subcommand("proof", "Check, compile or deduce derivations");
  proof_cmd->add_option("action", action, "check, compile or deduce")->required();
  proof_cmd->add_option("derivation", file)->required();
  proof_cmd->add_option("--calculus", calculus, "ghc0, iM, WM, IM_Calc or IK2");
  proof_cmd->add_option("--hyp", hyp, "Hypothesis to discharge (deduce)");
  bool compact = false;
  proof_cmd->add_option("-o,--output", out);
  proof_cmd->add_flag("--compact", compact, "Write JSON without indentation");
  proof_cmd->callback([&] { run = [&] { return cmd_proof(g, action, file, calculus, hyp, out, compact); }; });

  std::string relation, left, right;
  auto* path_cmd = app.add_subcommand("path", "Relations between unravelling paths (exit 0 related)");
  path_cmd->add_option("relation", relation, "leq or rtilde")->required();
  path_cmd->add_option("model", file)->required();
  path_cmd->add_option("left", left)->required();
  path_cmd->add_option("right", right)->required();
  path_cmd->callback([&] { run = [&] { return cmd_path(g, relation, file, left, right); }; });

  std::size_t gw = 3, gn = 1, ga = 1;
  bool gcoh = false;
  auto* gen_cmd = app.add_subcommand("generate", "Random model document from --seed");
  gen_cmd->add_option("kind", kind)->required();
  gen_cmd->add_option("--worlds", gw);
  gen_cmd->add_option("--nbhds", gn);
  gen_cmd->add_option("--atoms", ga);
  gen_cmd->add_flag("--coherent", gcoh);
  gen_cmd->callback([&] { run = [&] { return cmd_generate(g, kind, gw, gn, ga, gcoh); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }
  try {
    return run();
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error at " << e.position() << ": " << e.what() << "\n";
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
  } catch (const FormatError& e) {
    std::cerr << "invalid document: " << e.what() << "\n";
  } catch (const DerivationError& e) {
    std::cerr << "derivation error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kError;
}
