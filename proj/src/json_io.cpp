#include "imml/json_io.hpp"

#include <fstream>
#include <map>

namespace imml {

namespace {

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return doc.at(key);
}

const json* optional_field(const json& doc, const char* key) {
  return doc.contains(key) ? &doc.at(key) : nullptr;
}

std::string as_string(const json& j, const char* what) {
  if (!j.is_string()) throw FormatError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

class Universe {
 public:
  Universe(std::vector<std::string> labels, const char* what) : labels_(std::move(labels)), what_(what) {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (!index_.emplace(labels_[i], static_cast<World>(i)).second)
        throw FormatError(std::string("duplicate ") + what_ + " '" + labels_[i] + "'");
  }
  World at(const json& j) const {
    auto name = as_string(j, what_);
    auto it = index_.find(name);
    if (it == index_.end()) throw FormatError(std::string("unknown ") + what_ + " '" + name + "'");
    return it->second;
  }
  WorldSet set(const json& j) const {
    if (!j.is_array()) throw FormatError(std::string("expected a list of ") + what_ + "s");
    WorldSet s(labels_.size());
    for (const auto& x : j) s.set(at(x));
    return s;
  }
  Relation pairs(const json& j) const { return pairs(j, *this); }
  Relation pairs(const json& j, const Universe& target) const {
    if (!j.is_array()) throw FormatError("expected a list of pairs");
    Relation r(labels_.size(), WorldSet(target.size()));
    for (const auto& p : j) {
      if (!p.is_array() || p.size() != 2) throw FormatError("expected a pair");
      r[at(p[0])].set(target.at(p[1]));
    }
    return r;
  }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
  const char* what_;
  std::map<std::string, World> index_;
};

std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be a list");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(as_string(x, what));
  return out;
}

unsigned atom_key(const std::string& key) {
  std::string digits = !key.empty() && key[0] == 'p' ? key.substr(1) : key;
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw FormatError("bad atom key '" + key + "'");
  return static_cast<unsigned>(std::stoul(digits));
}

std::vector<WorldSet> valuation(const json* j, const Universe& u) {
  std::vector<WorldSet> val;
  if (!j) return val;
  if (!j->is_object()) throw FormatError("valuation must map atoms to lists");
  for (const auto& [key, worlds] : j->items()) {
    unsigned p = atom_key(key);
    if (val.size() <= p) val.resize(p + 1, WorldSet(u.size()));
    val[p] = u.set(worlds);
  }
  return val;
}

json set_json(const WorldSet& s, const std::vector<std::string>& labels) {
  json a = json::array();
  for (World w : s) a.push_back(labels[w]);
  return a;
}

json pairs_json(const Relation& r, const std::vector<std::string>& from, const std::vector<std::string>& to,
                bool skip_reflexive) {
  json a = json::array();
  for (World w = 0; w < r.size(); ++w)
    for (World v : r[w])
      if (!(skip_reflexive && v == w)) a.push_back({from[w], to[v]});
  return a;
}

json valuation_json(const std::vector<WorldSet>& val, const std::vector<std::string>& labels) {
  json o = json::object();
  for (std::size_t p = 0; p < val.size(); ++p) o["p" + std::to_string(p)] = set_json(val[p], labels);
  return o;
}

Relation closed_order(const json* j, const Universe& u) {
  Relation r = j ? u.pairs(*j) : identity_relation(u.size());
  return reflexive_transitive_closure(std::move(r));
}

void validate_reports(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (!r.ok)
      throw FormatError("model fails check '" + r.check + "'" + (r.witnesses.empty() ? "" : ": " + r.witnesses.front()));
}

std::vector<std::vector<WorldSet>> families_from(const json& j, const Universe& u) {
  std::vector<std::vector<WorldSet>> g(u.size());
  if (!j.is_object()) throw FormatError("gamma must map worlds to lists of lists");
  for (const auto& [w, sets] : j.items()) {
    World i = u.at(json(w));
    if (!sets.is_array()) throw FormatError("gamma entries must be lists");
    for (const auto& s : sets) g[i].push_back(u.set(s));
  }
  return g;
}

json families_json(const std::vector<std::vector<WorldSet>>& g, const std::vector<std::string>& labels) {
  json o = json::object();
  for (World w = 0; w < g.size(); ++w) {
    json a = json::array();
    for (const auto& s : g[w]) a.push_back(set_json(s, labels));
    o[labels[w]] = a;
  }
  return o;
}

}  // namespace

ModelKind model_kind(const AnyModel& m) {
  return std::visit(
      [](const auto& x) {
        using M = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<M, INModel>) return ModelKind::INM;
        else if constexpr (std::is_same_v<M, CNModel>) return ModelKind::CNM;
        else if constexpr (std::is_same_v<M, IK2Model>) return ModelKind::IK2;
        else if constexpr (std::is_same_v<M, IFOMStructure>) return ModelKind::IFOM;
        else return ModelKind::Classical;
      },
      m);
}

AnyModel model_from_json(const json& doc, bool validate) {
  ModelKind kind;
  try {
    kind = kind_from_name(as_string(field(doc, "kind"), "kind"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  Universe u(string_list(field(doc, "worlds"), "world"), "world");
  switch (kind) {
    case ModelKind::INM: {
      INModel m;
      m.labels = u.labels();
      m.up = closed_order(optional_field(doc, "order"), u);
      if (const json* nb = optional_field(doc, "neighbourhoods")) {
        if (!nb->is_object()) throw FormatError("neighbourhoods must map names to partial functions");
        for (const auto& [name, fn] : nb->items()) {
          if (!fn.is_object()) throw FormatError("neighbourhood '" + name + "' must map worlds to lists");
          WorldSet dom(u.size());
          std::vector<WorldSet> values(u.size(), WorldSet(u.size()));
          for (const auto& [w, vs] : fn.items()) {
            World i = u.at(json(w));
            dom.set(i);
            values[i] = u.set(vs);
          }
          m.nbhds.push_back(make_neighbourhood(name, dom, std::move(values)));
        }
      }
      m.val = valuation(optional_field(doc, "valuation"), u);
      if (validate) validate_reports(check_inm(m, InmLevel::Basic));
      return m;
    }
    case ModelKind::CNM: {
      CNModel m;
      m.labels = u.labels();
      const json* ord = optional_field(doc, "preorder");
      m.up = closed_order(ord ? ord : optional_field(doc, "order"), u);
      m.gamma = doc.contains("gamma") ? families_from(doc.at("gamma"), u) : std::vector<std::vector<WorldSet>>(u.size());
      m.val = valuation(optional_field(doc, "valuation"), u);
      if (validate) validate_reports(check_cnm(m));
      return m;
    }
    case ModelKind::IK2: {
      IK2Model m;
      m.labels = u.labels();
      m.up = closed_order(optional_field(doc, "order"), u);
      m.rel_n = doc.contains("relN") ? u.pairs(doc.at("relN")) : empty_relation(u.size());
      m.rel_e = doc.contains("relE") ? u.pairs(doc.at("relE")) : empty_relation(u.size());
      m.val = valuation(optional_field(doc, "valuation"), u);
      if (validate) validate_reports(check_ik2_frame(m));
      return m;
    }
    case ModelKind::Classical: {
      NbhdModel m;
      m.labels = u.labels();
      m.nf = doc.contains("gamma") ? families_from(doc.at("gamma"), u) : std::vector<std::vector<WorldSet>>(u.size());
      m.val = valuation(optional_field(doc, "valuation"), u);
      return m;
    }
    case ModelKind::IFOM: {
      IFOMStructure s;
      s.labels = u.labels();
      s.up = closed_order(optional_field(doc, "order"), u);
      Universe states(string_list(field(doc, "states"), "state"), "state");
      Universe nbhds(doc.contains("nbhds") ? string_list(doc.at("nbhds"), "neighbourhood") : std::vector<std::string>{},
                     "neighbourhood");
      s.state_labels = states.labels();
      s.nbhd_labels = nbhds.labels();
      s.at.assign(u.size(), empty_interp(states.size(), nbhds.size()));
      const json& interp = field(doc, "interpretation");
      if (!interp.is_object()) throw FormatError("interpretation must map worlds to records");
      for (const auto& [w, rec] : interp.items()) {
        FoInterp& I = s.at[u.at(json(w))];
        I.states = states.set(field(rec, "states"));
        if (rec.contains("nbhds")) I.nbhds = nbhds.set(rec.at("nbhds"));
        if (rec.contains("N")) I.rel_n = states.pairs(rec.at("N"), nbhds);
        if (rec.contains("E")) I.rel_e = nbhds.pairs(rec.at("E"), states);
        I.preds = valuation(optional_field(rec, "preds"), states);
      }
      std::size_t atoms = 0;
      for (const auto& I : s.at) atoms = std::max(atoms, I.preds.size());
      for (auto& I : s.at) I.preds.resize(atoms, WorldSet(states.size()));
      if (validate) validate_reports(check_ifom(s));
      return s;
    }
  }
  throw FormatError("unknown kind");
}

json model_to_json(const AnyModel& any) {
  json doc = json::object();
  doc["kind"] = std::string(kind_name(model_kind(any)));
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        const auto& lab = m.labels;
        doc["worlds"] = lab;
        if constexpr (std::is_same_v<M, INModel>) {
          doc["order"] = pairs_json(m.up, lab, lab, true);
          json nb = json::object();
          for (const auto& a : m.nbhds) {
            json fn = json::object();
            for (World w : a.domain) fn[lab[w]] = set_json(a.at(w), lab);
            nb[a.name] = fn;
          }
          doc["neighbourhoods"] = nb;
        } else if constexpr (std::is_same_v<M, CNModel>) {
          doc["preorder"] = pairs_json(m.up, lab, lab, true);
          doc["gamma"] = families_json(m.gamma, lab);
        } else if constexpr (std::is_same_v<M, IK2Model>) {
          doc["order"] = pairs_json(m.up, lab, lab, true);
          doc["relN"] = pairs_json(m.rel_n, lab, lab, false);
          doc["relE"] = pairs_json(m.rel_e, lab, lab, false);
        } else if constexpr (std::is_same_v<M, NbhdModel>) {
          doc["gamma"] = families_json(m.nf, lab);
        } else {
          doc["order"] = pairs_json(m.up, lab, lab, true);
          doc["states"] = m.state_labels;
          doc["nbhds"] = m.nbhd_labels;
          json interp = json::object();
          for (World w = 0; w < m.size(); ++w) {
            const auto& I = m.at[w];
            interp[lab[w]] = {{"states", set_json(I.states, m.state_labels)},
                              {"nbhds", set_json(I.nbhds, m.nbhd_labels)},
                              {"N", pairs_json(I.rel_n, m.state_labels, m.nbhd_labels, false)},
                              {"E", pairs_json(I.rel_e, m.nbhd_labels, m.state_labels, false)},
                              {"preds", valuation_json(I.preds, m.state_labels)}};
          }
          doc["interpretation"] = interp;
        }
        if constexpr (!std::is_same_v<M, IFOMStructure>) doc["valuation"] = valuation_json(m.val, lab);
      },
      any);
  return doc;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void save_json(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << doc.dump(2) << "\n";
}

AnyModel load_model(const std::string& path, bool validate) { return model_from_json(load_json(path), validate); }

// ---------------------------------------------------------------------------
// Derivations

Derivation derivation_from_json(const json& doc, Dialect dialect) {
  Derivation d;
  try {
    d.rule = rule_from_name(as_string(field(doc, "rule"), "rule"));
    const json& c = field(doc, "conclusion");
    std::vector<Formula> ctx;
    if (c.contains("context"))
      for (const auto& f : string_list(c.at("context"), "context formula")) ctx.push_back(parse(f, dialect));
    d.conclusion = Consecution(std::move(ctx), parse(as_string(field(c, "formula"), "formula"), dialect));
  } catch (const SyntaxError& e) {
    throw FormatError(e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  if (doc.contains("premises")) {
    if (!doc.at("premises").is_array()) throw FormatError("premises must be a list");
    for (const auto& p : doc.at("premises")) d.premises.push_back(derivation_from_json(p, dialect));
  }
  if (const json* cert = optional_field(doc, "certificate")) {
    d.schema = as_string(field(*cert, "schema"), "schema");
    if (const json* sub = optional_field(*cert, "subst"))
      for (const auto& [k, v] : sub->items()) {
        try {
          d.subst.emplace(atom_key(k), parse(as_string(v, "substituent"), dialect));
        } catch (const SyntaxError& e) {
          throw FormatError(e.what());
        }
      }
  }
  return d;
}

json derivation_to_json(const Derivation& d) {
  json ctx = json::array();
  for (const auto& f : d.conclusion.context()) ctx.push_back(print(f));
  json doc = {{"rule", std::string(rule_name(d.rule))},
              {"conclusion", {{"context", ctx}, {"formula", print(d.conclusion.formula())}}}};
  if (d.rule == Rule::Ax) {
    json sub = json::object();
    for (const auto& [k, v] : d.subst) sub[std::to_string(k)] = print(v);
    doc["certificate"] = {{"schema", d.schema}, {"subst", sub}};
  }
  if (!d.premises.empty()) {
    json ps = json::array();
    for (const auto& p : d.premises) ps.push_back(derivation_to_json(p));
    doc["premises"] = ps;
  }
  return doc;
}

json reports_to_json(const std::vector<CheckReport>& reports) {
  json a = json::array();
  for (const auto& r : reports) a.push_back({{"check", r.check}, {"ok", r.ok}, {"witnesses", r.witnesses}});
  return a;
}

json search_result_to_json(const SearchResult& r) {
  json doc = {{"status", r.found ? "counterexample" : "none-within-bounds"},
              {"examined", r.examined},
              {"elapsed_ms", r.elapsed_ms},
              {"timed_out", r.timed_out}};
  if (r.found) {
    const auto& labels = std::visit([](const auto& m) -> const std::vector<std::string>& { return m.labels; }, *r.model);
    doc["world"] = labels[r.world];
    if (const auto* s = std::get_if<IFOMStructure>(&*r.model)) doc["state"] = s->state_labels[r.state];
    doc["model"] = model_to_json(*r.model);
  }
  return doc;
}

}  // namespace imml
