#include "imml/folm.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>

namespace imml {

std::string print(const Var& v) { return (v.sort == Sort::State ? "x" : "a") + std::to_string(v.index); }

struct FoFormula::Node {
  FoOp op;
  unsigned pred = 0;
  Var a{Sort::State, 0}, b{Sort::State, 0};
  FoFormula l{std::shared_ptr<const Node>()};
  FoFormula r{std::shared_ptr<const Node>()};
};

namespace {

void require(Var v, Sort s, const char* what) {
  if (v.sort != s) throw std::invalid_argument(std::string("sort mismatch in ") + what);
}

}  // namespace

FoFormula FoFormula::pred(unsigned i, Var x) {
  require(x, Sort::State, "predicate argument");
  auto n = std::make_shared<Node>();
  n->op = FoOp::Pred;
  n->pred = i;
  n->a = x;
  return FoFormula(std::move(n));
}

FoFormula FoFormula::rel_n(Var x, Var a) {
  require(x, Sort::State, "N (first argument)");
  require(a, Sort::Nbhd, "N (second argument)");
  auto n = std::make_shared<Node>();
  n->op = FoOp::RelN;
  n->a = x;
  n->b = a;
  return FoFormula(std::move(n));
}

FoFormula FoFormula::rel_e(Var a, Var x) {
  require(a, Sort::Nbhd, "E (first argument)");
  require(x, Sort::State, "E (second argument)");
  auto n = std::make_shared<Node>();
  n->op = FoOp::RelE;
  n->a = a;
  n->b = x;
  return FoFormula(std::move(n));
}

FoFormula FoFormula::falsum() {
  static const auto node = [] {
    auto n = std::make_shared<Node>();
    n->op = FoOp::Falsum;
    return std::shared_ptr<const Node>(n);
  }();
  return FoFormula(node);
}

FoFormula FoFormula::binary(FoOp op, FoFormula l, FoFormula r) {
  if (op != FoOp::And && op != FoOp::Or && op != FoOp::Implies) throw std::invalid_argument("not a connective");
  auto n = std::make_shared<Node>();
  n->op = op;
  n->l = std::move(l);
  n->r = std::move(r);
  return FoFormula(std::move(n));
}

FoFormula FoFormula::forall(Var v, FoFormula body) {
  auto n = std::make_shared<Node>();
  n->op = FoOp::Forall;
  n->a = v;
  n->l = std::move(body);
  return FoFormula(std::move(n));
}

FoFormula FoFormula::exists(Var v, FoFormula body) {
  auto n = std::make_shared<Node>();
  n->op = FoOp::Exists;
  n->a = v;
  n->l = std::move(body);
  return FoFormula(std::move(n));
}

FoOp FoFormula::op() const { return node_->op; }
unsigned FoFormula::pred_index() const { return node_->pred; }
Var FoFormula::first() const { return node_->a; }
Var FoFormula::second() const { return node_->b; }

const FoFormula& FoFormula::left() const { return node_->l; }
const FoFormula& FoFormula::right() const { return node_->r; }

bool operator==(const FoFormula& x, const FoFormula& y) {
  if (x.node_ == y.node_) return true;
  if (x.op() != y.op()) return false;
  switch (x.op()) {
    case FoOp::Pred:
      return x.pred_index() == y.pred_index() && x.first() == y.first();
    case FoOp::RelN:
    case FoOp::RelE:
      return x.first() == y.first() && x.second() == y.second();
    case FoOp::Falsum:
      return true;
    case FoOp::Forall:
    case FoOp::Exists:
      return x.first() == y.first() && x.left() == y.left();
    default:
      return x.left() == y.left() && x.right() == y.right();
  }
}

std::string print(const FoFormula& f) {
  switch (f.op()) {
    case FoOp::Pred:
      return "P" + std::to_string(f.pred_index()) + "(" + print(f.first()) + ")";
    case FoOp::RelN:
      return "N(" + print(f.first()) + "," + print(f.second()) + ")";
    case FoOp::RelE:
      return "E(" + print(f.first()) + "," + print(f.second()) + ")";
    case FoOp::Falsum:
      return "F";
    case FoOp::And:
      return "(" + print(f.left()) + " & " + print(f.right()) + ")";
    case FoOp::Or:
      return "(" + print(f.left()) + " | " + print(f.right()) + ")";
    case FoOp::Implies:
      return "(" + print(f.left()) + " -> " + print(f.right()) + ")";
    case FoOp::Forall:
      return "forall " + print(f.first()) + ". " + print(f.left());
    case FoOp::Exists:
      return "exists " + print(f.first()) + ". " + print(f.left());
  }
  return "?";
}

std::vector<Var> free_variables(const FoFormula& f) {
  std::set<Var> out;
  std::function<void(const FoFormula&, std::set<Var>&)> go = [&](const FoFormula& g, std::set<Var>& bound) {
    auto note = [&](Var v) {
      if (!bound.count(v)) out.insert(v);
    };
    switch (g.op()) {
      case FoOp::Pred:
        note(g.first());
        break;
      case FoOp::RelN:
      case FoOp::RelE:
        note(g.first());
        note(g.second());
        break;
      case FoOp::Falsum:
        break;
      case FoOp::Forall:
      case FoOp::Exists: {
        bool fresh = bound.insert(g.first()).second;
        go(g.left(), bound);
        if (fresh) bound.erase(g.first());
        break;
      }
      default:
        go(g.left(), bound);
        go(g.right(), bound);
    }
  };
  std::set<Var> bound;
  go(f, bound);
  return {out.begin(), out.end()};
}

FoFormula standard_translation(const Formula& phi, Var x) {
  require(x, Sort::State, "standard translation");
  const unsigned k = x.index;
  switch (phi.op()) {
    case Op::Atom:
      return FoFormula::pred(phi.atom_index(), x);
    case Op::Falsum:
      return FoFormula::falsum();
    case Op::And:
      return FoFormula::binary(FoOp::And, standard_translation(phi.left(), x), standard_translation(phi.right(), x));
    case Op::Or:
      return FoFormula::binary(FoOp::Or, standard_translation(phi.left(), x), standard_translation(phi.right(), x));
    case Op::Implies:
      return FoFormula::binary(FoOp::Implies, standard_translation(phi.left(), x),
                               standard_translation(phi.right(), x));
    case Op::Box: {
      Var a{Sort::Nbhd, k}, y{Sort::State, k + 1};
      auto inner = FoFormula::forall(
          y, FoFormula::binary(FoOp::Implies, FoFormula::rel_e(a, y), standard_translation(phi.sub(), y)));
      return FoFormula::exists(a, FoFormula::binary(FoOp::And, FoFormula::rel_n(x, a), inner));
    }
    case Op::Dia: {
      Var a{Sort::Nbhd, k}, y{Sort::State, k + 1};
      auto inner = FoFormula::exists(
          y, FoFormula::binary(FoOp::And, FoFormula::rel_e(a, y), standard_translation(phi.sub(), y)));
      return FoFormula::forall(a, FoFormula::binary(FoOp::Implies, FoFormula::rel_n(x, a), inner));
    }
    default:
      throw std::invalid_argument("standard translation is defined on the []/<> language only");
  }
}

FoInterp empty_interp(std::size_t n_states, std::size_t n_nbhds) {
  return {WorldSet(n_states), WorldSet(n_nbhds), Relation(n_states, WorldSet(n_nbhds)),
          Relation(n_nbhds, WorldSet(n_states)), {}};
}

std::vector<CheckReport> check_ifom(const IFOMStructure& s) {
  const std::size_t n = s.size();
  const std::size_t ns = s.state_labels.size(), na = s.nbhd_labels.size();
  std::vector<CheckReport> out;
  CheckReport shape("shape");
  if (s.up.size() != n || s.at.size() != n) shape.fail("order or interpretation not sized to the worlds");
  for (const auto& I : s.at)
    if (I.states.universe() != ns || I.nbhds.universe() != na || I.rel_n.size() != ns || I.rel_e.size() != na)
      shape.fail("interpretation not sized to the element universes");
  out.push_back(shape);
  if (!shape.ok) return out;

  CheckReport order("order");
  for (World w = 0; w < n; ++w) {
    if (!s.up[w].test(w)) order.fail("not reflexive at " + s.labels[w]);
    for (World v : s.up[w]) {
      if (!s.up[v].subset_of(s.up[w])) order.fail("not transitive at " + s.labels[w] + " <= " + s.labels[v]);
      if (v != w && s.up[v].test(w)) order.fail("not antisymmetric: " + s.labels[w] + ", " + s.labels[v]);
    }
  }
  out.push_back(order);

  CheckReport typing("typing");
  for (World w = 0; w < n; ++w) {
    const auto& I = s.at[w];
    const auto& L = s.labels[w];
    for (unsigned x = 0; x < ns; ++x) {
      if (I.rel_n[x].any() && !I.states.test(x)) typing.fail("N at " + L + " uses absent state " + s.state_labels[x]);
      if (!I.rel_n[x].subset_of(I.nbhds)) typing.fail("N at " + L + " uses an absent neighbourhood");
    }
    for (unsigned a = 0; a < na; ++a) {
      if (I.rel_e[a].any() && !I.nbhds.test(a)) typing.fail("E at " + L + " uses absent neighbourhood " + s.nbhd_labels[a]);
      if (!I.rel_e[a].subset_of(I.states)) typing.fail("E at " + L + " uses an absent state");
    }
    for (std::size_t p = 0; p < I.preds.size(); ++p)
      if (!I.preds[p].subset_of(I.states)) typing.fail("P" + std::to_string(p) + " at " + L + " uses an absent state");
  }
  out.push_back(typing);

  CheckReport growth("monotone-growth");
  for (World w = 0; w < n; ++w)
    for (World v : s.up[w]) {
      const auto& I = s.at[w];
      const auto& J = s.at[v];
      bool ok = I.states.subset_of(J.states) && I.nbhds.subset_of(J.nbhds);
      for (unsigned x = 0; x < ns && ok; ++x) ok = I.rel_n[x].subset_of(J.rel_n[x]);
      for (unsigned a = 0; a < na && ok; ++a) ok = I.rel_e[a].subset_of(J.rel_e[a]);
      for (std::size_t p = 0; p < I.preds.size() && ok; ++p)
        ok = I.preds[p].subset_of(valuation_of(J.preds, ns, static_cast<unsigned>(p)));
      if (!ok) growth.fail("interpretation shrinks from " + s.labels[w] + " to " + s.labels[v]);
    }
  out.push_back(growth);
  return out;
}

bool is_valid_ifom(const IFOMStructure& s) {
  auto rs = check_ifom(s);
  return std::all_of(rs.begin(), rs.end(), [](const CheckReport& r) { return r.ok; });
}

namespace {

unsigned lookup(const FoEnv& env, Var v, const FoInterp& I) {
  auto it = env.find(v);
  if (it == env.end()) throw std::invalid_argument("unbound variable " + print(v));
  const WorldSet& dom = v.sort == Sort::State ? I.states : I.nbhds;
  if (it->second >= dom.universe() || !dom.test(it->second))
    throw std::invalid_argument("variable " + print(v) + " is bound outside its domain");
  return it->second;
}

bool atomic(const FoInterp& I, const FoFormula& f, const FoEnv& env) {
  switch (f.op()) {
    case FoOp::Pred:
      return valuation_of(I.preds, I.states.universe(), f.pred_index()).test(lookup(env, f.first(), I));
    case FoOp::RelN:
      return I.rel_n[lookup(env, f.first(), I)].test(lookup(env, f.second(), I));
    case FoOp::RelE:
      return I.rel_e[lookup(env, f.first(), I)].test(lookup(env, f.second(), I));
    default:
      return false;
  }
}

bool classical(const FoInterp& I, const FoFormula& f, FoEnv& env) {
  switch (f.op()) {
    case FoOp::Pred:
    case FoOp::RelN:
    case FoOp::RelE:
    case FoOp::Falsum:
      return atomic(I, f, env);
    case FoOp::And:
      return classical(I, f.left(), env) && classical(I, f.right(), env);
    case FoOp::Or:
      return classical(I, f.left(), env) || classical(I, f.right(), env);
    case FoOp::Implies:
      return !classical(I, f.left(), env) || classical(I, f.right(), env);
    case FoOp::Forall:
    case FoOp::Exists: {
      const Var v = f.first();
      const WorldSet& dom = v.sort == Sort::State ? I.states : I.nbhds;
      auto saved = env.find(v) != env.end() ? std::optional<unsigned>(env[v]) : std::nullopt;
      const bool universal = f.op() == FoOp::Forall;
      bool result = universal;
      for (unsigned d : dom) {
        env[v] = d;
        if (classical(I, f.left(), env) != universal) {
          result = !universal;
          break;
        }
      }
      if (saved) env[v] = *saved; else env.erase(v);
      return result;
    }
  }
  return false;
}

bool kripke(const IFOMStructure& s, World w, const FoFormula& f, FoEnv& env) {
  const auto& I = s.at[w];
  switch (f.op()) {
    case FoOp::Pred:
    case FoOp::RelN:
    case FoOp::RelE:
    case FoOp::Falsum:
      return atomic(I, f, env);
    case FoOp::And:
      return kripke(s, w, f.left(), env) && kripke(s, w, f.right(), env);
    case FoOp::Or:
      return kripke(s, w, f.left(), env) || kripke(s, w, f.right(), env);
    case FoOp::Implies:
      for (World v : s.up[w])
        if (kripke(s, v, f.left(), env) && !kripke(s, v, f.right(), env)) return false;
      return true;
    case FoOp::Forall:
    case FoOp::Exists: {
      const Var v = f.first();
      auto saved = env.find(v) != env.end() ? std::optional<unsigned>(env[v]) : std::nullopt;
      bool result = f.op() == FoOp::Forall;
      auto restore = [&] {
        if (saved) env[v] = *saved; else env.erase(v);
      };
      if (f.op() == FoOp::Exists) {
        const WorldSet& dom = v.sort == Sort::State ? I.states : I.nbhds;
        for (unsigned d : dom) {
          env[v] = d;
          if (kripke(s, w, f.left(), env)) {
            result = true;
            break;
          }
        }
      } else {
        for (World u : s.up[w]) {
          const auto& J = s.at[u];
          const WorldSet& dom = v.sort == Sort::State ? J.states : J.nbhds;
          for (unsigned d : dom) {
            env[v] = d;
            if (!kripke(s, u, f.left(), env)) {
              result = false;
              break;
            }
          }
          if (!result) break;
        }
      }
      restore();
      return result;
    }
  }
  return false;
}

bool pair_semantics(const IFOMStructure& s, World w, unsigned x, const Formula& phi) {
  const auto& I = s.at[w];
  switch (phi.op()) {
    case Op::Atom:
      return valuation_of(I.preds, I.states.universe(), phi.atom_index()).test(x);
    case Op::Falsum:
      return false;
    case Op::And:
      return pair_semantics(s, w, x, phi.left()) && pair_semantics(s, w, x, phi.right());
    case Op::Or:
      return pair_semantics(s, w, x, phi.left()) || pair_semantics(s, w, x, phi.right());
    case Op::Implies:
      for (World v : s.up[w])
        if (pair_semantics(s, v, x, phi.left()) && !pair_semantics(s, v, x, phi.right())) return false;
      return true;
    case Op::Box:
      for (unsigned a : I.nbhds) {
        if (!I.rel_n[x].test(a)) continue;
        bool all = true;
        for (World v : s.up[w]) {
          for (unsigned y : s.at[v].states)
            if (s.at[v].rel_e[a].test(y) && !pair_semantics(s, v, y, phi.sub())) {
              all = false;
              break;
            }
          if (!all) break;
        }
        if (all) return true;
      }
      return false;
    case Op::Dia:
      for (World v : s.up[w]) {
        const auto& J = s.at[v];
        for (unsigned a : J.nbhds) {
          if (!J.rel_n[x].test(a)) continue;
          bool some = false;
          for (unsigned y : J.states)
            if (J.rel_e[a].test(y) && pair_semantics(s, v, y, phi.sub())) {
              some = true;
              break;
            }
          if (!some) return false;
        }
      }
      return true;
    default:
      throw std::invalid_argument("pair semantics is defined on the []/<> language only");
  }
}

}  // namespace

bool eval_fo_classical(const FOMStructure& m, const FoFormula& phi, const FoEnv& env) {
  FoEnv e = env;
  for (const auto& [v, d] : env) lookup(env, v, m.interp);
  return classical(m.interp, phi, e);
}

bool eval_fo_kripke(const IFOMStructure& s, World w, const FoFormula& phi, const FoEnv& env) {
  if (w >= s.size()) throw std::out_of_range("unknown world");
  for (const auto& [v, d] : env) lookup(env, v, s.at[w]);
  FoEnv e = env;
  return kripke(s, w, phi, e);
}

bool eval_modal_ifom(const IFOMStructure& s, World w, unsigned d, const Formula& phi) {
  if (w >= s.size()) throw std::out_of_range("unknown world");
  if (d >= s.state_labels.size() || !s.at[w].states.test(d))
    throw std::invalid_argument("state is not in the domain of the world");
  return pair_semantics(s, w, d, phi);
}

NbhdModel classical_bullet(const FOMStructure& m) {
  const auto& I = m.interp;
  std::vector<unsigned> states = I.states.members();
  std::vector<World> index(I.states.universe(), 0);
  for (World i = 0; i < states.size(); ++i) index[states[i]] = i;
  const std::size_t n = states.size();
  NbhdModel out;
  for (unsigned x : states) out.labels.push_back(m.state_labels[x]);
  out.nf.resize(n);
  for (World i = 0; i < n; ++i) {
    std::set<WorldSet> g;
    for (unsigned a : I.rel_n[states[i]] & I.nbhds) {
      WorldSet y(n);
      for (unsigned s : I.rel_e[a] & I.states) y.set(index[s]);
      g.insert(y);
    }
    out.nf[i].assign(g.begin(), g.end());
  }
  for (const auto& p : I.preds) {
    WorldSet v(n);
    for (unsigned s : p & I.states) v.set(index[s]);
    out.val.push_back(v);
  }
  return out;
}

FOMStructure classical_circle(const NbhdModel& m) {
  const std::size_t n = m.size();
  std::set<WorldSet> all;
  for (const auto& g : m.nf) all.insert(g.begin(), g.end());
  std::vector<WorldSet> nbhds(all.begin(), all.end());
  FOMStructure out;
  out.state_labels = m.labels;
  for (const auto& a : nbhds) out.nbhd_labels.push_back(format_set(a, m.labels));
  out.interp = empty_interp(n, nbhds.size());
  out.interp.states = WorldSet::full(n);
  out.interp.nbhds = WorldSet::full(nbhds.size());
  for (std::size_t j = 0; j < nbhds.size(); ++j) {
    out.interp.rel_e[j] = nbhds[j];
    for (World w = 0; w < n; ++w)
      if (std::find(m.nf[w].begin(), m.nf[w].end(), nbhds[j]) != m.nf[w].end())
        out.interp.rel_n[w].set(static_cast<World>(j));
  }
  out.interp.preds = m.val;
  return out;
}

}  // namespace imml
