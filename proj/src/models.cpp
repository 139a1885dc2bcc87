#include "imml/models.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include <boost/pending/disjoint_sets.hpp>

namespace imml {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

Neighbourhood make_neighbourhood(std::string name, WorldSet domain, std::vector<WorldSet> values) {
  return {std::move(name), std::move(domain), std::make_shared<const std::vector<WorldSet>>(std::move(values))};
}

WorldSet valuation_of(const std::vector<WorldSet>& val, std::size_t n, unsigned atom) {
  return atom < val.size() ? val[atom] : WorldSet(n);
}

std::string format_set(const WorldSet& s, const std::vector<std::string>& labels) {
  std::string out = "{";
  bool first = true;
  for (World w : s) {
    if (!first) out += ", ";
    first = false;
    out += w < labels.size() ? labels[w] : std::to_string(w);
  }
  return out + "}";
}

std::uint32_t FormulaDag::add(const Formula& f) {
  if (auto it = index_.find(f); it != index_.end()) return it->second;
  Node node{f.op(), 0, 0, 0};
  switch (f.op()) {
    case Op::Atom:
      node.atom = f.atom_index();
      break;
    case Op::Falsum:
      break;
    default:
      node.l = add(f.left());
      if (is_binary(f.op())) node.r = add(f.right());
  }
  auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(node);
  index_.emplace(f, id);
  return id;
}

namespace {

[[noreturn]] void unsupported(Op op, const char* kind) {
  static const char* names[] = {"atom", "falsum", "and", "or", "implies", "[]", "<>", "nabla", "[N]", "<N>", "[E]", "<E>"};
  throw std::invalid_argument(std::string("modality ") + names[static_cast<int>(op)] + " is not interpreted in " + kind +
                              " models");
}

// Shared propositional skeleton. `up` is null for classical semantics.
template <class Modal>
std::vector<WorldSet> run(const FormulaDag& dag, std::size_t n, const Relation* up, const std::vector<WorldSet>& val,
                          const std::vector<WorldSet>* atoms, Modal&& modal) {
  const auto& nodes = dag.nodes();
  std::vector<WorldSet> out(nodes.size());
  const auto& table = atoms ? *atoms : val;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& nd = nodes[i];
    switch (nd.op) {
      case Op::Atom:
        out[i] = valuation_of(table, n, nd.atom);
        break;
      case Op::Falsum:
        out[i] = WorldSet(n);
        break;
      case Op::And:
        out[i] = out[nd.l] & out[nd.r];
        break;
      case Op::Or:
        out[i] = out[nd.l] | out[nd.r];
        break;
      case Op::Implies: {
        WorldSet s = out[nd.l].complement() | out[nd.r];
        out[i] = up ? interior(s, *up) : s;
        break;
      }
      default:
        out[i] = modal(nd.op, out[nd.l]);
    }
  }
  return out;
}

void check_world(std::size_t n, World w) {
  if (w >= n) throw std::out_of_range("unknown world " + std::to_string(w));
}

}  // namespace

std::vector<WorldSet> evaluate(const INModel& m, const FormulaDag& dag, const std::vector<WorldSet>* atoms) {
  const std::size_t n = m.size();
  // Neighbourhoods sharing a value table are handled together: their domains
  // are upsets, so the □ and ◇ clauses only need the union of the domains.
  std::vector<std::pair<const std::vector<WorldSet>*, WorldSet>> groups;
  for (const auto& a : m.nbhds) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == a.values.get(); });
    if (it == groups.end()) it = groups.emplace(groups.end(), a.values.get(), WorldSet(n));
    it->second |= a.domain;
  }
  return run(dag, n, &m.up, m.val, atoms, [&](Op op, const WorldSet& x) {
    if (op == Op::Box) {
      WorldSet res(n);
      for (const auto& [table, dom] : groups) {
        WorldSet good(n);
        for (World w : dom)
          if ((*table)[w].subset_of(x)) good.set(w);
        res |= interior(good, m.up);
      }
      return res;
    }
    if (op == Op::Dia) {
      WorldSet ok = WorldSet::full(n);
      for (const auto& [table, dom] : groups)
        for (World w : dom)
          if (!(*table)[w].intersects(x)) ok.reset(w);
      return interior(ok, m.up);
    }
    unsupported(op, "intuitionistic neighbourhood");
  });
}

std::vector<WorldSet> evaluate(const CNModel& m, const FormulaDag& dag, const std::vector<WorldSet>* atoms) {
  const std::size_t n = m.size();
  return run(dag, n, &m.up, m.val, atoms, [&](Op op, const WorldSet& x) {
    WorldSet local(n);
    if (op == Op::Box || op == Op::Nabla) {
      for (World w = 0; w < n; ++w)
        for (const auto& a : m.gamma[w])
          if (a.subset_of(x)) {
            local.set(w);
            break;
          }
    } else if (op == Op::Dia) {
      for (World w = 0; w < n; ++w)
        local.assign(w, std::all_of(m.gamma[w].begin(), m.gamma[w].end(),
                                    [&](const WorldSet& a) { return a.intersects(x); }));
    } else {
      unsupported(op, "constructive neighbourhood");
    }
    return interior(local, m.up);
  });
}

std::vector<WorldSet> evaluate(const IK2Model& m, const FormulaDag& dag, const std::vector<WorldSet>* atoms) {
  const std::size_t n = m.size();
  return run(dag, n, &m.up, m.val, atoms, [&](Op op, const WorldSet& x) {
    const Relation* r = nullptr;
    bool is_box = false;
    switch (op) {
      case Op::BoxN:
        r = &m.rel_n, is_box = true;
        break;
      case Op::DiaN:
        r = &m.rel_n;
        break;
      case Op::BoxE:
        r = &m.rel_e, is_box = true;
        break;
      case Op::DiaE:
        r = &m.rel_e;
        break;
      default:
        unsupported(op, "IK2");
    }
    WorldSet local(n);
    for (World w = 0; w < n; ++w) local.assign(w, is_box ? (*r)[w].subset_of(x) : (*r)[w].intersects(x));
    return is_box ? interior(local, m.up) : local;
  });
}

std::vector<WorldSet> evaluate(const NbhdModel& m, const FormulaDag& dag, const std::vector<WorldSet>* atoms) {
  const std::size_t n = m.size();
  return run(dag, n, nullptr, m.val, atoms, [&](Op op, const WorldSet& x) {
    WorldSet local(n);
    for (World w = 0; w < n; ++w) {
      const auto& nf = m.nf[w];
      if (op == Op::Box)
        local.assign(w, std::any_of(nf.begin(), nf.end(), [&](const WorldSet& a) { return a.subset_of(x); }));
      else if (op == Op::Dia)
        local.assign(w, std::all_of(nf.begin(), nf.end(), [&](const WorldSet& a) { return a.intersects(x); }));
      else
        unsupported(op, "classical neighbourhood");
    }
    return local;
  });
}

bool eval_inm(const INModel& m, World w, const Formula& f) {
  check_world(m.size(), w);
  return truth_set(m, f).test(w);
}
bool eval_cnm(const CNModel& m, World w, const Formula& f) {
  check_world(m.size(), w);
  return truth_set(m, f).test(w);
}
bool eval_ik2(const IK2Model& m, World w, const Formula& f) {
  check_world(m.size(), w);
  return truth_set(m, f).test(w);
}
bool eval_classical(const NbhdModel& m, World w, const Formula& f) {
  check_world(m.size(), w);
  return truth_set(m, f).test(w);
}

// ---------------------------------------------------------------------------
// Traces.

namespace {

// Explains a modal verdict at a world given the operand's truth set.
using Reason = std::function<std::string(Op, World, bool, const WorldSet&)>;

template <class Model>
std::string trace_generic(const Model& m, World w, const Formula& f, const Relation* up, const Reason& reason) {
  check_world(m.size(), w);
  FormulaDag dag;
  dag.add(f);
  auto sets = evaluate(m, dag);
  const auto& lab = m.labels;
  std::ostringstream out;
  std::function<void(const Formula&, int)> go = [&](const Formula& g, int depth) {
    const WorldSet& s = sets[dag.add(g)];
    const bool v = s.test(w);
    out << std::string(2 * depth, ' ') << print(g) << "  " << (v ? "true" : "false") << " at " << lab[w]
        << "  truth set " << format_set(s, lab);
    std::string note;
    if (g.op() == Op::Implies && !v) {
      const WorldSet& l = sets[dag.add(g.left())];
      const WorldSet& r = sets[dag.add(g.right())];
      WorldSet bad = l - r;
      if (up) bad &= (*up)[w];
      if (bad.any()) note = "antecedent holds and consequent fails at " + lab[*bad.begin()];
    } else if (is_modal(g.op())) {
      note = reason(g.op(), w, v, sets[dag.add(g.sub())]);
    }
    if (!note.empty()) out << "  (" << note << ")";
    out << '\n';
    if (g.op() != Op::Atom && g.op() != Op::Falsum && !g.is_top()) {
      go(g.left(), depth + 1);
      if (is_binary(g.op())) go(g.right(), depth + 1);
    }
  };
  go(f, 0);
  return out.str();
}

}  // namespace

std::string trace_inm(const INModel& m, World w, const Formula& f) {
  return trace_generic(m, w, f, &m.up, [&](Op op, World at, bool v, const WorldSet& x) -> std::string {
    const auto& lab = m.labels;
    if (op == Op::Box) {
      for (const auto& a : m.nbhds) {
        if (!a.domain.test(at)) continue;
        bool all = true;
        for (World u : m.up[at])
          if (!a.at(u).subset_of(x)) all = false;
        if (all) return "witness neighbourhood " + a.name;
      }
      return v ? "" : "no neighbourhood of " + lab[at] + " stays inside the operand";
    }
    if (!v) {
      for (World u : m.up[at])
        for (const auto& a : m.nbhds)
          if (a.domain.test(u) && !a.at(u).intersects(x))
            return "neighbourhood " + a.name + " at " + lab[u] + " misses the operand";
    }
    return "";
  });
}

std::string trace_cnm(const CNModel& m, World w, const Formula& f) {
  return trace_generic(m, w, f, &m.up, [&](Op op, World at, bool v, const WorldSet& x) -> std::string {
    const auto& lab = m.labels;
    if (v) return "";
    for (World u : m.up[at]) {
      const auto& g = m.gamma[u];
      if (op == Op::Dia) {
        for (const auto& a : g)
          if (!a.intersects(x)) return "neighbourhood " + format_set(a, lab) + " of " + lab[u] + " misses the operand";
      } else if (std::none_of(g.begin(), g.end(), [&](const WorldSet& a) { return a.subset_of(x); })) {
        return "no neighbourhood of " + lab[u] + " inside the operand";
      }
    }
    return "";
  });
}

std::string trace_ik2(const IK2Model& m, World w, const Formula& f) {
  return trace_generic(m, w, f, &m.up, [&](Op op, World at, bool v, const WorldSet& x) -> std::string {
    const auto& lab = m.labels;
    const bool n_rel = op == Op::BoxN || op == Op::DiaN;
    const Relation& r = n_rel ? m.rel_n : m.rel_e;
    if (op == Op::BoxN || op == Op::BoxE) {
      if (v) return "";
      for (World u : m.up[at])
        for (World z : r[u])
          if (!x.test(z)) return lab[u] + " reaches " + lab[z] + " where the operand fails";
      return "";
    }
    if (v) {
      for (World z : r[at])
        if (x.test(z)) return "witness " + lab[z];
    }
    return "";
  });
}

std::string trace_classical(const NbhdModel& m, World w, const Formula& f) {
  return trace_generic(m, w, f, nullptr, [&](Op op, World at, bool v, const WorldSet& x) -> std::string {
    const auto& lab = m.labels;
    for (const auto& a : m.nf[at]) {
      if (op == Op::Box && v && a.subset_of(x)) return "witness " + format_set(a, lab);
      if (op == Op::Dia && !v && !a.intersects(x)) return "neighbourhood " + format_set(a, lab) + " misses the operand";
    }
    return "";
  });
}

// ---------------------------------------------------------------------------
// Checkers.

namespace {

void check_partial_order(const Relation& up, const std::vector<std::string>& lab, CheckReport& r, bool antisymmetric) {
  const std::size_t n = up.size();
  for (World w = 0; w < n; ++w) {
    if (!up[w].test(w)) r.fail("not reflexive at " + lab[w]);
    for (World v : up[w]) {
      if (!up[v].subset_of(up[w])) {
        World u = *(up[v] - up[w]).begin();
        r.fail("not transitive: " + lab[w] + " <= " + lab[v] + " <= " + lab[u]);
      }
      if (antisymmetric && v != w && up[v].test(w)) r.fail("not antisymmetric: " + lab[w] + ", " + lab[v]);
    }
  }
}

void check_valuation(const std::vector<WorldSet>& val, const Relation& up, const std::vector<std::string>& lab,
                     CheckReport& r) {
  for (std::size_t p = 0; p < val.size(); ++p)
    if (!is_upset(val[p], up)) r.fail("V(p" + std::to_string(p) + ") = " + format_set(val[p], lab) + " is not an upset");
}

}  // namespace

Relation membership_relation(const INModel& m) {
  Relation r = empty_relation(m.size());
  for (const auto& a : m.nbhds)
    for (World w : a.domain) r[w] |= a.at(w);
  return r;
}

std::vector<World> equivalence_classes(const Relation& r) {
  const std::size_t n = r.size();
  boost::disjoint_sets_with_storage<> ds(n);
  for (World w = 0; w < n; ++w) ds.make_set(w);
  for (World w = 0; w < n; ++w)
    for (World v : r[w]) ds.union_set(w, v);
  std::vector<World> least(n, static_cast<World>(n));
  for (World w = 0; w < n; ++w) {
    auto root = ds.find_set(w);
    least[root] = std::min<World>(least[root], w);
  }
  std::vector<World> out(n);
  for (World w = 0; w < n; ++w) out[w] = least[ds.find_set(w)];
  return out;
}

std::vector<World> r_tilde_classes(const INModel& m) { return equivalence_classes(membership_relation(m)); }
std::vector<World> leq_tilde_classes(const INModel& m) { return equivalence_classes(m.up); }

std::vector<CheckReport> check_inm(const INModel& m, InmLevel level) {
  const std::size_t n = m.size();
  const auto& lab = m.labels;
  std::vector<CheckReport> out;

  CheckReport shape{"shape"};
  if (m.up.size() != n) shape.fail("order has " + std::to_string(m.up.size()) + " rows for " + std::to_string(n) + " worlds");
  for (const auto& a : m.nbhds)
    if (a.domain.universe() != n || !a.values || a.values->size() != n)
      shape.fail("neighbourhood " + a.name + " is not sized to the model");
  for (const auto& v : m.val)
    if (v.universe() != n) shape.fail("valuation row is not sized to the model");
  out.push_back(shape);
  if (!shape.ok) return out;

  CheckReport order{"order"};
  check_partial_order(m.up, lab, order, true);
  out.push_back(order);

  CheckReport domains{"domains"};
  for (const auto& a : m.nbhds)
    if (!is_upset(a.domain, m.up)) domains.fail("dom(" + a.name + ") = " + format_set(a.domain, lab) + " is not an upset");
  out.push_back(domains);

  CheckReport valuation{"valuation"};
  check_valuation(m.val, m.up, lab, valuation);
  out.push_back(valuation);

  if (level == InmLevel::Basic) return out;

  CheckReport n1{"N1"}, n2{"N2"};
  for (const auto& a : m.nbhds) {
    for (World w : a.domain) {
      for (World w2 : m.up[w])
        for (World v : a.at(w))
          if (!a.at(w2).intersects(m.up[v]))
            n1.fail(a.name + ": " + lab[w] + " <= " + lab[w2] + ", " + lab[v] + " in " + a.name + "(" + lab[w] +
                    ") has no successor in " + a.name + "(" + lab[w2] + ")");
      for (World v : a.at(w))
        for (World v2 : m.up[v]) {
          bool found = false;
          for (World w2 : m.up[w])
            if (a.at(w2).test(v2)) {
              found = true;
              break;
            }
          if (!found)
            n2.fail(a.name + ": " + lab[v] + " in " + a.name + "(" + lab[w] + "), " + lab[v] + " <= " + lab[v2] +
                    " but no successor of " + lab[w] + " has " + lab[v2] + " in its value");
        }
    }
  }
  out.push_back(n1);
  out.push_back(n2);

  if (level == InmLevel::Coherent) return out;

  const auto rt = r_tilde_classes(m);
  const auto lt = leq_tilde_classes(m);
  CheckReport rc{"R~-Cartesian"}, nc{"N-Cartesian"};
  for (World w = 0; w < n; ++w)
    for (World v = w + 1; v < n; ++v) {
      if (rt[w] != rt[v]) continue;
      if (lt[w] == lt[v]) rc.fail(lab[w] + " and " + lab[v] + " are related by both R~ and <=~");
      for (const auto& a : m.nbhds)
        if (a.domain.test(w) && a.domain.test(v) && a.at(w) != a.at(v))
          nc.fail(a.name + "(" + lab[w] + ") != " + a.name + "(" + lab[v] + ") although " + lab[w] + " R~ " + lab[v]);
    }
  out.push_back(rc);
  out.push_back(nc);
  return out;
}

namespace {
bool all_ok(const std::vector<CheckReport>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const CheckReport& r) { return r.ok; });
}
}  // namespace

bool is_valid_inm(const INModel& m) { return all_ok(check_inm(m, InmLevel::Basic)); }
bool is_coherent(const INModel& m) { return all_ok(check_inm(m, InmLevel::Coherent)); }
bool is_cartesian(const INModel& m) { return all_ok(check_inm(m, InmLevel::Cartesian)); }

std::vector<CheckReport> check_cnm(const CNModel& m) {
  std::vector<CheckReport> out;
  CheckReport shape{"shape"};
  if (m.up.size() != m.size() || m.gamma.size() != m.size()) shape.fail("order or gamma not sized to the model");
  out.push_back(shape);
  if (!shape.ok) return out;
  CheckReport order{"preorder"};
  check_partial_order(m.up, m.labels, order, false);
  out.push_back(order);
  CheckReport valuation{"valuation"};
  check_valuation(m.val, m.up, m.labels, valuation);
  out.push_back(valuation);
  return out;
}

bool check_full(const CNModel& m) {
  for (World w = 0; w < m.size(); ++w) {
    if (m.gamma[w].empty()) continue;
    for (World v : m.up[w])
      if (m.gamma[v].empty()) return false;
  }
  return true;
}

std::vector<CheckReport> check_ik2_frame(const IK2Model& m) {
  const std::size_t n = m.size();
  const auto& lab = m.labels;
  std::vector<CheckReport> out;
  CheckReport shape{"shape"};
  if (m.up.size() != n || m.rel_n.size() != n || m.rel_e.size() != n) shape.fail("relations not sized to the model");
  out.push_back(shape);
  if (!shape.ok) return out;
  CheckReport order{"order"};
  check_partial_order(m.up, lab, order, true);
  out.push_back(order);
  CheckReport valuation{"valuation"};
  check_valuation(m.val, m.up, lab, valuation);
  out.push_back(valuation);
  const Relation down = transpose(m.up);
  for (int j = 0; j < 2; ++j) {
    const Relation& r = j == 0 ? m.rel_n : m.rel_e;
    const std::string name = j == 0 ? "N" : "E";
    CheckReport fwd{"forward-confluence-" + name}, bwd{"backward-confluence-" + name};
    // w ≤ v and w R u  ⇒  v R x and u ≤ x for some x.
    for (World w = 0; w < n; ++w)
      for (World v : m.up[w])
        for (World u : r[w])
          if (!r[v].intersects(m.up[u]))
            fwd.fail(lab[w] + " <= " + lab[v] + ", " + lab[w] + " R_" + name + " " + lab[u]);
    // w R u and u ≤ x  ⇒  w ≤ v and v R x for some v.
    for (World w = 0; w < n; ++w)
      for (World u : r[w])
        for (World x : m.up[u]) {
          bool found = false;
          for (World v : m.up[w])
            if (r[v].test(x)) {
              found = true;
              break;
            }
          if (!found) bwd.fail(lab[w] + " R_" + name + " " + lab[u] + ", " + lab[u] + " <= " + lab[x]);
        }
    out.push_back(fwd);
    out.push_back(bwd);
  }
  return out;
}

bool is_ik2_frame(const IK2Model& m) { return all_ok(check_ik2_frame(m)); }

// ---------------------------------------------------------------------------
// Isomorphism search.

namespace {

struct IsoSearch {
  const INModel& a;
  const INModel& b;
  std::size_t n;
  std::size_t atoms;
  Relation ra, rb;
  std::vector<std::vector<std::size_t>> prof_a, prof_b;
  std::vector<World> alpha;
  std::vector<bool> used;
  std::optional<Isomorphism> result;

  IsoSearch(const INModel& x, const INModel& y)
      : a(x), b(y), n(x.size()), atoms(std::max(x.val.size(), y.val.size())),
        ra(membership_relation(x)), rb(membership_relation(y)) {
    prof_a = profiles(a, ra);
    prof_b = profiles(b, rb);
  }

  std::vector<std::vector<std::size_t>> profiles(const INModel& m, const Relation& r) const {
    const Relation down = transpose(m.up);
    const Relation rin = transpose(r);
    std::vector<std::vector<std::size_t>> out(n);
    for (World w = 0; w < n; ++w) {
      auto& p = out[w];
      p = {m.up[w].count(), down[w].count(), r[w].count(), rin[w].count()};
      for (std::size_t i = 0; i < atoms; ++i) p.push_back(valuation_of(m.val, n, static_cast<unsigned>(i)).test(w));
      std::vector<std::size_t> sizes;
      for (const auto& nb : m.nbhds)
        if (nb.domain.test(w)) sizes.push_back(nb.at(w).count() + 1);
      std::sort(sizes.begin(), sizes.end());
      p.push_back(0);
      p.insert(p.end(), sizes.begin(), sizes.end());
    }
    return out;
  }

  bool consistent(World w, World x) const {
    if (prof_a[w] != prof_b[x]) return false;
    for (World u = 0; u < w; ++u) {
      World y = alpha[u];
      if (a.up[w].test(u) != b.up[x].test(y) || a.up[u].test(w) != b.up[y].test(x)) return false;
      if (ra[w].test(u) != rb[x].test(y) || ra[u].test(w) != rb[y].test(x)) return false;
    }
    return true;
  }

  using Key = std::pair<WorldSet, std::vector<WorldSet>>;

  Key key_b(const Neighbourhood& nb) const {
    std::vector<WorldSet> vals(n, WorldSet(n));
    for (World w : nb.domain) vals[w] = nb.at(w);
    return {nb.domain, std::move(vals)};
  }

  Key key_a(const Neighbourhood& nb) const {
    WorldSet dom(n);
    std::vector<WorldSet> vals(n, WorldSet(n));
    for (World w : nb.domain) {
      dom.set(alpha[w]);
      for (World v : nb.at(w)) vals[alpha[w]].set(alpha[v]);
    }
    return {dom, std::move(vals)};
  }

  std::optional<std::vector<std::size_t>> match_nbhds() const {
    std::map<Key, std::vector<std::size_t>> pool;
    for (std::size_t j = 0; j < b.nbhds.size(); ++j) pool[key_b(b.nbhds[j])].push_back(j);
    std::vector<std::size_t> nu(a.nbhds.size());
    for (std::size_t i = 0; i < a.nbhds.size(); ++i) {
      auto it = pool.find(key_a(a.nbhds[i]));
      if (it == pool.end() || it->second.empty()) return std::nullopt;
      nu[i] = it->second.back();
      it->second.pop_back();
    }
    return nu;
  }

  bool extend(World w) {
    if (w == n) {
      if (auto nu = match_nbhds()) {
        result = Isomorphism{alpha, *nu};
        return true;
      }
      return false;
    }
    for (World x = 0; x < n; ++x) {
      if (used[x] || !consistent(w, x)) continue;
      used[x] = true;
      alpha[w] = x;
      if (extend(w + 1)) return true;
      used[x] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<Isomorphism> find_isomorphism(const INModel& a, const INModel& b) {
  if (a.size() != b.size() || a.nbhds.size() != b.nbhds.size()) return std::nullopt;
  IsoSearch s(a, b);
  s.alpha.assign(a.size(), 0);
  s.used.assign(a.size(), false);
  s.extend(0);
  return s.result;
}

bool verify_isomorphism(const INModel& a, const INModel& b, const Isomorphism& iso) {
  const std::size_t n = a.size();
  if (b.size() != n || iso.worlds.size() != n || iso.nbhds.size() != a.nbhds.size() ||
      b.nbhds.size() != a.nbhds.size())
    return false;
  std::vector<bool> hit(n, false), hit_n(b.nbhds.size(), false);
  for (World w : iso.worlds) {
    if (w >= n || hit[w]) return false;
    hit[w] = true;
  }
  for (auto j : iso.nbhds) {
    if (j >= b.nbhds.size() || hit_n[j]) return false;
    hit_n[j] = true;
  }
  const auto& al = iso.worlds;
  const std::size_t atoms = std::max(a.val.size(), b.val.size());
  for (World w = 0; w < n; ++w) {
    for (World v = 0; v < n; ++v)
      if (a.up[w].test(v) != b.up[al[w]].test(al[v])) return false;  // I1
    for (std::size_t p = 0; p < atoms; ++p)
      if (valuation_of(a.val, n, static_cast<unsigned>(p)).test(w) !=
          valuation_of(b.val, n, static_cast<unsigned>(p)).test(al[w]))
        return false;  // I4
  }
  for (std::size_t i = 0; i < a.nbhds.size(); ++i) {
    const auto& x = a.nbhds[i];
    const auto& y = b.nbhds[iso.nbhds[i]];
    for (World w = 0; w < n; ++w)
      if (x.domain.test(w) != y.domain.test(al[w])) return false;  // I2
    for (World u : x.domain)
      for (World w = 0; w < n; ++w)
        if (x.at(u).test(w) != y.at(al[u]).test(al[w])) return false;  // I3
  }
  return true;
}

}  // namespace imml
