#include "imml/transforms.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace imml {

namespace {

void require_ok(const std::vector<CheckReport>& reports, const char* what) {
  std::vector<CheckReport> failed;
  for (const auto& r : reports)
    if (!r.ok) failed.push_back(r);
  if (failed.empty()) return;
  std::string msg = std::string(what) + ": " + failed.front().check;
  if (!failed.front().witnesses.empty()) msg += " (" + failed.front().witnesses.front() + ")";
  throw PreconditionError(msg, std::move(failed));
}

}  // namespace

TruncationBudget TruncationBudget::for_formula(const Formula& f) {
  TruncationBudget b;
  b.coh_levels = modal_depth(f) + 2;
  b.unravel_len = std::max<std::size_t>(1, modality_depth(f) + 1);
  return b;
}

// ---------------------------------------------------------------------------
// •

BulletResult bullet(const IFOMStructure& s) {
  BulletResult out;
  std::vector<std::vector<World>> index(s.size());
  for (World w = 0; w < s.size(); ++w) {
    index[w].assign(s.state_labels.size(), 0);
    for (World x : s.at[w].states) {
      index[w][x] = static_cast<World>(out.pairs.size());
      out.pairs.emplace_back(w, x);
      out.model.labels.push_back("<" + s.labels[w] + "," + s.state_labels[x] + ">");
    }
  }
  const std::size_t n = out.pairs.size();
  auto& m = out.model;
  m.up.assign(n, WorldSet(n));
  for (World i = 0; i < n; ++i)
    for (World j = 0; j < n; ++j)
      if (s.up[out.pairs[i].first].test(out.pairs[j].first) && out.pairs[i].second == out.pairs[j].second)
        m.up[i].set(j);

  WorldSet used(s.nbhd_labels.size());
  for (const auto& I : s.at) used |= I.nbhds;
  for (World a : used) {
    WorldSet dom(n);
    std::vector<WorldSet> values(n, WorldSet(n));
    for (World i = 0; i < n; ++i) {
      auto [w, x] = out.pairs[i];
      const auto& I = s.at[w];
      if (!I.nbhds.test(a) || !I.rel_n[x].test(a)) continue;
      dom.set(i);
      for (World y : I.rel_e[a])
        if (I.states.test(y)) values[i].set(index[w][y]);
    }
    m.nbhds.push_back(make_neighbourhood(s.nbhd_labels[a], std::move(dom), std::move(values)));
  }

  std::size_t atoms = 0;
  for (const auto& I : s.at) atoms = std::max(atoms, I.preds.size());
  m.val.assign(atoms, WorldSet(n));
  for (std::size_t p = 0; p < atoms; ++p)
    for (World i = 0; i < n; ++i) {
      const auto& preds = s.at[out.pairs[i].first].preds;
      if (p < preds.size() && preds[p].test(out.pairs[i].second)) m.val[p].set(i);
    }
  return out;
}

// ---------------------------------------------------------------------------
// ∘

IFOMStructure circle(const INModel& m) {
  require_ok(check_inm(m, InmLevel::Cartesian), "circle needs a coherent Cartesian model");
  const std::size_t n = m.size();
  auto rbar = r_tilde_classes(m);
  auto tilde = leq_tilde_classes(m);

  std::vector<World> reps, state_reps;
  std::map<World, unsigned> rep_index, state_index;
  for (World w = 0; w < n; ++w) {
    if (rbar[w] == w) {
      rep_index[w] = static_cast<unsigned>(reps.size());
      reps.push_back(w);
    }
    if (tilde[w] == w) {
      state_index[w] = static_cast<unsigned>(state_reps.size());
      state_reps.push_back(w);
    }
  }
  auto members = [n](const std::vector<World>& cls, World id) {
    WorldSet s(n);
    for (World v = 0; v < n; ++v)
      if (cls[v] == id) s.set(v);
    return s;
  };

  IFOMStructure out;
  const std::size_t nb = reps.size(), ns = state_reps.size(), nn = m.nbhds.size();
  for (World r : reps) out.labels.push_back(format_set(members(rbar, r), m.labels));
  for (World r : state_reps) out.state_labels.push_back(format_set(members(tilde, r), m.labels));
  for (const auto& a : m.nbhds) out.nbhd_labels.push_back(a.name);

  // w̄ ⩽ w̄' iff w ≤ v' R~ w' for some v', with w the class representative.
  out.up.assign(nb, WorldSet(nb));
  for (std::size_t i = 0; i < nb; ++i)
    for (World v : m.up[reps[i]]) out.up[i].set(rep_index[rbar[v]]);

  WorldSet triv(nn);
  for (std::size_t a = 0; a < nn; ++a)
    if (m.nbhds[a].domain.empty()) triv.set(static_cast<World>(a));

  for (std::size_t i = 0; i < nb; ++i) {
    WorldSet cls = members(rbar, reps[i]);
    FoInterp I = empty_interp(ns, nn);
    I.preds.assign(m.val.size(), WorldSet(ns));
    // By Cartesianness each state class meets ū in exactly one world.
    std::vector<World> witness(ns, 0);
    for (World y : cls) {
      unsigned x = state_index[tilde[y]];
      I.states.set(x);
      witness[x] = y;
      for (std::size_t p = 0; p < m.val.size(); ++p)
        if (m.val[p].test(y)) I.preds[p].set(x);
    }
    I.nbhds = triv;
    for (std::size_t a = 0; a < nn; ++a)
      if (cls.intersects(m.nbhds[a].domain)) I.nbhds.set(static_cast<World>(a));
    for (World x : I.states)
      for (World a : I.nbhds)
        if (m.nbhds[a].domain.test(witness[x])) I.rel_n[x].set(a);
    for (World a : I.nbhds) {
      const auto& nbhd = m.nbhds[a];
      for (World y : cls & nbhd.domain)
        for (World z : nbhd.at(y)) I.rel_e[a].set(state_index[tilde[z]]);
    }
    out.at.push_back(std::move(I));
  }
  return out;
}

// ---------------------------------------------------------------------------
// coh

CohResult coherent_completion(const INModel& m, std::size_t levels) {
  CohResult out;
  const WorldSet maximal = maximal_worlds(m.up);
  for (World w = 0; w < m.size(); ++w) {
    std::size_t top = maximal.test(w) ? levels : 0;
    for (std::size_t k = 0; k <= top; ++k) {
      out.origin.push_back(w);
      out.copy.push_back(k);
      out.model.labels.push_back("(" + m.labels[w] + "," + std::to_string(k) + ")");
    }
  }
  const std::size_t n = out.origin.size();
  auto& c = out.model;
  c.up.assign(n, WorldSet(n));
  for (World i = 0; i < n; ++i)
    for (World j = 0; j < n; ++j)
      if (m.up[out.origin[i]].test(out.origin[j]) && out.copy[i] <= out.copy[j]) c.up[i].set(j);

  auto lift = [&](const WorldSet& s) {
    WorldSet r(n);
    for (World i = 0; i < n; ++i)
      if (s.test(out.origin[i])) r.set(i);
    return r;
  };

  for (const auto& a : m.nbhds) {
    std::vector<WorldSet> lifted(m.size());
    for (World u : a.domain) lifted[u] = lift(a.at(u));
    for (World j = 0; j < n; ++j) {
      World v = out.origin[j];
      if (!a.domain.test(v)) continue;
      WorldSet above(n);
      for (World u : m.up[v] & a.domain) above |= lifted[u];
      above = up_closure(above, c.up);
      std::vector<WorldSet> values(n, WorldSet(n));
      for (World k : c.up[j]) values[k] = k == j ? lifted[v] : above;
      c.nbhds.push_back(make_neighbourhood(a.name + "_" + c.labels[j], c.up[j], std::move(values)));
    }
  }
  c.val.clear();
  for (const auto& p : m.val) c.val.push_back(lift(p));
  return out;
}

// ---------------------------------------------------------------------------
// Paths and the unravelling

std::string format_path(const UrPath& p, const INModel& m) {
  std::string s = "(" + m.labels[p.ord.front()];
  for (std::size_t i = 1; i < p.ord.size(); ++i) s += ",<=," + m.labels[p.ord[i]];
  for (auto [a, x] : p.nbd) s += "," + m.nbhds[a].name + "," + m.labels[x];
  return s + ")";
}

UrPath parse_path(const std::string& text, const INModel& m) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(cur);
    cur.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == '(' || ch == ')') {
      flush();
      if (ch == ',' && tokens.empty()) throw std::invalid_argument("path: empty first element");
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  flush();
  if (tokens.empty() || tokens.size() % 2 == 0)
    throw std::invalid_argument("path: expected world, step, world, ..., world");

  auto world = [&](const std::string& t) {
    auto it = std::find(m.labels.begin(), m.labels.end(), t);
    if (it == m.labels.end()) throw std::invalid_argument("path: unknown world '" + t + "'");
    return static_cast<World>(it - m.labels.begin());
  };
  UrPath p;
  p.ord.push_back(world(tokens[0]));
  for (std::size_t i = 1; i < tokens.size(); i += 2) {
    const std::string& step = tokens[i];
    World from = p.last(), to = world(tokens[i + 1]);
    if (step == "<=" || step == "≤") {
      if (!p.nbd.empty()) throw std::invalid_argument("path: order step after a neighbourhood step");
      if (!m.up[from].test(to))
        throw std::invalid_argument("path: " + m.labels[from] + " <= " + m.labels[to] + " does not hold");
      p.ord.push_back(to);
      continue;
    }
    auto it = std::find_if(m.nbhds.begin(), m.nbhds.end(), [&](const Neighbourhood& a) { return a.name == step; });
    if (it == m.nbhds.end()) throw std::invalid_argument("path: unknown neighbourhood '" + step + "'");
    if (!it->domain.test(from) || !it->at(from).test(to))
      throw std::invalid_argument("path: " + m.labels[to] + " is not in " + step + "(" + m.labels[from] + ")");
    p.nbd.emplace_back(static_cast<std::uint32_t>(it - m.nbhds.begin()), to);
  }
  return p;
}

bool leq_ur(const UrPath& w, const UrPath& v, const Relation& up) {
  if (w.nbd.size() != v.nbd.size() || w.ord.size() > v.ord.size()) return false;
  if (!std::equal(w.ord.begin(), w.ord.end(), v.ord.begin())) return false;
  const bool extended = v.ord.size() > w.ord.size();
  for (std::size_t j = 0; j < w.nbd.size(); ++j) {
    if (w.nbd[j].first != v.nbd[j].first) return false;
    World a = w.nbd[j].second, b = v.nbd[j].second;
    if (extended ? !up[a].test(b) : a != b) return false;
  }
  return true;
}

std::vector<UrPath> unravel_paths(const INModel& m, World s, std::size_t len) {
  std::vector<UrPath> out;
  UrPath p;
  p.ord.push_back(s);
  auto nbd_dfs = [&](auto&& self) -> void {
    out.push_back(p);
    if (p.nbd.size() >= len) return;
    World from = p.last();
    for (std::uint32_t a = 0; a < m.nbhds.size(); ++a) {
      if (!m.nbhds[a].domain.test(from)) continue;
      for (World x : m.nbhds[a].at(from)) {
        p.nbd.emplace_back(a, x);
        self(self);
        p.nbd.pop_back();
      }
    }
  };
  auto ord_dfs = [&](auto&& self) -> void {
    nbd_dfs(nbd_dfs);
    if (p.ord.size() > len) return;
    for (World v : m.up[p.ord.back()]) {
      p.ord.push_back(v);
      self(self);
      p.ord.pop_back();
    }
  };
  ord_dfs(ord_dfs);
  std::sort(out.begin(), out.end(), [](const UrPath& x, const UrPath& y) {
    return std::tie(x.ord, x.nbd) < std::tie(y.ord, y.nbd);
  });
  return out;
}

namespace {

// Paths bucketed by their label sequence; ≤ur never relates paths with
// different labels.
std::map<std::vector<std::uint32_t>, std::vector<World>> label_buckets(const std::vector<UrPath>& paths) {
  std::map<std::vector<std::uint32_t>, std::vector<World>> buckets;
  for (World i = 0; i < paths.size(); ++i) {
    std::vector<std::uint32_t> key;
    for (auto [a, x] : paths[i].nbd) key.push_back(a);
    buckets[key].push_back(i);
  }
  return buckets;
}

Relation order_on_paths(const std::vector<UrPath>& paths, const Relation& up, std::size_t saturate_len) {
  const std::size_t n = paths.size();
  Relation rel(n, WorldSet(n));
  for (const auto& [key, ids] : label_buckets(paths)) {
    for (World i : ids)
      for (World j : ids) {
        const UrPath &p = paths[i], &q = paths[j];
        bool related = leq_ur(p, q, up);
        if (!related && saturate_len && p.ord_length() == saturate_len && q.ord_length() == saturate_len &&
            std::equal(p.ord.begin(), p.ord.end() - 1, q.ord.begin())) {
          related = true;
          for (std::size_t k = 0; k <= p.nbd.size() && related; ++k)
            related = up[p.nbd_world(k)].test(q.nbd_world(k));
        }
        if (related) rel[i].set(j);
      }
  }
  return rel;
}

}  // namespace

Relation leq_ur_relation(const std::vector<UrPath>& paths, const Relation& up) { return order_on_paths(paths, up, 0); }

UnravelResult unravel(const INModel& m, World s, std::size_t len) {
  require_ok(check_inm(m, InmLevel::Coherent), "unravel needs a coherent model");
  if (s >= m.size()) throw std::out_of_range("unknown world " + std::to_string(s));
  if (len == 0) throw std::invalid_argument("unravel: path length budget must be at least 1");

  UnravelResult out;
  out.paths = unravel_paths(m, s, len);
  const auto& paths = out.paths;
  const std::size_t n = paths.size();
  auto& u = out.model;
  for (const auto& p : paths) u.labels.push_back(format_path(p, m));
  u.up = order_on_paths(paths, m.up, len);

  std::map<std::pair<std::vector<World>, std::vector<std::pair<std::uint32_t, World>>>, World> index;
  for (World i = 0; i < n; ++i) index.emplace(std::pair(paths[i].ord, paths[i].nbd), i);

  for (std::uint32_t a = 0; a < m.nbhds.size(); ++a) {
    const auto& nb = m.nbhds[a];
    auto table = std::make_shared<std::vector<WorldSet>>(n, WorldSet(n));
    for (World i = 0; i < n; ++i) {
      const UrPath& p = paths[i];
      if (p.nbd.size() >= len || !nb.domain.test(p.last())) continue;
      auto key = std::pair(p.ord, p.nbd);
      key.second.emplace_back(a, 0);
      for (World x : nb.at(p.last())) {
        key.second.back().second = x;
        (*table)[i].set(index.at(key));
      }
    }
    for (World i = 0; i < n; ++i)
      if (nb.domain.test(paths[i].last())) u.nbhds.push_back({nb.name + "_" + u.labels[i], u.up[i], table});
  }

  u.val.assign(m.val.size(), WorldSet(n));
  for (std::size_t p = 0; p < m.val.size(); ++p)
    for (World i = 0; i < n; ++i)
      if (m.val[p].test(paths[i].last())) u.val[p].set(i);
  return out;
}

// ---------------------------------------------------------------------------
// ^, fullification, *

HatResult hat(const INModel& m) {
  using Sigma = std::vector<WorldSet>;  // sorted, duplicate free
  HatResult out;
  std::vector<std::vector<Sigma>> choices(m.size());
  for (World w = 0; w < m.size(); ++w) {
    std::set<Sigma> partial{Sigma{}};
    for (const auto& a : m.nbhds) {
      if (!a.domain.test(w)) continue;
      std::set<Sigma> next;
      for (const auto& sigma : partial)
        for (World v : m.up[w]) {
          Sigma s = sigma;
          auto it = std::lower_bound(s.begin(), s.end(), a.at(v));
          if (it == s.end() || *it != a.at(v)) s.insert(it, a.at(v));
          next.insert(std::move(s));
        }
      partial = std::move(next);
    }
    choices[w].assign(partial.begin(), partial.end());
  }

  auto& c = out.model;
  std::vector<const Sigma*> sigma_of;
  for (World w = 0; w < m.size(); ++w)
    for (const auto& sigma : choices[w]) {
      out.origin.push_back(w);
      sigma_of.push_back(&sigma);
      std::string label = "(" + m.labels[w] + ",{";
      for (std::size_t k = 0; k < sigma.size(); ++k) label += (k ? "," : "") + format_set(sigma[k], m.labels);
      c.labels.push_back(label + "})");
    }
  const std::size_t n = out.origin.size();
  auto lift = [&](const WorldSet& s) {
    WorldSet r(n);
    for (World i = 0; i < n; ++i)
      if (s.test(out.origin[i])) r.set(i);
    return r;
  };
  c.up.assign(n, WorldSet(n));
  c.gamma.resize(n);
  for (World i = 0; i < n; ++i) {
    for (World j = 0; j < n; ++j)
      if (m.up[out.origin[i]].test(out.origin[j])) c.up[i].set(j);
    for (const auto& A : *sigma_of[i]) c.gamma[i].push_back(lift(A));
  }
  for (const auto& p : m.val) c.val.push_back(lift(p));
  return out;
}

CNModel fullify(const CNModel& m) {
  CNModel out = m;
  for (World w = 0; w < m.size(); ++w)
    for (World v : m.up[w])
      if (m.gamma[v].empty()) {
        out.gamma[w].clear();
        break;
      }
  return out;
}

IK2Model star(const INModel& m) {
  require_ok(check_inm(m, InmLevel::Coherent), "star needs a coherent model");
  const std::size_t base = m.size();
  std::vector<std::pair<std::size_t, World>> extra;
  for (std::size_t a = 0; a < m.nbhds.size(); ++a)
    for (World w : m.nbhds[a].domain) extra.emplace_back(a, w);
  const std::size_t n = base + extra.size();

  IK2Model k;
  k.labels = m.labels;
  for (auto [a, w] : extra) k.labels.push_back("(" + m.nbhds[a].name + "," + m.labels[w] + ")");
  k.up.assign(n, WorldSet(n));
  k.rel_n.assign(n, WorldSet(n));
  k.rel_e.assign(n, WorldSet(n));
  for (World w = 0; w < base; ++w)
    for (World v : m.up[w]) k.up[w].set(v);
  for (std::size_t i = 0; i < extra.size(); ++i) {
    auto [a, w] = extra[i];
    World me = static_cast<World>(base + i);
    for (std::size_t j = 0; j < extra.size(); ++j)
      if (extra[j].first == a && m.up[w].test(extra[j].second)) k.up[me].set(static_cast<World>(base + j));
    k.rel_n[w].set(me);
    for (World v : m.nbhds[a].at(w)) k.rel_e[me].set(v);
  }
  for (const auto& p : m.val) {
    WorldSet s(n);
    for (World w : p) s.set(w);
    k.val.push_back(s);
  }
  return k;
}

}  // namespace imml
