#include "imml/generators.hpp"

namespace imml {

namespace {

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

}  // namespace

Relation random_poset(Rng& rng, std::size_t n, double density) {
  Relation r = identity_relation(n);
  for (World i = 0; i < n; ++i)
    for (World j = i + 1; j < n; ++j)
      if (coin(rng, density)) r[i].set(j);
  return reflexive_transitive_closure(std::move(r));
}

Relation random_preorder(Rng& rng, std::size_t n, double density) {
  Relation r = identity_relation(n);
  for (World i = 0; i < n; ++i)
    for (World j = 0; j < n; ++j)
      if (i != j && coin(rng, density)) r[i].set(j);
  return reflexive_transitive_closure(std::move(r));
}

WorldSet random_subset(Rng& rng, std::size_t n, double p) {
  WorldSet s(n);
  for (World w = 0; w < n; ++w)
    if (coin(rng, p)) s.set(w);
  return s;
}

WorldSet random_upset(Rng& rng, const Relation& up, double p) { return up_closure(random_subset(rng, up.size(), p), up); }

INModel random_inm(Rng& rng, std::size_t n, std::size_t nbhds, std::size_t atoms) {
  INModel m;
  m.labels = default_labels(n);
  m.up = random_poset(rng, n);
  for (std::size_t a = 0; a < nbhds; ++a) {
    WorldSet dom = random_upset(rng, m.up, 0.4);
    std::vector<WorldSet> values(n, WorldSet(n));
    for (World w : dom) values[w] = random_subset(rng, n, 0.35);
    m.nbhds.push_back(make_neighbourhood("a" + std::to_string(a), std::move(dom), std::move(values)));
  }
  for (std::size_t p = 0; p < atoms; ++p) m.val.push_back(random_upset(rng, m.up));
  return m;
}

INModel make_coherent(INModel m) {
  for (auto& a : m.nbhds) {
    auto values = *a.values;
    bool changed = true;
    while (changed) {
      changed = false;
      for (World w : a.domain)
        for (World v : values[w]) {
          // N₁: every successor of w keeps a member above v.
          for (World w2 : m.up[w])
            if (!values[w2].intersects(m.up[v])) {
              values[w2].set(v);
              changed = true;
            }
          // N₂: every v' ≥ v shows up at some successor of w.
          for (World v2 : m.up[v]) {
            bool found = false;
            for (World w2 : m.up[w])
              if (values[w2].test(v2)) {
                found = true;
                break;
              }
            if (!found) {
              values[w].set(v2);
              changed = true;
            }
          }
        }
    }
    a.values = std::make_shared<const std::vector<WorldSet>>(std::move(values));
  }
  return m;
}

IFOMStructure random_ifom(Rng& rng, std::size_t worlds, std::size_t states, std::size_t nbhds, std::size_t atoms) {
  IFOMStructure s;
  s.labels = default_labels(worlds);
  s.up = random_poset(rng, worlds);
  for (std::size_t x = 0; x < states; ++x) s.state_labels.push_back("d" + std::to_string(x));
  for (std::size_t a = 0; a < nbhds; ++a) s.nbhd_labels.push_back("a" + std::to_string(a));
  const Relation down = transpose(s.up);
  for (World w = 0; w < worlds; ++w) {
    // Natural labelling: everything below w has already been built.
    FoInterp I = empty_interp(states, nbhds);
    I.preds.assign(atoms, WorldSet(states));
    for (World v : down[w]) {
      if (v == w) continue;
      const auto& J = s.at[v];
      I.states |= J.states;
      I.nbhds |= J.nbhds;
      for (std::size_t x = 0; x < states; ++x) I.rel_n[x] |= J.rel_n[x];
      for (std::size_t a = 0; a < nbhds; ++a) I.rel_e[a] |= J.rel_e[a];
      for (std::size_t p = 0; p < atoms; ++p) I.preds[p] |= J.preds[p];
    }
    I.states |= random_subset(rng, states, 0.5);
    if (I.states.empty()) I.states.set(static_cast<World>(pick(rng, states)));
    I.nbhds |= random_subset(rng, nbhds, 0.6);
    for (World x : I.states)
      for (World a : I.nbhds) {
        if (coin(rng, 0.5)) I.rel_n[x].set(a);
        if (coin(rng, 0.5)) I.rel_e[a].set(x);
      }
    for (std::size_t p = 0; p < atoms; ++p)
      for (World x : I.states)
        if (coin(rng, 0.4)) I.preds[p].set(x);
    s.at.push_back(std::move(I));
  }
  return s;
}

CNModel random_cnm(Rng& rng, std::size_t n, std::size_t max_sets, std::size_t atoms) {
  CNModel m;
  m.labels = default_labels(n);
  m.up = random_preorder(rng, n);
  m.gamma.resize(n);
  for (World w = 0; w < n; ++w) {
    std::size_t k = pick(rng, max_sets + 1);
    for (std::size_t i = 0; i < k; ++i) m.gamma[w].push_back(random_subset(rng, n, 0.5));
  }
  for (std::size_t p = 0; p < atoms; ++p) m.val.push_back(random_upset(rng, m.up));
  return m;
}

NbhdModel random_classical(Rng& rng, std::size_t n, std::size_t max_sets, std::size_t atoms) {
  NbhdModel m;
  m.labels = default_labels(n);
  m.nf.resize(n);
  for (World w = 0; w < n; ++w) {
    std::size_t k = pick(rng, max_sets + 1);
    for (std::size_t i = 0; i < k; ++i) m.nf[w].push_back(random_subset(rng, n, 0.5));
  }
  for (std::size_t p = 0; p < atoms; ++p) m.val.push_back(random_subset(rng, n, 0.5));
  return m;
}

Formula random_formula(Rng& rng, Dialect d, std::size_t depth, std::size_t atoms) {
  if (depth == 0 || coin(rng, 0.2)) {
    double r = std::uniform_real_distribution<double>(0, 1)(rng);
    if (r < 0.1) return falsum();
    if (r < 0.2) return top();
    return atom(static_cast<unsigned>(pick(rng, std::max<std::size_t>(atoms, 1))));
  }
  std::vector<Op> modal;
  switch (d) {
    case Dialect::Modal: modal = {Op::Box, Op::Dia}; break;
    case Dialect::Nabla: modal = {Op::Nabla}; break;
    case Dialect::Bimodal: modal = {Op::BoxN, Op::DiaN, Op::BoxE, Op::DiaE}; break;
  }
  std::size_t choice = pick(rng, 3 + 2);
  if (choice >= 3) return Formula::unary(modal[pick(rng, modal.size())], random_formula(rng, d, depth - 1, atoms));
  static const Op bin[] = {Op::And, Op::Or, Op::Implies};
  auto l = random_formula(rng, d, depth - 1, atoms);
  auto r = random_formula(rng, d, depth - 1, atoms);
  return Formula::binary(bin[choice], std::move(l), std::move(r));
}

}  // namespace imml
