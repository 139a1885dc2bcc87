#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "imml/generators.hpp"
#include "imml/json_io.hpp"
#include "imml/models.hpp"
#include "oracles.hpp"

using namespace imml;

namespace {

Formula M(const char* s) { return parse(s, Dialect::Modal); }
Formula V(const char* s) { return parse(s, Dialect::Nabla); }
Formula B(const char* s) { return parse(s, Dialect::Bimodal); }

WorldSet set_of(std::size_t n, std::initializer_list<World> ws) {
  WorldSet s(n);
  for (World w : ws) s.set(w);
  return s;
}

Relation order_of(std::size_t n, std::initializer_list<std::pair<World, World>> pairs) {
  Relation r = identity_relation(n);
  for (auto [a, b] : pairs) r[a].set(b);
  return reflexive_transitive_closure(std::move(r));
}

bool all_ok(const std::vector<CheckReport>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const CheckReport& r) { return r.ok; });
}

INModel one_point(bool p) {
  INModel m;
  m.labels = {"w"};
  m.up = identity_relation(1);
  m.nbhds.push_back(make_neighbourhood("a", WorldSet::full(1), {WorldSet::full(1)}));
  m.val = {p ? WorldSet::full(1) : WorldSet(1)};
  return m;
}

INModel box_bot_counter() {
  INModel m;
  m.labels = {"w", "u"};
  m.up = order_of(2, {{0, 1}});
  m.nbhds.push_back(make_neighbourhood("a", WorldSet::full(2), {WorldSet(2), set_of(2, {1})}));
  return m;
}

template <class Model, class Eval, class Oracle>
void agree_with_oracle(const Model& m, Eval eval, Oracle orc, const Formula& f) {
  auto truth = truth_set(m, f);
  for (World w = 0; w < m.size(); ++w) {
    INFO(print(f), " at ", w);
    CHECK(truth.test(w) == orc(m, w, f));
    CHECK(eval(m, w, f) == truth.test(w));
  }
}

}  // namespace

TEST_CASE("eval_classical") {
  NbhdModel m;
  m.labels = {"w"};
  m.nf = {{}};
  CHECK(eval_classical(m, 0, M("<>p0")));
  CHECK(eval_classical(m, 0, M("<>F")));
  CHECK_FALSE(eval_classical(m, 0, M("[]T")));
  m.nf = {{WorldSet(1)}};
  CHECK(eval_classical(m, 0, M("[]F")));
  CHECK_FALSE(eval_classical(m, 0, M("<>T")));
  CHECK_THROWS_AS(eval_classical(m, 3, M("p0")), std::out_of_range);
}

TEST_CASE("eval_inm: examples") {
  CHECK(eval_inm(one_point(true), 0, M("[]p0 & <>p0")));
  CHECK_FALSE(eval_inm(one_point(false), 0, M("[]p0 | <>p0")));
  INModel c = box_bot_counter();
  CHECK_FALSE(eval_inm(c, 0, M("([]F -> <>T) -> <>T")));
  // Unfolding: w ⊩ □⊥ via a(w) = ∅ only if a(u) = {u} ⊆ ⟦⊥⟧, which fails.
  CHECK_FALSE(eval_inm(c, 0, M("[]F")));
  CHECK_FALSE(eval_inm(c, 0, M("<>T")));
  CHECK(eval_inm(c, 1, M("<>T")));
  CHECK_THROWS_AS(eval_inm(c, 2, M("p0")), std::out_of_range);
}

TEST_CASE("eval_inm: I_dia holds everywhere on random models") {
  Rng rng(21);
  const Formula i_dia = M("([]T -> <>p0) -> <>p0");
  for (int i = 0; i < 300; ++i) {
    INModel m = random_inm(rng, 1 + i % 5, i % 4, 1);
    CHECK(truth_set(m, i_dia) == WorldSet::full(m.size()));
  }
}

TEST_CASE("eval_cnm: the WM and iM counterexamples") {
  CNModel wm;
  wm.labels = {"w", "v"};
  wm.up = order_of(2, {{0, 1}});
  wm.gamma = {{set_of(2, {0})}, {}};
  wm.val = {set_of(2, {1})};
  CHECK_FALSE(eval_cnm(wm, 0, M("([]T -> <>p0) -> <>p0")));
  CHECK_FALSE(eval_cnm(wm, 0, M("[]T")));
  CHECK_FALSE(eval_cnm(wm, 1, M("[]T")));
  CHECK(eval_cnm(wm, 0, M("[]T -> <>p0")));
  CHECK_FALSE(eval_cnm(wm, 0, M("<>p0")));
  CHECK_FALSE(check_full(wm));

  CNModel im;
  im.labels = {"w", "v"};
  im.up = order_of(2, {{0, 1}});
  im.gamma = {{}, {WorldSet(2), set_of(2, {0}), set_of(2, {1}), WorldSet::full(2)}};
  CHECK_FALSE(eval_cnm(im, 0, V("(~nabla F -> nabla T) -> nabla T")));
  CHECK_FALSE(eval_cnm(im, 0, V("nabla T")));
  CHECK(eval_cnm(im, 1, V("nabla F")));
  CHECK_FALSE(eval_cnm(im, 0, V("~nabla F")));
  CHECK(eval_cnm(im, 0, V("F -> p0")));
}

TEST_CASE("eval_ik2: the final counterexample frame") {
  IK2Model m;
  m.labels = {"w", "v", "u", "s"};
  m.up = order_of(4, {{0, 2}, {1, 3}});
  m.rel_n = empty_relation(4);
  m.rel_e = empty_relation(4);
  m.rel_n[0].set(1);
  m.rel_n[2].set(3);
  m.rel_e[3].set(3);
  CHECK(is_ik2_frame(m));
  CHECK_FALSE(eval_ik2(m, 0, B("(<N>[E]F -> [N]<E>T) -> [N]<E>T")));
  CHECK(eval_ik2(m, 1, B("[N]<E>T")));
  for (World w = 0; w < 4; ++w) CHECK_FALSE(eval_ik2(m, w, B("<N>F")));
}

TEST_CASE("data documents load and give the stated verdicts") {
  auto wm = std::get<CNModel>(load_model(data_path("models/wm_example.json")));
  CHECK_FALSE(eval_cnm(wm, 0, M("([]T -> <>p0) -> <>p0")));
  auto im = std::get<CNModel>(load_model(data_path("models/im_example.json")));
  CHECK_FALSE(eval_cnm(im, 0, V("(~nabla F -> nabla T) -> nabla T")));
  auto ik = std::get<IK2Model>(load_model(data_path("models/ik2_example.json")));
  CHECK_FALSE(eval_ik2(ik, 0, B("(<N>[E]F -> [N]<E>T) -> [N]<E>T")));
  auto fig = std::get<INModel>(load_model(data_path("models/figure1.json")));
  CHECK(fig.size() == 6);
  CHECK(all_ok(check_inm(fig, InmLevel::Coherent)));
}

TEST_CASE("property: evaluators agree with the clause-by-clause oracles") {
  Rng rng(22);
  for (int i = 0; i < 200; ++i) {
    INModel m = random_inm(rng, 1 + i % 5, i % 3, 2);
    CNModel c = random_cnm(rng, 1 + i % 5, 2, 2);
    NbhdModel k = random_classical(rng, 1 + i % 4, 2, 2);
    IK2Model b;
    b.labels = default_labels(1 + i % 5);
    b.up = random_poset(rng, b.size());
    b.rel_n = empty_relation(b.size());
    b.rel_e = empty_relation(b.size());
    for (World x = 0; x < b.size(); ++x) {
      b.rel_n[x] = random_subset(rng, b.size(), 0.3);
      b.rel_e[x] = random_subset(rng, b.size(), 0.3);
    }
    b.val = {random_upset(rng, b.up), random_upset(rng, b.up)};
    for (int j = 0; j < 5; ++j) {
      agree_with_oracle(m, eval_inm, oracle::inm, random_formula(rng, Dialect::Modal, 3, 2));
      agree_with_oracle(c, eval_cnm, oracle::cnm, random_formula(rng, Dialect::Modal, 3, 2));
      agree_with_oracle(c, eval_cnm, oracle::cnm, random_formula(rng, Dialect::Nabla, 3, 2));
      agree_with_oracle(k, eval_classical, oracle::classical, random_formula(rng, Dialect::Modal, 3, 2));
      agree_with_oracle(b, eval_ik2, oracle::ik2, random_formula(rng, Dialect::Bimodal, 3, 2));
    }
  }
}

TEST_CASE("property: persistence on intuitionistic models") {
  Rng rng(23);
  std::size_t violations = 0;
  for (int i = 0; i < 300; ++i) {
    INModel m = random_inm(rng, 2 + i % 5, 1 + i % 3, 2);
    for (int j = 0; j < 10; ++j) {
      auto t = truth_set(m, random_formula(rng, Dialect::Modal, 3, 2));
      CHECK(is_upset(t, m.up));
      violations += !is_upset(t, m.up);
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("property: the monotonicity rules are sound per model") {
  Rng rng(24);
  for (int i = 0; i < 300; ++i) {
    INModel m = random_inm(rng, 2 + i % 4, 1 + i % 3, 2);
    Formula f = random_formula(rng, Dialect::Modal, 2, 2);
    Formula g = disj(f, random_formula(rng, Dialect::Modal, 2, 2));
    REQUIRE(truth_set(m, f).subset_of(truth_set(m, g)));
    CHECK(truth_set(m, box(f)).subset_of(truth_set(m, box(g))));
    CHECK(truth_set(m, dia(f)).subset_of(truth_set(m, dia(g))));
  }
}

TEST_CASE("check_inm") {
  INModel p = one_point(true);
  for (auto lvl : {InmLevel::Basic, InmLevel::Coherent, InmLevel::Cartesian}) CHECK(all_ok(check_inm(p, lvl)));

  INModel bad = box_bot_counter();
  bad.nbhds[0] = make_neighbourhood("a", set_of(2, {0}), {WorldSet(2), WorldSet(2)});
  CHECK_FALSE(all_ok(check_inm(bad, InmLevel::Basic)));
  CHECK_FALSE(is_valid_inm(bad));

  INModel valbad = box_bot_counter();
  valbad.val = {set_of(2, {0})};
  CHECK_FALSE(is_valid_inm(valbad));

  // a(w) = ∅ but a(u) = {u}: N₂ holds vacuously, N₁ holds (nothing to trace).
  // Reverse it and N₁ fails.
  INModel n1 = box_bot_counter();
  n1.nbhds[0] = make_neighbourhood("a", WorldSet::full(2), {set_of(2, {1}), WorldSet(2)});
  CHECK(is_valid_inm(n1));
  CHECK_FALSE(is_coherent(n1));

  // a(w) = {w}, a(u) = {u}: R~ is the identity, so both conditions hold.
  INModel ca = box_bot_counter();
  ca.nbhds[0] = make_neighbourhood("a", WorldSet::full(2), {set_of(2, {0}), set_of(2, {1})});
  CHECK(is_coherent(ca));
  CHECK(is_cartesian(ca));
  // a(w) = a(u) = {u}: w ≤~ u R~ w with w ≠ u.
  INModel nc = box_bot_counter();
  nc.nbhds[0] = make_neighbourhood("a", WorldSet::full(2), {set_of(2, {1}), set_of(2, {1})});
  CHECK(is_coherent(nc));
  CHECK_FALSE(is_cartesian(nc));
  // Two neighbourhoods on one R~ class with different values: N-Cartesian fails.
  INModel nn;
  nn.labels = {"x", "y"};
  nn.up = identity_relation(2);
  nn.nbhds.push_back(make_neighbourhood("a", WorldSet::full(2), {set_of(2, {0}), set_of(2, {1})}));
  nn.nbhds.push_back(make_neighbourhood("b", set_of(2, {0}), {set_of(2, {1}), WorldSet(2)}));
  CHECK(is_coherent(nn));
  CHECK_FALSE(is_cartesian(nn));
}

TEST_CASE("check_full and check_ik2_frame") {
  CNModel empty;
  empty.labels = {"w", "v"};
  empty.up = order_of(2, {{0, 1}});
  empty.gamma = {{}, {}};
  CHECK(check_full(empty));

  IK2Model m;
  m.labels = default_labels(3);
  m.up = identity_relation(3);
  Rng rng(25);
  m.rel_n = {random_subset(rng, 3), random_subset(rng, 3), random_subset(rng, 3)};
  m.rel_e = {random_subset(rng, 3), random_subset(rng, 3), random_subset(rng, 3)};
  CHECK(is_ik2_frame(m));

  // w ≤ v and w R_N u with v having no R_N-successor: forward confluence fails.
  IK2Model f;
  f.labels = default_labels(3);
  f.up = order_of(3, {{0, 1}});
  f.rel_n = empty_relation(3);
  f.rel_e = empty_relation(3);
  f.rel_n[0].set(2);
  CHECK_FALSE(is_ik2_frame(f));
}

TEST_CASE("equivalence classes") {
  Relation r = empty_relation(5);
  r[0].set(2);
  r[3].set(2);
  r[4].set(4);
  auto cls = equivalence_classes(r);
  CHECK(cls == std::vector<World>{0, 1, 0, 0, 4});
}

TEST_CASE("find_isomorphism") {
  Rng rng(26);
  for (int i = 0; i < 100; ++i) {
    INModel m = random_inm(rng, 1 + i % 6, i % 3, 2);
    auto self = find_isomorphism(m, m);
    REQUIRE(self);
    CHECK(verify_isomorphism(m, m, *self));

    // Relabelled copy under a random permutation of worlds and neighbourhoods.
    std::vector<World> perm(m.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    INModel c;
    c.labels = default_labels(m.size());
    c.up = empty_relation(m.size());
    for (World w = 0; w < m.size(); ++w)
      for (World v : m.up[w]) c.up[perm[w]].set(perm[v]);
    auto map_set = [&](const WorldSet& s) {
      WorldSet t(m.size());
      for (World w : s) t.set(perm[w]);
      return t;
    };
    for (auto it = m.nbhds.rbegin(); it != m.nbhds.rend(); ++it) {
      std::vector<WorldSet> vals(m.size(), WorldSet(m.size()));
      for (World w : it->domain) vals[perm[w]] = map_set(it->at(w));
      c.nbhds.push_back(make_neighbourhood(it->name + "'", map_set(it->domain), std::move(vals)));
    }
    for (const auto& v : m.val) c.val.push_back(map_set(v));
    auto iso = find_isomorphism(m, c);
    REQUIRE(iso);
    CHECK(verify_isomorphism(m, c, *iso));
    for (int j = 0; j < 5; ++j) {
      Formula f = random_formula(rng, Dialect::Modal, 3, 2);
      auto ta = truth_set(m, f), tb = truth_set(c, f);
      for (World w = 0; w < m.size(); ++w) CHECK(ta.test(w) == tb.test(iso->worlds[w]));
    }
  }
  INModel a = one_point(true), b = box_bot_counter();
  CHECK_FALSE(find_isomorphism(a, b));
  INModel q = one_point(false);
  CHECK_FALSE(find_isomorphism(a, q));
}
