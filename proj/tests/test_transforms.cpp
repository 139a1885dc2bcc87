#include <doctest.h>

#include <algorithm>

#include "imml/generators.hpp"
#include "imml/json_io.hpp"
#include "imml/transforms.hpp"
#include "oracles.hpp"

using namespace imml;

namespace {

Formula M(const char* s) { return parse(s, Dialect::Modal); }

WorldSet set_of(std::size_t n, std::initializer_list<World> ws) {
  WorldSet s(n);
  for (World w : ws) s.set(w);
  return s;
}

INModel chain_model() {
  INModel m;
  m.labels = {"w", "v"};
  m.up = reflexive_transitive_closure({set_of(2, {0, 1}), set_of(2, {1})});
  m.nbhds.push_back(make_neighbourhood("a", WorldSet::full(2), {set_of(2, {0}), set_of(2, {1})}));
  return m;
}

INModel figure1() { return std::get<INModel>(load_model(data_path("models/figure1.json"))); }

World index_of(const INModel& m, const std::string& label) {
  return static_cast<World>(std::find(m.labels.begin(), m.labels.end(), label) - m.labels.begin());
}

}  // namespace

TEST_CASE("bullet") {
  auto s = std::get<IFOMStructure>(load_model(data_path("models/ifom_example.json")));
  auto b = bullet(s);
  CHECK(b.model.size() == 2 + 3 + 4);
  CHECK(b.pairs.front() == std::pair<World, unsigned>{0, 0});
  CHECK(eval_inm(b.model, 0, M("<>p0")));
  CHECK(is_coherent(b.model));
  CHECK(is_cartesian(b.model));

  IFOMStructure one;
  one.labels = {"w"};
  one.up = identity_relation(1);
  one.state_labels = {"d"};
  one.at = {empty_interp(1, 0)};
  one.at[0].states.set(0);
  auto ob = bullet(one).model;
  CHECK(ob.size() == 1);
  CHECK(ob.nbhds.empty());
}

TEST_CASE("property: bullet preserves truth and is coherent and Cartesian") {
  Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    IFOMStructure s = random_ifom(rng, 1 + i % 4, 1 + i % 3, i % 3, 2);
    auto b = bullet(s);
    REQUIRE(is_valid_inm(b.model));
    CHECK(is_coherent(b.model));
    CHECK(is_cartesian(b.model));
    for (int j = 0; j < 5; ++j) {
      Formula f = random_formula(rng, Dialect::Modal, 3, 2);
      auto t = truth_set(b.model, f);
      for (World i2 = 0; i2 < b.pairs.size(); ++i2) {
        auto [w, x] = b.pairs[i2];
        CHECK(t.test(i2) == oracle::ifom(s, w, x, f));
      }
    }
  }
}

TEST_CASE("property: structural lemma on coherent Cartesian models") {
  Rng rng(42);
  for (int i = 0; i < 150; ++i) {
    INModel m = bullet(random_ifom(rng, 1 + i % 4, 1 + i % 3, i % 3, 1)).model;
    const Relation R = membership_relation(m);
    const auto rc = r_tilde_classes(m), lc = leq_tilde_classes(m);
    const std::size_t n = m.size();
    for (World w = 0; w < n; ++w)
      for (World v = 0; v < n; ++v) {
        if (rc[w] != rc[v]) continue;
        for (World u : m.up[v]) {
          bool found = false;
          for (World s2 : m.up[w])
            if (rc[s2] == rc[u]) found = true;
          CHECK(found);
        }
        for (World v2 = 0; v2 < n; ++v2)
          if (rc[w] == rc[v2] && lc[v] == lc[v2]) CHECK(v == v2);
      }
    (void)R;
  }
}

TEST_CASE("circle") {
  INModel p;
  p.labels = {"w"};
  p.up = identity_relation(1);
  p.nbhds.push_back(make_neighbourhood("a", WorldSet::full(1), {WorldSet::full(1)}));
  auto c = circle(p);
  REQUIRE(c.size() == 1);
  CHECK(c.at[0].states.count() == 1);
  CHECK(c.at[0].nbhds.count() == 1);
  CHECK(c.at[0].rel_n[0].test(0));
  CHECK(c.at[0].rel_e[0].test(0));

  INModel nc = chain_model();
  nc.nbhds[0] = make_neighbourhood("a", WorldSet::full(2), {set_of(2, {1}), set_of(2, {1})});
  CHECK_THROWS_AS(circle(nc), PreconditionError);
  try {
    circle(nc);
  } catch (const PreconditionError& e) {
    CHECK_FALSE(e.reports().empty());
  }
}

TEST_CASE("property: round trip through circle is an isomorphism") {
  Rng rng(43);
  for (int i = 0; i < 120; ++i) {
    INModel m = bullet(random_ifom(rng, 1 + i % 4, 1 + i % 3, i % 3, 1)).model;
    IFOMStructure c = circle(m);
    REQUIRE(is_valid_ifom(c));
    INModel back = bullet(c).model;
    auto iso = find_isomorphism(m, back);
    REQUIRE(iso);
    CHECK(verify_isomorphism(m, back, *iso));
  }
}

TEST_CASE("coherent_completion") {
  auto r = coherent_completion(chain_model(), 3);
  // (w,0), (v,0), (v,1), (v,2), (v,3).
  CHECK(r.model.size() == 5);
  CHECK(std::count(r.origin.begin(), r.origin.end(), 1u) == 4);
  CHECK(std::count(r.origin.begin(), r.origin.end(), 0u) == 1);

  INModel p;
  p.labels = {"w"};
  p.up = identity_relation(1);
  p.nbhds.push_back(make_neighbourhood("a", WorldSet::full(1), {WorldSet::full(1)}));
  p.val = {WorldSet::full(1)};
  const std::size_t K = 4;
  auto pc = coherent_completion(p, K);
  Rng rng(44);
  for (int j = 0; j < 300; ++j) {
    Formula f = random_formula(rng, Dialect::Modal, K - 1, 1);
    World base = static_cast<World>(std::find(pc.copy.begin(), pc.copy.end(), 0u) - pc.copy.begin());
    CHECK(eval_inm(pc.model, base, f) == eval_inm(p, 0, f));
  }
}

TEST_CASE("property: coherent completion agrees at base copies and satisfies N1") {
  Rng rng(45);
  for (int i = 0; i < 150; ++i) {
    INModel m = random_inm(rng, 1 + i % 4, 1 + i % 2, 1);
    for (int j = 0; j < 4; ++j) {
      Formula f = random_formula(rng, Dialect::Modal, 2, 1);
      const std::size_t K = modal_depth(f) + 2;
      auto c = coherent_completion(m, K);
      REQUIRE(is_valid_inm(c.model));
      auto t = truth_set(c.model, f), s = truth_set(m, f);
      for (World i2 = 0; i2 < c.model.size(); ++i2)
        if (c.copy[i2] == 0) CHECK(t.test(i2) == s.test(c.origin[i2]));
    }
    auto c = coherent_completion(m, 3);
    auto reports = check_inm(c.model, InmLevel::Coherent);
    for (const auto& r : reports)
      if (r.check.find("N1") != std::string::npos || r.check.find("N₁") != std::string::npos) CHECK(r.ok);
  }
}

TEST_CASE("unravelling paths of the figure") {
  INModel m = figure1();
  auto p1 = parse_path("w,<=,v,a,u,a,s", m);
  auto p2 = parse_path("w,<=,v,a,t,a,x", m);
  auto p3 = parse_path("w,<=,v,<=,v,a,u,a,s", m);
  auto p3t = parse_path("w,<=,v,<=,v,a,t,a,x", m);
  CHECK(p1.ord_length() == 1);
  CHECK(p1.nbd_length() == 2);
  CHECK(p3.ord_length() == 2);
  CHECK(leq_ur(p1, p3, m.up));
  CHECK(leq_ur(p1, p3t, m.up));
  CHECK_FALSE(leq_ur(p1, p2, m.up));
  CHECK_FALSE(leq_ur(p3, p1, m.up));
  CHECK(p1.ord == p2.ord);
  CHECK(format_path(p1, m) == "(w,<=,v,a,u,a,s)");
  CHECK(parse_path("(w,≤,v,a,u,a,s)", m) == p1);
  CHECK_THROWS_AS(parse_path("w,a,v", m), std::invalid_argument);
  CHECK_THROWS_AS(parse_path("v,a,u,<=,t", m), std::invalid_argument);
  CHECK_THROWS_AS(parse_path("w,<=,u", m), std::invalid_argument);
  CHECK_THROWS_AS(parse_path("w,<=,q", m), std::invalid_argument);
}

TEST_CASE("unravel: trivial and guarded") {
  INModel one;
  one.labels = {"s"};
  one.up = identity_relation(1);
  auto u = unravel(one, 0, 1);
  // (s) and (s,<=,s).
  CHECK(u.paths.front() == UrPath{{0}, {}});
  CHECK(u.model.nbhds.empty());
  auto u0 = unravel_paths(one, 0, 0);
  CHECK(u0.size() == 1);

  INModel nc = chain_model();
  nc.nbhds[0] = make_neighbourhood("a", WorldSet::full(2), {set_of(2, {1}), WorldSet(2)});
  CHECK_THROWS_AS(unravel(nc, 0, 2), PreconditionError);
}

TEST_CASE("property: unravelling preserves root truth once the budget suffices") {
  Rng rng(46);
  for (int i = 0; i < 120; ++i) {
    INModel m = make_coherent(random_inm(rng, 1 + i % 4, 1 + i % 2, 1));
    World s = static_cast<World>(i % m.size());
    for (int j = 0; j < 4; ++j) {
      Formula f = random_formula(rng, Dialect::Modal, 2, 1);
      const std::size_t L = TruncationBudget::for_formula(f).unravel_len;
      auto a = unravel(m, s, L), b = unravel(m, s, L + 1);
      REQUIRE(is_valid_inm(a.model));
      bool src = eval_inm(m, s, f);
      INFO(print(f));
      CHECK(eval_inm(a.model, 0, f) == src);
      CHECK(eval_inm(b.model, 0, f) == src);
    }
  }
}

TEST_CASE("unravelling of comparable neighbourhood members is not R~-Cartesian") {
  // 0 ≤ 1 and a(1) = {0, 1}, which is coherent. With o = (0,<=,1) the paths
  // (o,a,0) and (o,a,1) share their order part, hence are R~-related, and both
  // lie ≤ur-below (o,<=,1,a,1). The equivalence closure of ≤ur then links
  // them, so the R~-Cartesian condition fails under the literal order.
  INModel m;
  m.labels = {"0", "1"};
  m.up = chain_model().up;
  m.nbhds.push_back(make_neighbourhood("a", set_of(2, {1}), {WorldSet(2), WorldSet::full(2)}));
  REQUIRE(is_coherent(m));
  auto x = parse_path("0,<=,1,a,0", m), y = parse_path("0,<=,1,a,1", m), z = parse_path("0,<=,1,<=,1,a,1", m);
  CHECK(leq_ur(x, z, m.up));
  CHECK(leq_ur(y, z, m.up));
  CHECK(x.ord == y.ord);
  auto u = unravel(m, 0, 2);
  INModel plain = u.model;
  plain.up = leq_ur_relation(u.paths, m.up);
  CHECK(is_coherent(plain));
  CHECK_FALSE(is_cartesian(plain));
  CHECK_FALSE(is_cartesian(u.model));
}

TEST_CASE("property: unravellings are valid models under both orders") {
  Rng rng(47);
  for (int i = 0; i < 80; ++i) {
    INModel m = make_coherent(random_inm(rng, 1 + i % 4, 1 + i % 2, 1));
    auto u = unravel(m, 0, 1 + i % 2);
    INModel plain = u.model;
    plain.up = leq_ur_relation(u.paths, m.up);
    REQUIRE(is_valid_inm(plain));
    CHECK(is_valid_inm(u.model));
  }
}

TEST_CASE("hat") {
  auto h = hat(chain_model());
  CHECK(h.model.size() == 3);
  CHECK(std::count(h.origin.begin(), h.origin.end(), 0u) == 2);
  CHECK(check_full(h.model));

  INModel bare;
  bare.labels = {"w", "v"};
  bare.up = chain_model().up;
  auto hb = hat(bare);
  CHECK(hb.model.size() == 2);
  for (const auto& g : hb.model.gamma) CHECK(g.empty());
}

TEST_CASE("property: hat preserves truth and is full") {
  Rng rng(48);
  for (int i = 0; i < 150; ++i) {
    INModel m = random_inm(rng, 1 + i % 4, i % 3, 2);
    auto h = hat(m);
    REQUIRE(check_cnm(h.model).size() > 0);
    CHECK(check_full(h.model));
    for (int j = 0; j < 8; ++j) {
      Formula f = random_formula(rng, Dialect::Modal, 3, 2);
      auto th = truth_set(h.model, f), tm = truth_set(m, f);
      for (World w = 0; w < h.model.size(); ++w) CHECK(th.test(w) == tm.test(h.origin[w]));
    }
  }
}

TEST_CASE("fullify") {
  CNModel m;
  m.labels = {"w", "v"};
  m.up = chain_model().up;
  m.gamma = {{set_of(2, {0})}, {}};
  auto f = fullify(m);
  CHECK(f.gamma[0].empty());
  CHECK(check_full(f));
  CNModel full = fullify(f);
  CHECK(full.gamma == f.gamma);

  Rng rng(49);
  for (int i = 0; i < 200; ++i) {
    CNModel c = random_cnm(rng, 1 + i % 4, 2, 2);
    CNModel g = fullify(c);
    CHECK(check_full(g));
    if (check_full(c)) CHECK(g.gamma == c.gamma);
    for (int j = 0; j < 8; ++j) {
      Formula phi = random_formula(rng, Dialect::Nabla, 3, 2);
      CHECK(truth_set(g, phi) == truth_set(c, phi));
    }
  }
}

TEST_CASE("star") {
  IK2Model s = star(chain_model());
  REQUIRE(s.size() == 4);
  CHECK(s.rel_n[0] == set_of(4, {2}));
  CHECK(s.rel_n[1] == set_of(4, {3}));
  CHECK(s.rel_e[2] == set_of(4, {0}));
  CHECK(s.rel_e[3] == set_of(4, {1}));
  CHECK(s.labels[2] == "(a,w)");
  CHECK(is_ik2_frame(s));

  INModel bare;
  bare.labels = {"w"};
  bare.up = identity_relation(1);
  IK2Model sb = star(bare);
  CHECK(sb.size() == 1);
  CHECK(sb.rel_n[0].empty());
  CHECK(sb.rel_e[0].empty());

  INModel nc = chain_model();
  nc.nbhds[0] = make_neighbourhood("a", WorldSet::full(2), {set_of(2, {1}), WorldSet(2)});
  CHECK_THROWS_AS(star(nc), PreconditionError);
}

TEST_CASE("property: star agrees with the bimodal translation") {
  Rng rng(50);
  for (int i = 0; i < 150; ++i) {
    INModel m = make_coherent(random_inm(rng, 1 + i % 4, i % 3, 2));
    IK2Model s = star(m);
    CHECK(is_ik2_frame(s));
    for (int j = 0; j < 8; ++j) {
      Formula f = random_formula(rng, Dialect::Modal, 3, 2);
      auto tm = truth_set(m, f), ts = truth_set(s, translate_bimodal(f));
      for (World w = 0; w < m.size(); ++w) CHECK(tm.test(w) == ts.test(w));
    }
  }
}

TEST_CASE("figure frame labels") {
  INModel m = figure1();
  CHECK(index_of(m, "w") == 4);
}
