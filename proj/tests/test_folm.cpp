#include <doctest.h>

#include "imml/generators.hpp"
#include "imml/json_io.hpp"
#include "oracles.hpp"

using namespace imml;

namespace {

Formula M(const char* s) { return parse(s, Dialect::Modal); }

const Var x0{Sort::State, 0}, x1{Sort::State, 1}, a0{Sort::Nbhd, 0};

IFOMStructure example() { return std::get<IFOMStructure>(load_model(data_path("models/ifom_example.json"))); }

FOMStructure random_fom(Rng& rng, std::size_t states, std::size_t nbhds, std::size_t atoms) {
  FOMStructure m;
  for (std::size_t i = 0; i < states; ++i) m.state_labels.push_back("d" + std::to_string(i));
  for (std::size_t i = 0; i < nbhds; ++i) m.nbhd_labels.push_back("a" + std::to_string(i));
  m.interp = empty_interp(states, nbhds);
  m.interp.states = WorldSet::full(states);
  m.interp.nbhds = WorldSet::full(nbhds);
  for (std::size_t x = 0; x < states; ++x) m.interp.rel_n[x] = random_subset(rng, nbhds, 0.4);
  for (std::size_t a = 0; a < nbhds; ++a) m.interp.rel_e[a] = random_subset(rng, states, 0.4);
  for (std::size_t p = 0; p < atoms; ++p) m.interp.preds.push_back(random_subset(rng, states));
  return m;
}

}  // namespace

TEST_CASE("standard translation clauses") {
  CHECK(standard_translation(M("<>p0"), x0) ==
        FoFormula::forall(a0, FoFormula::binary(FoOp::Implies, FoFormula::rel_n(x0, a0),
                                                FoFormula::exists(x1, FoFormula::binary(FoOp::And,
                                                                                        FoFormula::rel_e(a0, x1),
                                                                                        FoFormula::pred(0, x1))))));
  CHECK(standard_translation(M("p1"), x0) == FoFormula::pred(1, x0));
  CHECK(standard_translation(M("[]p0"), x0) ==
        FoFormula::exists(a0, FoFormula::binary(FoOp::And, FoFormula::rel_n(x0, a0),
                                                FoFormula::forall(x1, FoFormula::binary(FoOp::Implies,
                                                                                        FoFormula::rel_e(a0, x1),
                                                                                        FoFormula::pred(0, x1))))));
  CHECK(standard_translation(M("F"), x0) == FoFormula::falsum());
}

TEST_CASE("property: translations have exactly one free variable, of sort s") {
  Rng rng(31);
  for (int i = 0; i < 500; ++i) {
    auto fv = free_variables(standard_translation(random_formula(rng, Dialect::Modal, 5, 3), x0));
    // Constant formulas such as ⊥ have none.
    CHECK(fv.size() <= 1);
    if (!fv.empty()) CHECK(fv[0] == x0);
  }
  CHECK(free_variables(standard_translation(M("[]<>p0"), x0)) == std::vector<Var>{x0});
}

TEST_CASE("eval_fo_classical") {
  Rng rng(32);
  FOMStructure m = random_fom(rng, 3, 2, 1);
  CHECK_FALSE(eval_fo_classical(m, FoFormula::falsum(), {}));
  FOMStructure e = m;
  for (auto& r : e.interp.rel_n) r.clear();
  for (unsigned d = 0; d < 3; ++d) CHECK(eval_fo_classical(e, standard_translation(M("<>p0"), x0), {{x0, d}}));
  CHECK_THROWS_AS(eval_fo_classical(m, FoFormula::pred(0, x0), {}), std::invalid_argument);
  CHECK_THROWS_AS(eval_fo_classical(m, FoFormula::pred(0, x0), {{x0, 7}}), std::invalid_argument);
}

TEST_CASE("classical agreement through the circle map") {
  Rng rng(33);
  for (int i = 0; i < 200; ++i) {
    NbhdModel m = random_classical(rng, 1 + i % 3, 3, 2);
    FOMStructure c = classical_circle(m);
    NbhdModel b = classical_bullet(c);
    for (int j = 0; j < 10; ++j) {
      Formula f = random_formula(rng, Dialect::Modal, 2, 2);
      for (World w = 0; w < m.size(); ++w) {
        bool direct = oracle::classical(m, w, f);
        CHECK(eval_fo_classical(c, standard_translation(f, x0), {{x0, w}}) == direct);
        CHECK(eval_classical(b, w, f) == direct);
      }
    }
  }
  NbhdModel one;
  one.labels = {"w"};
  one.nf = {{WorldSet(1)}};
  CHECK(eval_classical(classical_bullet(classical_circle(one)), 0, M("[]F")));
  one.nf = {{}};
  auto c = classical_circle(one);
  for (const auto& r : c.interp.rel_n) CHECK(r.empty());
}

TEST_CASE("property: FOM bullet agrees with the first-order route") {
  Rng rng(34);
  for (int i = 0; i < 200; ++i) {
    FOMStructure m = random_fom(rng, 1 + i % 4, i % 3, 2);
    NbhdModel b = classical_bullet(m);
    for (int j = 0; j < 10; ++j) {
      Formula f = random_formula(rng, Dialect::Modal, 3, 2);
      for (unsigned d = 0; d < m.state_labels.size(); ++d)
        CHECK(eval_classical(b, d, f) == eval_fo_classical(m, standard_translation(f, x0), {{x0, d}}));
    }
  }
}

TEST_CASE("the IFOM example: ◇p at (w1, d1) by both routes") {
  IFOMStructure s = example();
  CHECK(is_valid_ifom(s));
  const Formula f = M("<>p0");
  CHECK(eval_modal_ifom(s, 0, 0, f));
  CHECK(eval_fo_kripke(s, 0, standard_translation(f, x0), {{x0, 0}}));
  CHECK(oracle::ifom(s, 0, 0, f));
  // d3 appears only at w2 and is not a state at w1.
  CHECK_THROWS_AS(eval_modal_ifom(s, 0, 2, f), std::invalid_argument);
  CHECK_FALSE(eval_modal_ifom(s, 0, 0, M("F")));
  CHECK_FALSE(eval_fo_kripke(s, 0, FoFormula::falsum(), {}));
  // At w3 d2 reaches a2, whose only member d4 fails p: ◇p fails at (w1, d2).
  CHECK_FALSE(eval_modal_ifom(s, 0, 1, f));
}

TEST_CASE("property: pair semantics, translation route and Kripke persistence agree") {
  Rng rng(35);
  for (int i = 0; i < 200; ++i) {
    IFOMStructure s = random_ifom(rng, 1 + i % 4, 1 + i % 3, i % 3, 2);
    REQUIRE(is_valid_ifom(s));
    for (int j = 0; j < 6; ++j) {
      Formula f = random_formula(rng, Dialect::Modal, 3, 2);
      FoFormula st = standard_translation(f, x0);
      for (World w = 0; w < s.size(); ++w)
        for (unsigned d : s.at[w].states) {
          bool direct = eval_modal_ifom(s, w, d, f);
          CHECK(direct == oracle::ifom(s, w, d, f));
          CHECK(direct == eval_fo_kripke(s, w, st, {{x0, d}}));
          if (direct)
            for (World v : s.up[w]) CHECK(eval_fo_kripke(s, v, st, {{x0, d}}));
        }
    }
  }
}

TEST_CASE("check_ifom rejects shrinking structures") {
  IFOMStructure s = example();
  s.at[1].states.reset(0);
  CHECK_FALSE(is_valid_ifom(s));
  IFOMStructure t = example();
  t.at[2].rel_e[0].reset(1);
  CHECK_FALSE(is_valid_ifom(t));
}
