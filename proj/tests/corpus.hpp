#pragma once

// Hand-built IM_Calc derivations: every axiom, MP chains, both Mon rules,
// contexts and outputs of deduce. Shared by the calculi tests and the
// acceptance suite.

#include <string>
#include <utility>
#include <vector>

#include "imml/calculi.hpp"

namespace corpus {

using namespace imml;

inline Formula M(const char* s) { return parse(s, Dialect::Modal); }

inline std::vector<std::pair<std::string, Derivation>> im_derivations() {
  const CalculusSpec im = builtin_calculus("IM_Calc");
  const Formula p0 = atom(0), p1 = atom(1), p2 = atom(2);
  std::vector<std::pair<std::string, Derivation>> out;
  auto add = [&](std::string name, Derivation d) { out.emplace_back(std::move(name), std::move(d)); };

  add("el", el({p0}, p0));
  add("neg_a over a disjunction", ax(im, {}, M("[](p0 | p1) & <>~(p0 | p1) -> F")));
  add("neg_a over a box", ax(im, {}, M("[][]p1 & <>~[]p1 -> F")));
  add("neg_a over an implication", ax(im, {p2}, M("[](p0 -> p1) & <>~(p0 -> p1) -> F")));
  add("I_dia plain", ax(im, {}, M("([]T -> <>p0) -> <>p0")));
  add("I_dia at bottom", ax(im, {}, M("([]T -> <>F) -> <>F")));
  add("I_dia compound", ax(im, {p0}, M("([]T -> <>(<>p0 & p1)) -> <>(<>p0 & p1)")));
  add("I_dia boxed", ax(im, {}, M("([]T -> <>[]F) -> <>[]F")));
  add("ipc K", ax(im, {}, M("p0 -> p1 -> p0")));

  Derivation modus = mp(el({p0, imp(p0, p1)}, p0), el({p0, imp(p0, p1)}, imp(p0, p1)));
  add("mp", modus);

  Derivation and_e1 = ax(im, {}, M("p0 & p1 -> p0"));
  Derivation mon_box = mon(Op::Box, {}, and_e1);
  add("mon box", mon_box);
  add("mon box in context", mon(Op::Box, {p2}, ax(im, {}, M("p0 & p1 -> p1"))));
  add("mon box then mp", mp(el({M("[](p0 & p1)")}, M("[](p0 & p1)")), mon(Op::Box, {M("[](p0 & p1)")}, and_e1)));

  Derivation or_i1 = ax(im, {}, M("p0 -> p0 | p1"));
  Derivation mon_dia = mon(Op::Dia, {}, or_i1);
  add("mon dia", mon_dia);
  add("mon box over mon dia", mon(Op::Box, {}, mon_dia));
  add("mon dia over mon box", mon(Op::Dia, {}, mon_box));
  add("mon dia and-elim", mon(Op::Dia, {}, ax(im, {}, M("p0 & p1 -> p1"))));

  const Formula bp0 = M("[]p0"), dp1 = M("<>p1");
  add("chain to a disjunction", mp(el({bp0}, bp0), ax(im, {bp0}, imp(bp0, disj(bp0, dp1)))));

  Derivation id = deduce(im, el({p0}, p0), p0);
  add("deduce identity", id);
  add("mon dia over identity", mon(Op::Dia, {}, id));
  add("deduce mp", deduce(im, modus, p0));

  // {□p₀, ◇¬p₀} ⊢ □p₁: assemble □p₀ ∧ ◇¬p₀, refute it with neg_a, then EFQ.
  const Formula dn = M("<>~p0");
  const std::vector<Formula> g{bp0, dn};
  Derivation pair = mp(el(g, dn), mp(el(g, bp0), ax(im, g, imp(bp0, imp(dn, conj(bp0, dn))))));
  Derivation bot = mp(pair, ax(im, g, M("[]p0 & <>~p0 -> F")));
  add("neg_a refutation", bot);
  add("ex falso after refutation", mp(bot, ax(im, g, M("F -> []p1"))));
  add("deduce refutation", deduce(im, bot, dn));

  // ⊢ (□⊤ → ◇p₀) → ◇(p₀ ∨ p₁): I_◇ followed by Mon◇ along p₀ → p₀ ∨ p₁.
  const Formula hyp = M("[]T -> <>p0");
  Derivation dia_p0 = mp(el({hyp}, hyp), ax(im, {hyp}, M("([]T -> <>p0) -> <>p0")));
  add("I_dia then mon dia", deduce(im, mp(dia_p0, mon(Op::Dia, {hyp}, or_i1)), hyp));
  return out;
}

}  // namespace corpus
