#include "imml/calculi.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

namespace imml {

namespace {

const Formula p = atom(0), q = atom(1), r = atom(2);

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<Formula> with(std::vector<Formula> ctx, const std::vector<Formula>& extra) {
  ctx.insert(ctx.end(), extra.begin(), extra.end());
  return ctx;
}

}  // namespace

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::El: return "El";
    case Rule::Ax: return "Ax";
    case Rule::MP: return "MP";
    case Rule::MonBox: return "MonBox";
    case Rule::MonDia: return "MonDia";
    case Rule::Nec: return "Nec";
  }
  return "?";
}

Rule rule_from_name(std::string_view name) {
  for (Rule r : {Rule::El, Rule::Ax, Rule::MP, Rule::MonBox, Rule::MonDia, Rule::Nec})
    if (rule_name(r) == name) return r;
  throw std::invalid_argument("unknown rule '" + std::string(name) + "'");
}

bool CalculusSpec::has_rule(Rule r) const { return std::find(rules.begin(), rules.end(), r) != rules.end(); }

const Schema* CalculusSpec::find_schema(std::string_view n) const {
  for (const auto& s : axioms)
    if (s.name == n) return &s;
  return nullptr;
}

const std::vector<Schema>& ipc_basis() {
  static const std::vector<Schema> basis = {
      {"K", imp(p, imp(q, p))},
      {"S", imp(imp(p, imp(q, r)), imp(imp(p, q), imp(p, r)))},
      {"AndI", imp(p, imp(q, conj(p, q)))},
      {"AndE1", imp(conj(p, q), p)},
      {"AndE2", imp(conj(p, q), q)},
      {"OrI1", imp(p, disj(p, q))},
      {"OrI2", imp(q, disj(p, q))},
      {"OrE", imp(imp(p, r), imp(imp(q, r), imp(disj(p, q), r)))},
      {"EFQ", imp(falsum(), p)},
      {"I", imp(p, p)},
  };
  return basis;
}

std::vector<std::string> builtin_calculus_names() { return {"ghc0", "iM", "WM", "IM_Calc", "IK2"}; }

CalculusSpec builtin_calculus(std::string_view name) {
  const std::string key = lower(name);
  CalculusSpec spec;
  spec.axioms = ipc_basis();
  const std::vector<Rule> ghc = {Rule::El, Rule::Ax, Rule::MP, Rule::MonBox, Rule::MonDia};
  const Schema neg_a{"neg_a", imp(conj(box(p), dia(neg(p))), falsum())};
  const Schema i_dia{"I_dia", imp(imp(box(top()), dia(p)), dia(p))};
  if (key == "ghc0") {
    spec = {"ghc0", Dialect::Modal, spec.axioms, ghc};
  } else if (key == "im") {
    spec = {"iM", Dialect::Nabla, spec.axioms, {Rule::El, Rule::Ax, Rule::MP, Rule::MonBox}};
  } else if (key == "wm") {
    spec = {"WM", Dialect::Modal, spec.axioms, ghc};
    spec.axioms.push_back(neg_a);
  } else if (key == "im_calc") {
    spec = {"IM_Calc", Dialect::Modal, spec.axioms, ghc};
    spec.axioms.push_back(neg_a);
    spec.axioms.push_back(i_dia);
  } else if (key == "ik2") {
    spec = {"IK2", Dialect::Bimodal, spec.axioms, {Rule::El, Rule::Ax, Rule::MP, Rule::Nec}};
    for (auto [j, bx, dx] : {std::tuple{"N", &box_n, &dia_n}, std::tuple{"E", &box_e, &dia_e}}) {
      std::string s = j;
      spec.axioms.push_back({"K_box_" + s, imp(bx(imp(p, q)), imp(bx(p), bx(q)))});
      spec.axioms.push_back({"K_dia_" + s, imp(bx(imp(p, q)), imp(dx(p), dx(q)))});
      spec.axioms.push_back({"N_dia_" + s, neg(dx(falsum()))});
      spec.axioms.push_back({"C_dia_" + s, imp(dx(disj(p, q)), disj(dx(p), dx(q)))});
      spec.axioms.push_back({"I_diabox_" + s, imp(imp(dx(p), bx(q)), bx(imp(p, q)))});
    }
  } else {
    throw std::invalid_argument("unknown calculus '" + std::string(name) + "'");
  }
  return spec;
}

std::size_t Derivation::size() const {
  std::size_t n = 1;
  for (const auto& d : premises) n += d.size();
  return n;
}

// ---------------------------------------------------------------------------
// Matching and checking

namespace {

bool match(const Formula& schema, const Formula& phi, Substitution& sigma) {
  if (schema.op() == Op::Atom) {
    auto [it, fresh] = sigma.try_emplace(schema.atom_index(), phi);
    return fresh || it->second == phi;
  }
  if (schema.op() != phi.op()) return false;
  if (schema.op() == Op::Falsum) return true;
  if (!match(schema.left(), phi.left(), sigma)) return false;
  return !is_binary(schema.op()) || match(schema.right(), phi.right(), sigma);
}

bool all_in(const Consecution& c, Dialect d) {
  if (!in_dialect(c.formula(), d)) return false;
  for (const auto& f : c.context())
    if (!in_dialect(f, d)) return false;
  return true;
}

std::string check_node(const CalculusSpec& spec, const Derivation& d) {
  const auto& c = d.conclusion;
  const Formula& f = c.formula();
  if (!all_in(c, spec.dialect)) return "formula outside the " + std::string(dialect_name(spec.dialect)) + " language";
  if (!spec.has_rule(d.rule)) return "rule " + std::string(rule_name(d.rule)) + " is not part of " + spec.name;
  auto arity = [&](std::size_t n) -> std::string {
    if (d.premises.size() != n)
      return std::string(rule_name(d.rule)) + " expects " + std::to_string(n) + " premise(s), got " +
             std::to_string(d.premises.size());
    return {};
  };
  switch (d.rule) {
    case Rule::El:
      if (auto e = arity(0); !e.empty()) return e;
      if (!c.contains(f)) return "El: " + print(f) + " is not in the context";
      return {};
    case Rule::Ax: {
      if (auto e = arity(0); !e.empty()) return e;
      const Schema* s = spec.find_schema(d.schema);
      if (!s) return "Ax: unknown schema '" + d.schema + "'";
      if (substitute(s->formula, d.subst) != f) return "Ax: " + print(f) + " is not the certified instance of " + d.schema;
      return {};
    }
    case Rule::MP: {
      if (auto e = arity(2); !e.empty()) return e;
      const auto &a = d.premises[0].conclusion, &b = d.premises[1].conclusion;
      if (a.context() != c.context() || b.context() != c.context()) return "MP: premise contexts differ from the conclusion's";
      if (b.formula() != imp(a.formula(), f)) return "MP: second premise is not " + print(imp(a.formula(), f));
      return {};
    }
    case Rule::MonBox:
    case Rule::MonDia: {
      if (auto e = arity(1); !e.empty()) return e;
      const auto& pc = d.premises[0].conclusion;
      if (!pc.context().empty()) return std::string(rule_name(d.rule)) + ": premise context must be empty";
      if (pc.formula().op() != Op::Implies) return std::string(rule_name(d.rule)) + ": premise is not an implication";
      Op m = d.rule == Rule::MonDia ? Op::Dia : spec.dialect == Dialect::Nabla ? Op::Nabla : Op::Box;
      Formula want = imp(Formula::unary(m, pc.formula().left()), Formula::unary(m, pc.formula().right()));
      if (f != want) return std::string(rule_name(d.rule)) + ": conclusion should be " + print(want);
      return {};
    }
    case Rule::Nec: {
      if (auto e = arity(1); !e.empty()) return e;
      const auto& pc = d.premises[0].conclusion;
      if (!pc.context().empty()) return "Nec: premise context must be empty";
      if ((f.op() != Op::BoxN && f.op() != Op::BoxE) || f.sub() != pc.formula())
        return "Nec: conclusion should be [N] or [E] applied to " + print(pc.formula());
      return {};
    }
  }
  return "unknown rule";
}

CheckResult check_at(const CalculusSpec& spec, const Derivation& d, const std::string& path) {
  if (auto reason = check_node(spec, d); !reason.empty()) return {false, path, reason};
  for (std::size_t i = 0; i < d.premises.size(); ++i)
    if (auto r = check_at(spec, d.premises[i], path + "/" + std::to_string(i)); !r.ok) return r;
  return {};
}

}  // namespace

std::optional<std::pair<std::string, Substitution>> match_axiom(const CalculusSpec& spec, const Formula& phi) {
  for (const auto& s : spec.axioms) {
    Substitution sigma;
    if (match(s.formula, phi, sigma)) return std::pair(s.name, std::move(sigma));
  }
  return std::nullopt;
}

CheckResult check_derivation(const CalculusSpec& spec, const Derivation& d) { return check_at(spec, d, "root"); }

// ---------------------------------------------------------------------------
// Builders

Derivation el(std::vector<Formula> context, Formula phi) {
  Derivation d;
  d.conclusion = Consecution(std::move(context), std::move(phi));
  d.rule = Rule::El;
  return d;
}

Derivation ax(const CalculusSpec& spec, std::vector<Formula> context, Formula phi) {
  auto m = match_axiom(spec, phi);
  if (!m) throw DerivationError(print(phi) + " is not an axiom instance of " + spec.name);
  Derivation d;
  d.conclusion = Consecution(std::move(context), std::move(phi));
  d.rule = Rule::Ax;
  d.schema = std::move(m->first);
  d.subst = std::move(m->second);
  return d;
}

Derivation mp(Derivation minor, Derivation major) {
  const Formula& f = major.conclusion.formula();
  if (f.op() != Op::Implies) throw DerivationError("MP: major premise is not an implication");
  Derivation d;
  d.conclusion = Consecution(major.conclusion.context(), f.right());
  d.rule = Rule::MP;
  d.premises.push_back(std::move(minor));
  d.premises.push_back(std::move(major));
  return d;
}

Derivation mon(Op modality, std::vector<Formula> context, Derivation premise) {
  const Formula& f = premise.conclusion.formula();
  if (f.op() != Op::Implies) throw DerivationError("Mon: premise is not an implication");
  Derivation d;
  d.conclusion = Consecution(std::move(context), imp(Formula::unary(modality, f.left()), Formula::unary(modality, f.right())));
  d.rule = modality == Op::Dia ? Rule::MonDia : Rule::MonBox;
  d.premises.push_back(std::move(premise));
  return d;
}

Derivation nec(Op box_op, std::vector<Formula> context, Derivation premise) {
  Derivation d;
  d.conclusion = Consecution(std::move(context), Formula::unary(box_op, premise.conclusion.formula()));
  d.rule = Rule::Nec;
  d.premises.push_back(std::move(premise));
  return d;
}

Derivation weaken(const Derivation& d, const std::vector<Formula>& extra) {
  Derivation out = d;
  out.conclusion = Consecution(with(d.conclusion.context(), extra), d.conclusion.formula());
  if (d.rule == Rule::MP)
    for (auto& pr : out.premises) pr = weaken(pr, extra);
  return out;
}

namespace {

Derivation basis_ax(const std::vector<Formula>& ctx, const char* name, Substitution sigma) {
  const Schema* s = nullptr;
  for (const auto& b : ipc_basis())
    if (b.name == name) s = &b;
  Derivation d;
  d.conclusion = Consecution(ctx, substitute(s->formula, sigma));
  d.rule = Rule::Ax;
  d.schema = name;
  d.subst = std::move(sigma);
  return d;
}

// Γ ⊢ χ  ↦  Γ ⊢ φ → χ via the K schema.
Derivation lift_k(Derivation d, const Formula& phi) {
  auto ctx = d.conclusion.context();
  Formula chi = d.conclusion.formula();
  auto k = basis_ax(ctx, "K", {{0, chi}, {1, phi}});
  return mp(std::move(d), std::move(k));
}

Derivation deduce_rec(const Derivation& d, const Formula& phi, const std::vector<Formula>& gamma) {
  const Formula& chi = d.conclusion.formula();
  switch (d.rule) {
    case Rule::El:
      if (chi == phi) return basis_ax(gamma, "I", {{0, phi}});
      return lift_k(el(gamma, chi), phi);
    case Rule::MP: {
      const Formula& alpha = d.premises[0].conclusion.formula();
      auto left = deduce_rec(d.premises[0], phi, gamma);   // Γ ⊢ φ → α
      auto right = deduce_rec(d.premises[1], phi, gamma);  // Γ ⊢ φ → (α → χ)
      auto s = basis_ax(gamma, "S", {{0, phi}, {1, alpha}, {2, chi}});
      return mp(std::move(left), mp(std::move(right), std::move(s)));
    }
    default: {
      Derivation same = d;
      same.conclusion = Consecution(gamma, chi);
      return lift_k(std::move(same), phi);
    }
  }
}

const CalculusSpec& ik2() {
  static const CalculusSpec spec = builtin_calculus("IK2");
  return spec;
}

void require_checks(const CalculusSpec& spec, const Derivation& d, const char* what) {
  if (auto r = check_derivation(spec, d); !r.ok)
    throw DerivationError(std::string(what) + ": premise does not check (" + r.path + ": " + r.reason + ")");
}

Derivation ik2_ax(const std::vector<Formula>& ctx, const std::string& name, Substitution sigma) {
  const Schema* s = ik2().find_schema(name);
  Derivation d;
  d.conclusion = Consecution(ctx, substitute(s->formula, sigma));
  d.rule = Rule::Ax;
  d.schema = name;
  d.subst = std::move(sigma);
  return d;
}

Op box_of(Agent j) { return j == Agent::N ? Op::BoxN : Op::BoxE; }
Op dia_of(Agent j) { return j == Agent::N ? Op::DiaN : Op::DiaE; }
std::string suffix(Agent j) { return j == Agent::N ? "_N" : "_E"; }

// ∅ ⊢ A ∧ B → C  ↦  ∅ ⊢ B ∧ A → C.
Derivation swap_conj(const Derivation& d) {
  const Formula& f = d.conclusion.formula();
  Formula a = f.left().left(), b = f.left().right(), c = f.right();
  Formula h = conj(b, a);
  std::vector<Formula> ctx{h};
  auto get_a = mp(el(ctx, h), basis_ax(ctx, "AndE2", {{0, b}, {1, a}}));
  auto get_b = mp(el(ctx, h), basis_ax(ctx, "AndE1", {{0, b}, {1, a}}));
  auto pair = mp(std::move(get_b), mp(std::move(get_a), basis_ax(ctx, "AndI", {{0, a}, {1, b}})));
  auto concl = mp(std::move(pair), weaken(d, ctx));
  return deduce_rec(concl, h, {});
}

}  // namespace

Derivation deduce(const CalculusSpec& spec, const Derivation& d, const Formula& phi) {
  require_checks(spec, d, "deduce");
  std::vector<Formula> gamma;
  for (const auto& f : d.conclusion.context())
    if (f != phi) gamma.push_back(f);
  return deduce_rec(d, phi, gamma);
}

Derivation macro_mon(Agent j, Modality m, const Formula& phi, const Formula& psi, std::vector<Formula> context,
                     const Derivation& premise) {
  require_checks(ik2(), premise, "mon");
  if (!premise.conclusion.context().empty() || premise.conclusion.formula() != imp(phi, psi))
    throw DerivationError("mon: premise must conclude |- " + print(imp(phi, psi)));
  auto boxed = nec(box_of(j), context, premise);
  auto k = ik2_ax(context, (m == Modality::Box ? "K_box" : "K_dia") + suffix(j), {{0, phi}, {1, psi}});
  return mp(std::move(boxed), std::move(k));
}

Derivation macro_str(Agent j, const Formula& phi, const Formula& psi, std::vector<Formula> context,
                     const Derivation& premise) {
  require_checks(ik2(), premise, "str");
  if (!premise.conclusion.context().empty() || premise.conclusion.formula() != imp(conj(phi, psi), falsum()))
    throw DerivationError("str: premise must conclude |- " + print(imp(conj(phi, psi), falsum())));
  const Formula bot = falsum();
  const Formula bphi = Formula::unary(box_of(j), phi), dpsi = Formula::unary(dia_of(j), psi);
  const Formula h = conj(bphi, dpsi);
  const std::vector<Formula> ctx{h};

  // ∅ ⊢ φ → (ψ → ⊥) by currying the premise.
  std::vector<Formula> both{phi, psi};
  auto pair = mp(el(both, psi), mp(el(both, phi), basis_ax(both, "AndI", {{0, phi}, {1, psi}})));
  auto curried = deduce_rec(deduce_rec(mp(std::move(pair), weaken(premise, both)), psi, {phi}), phi, {});

  // h ⊢ □φ → □(ψ → ⊥)
  auto step = mp(nec(box_of(j), ctx, std::move(curried)),
                 ik2_ax(ctx, "K_box" + suffix(j), {{0, phi}, {1, neg(psi)}}));
  auto get_bphi = mp(el(ctx, h), basis_ax(ctx, "AndE1", {{0, bphi}, {1, dpsi}}));
  auto get_dpsi = mp(el(ctx, h), basis_ax(ctx, "AndE2", {{0, bphi}, {1, dpsi}}));
  auto box_neg = mp(std::move(get_bphi), std::move(step));
  auto to_dbot = mp(std::move(box_neg), ik2_ax(ctx, "K_dia" + suffix(j), {{0, psi}, {1, bot}}));
  auto dbot_d = mp(std::move(get_dpsi), std::move(to_dbot));
  auto contradiction = mp(std::move(dbot_d), ik2_ax(ctx, "N_dia" + suffix(j), {}));
  return weaken(deduce_rec(contradiction, h, {}), context);
}

// ---------------------------------------------------------------------------
// IM_Calc → IK₂

namespace {

std::vector<Formula> translate_all(const std::vector<Formula>& fs) {
  std::vector<Formula> out;
  for (const auto& f : fs) out.push_back(translate_bimodal(f));
  return out;
}

// ∅ ⊢ (□χ ∧ ◇¬χ → ⊥)ᵗ, given χᵗ.
Derivation compile_neg_a(const Formula& chi_t) {
  const Formula nchi = neg(chi_t);
  // ∅ ⊢ χ ∧ ¬χ → ⊥
  const Formula h = conj(chi_t, nchi);
  std::vector<Formula> ctx{h};
  auto get_chi = mp(el(ctx, h), basis_ax(ctx, "AndE1", {{0, chi_t}, {1, nchi}}));
  auto get_neg = mp(el(ctx, h), basis_ax(ctx, "AndE2", {{0, chi_t}, {1, nchi}}));
  auto contra = deduce_rec(mp(std::move(get_chi), std::move(get_neg)), h, {});
  // ∅ ⊢ □_∋χ ∧ ◇_∋¬χ → ⊥, then swap and lift through N.
  auto inner = macro_str(Agent::E, chi_t, nchi, {}, contra);
  auto swapped = swap_conj(inner);
  auto outer = macro_str(Agent::N, dia_e(nchi), box_e(chi_t), {}, swapped);
  return swap_conj(outer);
}

// ∅ ⊢ ((□⊤ → ◇χ) → ◇χ)ᵗ, given χᵗ.
Derivation compile_i_dia(const Formula& chi_t) {
  const Formula t = top();
  const Formula q = dia_e(chi_t);
  const Formula hyp = imp(dia_n(box_e(t)), box_n(q));
  const std::vector<Formula> ctx{hyp};

  // ∅ ⊢ ⊤ as an instance of I, then ∅ ⊢ ⊤ → □_∋⊤.
  auto top_proof = basis_ax({}, "I", {{0, falsum()}});
  auto box_top = nec(Op::BoxE, {}, top_proof);
  auto top_to_box = lift_k(std::move(box_top), t);
  auto mon_n = macro_mon(Agent::N, Modality::Dia, t, box_e(t), {}, top_to_box);  // ◇_N⊤ → ◇_N□_∋⊤

  // hyp ⊢ ◇_N⊤ → □_N q
  const Formula dn_top = dia_n(t);
  const std::vector<Formula> ctx2{hyp, dn_top};
  auto reach = mp(el(ctx2, dn_top), weaken(mon_n, ctx2));
  auto got = mp(std::move(reach), el(ctx2, hyp));
  auto cond = deduce_rec(got, dn_top, ctx);

  // I_◇□ for N with p = ⊤, q = ◇_∋χ.
  auto boxed = mp(std::move(cond), ik2_ax(ctx, "I_diabox_N", {{0, t}, {1, q}}));  // □_N(⊤ → q)

  // ∅ ⊢ (⊤ → q) → q
  const Formula tq = imp(t, q);
  const std::vector<Formula> ctx3{tq};
  auto use = deduce_rec(mp(basis_ax(ctx3, "I", {{0, falsum()}}), el(ctx3, tq)), tq, {});
  auto strip = macro_mon(Agent::N, Modality::Box, tq, q, ctx, use);
  auto result = mp(std::move(boxed), std::move(strip));
  return deduce_rec(result, hyp, {});
}

Derivation compile_rec(const Derivation& d) {
  const auto ctx = translate_all(d.conclusion.context());
  const Formula f = translate_bimodal(d.conclusion.formula());
  switch (d.rule) {
    case Rule::El:
      return el(ctx, f);
    case Rule::MP:
      return mp(compile_rec(d.premises[0]), compile_rec(d.premises[1]));
    case Rule::MonBox:
    case Rule::MonDia: {
      auto prem = compile_rec(d.premises[0]);
      const Formula& pf = prem.conclusion.formula();
      const Formula a = pf.left(), b = pf.right();
      bool is_box = d.rule == Rule::MonBox;
      auto inner = macro_mon(Agent::E, is_box ? Modality::Box : Modality::Dia, a, b, {}, prem);
      const Formula& inf = inner.conclusion.formula();
      return macro_mon(Agent::N, is_box ? Modality::Dia : Modality::Box, inf.left(), inf.right(), ctx, inner);
    }
    case Rule::Ax: {
      if (d.schema == "neg_a" || d.schema == "I_dia") {
        auto it = d.subst.find(0);
        Formula chi = translate_bimodal(it == d.subst.end() ? atom(0) : it->second);
        auto proof = d.schema == "neg_a" ? compile_neg_a(chi) : compile_i_dia(chi);
        return weaken(proof, ctx);
      }
      Substitution sigma;
      for (const auto& [k, v] : d.subst) sigma.emplace(k, translate_bimodal(v));
      Derivation out;
      out.conclusion = Consecution(ctx, f);
      out.rule = Rule::Ax;
      out.schema = d.schema;
      out.subst = std::move(sigma);
      return out;
    }
    case Rule::Nec:
      break;
  }
  throw DerivationError("compile: rule " + std::string(rule_name(d.rule)) + " does not occur in IM_Calc");
}

}  // namespace

Derivation compile_proof(const Derivation& d) {
  static const CalculusSpec im = builtin_calculus("IM_Calc");
  require_checks(im, d, "compile");
  return compile_rec(d);
}

}  // namespace imml
