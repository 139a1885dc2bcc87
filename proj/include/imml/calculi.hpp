#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "imml/syntax.hpp"

namespace imml {

enum class Rule : std::uint8_t { El, Ax, MP, MonBox, MonDia, Nec };

std::string_view rule_name(Rule r);
Rule rule_from_name(std::string_view name);  // throws std::invalid_argument

struct Schema {
  std::string name;
  Formula formula;
};

// A generalised Hilbert calculus. `axioms` starts with the shared IPC basis.
// In the ▽ dialect MonBox is the monotonicity rule for ▽.
struct CalculusSpec {
  std::string name;
  Dialect dialect;
  std::vector<Schema> axioms;
  std::vector<Rule> rules;

  bool has_rule(Rule r) const;
  const Schema* find_schema(std::string_view name) const;
};

// K, S, AndI, AndE1, AndE2, OrI1, OrI2, OrE, EFQ, I over atoms p0, p1, p2.
const std::vector<Schema>& ipc_basis();

// ghc0, iM, WM, IM_Calc, IK2 (case-insensitive). Throws std::invalid_argument.
CalculusSpec builtin_calculus(std::string_view name);
std::vector<std::string> builtin_calculus_names();

struct Derivation {
  Consecution conclusion;
  Rule rule = Rule::El;
  std::vector<Derivation> premises;
  std::string schema;  // Ax certificate
  Substitution subst;

  std::size_t size() const;
};

// First schema in listed order that φ instantiates, with the substitution
// restricted to the schema's atoms.
std::optional<std::pair<std::string, Substitution>> match_axiom(const CalculusSpec& spec, const Formula& phi);

struct CheckResult {
  bool ok = true;
  std::string path;  // premise indices from the root, e.g. "root/1/0"
  std::string reason;

  explicit operator bool() const { return ok; }
};

CheckResult check_derivation(const CalculusSpec& spec, const Derivation& d);

class DerivationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Node builders. `ax` synthesises the certificate via match_axiom and throws
// DerivationError if φ is not an instance.
Derivation el(std::vector<Formula> context, Formula phi);
Derivation ax(const CalculusSpec& spec, std::vector<Formula> context, Formula phi);
Derivation mp(Derivation minor, Derivation major);
// `modality` is □, ◇ or ▽.
Derivation mon(Op modality, std::vector<Formula> context, Derivation premise);
Derivation nec(Op box, std::vector<Formula> context, Derivation premise);

// Adds `extra` to every context along the spine (nodes outside Mon/Nec
// premises).
Derivation weaken(const Derivation& d, const std::vector<Formula>& extra);

// From a derivation of Γ ∪ {φ} ⊢ ψ build one of Γ ∖ {φ} ⊢ φ → ψ. Throws
// DerivationError if d does not check under spec.
Derivation deduce(const CalculusSpec& spec, const Derivation& d, const Formula& phi);

enum class Agent : std::uint8_t { N, E };
enum class Modality : std::uint8_t { Box, Dia };

// Derived IK₂ rules. `premise` must check under IK₂ and conclude exactly
// ∅ ⊢ φ → ψ (mon) or ∅ ⊢ φ ∧ ψ → ⊥ (str); the result concludes the rule's
// conclusion under `context`.
Derivation macro_mon(Agent j, Modality m, const Formula& phi, const Formula& psi, std::vector<Formula> context,
                     const Derivation& premise);
Derivation macro_str(Agent j, const Formula& phi, const Formula& psi, std::vector<Formula> context,
                     const Derivation& premise);

// An IM_Calc derivation of Γ ⊢ φ into an IK₂ derivation of Γᵗ ⊢ φᵗ.
Derivation compile_proof(const Derivation& d);

}  // namespace imml
