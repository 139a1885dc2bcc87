#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace imml {

enum class Op : std::uint8_t {
  Atom,
  Falsum,
  And,
  Or,
  Implies,
  Box,
  Dia,
  Nabla,
  BoxN,
  DiaN,
  BoxE,
  DiaE,
};

// The three object languages: L_□◇, L_▽ and the bimodal L₂.
enum class Dialect : std::uint8_t { Modal, Nabla, Bimodal };

bool is_binary(Op op);
bool is_modal(Op op);
bool op_in_dialect(Op op, Dialect d);
std::string_view dialect_name(Dialect d);
Dialect dialect_from_name(std::string_view name);

// Immutable formula tree with structural equality. Copies share nodes.
class Formula {
 public:
  Formula();  // ⊥

  static Formula atom(unsigned index);
  static Formula falsum();
  static Formula unary(Op op, Formula sub);
  static Formula binary(Op op, Formula l, Formula r);

  Op op() const;
  unsigned atom_index() const;
  // Operand of a modality, or left operand of a binary connective.
  const Formula& left() const;
  const Formula& right() const;
  const Formula& sub() const { return left(); }

  std::size_t hash() const;
  std::size_t size() const;
  const void* id() const { return node_.get(); }

  bool is_top() const;            // ⊥ → ⊥
  bool is_negation() const;       // φ → ⊥ with φ ≠ ⊥

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

Formula atom(unsigned i);
Formula falsum();
Formula top();
Formula neg(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula imp(Formula a, Formula b);
Formula box(Formula f);
Formula dia(Formula f);
Formula nabla(Formula f);
Formula box_n(Formula f);
Formula dia_n(Formula f);
Formula box_e(Formula f);
Formula dia_e(Formula f);

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t position, const std::string& what);
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

Formula parse(std::string_view text, Dialect dialect);
std::string print(const Formula& f);

bool in_dialect(const Formula& f, Dialect d);

using Substitution = std::map<unsigned, Formula>;
Formula substitute(const Formula& schema, const Substitution& sigma);

// Nesting of modalities and implications. ⊤ (⊥ → ⊥) counts as a constant.
std::size_t modal_depth(const Formula& f);
// Nesting of modalities only.
std::size_t modality_depth(const Formula& f);
std::set<unsigned> atoms_of(const Formula& f);
// Distinct subformulas, children before parents.
std::vector<Formula> subformulas(const Formula& f);

Formula embed_box(const Formula& f);
Formula embed_dia(const Formula& f);
Formula translate_bimodal(const Formula& f);

// Γ ⊢ φ with Γ kept sorted and duplicate free.
class Consecution {
 public:
  Consecution() = default;
  Consecution(std::vector<Formula> context, Formula formula);

  const std::vector<Formula>& context() const { return context_; }
  const Formula& formula() const { return formula_; }
  bool contains(const Formula& f) const;

  friend bool operator==(const Consecution&, const Consecution&) = default;

 private:
  std::vector<Formula> context_;
  Formula formula_;
};

// "φ1, φ2 |- ψ" or just "ψ".
Consecution parse_consecution(std::string_view text, Dialect dialect);
std::string print(const Consecution& c);

}  // namespace imml
