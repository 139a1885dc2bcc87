#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "imml/models.hpp"
#include "imml/syntax.hpp"
#include "imml/world_set.hpp"

namespace imml {

// Two-sorted first-order side: sort s (states) and sort n (neighbourhoods).
enum class Sort : std::uint8_t { State, Nbhd };

struct Var {
  Sort sort;
  unsigned index;

  friend auto operator<=>(const Var&, const Var&) = default;
};

std::string print(const Var& v);

enum class FoOp : std::uint8_t { Pred, RelN, RelE, Falsum, And, Or, Implies, Forall, Exists };

// Immutable sorted first-order formula. Terms are variables only.
class FoFormula {
 public:
  static FoFormula pred(unsigned i, Var x);
  static FoFormula rel_n(Var x, Var a);
  static FoFormula rel_e(Var a, Var x);
  static FoFormula falsum();
  static FoFormula binary(FoOp op, FoFormula l, FoFormula r);
  static FoFormula forall(Var v, FoFormula body);
  static FoFormula exists(Var v, FoFormula body);

  FoOp op() const;
  unsigned pred_index() const;
  // Argument variables of atomic formulas, or the bound variable (first).
  Var first() const;
  Var second() const;
  const FoFormula& left() const;  // also the body of a quantifier
  const FoFormula& right() const;

  friend bool operator==(const FoFormula& a, const FoFormula& b);

 private:
  struct Node;
  explicit FoFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::string print(const FoFormula& f);
std::vector<Var> free_variables(const FoFormula& f);

// st_x. Bound variables are x_{k+1}, a_k, ... where k is the index of x and
// grows with modal nesting, so no capture can occur.
FoFormula standard_translation(const Formula& phi, Var x);

// One world's worth of interpretation. Element universes are shared across
// worlds; `states` and `nbhds` select the elements present. rel_n is indexed
// by state (row = set of nbhds), rel_e by nbhd (row = set of states).
struct FoInterp {
  WorldSet states;
  WorldSet nbhds;
  Relation rel_n;
  Relation rel_e;
  std::vector<WorldSet> preds;
};

FoInterp empty_interp(std::size_t n_states, std::size_t n_nbhds);

struct FOMStructure {
  std::vector<std::string> state_labels;
  std::vector<std::string> nbhd_labels;
  FoInterp interp;
};

struct IFOMStructure {
  std::vector<std::string> labels;
  Relation up;
  std::vector<std::string> state_labels;
  std::vector<std::string> nbhd_labels;
  std::vector<FoInterp> at;

  std::size_t size() const { return labels.size(); }
};

std::vector<CheckReport> check_ifom(const IFOMStructure& s);
bool is_valid_ifom(const IFOMStructure& s);

using FoEnv = std::map<Var, unsigned>;

// Tarskian satisfaction. Throws std::invalid_argument on an unbound free
// variable or an element outside its sort's domain.
bool eval_fo_classical(const FOMStructure& m, const FoFormula& phi, const FoEnv& env);

// Kripke semantics with increasing domains: → and ∀ range over ≤-successors.
bool eval_fo_kripke(const IFOMStructure& s, World w, const FoFormula& phi, const FoEnv& env);

// The pair semantics (w, d) ⊨ φ. Throws if d is not a state at w.
bool eval_modal_ifom(const IFOMStructure& s, World w, unsigned d, const Formula& phi);

NbhdModel classical_bullet(const FOMStructure& m);
FOMStructure classical_circle(const NbhdModel& m);

}  // namespace imml
