#pragma once

#include <memory>
#include <optional>
#include <unordered_map>
#include <string>
#include <vector>

#include "imml/syntax.hpp"
#include "imml/world_set.hpp"

namespace imml {

// World labels default to "0", "1", ... when a model is built in code.
std::vector<std::string> default_labels(std::size_t n);

// Classical neighbourhood model (W, nf, V).
struct NbhdModel {
  std::vector<std::string> labels;
  std::vector<std::vector<WorldSet>> nf;
  std::vector<WorldSet> val;

  std::size_t size() const { return labels.size(); }
};

// Intuitionistic neighbourhood a : W ⇀ P(W). Value rows are indexed by
// world and only meaningful on the domain. Rows may be shared between
// neighbourhoods; transforms that spawn many copies of one neighbourhood
// rely on this.
struct Neighbourhood {
  std::string name;
  WorldSet domain;
  std::shared_ptr<const std::vector<WorldSet>> values;

  const WorldSet& at(World w) const { return (*values)[w]; }
};

Neighbourhood make_neighbourhood(std::string name, WorldSet domain, std::vector<WorldSet> values);

// (W, ≤, N, V). `up[w]` is the principal upset ↑w.
struct INModel {
  std::vector<std::string> labels;
  Relation up;
  std::vector<Neighbourhood> nbhds;
  std::vector<WorldSet> val;

  std::size_t size() const { return labels.size(); }
};

// (W, ⪯, γ, V) with ⪯ a preorder.
struct CNModel {
  std::vector<std::string> labels;
  Relation up;
  std::vector<std::vector<WorldSet>> gamma;
  std::vector<WorldSet> val;

  std::size_t size() const { return labels.size(); }
};

// (W, ≤, R_N, R_∋, V).
struct IK2Model {
  std::vector<std::string> labels;
  Relation up;
  Relation rel_n;
  Relation rel_e;
  std::vector<WorldSet> val;

  std::size_t size() const { return labels.size(); }
};

// Valuation lookup; atoms beyond the table are false everywhere.
WorldSet valuation_of(const std::vector<WorldSet>& val, std::size_t n, unsigned atom);

// ---------------------------------------------------------------------------
// Evaluation. Every evaluator computes truth sets bottom-up over a DAG of
// distinct subformulas, so shared subterms are evaluated once.

class FormulaDag {
 public:
  struct Node {
    Op op;
    unsigned atom;
    std::uint32_t l, r;
  };

  std::uint32_t add(const Formula& f);
  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

 private:
  std::vector<Node> nodes_;
  std::unordered_map<Formula, std::uint32_t, FormulaHash> index_;
};

// `atoms`, when given, replaces the model's valuation. Used to evaluate
// schemas under a substitution via the truth sets of the substituents.
std::vector<WorldSet> evaluate(const INModel& m, const FormulaDag& dag, const std::vector<WorldSet>* atoms = nullptr);
std::vector<WorldSet> evaluate(const CNModel& m, const FormulaDag& dag, const std::vector<WorldSet>* atoms = nullptr);
std::vector<WorldSet> evaluate(const IK2Model& m, const FormulaDag& dag, const std::vector<WorldSet>* atoms = nullptr);
std::vector<WorldSet> evaluate(const NbhdModel& m, const FormulaDag& dag, const std::vector<WorldSet>* atoms = nullptr);

template <class Model>
WorldSet truth_set(const Model& m, const Formula& f) {
  FormulaDag dag;
  auto root = dag.add(f);
  return evaluate(m, dag)[root];
}

// Single-world queries; throw std::out_of_range on an unknown world.
bool eval_inm(const INModel& m, World w, const Formula& f);
bool eval_cnm(const CNModel& m, World w, const Formula& f);
bool eval_ik2(const IK2Model& m, World w, const Formula& f);
bool eval_classical(const NbhdModel& m, World w, const Formula& f);

// Clause-by-clause explanation of the verdict at w, one line per subformula.
std::string trace_inm(const INModel& m, World w, const Formula& f);
std::string trace_cnm(const CNModel& m, World w, const Formula& f);
std::string trace_ik2(const IK2Model& m, World w, const Formula& f);
std::string trace_classical(const NbhdModel& m, World w, const Formula& f);

// ---------------------------------------------------------------------------
// Checkers. Violations are reported as data.

struct CheckReport {
  explicit CheckReport(std::string name = {}) : check(std::move(name)) {}

  std::string check;
  bool ok = true;
  std::vector<std::string> witnesses;

  void fail(std::string witness) {
    ok = false;
    witnesses.push_back(std::move(witness));
  }
};

enum class InmLevel { Basic, Coherent, Cartesian };

std::vector<CheckReport> check_inm(const INModel& m, InmLevel level);
bool is_valid_inm(const INModel& m);
bool is_coherent(const INModel& m);
bool is_cartesian(const INModel& m);

std::vector<CheckReport> check_cnm(const CNModel& m);
bool check_full(const CNModel& m);

std::vector<CheckReport> check_ik2_frame(const IK2Model& m);
bool is_ik2_frame(const IK2Model& m);

// wRv iff v ∈ a(w) for some neighbourhood a.
Relation membership_relation(const INModel& m);

// Equivalence classes as a class id per world (ids are the least member).
std::vector<World> equivalence_classes(const Relation& r);
std::vector<World> r_tilde_classes(const INModel& m);
std::vector<World> leq_tilde_classes(const INModel& m);

struct Isomorphism {
  std::vector<World> worlds;        // α
  std::vector<std::size_t> nbhds;   // ν, by index
};

// Searches for (α, ν) satisfying I1–I4. Valuations are compared on the
// union of atoms either model mentions.
std::optional<Isomorphism> find_isomorphism(const INModel& a, const INModel& b);
bool verify_isomorphism(const INModel& a, const INModel& b, const Isomorphism& iso);

std::string format_set(const WorldSet& s, const std::vector<std::string>& labels);

}  // namespace imml
