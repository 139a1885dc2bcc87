#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "imml/folm.hpp"
#include "imml/models.hpp"
#include "imml/syntax.hpp"

namespace imml {

enum class ModelKind : std::uint8_t { INM, CNM, IK2, IFOM, Classical };

std::string_view kind_name(ModelKind k);
ModelKind kind_from_name(std::string_view name);  // throws std::invalid_argument
// The dialect a kind's evaluator reads (cnm also accepts ▽ formulas).
Dialect kind_dialect(ModelKind k);
bool kind_accepts(ModelKind k, const Formula& f);

using AnyModel = std::variant<INModel, CNModel, IK2Model, IFOMStructure, NbhdModel>;

// max_nbhds bounds the neighbourhood count (inm), |γ(w)| (cnm), |nf(w)|
// (classical) and the neighbourhood universe of ifom structures; max_states
// bounds the ifom state universe.
struct SearchBounds {
  std::size_t max_worlds = 2;
  std::size_t max_nbhds = 1;
  std::size_t max_atoms = 1;
  std::size_t max_states = 2;
  bool require_coherent = false;
  bool require_cartesian = false;
  bool require_full = false;
};

// Orders on {0..n-1} with i ≤ j ⇒ i ≤ j numerically. Every finite poset has
// such a labelling, so these cover all posets up to isomorphism.
std::vector<Relation> natural_posets(std::size_t n);
// All reflexive transitive relations on {0..n-1}.
std::vector<Relation> preorders(std::size_t n);
// All upsets, in increasing bitmask order.
std::vector<WorldSet> upsets(const Relation& up);

// Streams every model within the bounds in canonical order; stops early when
// the callback returns false. Neighbourhood lists (inm) are enumerated as
// multisets, i.e. as non-decreasing sequences of candidate neighbourhoods.
void enumerate_models(ModelKind kind, const SearchBounds& bounds, const std::function<bool(const AnyModel&)>& visit);
std::uint64_t count_models(ModelKind kind, const SearchBounds& bounds);

struct SearchOptions {
  unsigned workers = 0;  // 0 = hardware concurrency
  std::chrono::milliseconds timeout{0};  // 0 = none
};

struct SearchResult {
  bool found = false;
  std::optional<AnyModel> model;
  World world = 0;
  unsigned state = 0;  // ifom: the element x of the pair (w, x)
  std::uint64_t examined = 0;
  double elapsed_ms = 0;
  bool timed_out = false;
};

// The least (in enumeration order) model and world where every member of the
// context holds and the conclusion fails. Throws std::invalid_argument if the
// consecution is outside the kind's language.
SearchResult find_countermodel(const Consecution& c, ModelKind kind, const SearchBounds& bounds,
                               const SearchOptions& options = {});

enum class OracleStatus { RefutedAt, UnrefutedWithinBounds };

struct OracleResult {
  OracleStatus status;
  SearchResult search;
};

// Bounded search cannot certify validity; an unrefuted result says only that
// no countermodel exists within the bounds (or before the timeout).
OracleResult oracle_consequence(const std::vector<Formula>& gamma, const Formula& phi, ModelKind kind,
                                const SearchBounds& bounds, const SearchOptions& options = {});

// Re-evaluates a claimed countermodel with the single-world evaluators.
bool is_countermodel(const Consecution& c, const AnyModel& m, World w, unsigned state = 0);

}  // namespace imml
