#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "imml/folm.hpp"
#include "imml/models.hpp"

namespace imml {

// Raised when a transform's input fails a required structural check.
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(const std::string& what, std::vector<CheckReport> reports)
      : std::runtime_error(what), reports_(std::move(reports)) {}
  const std::vector<CheckReport>& reports() const { return reports_; }

 private:
  std::vector<CheckReport> reports_;
};

// Finite stand-ins for the ℕ-indexed copies of M^coh and the unbounded paths
// of the unravelling.
struct TruncationBudget {
  std::size_t coh_levels = 2;
  std::size_t unravel_len = 1;

  // coh_levels = depth + 2, unravel_len = modality depth + 1.
  static TruncationBudget for_formula(const Formula& f);
};

// S• : worlds ⟨w, x⟩ for x ∈ I(s, w), listed world-major.
struct BulletResult {
  INModel model;
  std::vector<std::pair<World, unsigned>> pairs;
};
BulletResult bullet(const IFOMStructure& s);

// M∘ for a coherent Cartesian model. Throws PreconditionError otherwise.
IFOMStructure circle(const INModel& m);

// M^coh with copies (w, n), n ≤ levels, of maximal worlds. `origin[i]` is the
// world that copy i stands for.
struct CohResult {
  INModel model;
  std::vector<World> origin;
  std::vector<std::size_t> copy;
};
CohResult coherent_completion(const INModel& m, std::size_t levels);

// An unravelling path split into its order part (o_0 ≤ ... ≤ o_k) and its
// neighbourhood part (a_1, x_1), ..., (a_m, x_m) starting at o_k.
struct UrPath {
  std::vector<World> ord;
  std::vector<std::pair<std::uint32_t, World>> nbd;

  World last() const { return nbd.empty() ? ord.back() : nbd.back().second; }
  std::size_t ord_length() const { return ord.size() - 1; }
  std::size_t nbd_length() const { return nbd.size(); }
  std::size_t length() const { return ord_length() + nbd_length(); }
  // j-th world of the neighbourhood part; nbd_world(0) = last of the order part.
  World nbd_world(std::size_t j) const { return j == 0 ? ord.back() : nbd[j - 1].second; }

  friend bool operator==(const UrPath&, const UrPath&) = default;
};

std::string format_path(const UrPath& p, const INModel& m);
// Parses "w,<=,v,a,u" against the model's labels and neighbourhood names;
// every step must be legal and all order steps must precede the
// neighbourhood steps. Throws std::invalid_argument otherwise.
UrPath parse_path(const std::string& text, const INModel& m);

// ≤ur of the definition, via its closed form: v_ord = w_ord ⌢ t_0 with t_0 of
// length ℓ, equal labels, and the remaining t_j of the same length ℓ, which
// exist iff w_j = v_j (ℓ = 0) or w_j ≤ v_j (ℓ ≥ 1).
bool leq_ur(const UrPath& w, const UrPath& v, const Relation& up);

// All unravelling paths from s with order part and neighbourhood part each of
// length at most `len`.
std::vector<UrPath> unravel_paths(const INModel& m, World s, std::size_t len);

// ≤ur restricted to the given path set, as successor rows.
Relation leq_ur_relation(const std::vector<UrPath>& paths, const Relation& up);

// The truncated unravelling. Paths whose order part has the maximal length
// `len` cannot be extended upward, so among them the order is saturated:
// two such paths sharing their first len−1 order steps are related when their
// neighbourhood parts (including the last order world) are pointwise ≤ with
// equal labels. Everywhere else the order is ≤ur. Neighbourhoods are the a_w
// with values cut to in-budget paths. Throws PreconditionError on
// non-coherent input.
struct UnravelResult {
  INModel model;
  std::vector<UrPath> paths;
};
UnravelResult unravel(const INModel& m, World s, std::size_t len);

// M̂ with worlds (w, Σ), Σ ∈ C(w). Each Σ holds value sets of M; γ(w, Σ)
// lifts them to {(u, Σ') | u ∈ A}. `origin[i]` is the underlying world.
struct HatResult {
  CNModel model;
  std::vector<World> origin;
};
HatResult hat(const INModel& m);

CNModel fullify(const CNModel& m);

// M* on W ∪ N(W); the first |W| worlds are W in order. Throws
// PreconditionError on non-coherent input.
IK2Model star(const INModel& m);

}  // namespace imml
