#pragma once

#include <random>

#include "imml/folm.hpp"
#include "imml/models.hpp"
#include "imml/syntax.hpp"

namespace imml {

// Random structures for property tests and sampled sweeps. All take the
// generator by reference so a seed reproduces a whole run.
using Rng = std::mt19937_64;

// Naturally labelled: i ≤ j only if i ≤ j numerically.
Relation random_poset(Rng& rng, std::size_t n, double density = 0.4);
Relation random_preorder(Rng& rng, std::size_t n, double density = 0.3);
WorldSet random_subset(Rng& rng, std::size_t n, double p = 0.5);
// Up-closure of a sparse random subset, so small upsets are not rare.
WorldSet random_upset(Rng& rng, const Relation& up, double p = 0.3);

INModel random_inm(Rng& rng, std::size_t n, std::size_t nbhds, std::size_t atoms);
// Grows values until N₁ and N₂ hold; sets only grow, so this terminates.
INModel make_coherent(INModel m);
IFOMStructure random_ifom(Rng& rng, std::size_t worlds, std::size_t states, std::size_t nbhds, std::size_t atoms);
CNModel random_cnm(Rng& rng, std::size_t n, std::size_t max_sets, std::size_t atoms);
NbhdModel random_classical(Rng& rng, std::size_t n, std::size_t max_sets, std::size_t atoms);

// Tree depth at most `depth` (hence modal_depth ≤ depth) over atoms
// p0..p{atoms-1}, using the connectives of the dialect.
Formula random_formula(Rng& rng, Dialect d, std::size_t depth, std::size_t atoms);

}  // namespace imml
