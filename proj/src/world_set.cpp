#include "imml/world_set.hpp"

namespace imml {

Relation identity_relation(std::size_t n) {
  Relation r(n, WorldSet(n));
  for (World w = 0; w < n; ++w) r[w].set(w);
  return r;
}

Relation empty_relation(std::size_t n) { return Relation(n, WorldSet(n)); }

Relation transpose(const Relation& r) {
  Relation t = empty_relation(r.size());
  for (World w = 0; w < r.size(); ++w)
    for (World v : r[w]) t[v].set(w);
  return t;
}

Relation reflexive_transitive_closure(Relation r) {
  const std::size_t n = r.size();
  for (World w = 0; w < n; ++w) r[w].set(w);
  // Warshall over rows.
  for (World k = 0; k < n; ++k)
    for (World i = 0; i < n; ++i)
      if (r[i].test(k)) r[i] |= r[k];
  return r;
}

bool is_reflexive(const Relation& r) {
  for (World w = 0; w < r.size(); ++w)
    if (!r[w].test(w)) return false;
  return true;
}

bool is_transitive(const Relation& r) {
  for (World w = 0; w < r.size(); ++w)
    for (World v : r[w])
      if (!r[v].subset_of(r[w])) return false;
  return true;
}

bool is_antisymmetric(const Relation& r) {
  for (World w = 0; w < r.size(); ++w)
    for (World v : r[w])
      if (v != w && r[v].test(w)) return false;
  return true;
}

bool is_upset(const WorldSet& s, const Relation& up) {
  for (World w : s)
    if (!up[w].subset_of(s)) return false;
  return true;
}

WorldSet interior(const WorldSet& s, const Relation& up) {
  WorldSet out(up.size());
  for (World w = 0; w < up.size(); ++w)
    if (up[w].subset_of(s)) out.set(w);
  return out;
}

WorldSet up_closure(const WorldSet& s, const Relation& up) {
  WorldSet out(up.size());
  for (World w : s) out |= up[w];
  return out;
}

WorldSet maximal_worlds(const Relation& up) {
  WorldSet out(up.size());
  for (World w = 0; w < up.size(); ++w)
    if (up[w] == WorldSet::singleton(up.size(), w)) out.set(w);
  return out;
}

}  // namespace imml
