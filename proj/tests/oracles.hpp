#pragma once

// Naive evaluators written straight from the satisfaction clauses, one world
// at a time with no sharing. The library evaluators work on truth sets over a
// formula DAG; these exist only to cross-check them.

#include <filesystem>
#include <string>

#include "imml/folm.hpp"
#include "imml/models.hpp"
#include "imml/syntax.hpp"

namespace oracle {

using namespace imml;

inline bool leq(const Relation& up, World a, World b) { return up[a].test(b); }

inline bool prop_case(const Formula& f, World w, const std::vector<WorldSet>& val, bool& out) {
  switch (f.op()) {
    case Op::Falsum: out = false; return true;
    case Op::Atom: out = f.atom_index() < val.size() && val[f.atom_index()].test(w); return true;
    default: return false;
  }
}

inline bool inm(const INModel& m, World w, const Formula& f) {
  bool r;
  if (prop_case(f, w, m.val, r)) return r;
  const std::size_t n = m.size();
  switch (f.op()) {
    case Op::And: return inm(m, w, f.left()) && inm(m, w, f.right());
    case Op::Or: return inm(m, w, f.left()) || inm(m, w, f.right());
    case Op::Implies:
      for (World v = 0; v < n; ++v)
        if (leq(m.up, w, v) && inm(m, v, f.left()) && !inm(m, v, f.right())) return false;
      return true;
    case Op::Box:
      for (const auto& a : m.nbhds) {
        if (!a.domain.test(w)) continue;
        bool all = true;
        for (World w2 = 0; w2 < n && all; ++w2)
          if (leq(m.up, w, w2))
            for (World v : a.at(w2))
              if (!inm(m, v, f.sub())) {
                all = false;
                break;
              }
        if (all) return true;
      }
      return false;
    case Op::Dia:
      for (World w2 = 0; w2 < n; ++w2) {
        if (!leq(m.up, w, w2)) continue;
        for (const auto& a : m.nbhds) {
          if (!a.domain.test(w2)) continue;
          bool some = false;
          for (World v : a.at(w2))
            if (inm(m, v, f.sub())) some = true;
          if (!some) return false;
        }
      }
      return true;
    default: throw std::logic_error("oracle::inm: foreign connective");
  }
}

inline bool cnm(const CNModel& m, World w, const Formula& f) {
  bool r;
  if (prop_case(f, w, m.val, r)) return r;
  const std::size_t n = m.size();
  switch (f.op()) {
    case Op::And: return cnm(m, w, f.left()) && cnm(m, w, f.right());
    case Op::Or: return cnm(m, w, f.left()) || cnm(m, w, f.right());
    case Op::Implies:
      for (World v = 0; v < n; ++v)
        if (leq(m.up, w, v) && cnm(m, v, f.left()) && !cnm(m, v, f.right())) return false;
      return true;
    case Op::Box:
    case Op::Nabla:
      for (World w2 = 0; w2 < n; ++w2) {
        if (!leq(m.up, w, w2)) continue;
        bool exists = false;
        for (const auto& a : m.gamma[w2]) {
          bool all = true;
          for (World v : a)
            if (!cnm(m, v, f.sub())) all = false;
          if (all) exists = true;
        }
        if (!exists) return false;
      }
      return true;
    case Op::Dia:
      for (World w2 = 0; w2 < n; ++w2) {
        if (!leq(m.up, w, w2)) continue;
        for (const auto& a : m.gamma[w2]) {
          bool some = false;
          for (World v : a)
            if (cnm(m, v, f.sub())) some = true;
          if (!some) return false;
        }
      }
      return true;
    default: throw std::logic_error("oracle::cnm: foreign connective");
  }
}

inline bool ik2(const IK2Model& m, World x, const Formula& f) {
  bool r;
  if (prop_case(f, x, m.val, r)) return r;
  const std::size_t n = m.size();
  switch (f.op()) {
    case Op::And: return ik2(m, x, f.left()) && ik2(m, x, f.right());
    case Op::Or: return ik2(m, x, f.left()) || ik2(m, x, f.right());
    case Op::Implies:
      for (World y = 0; y < n; ++y)
        if (leq(m.up, x, y) && ik2(m, y, f.left()) && !ik2(m, y, f.right())) return false;
      return true;
    case Op::BoxN:
    case Op::BoxE: {
      const Relation& rel = f.op() == Op::BoxN ? m.rel_n : m.rel_e;
      for (World y = 0; y < n; ++y)
        if (leq(m.up, x, y))
          for (World z : rel[y])
            if (!ik2(m, z, f.sub())) return false;
      return true;
    }
    case Op::DiaN:
    case Op::DiaE: {
      const Relation& rel = f.op() == Op::DiaN ? m.rel_n : m.rel_e;
      for (World y : rel[x])
        if (ik2(m, y, f.sub())) return true;
      return false;
    }
    default: throw std::logic_error("oracle::ik2: foreign connective");
  }
}

inline bool classical(const NbhdModel& m, World w, const Formula& f) {
  bool r;
  if (prop_case(f, w, m.val, r)) return r;
  switch (f.op()) {
    case Op::And: return classical(m, w, f.left()) && classical(m, w, f.right());
    case Op::Or: return classical(m, w, f.left()) || classical(m, w, f.right());
    case Op::Implies: return !classical(m, w, f.left()) || classical(m, w, f.right());
    case Op::Box:
      for (const auto& a : m.nf[w]) {
        bool all = true;
        for (World v : a)
          if (!classical(m, v, f.sub())) all = false;
        if (all) return true;
      }
      return false;
    case Op::Dia:
      for (const auto& a : m.nf[w]) {
        bool some = false;
        for (World v : a)
          if (classical(m, v, f.sub())) some = true;
        if (!some) return false;
      }
      return true;
    default: throw std::logic_error("oracle::classical: foreign connective");
  }
}

// The pair semantics on IFOM structures, clause by clause.
inline bool ifom(const IFOMStructure& s, World w, unsigned x, const Formula& f) {
  const auto& I = s.at[w];
  const std::size_t n = s.size();
  switch (f.op()) {
    case Op::Falsum: return false;
    case Op::Atom: return f.atom_index() < I.preds.size() && I.preds[f.atom_index()].test(x);
    case Op::And: return ifom(s, w, x, f.left()) && ifom(s, w, x, f.right());
    case Op::Or: return ifom(s, w, x, f.left()) || ifom(s, w, x, f.right());
    case Op::Implies:
      for (World v = 0; v < n; ++v)
        if (leq(s.up, w, v) && ifom(s, v, x, f.left()) && !ifom(s, v, x, f.right())) return false;
      return true;
    case Op::Box:
      // Some a with x N a at w such that at every w' ≥ w every E-successor satisfies φ.
      for (World a : I.rel_n[x]) {
        bool all = true;
        for (World v = 0; v < n && all; ++v)
          if (leq(s.up, w, v))
            for (World y : s.at[v].rel_e[a])
              if (!ifom(s, v, y, f.sub())) {
                all = false;
                break;
              }
        if (all) return true;
      }
      return false;
    case Op::Dia:
      for (World v = 0; v < n; ++v) {
        if (!leq(s.up, w, v)) continue;
        for (World a : s.at[v].rel_n[x]) {
          bool some = false;
          for (World y : s.at[v].rel_e[a])
            if (ifom(s, v, y, f.sub())) some = true;
          if (!some) return false;
        }
      }
      return true;
    default: throw std::logic_error("oracle::ifom: foreign connective");
  }
}

}  // namespace oracle

inline std::string data_path(const std::string& rel) {
  return (std::filesystem::path(IMML_DATA_DIR) / rel).string();
}
