#include "imml/search.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <stdexcept>
#include <thread>

namespace imml {

std::string_view kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::INM: return "inm";
    case ModelKind::CNM: return "cnm";
    case ModelKind::IK2: return "ik2";
    case ModelKind::IFOM: return "ifom";
    case ModelKind::Classical: return "classical";
  }
  return "?";
}

ModelKind kind_from_name(std::string_view name) {
  for (auto k : {ModelKind::INM, ModelKind::CNM, ModelKind::IK2, ModelKind::IFOM, ModelKind::Classical})
    if (kind_name(k) == name) return k;
  throw std::invalid_argument("unknown model kind '" + std::string(name) + "'");
}

Dialect kind_dialect(ModelKind k) { return k == ModelKind::IK2 ? Dialect::Bimodal : Dialect::Modal; }

bool kind_accepts(ModelKind k, const Formula& f) {
  if (k == ModelKind::CNM) return in_dialect(f, Dialect::Modal) || in_dialect(f, Dialect::Nabla);
  return in_dialect(f, kind_dialect(k));
}

// ---------------------------------------------------------------------------
// Orders and upsets

std::vector<Relation> natural_posets(std::size_t n) {
  // Choose, for each j in turn, its set of strict predecessors among 0..j-1;
  // it must be down-closed in the order built so far.
  std::vector<Relation> out;
  Relation down(n, WorldSet(n));
  auto rec = [&](auto&& self, World j) -> void {
    if (j == n) {
      Relation up = transpose(down);
      out.push_back(std::move(up));
      return;
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << j); ++mask) {
      WorldSet preds = WorldSet::from_mask(n, mask);
      bool closed = true;
      for (World i : preds)
        if (!down[i].subset_of(preds | WorldSet::singleton(n, i))) {
          closed = false;
          break;
        }
      if (!closed) continue;
      down[j] = preds | WorldSet::singleton(n, j);
      self(self, j + 1);
    }
    down[j] = WorldSet(n);
  };
  rec(rec, 0);
  return out;
}

std::vector<Relation> preorders(std::size_t n) {
  std::vector<std::pair<World, World>> cells;
  for (World i = 0; i < n; ++i)
    for (World j = 0; j < n; ++j)
      if (i != j) cells.emplace_back(i, j);
  std::vector<Relation> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells.size()); ++mask) {
    Relation r = identity_relation(n);
    for (std::size_t b = 0; b < cells.size(); ++b)
      if (mask >> b & 1) r[cells[b].first].set(cells[b].second);
    if (is_transitive(r)) out.push_back(std::move(r));
  }
  return out;
}

std::vector<WorldSet> upsets(const Relation& up) {
  const std::size_t n = up.size();
  std::vector<WorldSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    WorldSet s = WorldSet::from_mask(n, mask);
    if (is_upset(s, up)) out.push_back(s);
  }
  return out;
}

namespace {

using Visitor = std::function<bool(const AnyModel&)>;

// The enumeration space is a list of items, each a deterministic stream of
// models; concatenating the items in order gives the canonical enumeration.
class Space {
 public:
  virtual ~Space() = default;
  virtual std::size_t items() const = 0;
  // Returns false if the visitor stopped the stream.
  virtual bool run(std::size_t item, const Visitor& visit) const = 0;
};

// Tuples over [0, radix)^len in lexicographic order.
template <class F>
bool for_each_tuple(std::size_t len, std::size_t radix, F&& f) {
  std::vector<std::size_t> t(len, 0);
  if (len > 0 && radix == 0) return true;
  while (true) {
    if (!f(t)) return false;
    std::size_t i = len;
    while (i > 0 && ++t[i - 1] == radix) t[--i] = 0;
    if (i == 0) return true;
  }
}

// Subsets of P(W) with at most `max` members, by size then lexicographically.
std::vector<std::vector<WorldSet>> families(std::size_t n, std::size_t max) {
  const std::size_t total = std::size_t{1} << n;
  std::vector<std::vector<WorldSet>> out;
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t start, std::size_t size) -> void {
    if (pick.size() == size) {
      std::vector<WorldSet> f;
      for (auto m : pick) f.push_back(WorldSet::from_mask(n, m));
      out.push_back(std::move(f));
      return;
    }
    for (std::size_t m = start; m < total; ++m) {
      pick.push_back(m);
      self(self, m + 1, size);
      pick.pop_back();
    }
  };
  for (std::size_t size = 0; size <= std::min(max, total); ++size) rec(rec, 0, size);
  return out;
}

bool confluent(const Relation& up, const Relation& r) {
  const std::size_t n = up.size();
  for (World w = 0; w < n; ++w)
    for (World u : r[w]) {
      for (World v : up[w])
        if (!r[v].intersects(up[u])) return false;
      for (World x : up[u]) {
        bool found = false;
        for (World v : up[w])
          if (r[v].test(x)) {
            found = true;
            break;
          }
        if (!found) return false;
      }
    }
  return true;
}

// ---------------------------------------------------------------------------
// inm

class InmSpace : public Space {
  struct Order {
    std::size_t n;
    Relation up;
    std::vector<WorldSet> ups;
    std::vector<std::uint64_t> prefix;  // first configuration of each upset; back() = total
  };
  struct Item {
    std::size_t order, k;
    std::uint64_t begin, end;
  };

 public:
  explicit InmSpace(const SearchBounds& b) : b_(b) {
    if (b.max_worlds > 6) throw std::invalid_argument("inm enumeration supports at most 6 worlds");
    for (std::size_t n = 1; n <= b.max_worlds; ++n)
      for (auto& up : natural_posets(n)) {
        Order o{n, std::move(up), {}, {0}};
        o.ups = upsets(o.up);
        for (const auto& u : o.ups) o.prefix.push_back(o.prefix.back() + (std::uint64_t{1} << (n * u.count())));
        const std::size_t id = orders_.size();
        const std::uint64_t total = o.prefix.back();
        orders_.push_back(std::move(o));
        items_.push_back({id, 0, 0, 1});
        const std::uint64_t chunk = std::max<std::uint64_t>(64, total / 4096);
        for (std::size_t k = 1; k <= b.max_nbhds; ++k)
          for (std::uint64_t c = 0; c < total; c += chunk) items_.push_back({id, k, c, std::min(total, c + chunk)});
      }
  }

  std::size_t items() const override { return items_.size(); }

  bool run(std::size_t i, const Visitor& visit) const override {
    const Item& it = items_[i];
    const Order& o = orders_[it.order];
    const std::size_t n = o.n;
    AnyModel any{INModel{}};
    auto& m = std::get<INModel>(any);
    m.labels = default_labels(n);
    m.up = o.up;
    std::vector<std::shared_ptr<std::vector<WorldSet>>> tables;
    for (std::size_t s = 0; s < it.k; ++s) {
      tables.push_back(std::make_shared<std::vector<WorldSet>>(n, WorldSet(n)));
      m.nbhds.push_back({"a" + std::to_string(s), WorldSet(n), tables.back()});
    }
    m.val.assign(b_.max_atoms, WorldSet(n));

    auto decode = [&](std::size_t slot, std::uint64_t c) {
      std::size_t u = std::upper_bound(o.prefix.begin(), o.prefix.end(), c) - o.prefix.begin() - 1;
      std::uint64_t code = c - o.prefix[u];
      auto& t = *tables[slot];
      const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
      for (World w = 0; w < n; ++w) {
        if (o.ups[u].test(w)) {
          t[w] = WorldSet::from_mask(n, code & mask);
          code >>= n;
        } else {
          t[w] = WorldSet(n);
        }
      }
      m.nbhds[slot].domain = o.ups[u];
    };

    auto valuations = [&]() {
      if (b_.require_cartesian) {
        if (!is_cartesian(m)) return true;
      } else if (b_.require_coherent && !is_coherent(m)) {
        return true;
      }
      return for_each_tuple(b_.max_atoms, o.ups.size(), [&](const std::vector<std::size_t>& t) {
        for (std::size_t p = 0; p < t.size(); ++p) m.val[p] = o.ups[t[p]];
        return visit(any);
      });
    };

    if (it.k == 0) return valuations();
    const std::uint64_t total = o.prefix.back();
    auto rec = [&](auto&& self, std::size_t slot, std::uint64_t from) -> bool {
      if (slot == it.k) return valuations();
      for (std::uint64_t c = from; c < total; ++c) {
        decode(slot, c);
        if (!self(self, slot + 1, c)) return false;
      }
      return true;
    };
    for (std::uint64_t c = it.begin; c < it.end; ++c) {
      decode(0, c);
      if (!rec(rec, 1, c)) return false;
    }
    return true;
  }

 private:
  SearchBounds b_;
  std::vector<Order> orders_;
  std::vector<Item> items_;
};

// ---------------------------------------------------------------------------
// cnm and classical: per-world families of sets

class FamilySpace : public Space {
  struct Item {
    std::size_t n, order, first;
  };

 public:
  FamilySpace(const SearchBounds& b, bool classical) : b_(b), classical_(classical) {
    for (std::size_t n = 1; n <= b.max_worlds; ++n) {
      fams_.push_back(families(n, b.max_nbhds));
      if (classical) {
        orders_.push_back({identity_relation(n)});
      } else {
        orders_.push_back(preorders(n));
      }
      for (std::size_t o = 0; o < orders_.back().size(); ++o)
        for (std::size_t f = 0; f < fams_.back().size(); ++f) items_.push_back({n, o, f});
    }
  }

  std::size_t items() const override { return items_.size(); }

  bool run(std::size_t i, const Visitor& visit) const override {
    const Item& it = items_[i];
    const std::size_t n = it.n;
    const auto& fams = fams_[n - 1];
    const Relation& up = orders_[n - 1][it.order];
    std::vector<WorldSet> vals;
    if (classical_) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) vals.push_back(WorldSet::from_mask(n, mask));
    } else {
      vals = upsets(up);
    }
    AnyModel any = classical_ ? AnyModel{NbhdModel{}} : AnyModel{CNModel{}};
    std::vector<std::vector<WorldSet>>* gamma;
    std::vector<WorldSet>* val;
    if (classical_) {
      auto& m = std::get<NbhdModel>(any);
      m.labels = default_labels(n);
      gamma = &m.nf;
      val = &m.val;
    } else {
      auto& m = std::get<CNModel>(any);
      m.labels = default_labels(n);
      m.up = up;
      gamma = &m.gamma;
      val = &m.val;
    }
    gamma->assign(n, {});
    val->assign(b_.max_atoms, WorldSet(n));
    (*gamma)[0] = fams[it.first];
    return for_each_tuple(n - 1, fams.size(), [&](const std::vector<std::size_t>& t) {
      for (std::size_t w = 1; w < n; ++w) (*gamma)[w] = fams[t[w - 1]];
      if (!classical_ && b_.require_full && !check_full(std::get<CNModel>(any))) return true;
      return for_each_tuple(b_.max_atoms, vals.size(), [&](const std::vector<std::size_t>& v) {
        for (std::size_t p = 0; p < v.size(); ++p) (*val)[p] = vals[v[p]];
        return visit(any);
      });
    });
  }

 private:
  SearchBounds b_;
  bool classical_;
  std::vector<std::vector<std::vector<WorldSet>>> fams_;
  std::vector<std::vector<Relation>> orders_;
  std::vector<Item> items_;
};

// ---------------------------------------------------------------------------
// ik2

class Ik2Space : public Space {
  struct Item {
    std::size_t n, order;
    std::uint64_t rel_n;
  };

 public:
  explicit Ik2Space(const SearchBounds& b) : b_(b) {
    for (std::size_t n = 1; n <= b.max_worlds; ++n) {
      orders_.push_back(natural_posets(n));
      for (std::size_t o = 0; o < orders_.back().size(); ++o)
        for (std::uint64_t r = 0; r < (std::uint64_t{1} << (n * n)); ++r) items_.push_back({n, o, r});
    }
  }

  std::size_t items() const override { return items_.size(); }

  bool run(std::size_t i, const Visitor& visit) const override {
    const Item& it = items_[i];
    const std::size_t n = it.n;
    const Relation& up = orders_[n - 1][it.order];
    auto decode = [n](std::uint64_t mask) {
      Relation r(n, WorldSet(n));
      for (World w = 0; w < n; ++w) r[w] = WorldSet::from_mask(n, mask >> (w * n));
      return r;
    };
    Relation rn = decode(it.rel_n);
    if (!confluent(up, rn)) return true;
    const auto ups = upsets(up);
    AnyModel any{IK2Model{}};
    auto& m = std::get<IK2Model>(any);
    m.labels = default_labels(n);
    m.up = up;
    m.rel_n = rn;
    m.val.assign(b_.max_atoms, WorldSet(n));
    for (std::uint64_t e = 0; e < (std::uint64_t{1} << (n * n)); ++e) {
      m.rel_e = decode(e);
      if (!confluent(up, m.rel_e)) continue;
      bool go = for_each_tuple(b_.max_atoms, ups.size(), [&](const std::vector<std::size_t>& v) {
        for (std::size_t p = 0; p < v.size(); ++p) m.val[p] = ups[v[p]];
        return visit(any);
      });
      if (!go) return false;
    }
    return true;
  }

 private:
  SearchBounds b_;
  std::vector<std::vector<Relation>> orders_;
  std::vector<Item> items_;
};

// ---------------------------------------------------------------------------
// ifom

class IfomSpace : public Space {
  struct Item {
    std::size_t n, order;
    std::uint64_t first;
  };

 public:
  explicit IfomSpace(const SearchBounds& b)
      : b_(b), s_(b.max_states), nb_(b.max_nbhds), bits_(s_ + nb_ + 2 * s_ * nb_ + b.max_atoms * s_) {
    if (bits_ > 24) throw std::invalid_argument("ifom enumeration bounds too large");
    for (std::size_t n = 1; n <= b.max_worlds; ++n) {
      orders_.push_back(natural_posets(n));
      for (std::size_t o = 0; o < orders_.back().size(); ++o)
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << bits_); ++m)
          if (valid(m)) items_.push_back({n, o, m});
    }
  }

  std::size_t items() const override { return items_.size(); }

  bool run(std::size_t i, const Visitor& visit) const override {
    const Item& it = items_[i];
    const std::size_t n = it.n;
    const Relation& up = orders_[n - 1][it.order];
    const Relation down = transpose(up);
    AnyModel any{IFOMStructure{}};
    auto& s = std::get<IFOMStructure>(any);
    s.labels = default_labels(n);
    s.up = up;
    for (std::size_t x = 0; x < s_; ++x) s.state_labels.push_back("d" + std::to_string(x));
    for (std::size_t a = 0; a < nb_; ++a) s.nbhd_labels.push_back("a" + std::to_string(a));
    s.at.resize(n);
    std::vector<std::uint64_t> masks(n, 0);
    masks[0] = it.first;
    s.at[0] = decode(it.first);
    auto rec = [&](auto&& self, World w) -> bool {
      if (w == n) return visit(any);
      std::uint64_t need = 0;
      for (World v : down[w])
        if (v != w) need |= masks[v];
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << bits_); ++m) {
        if ((m & need) != need || !valid(m)) continue;
        masks[w] = m;
        s.at[w] = decode(m);
        if (!self(self, w + 1)) return false;
      }
      return true;
    };
    return rec(rec, 1);
  }

 private:
  // Bit layout: states | nbhds | N (state-major) | E (nbhd-major) | preds.
  std::size_t off_nbhds() const { return s_; }
  std::size_t off_n() const { return s_ + nb_; }
  std::size_t off_e() const { return s_ + nb_ + s_ * nb_; }
  std::size_t off_p() const { return s_ + nb_ + 2 * s_ * nb_; }
  static bool bit(std::uint64_t m, std::size_t i) { return m >> i & 1; }

  bool valid(std::uint64_t m) const {
    if ((m & ((std::uint64_t{1} << s_) - 1)) == 0) return false;
    for (std::size_t x = 0; x < s_; ++x)
      for (std::size_t a = 0; a < nb_; ++a) {
        bool typed = bit(m, x) && bit(m, off_nbhds() + a);
        if (bit(m, off_n() + x * nb_ + a) && !typed) return false;
        if (bit(m, off_e() + a * s_ + x) && !typed) return false;
      }
    for (std::size_t p = 0; p < b_.max_atoms; ++p)
      for (std::size_t x = 0; x < s_; ++x)
        if (bit(m, off_p() + p * s_ + x) && !bit(m, x)) return false;
    return true;
  }

  FoInterp decode(std::uint64_t m) const {
    FoInterp I = empty_interp(s_, nb_);
    I.preds.assign(b_.max_atoms, WorldSet(s_));
    for (std::size_t x = 0; x < s_; ++x)
      if (bit(m, x)) I.states.set(static_cast<World>(x));
    for (std::size_t a = 0; a < nb_; ++a)
      if (bit(m, off_nbhds() + a)) I.nbhds.set(static_cast<World>(a));
    for (std::size_t x = 0; x < s_; ++x)
      for (std::size_t a = 0; a < nb_; ++a) {
        if (bit(m, off_n() + x * nb_ + a)) I.rel_n[x].set(static_cast<World>(a));
        if (bit(m, off_e() + a * s_ + x)) I.rel_e[a].set(static_cast<World>(x));
      }
    for (std::size_t p = 0; p < b_.max_atoms; ++p)
      for (std::size_t x = 0; x < s_; ++x)
        if (bit(m, off_p() + p * s_ + x)) I.preds[p].set(static_cast<World>(x));
    return I;
  }

  SearchBounds b_;
  std::size_t s_, nb_, bits_;
  std::vector<std::vector<Relation>> orders_;
  std::vector<Item> items_;
};

std::unique_ptr<Space> make_space(ModelKind kind, const SearchBounds& b) {
  switch (kind) {
    case ModelKind::INM: return std::make_unique<InmSpace>(b);
    case ModelKind::CNM: return std::make_unique<FamilySpace>(b, false);
    case ModelKind::Classical: return std::make_unique<FamilySpace>(b, true);
    case ModelKind::IK2: return std::make_unique<Ik2Space>(b);
    case ModelKind::IFOM: return std::make_unique<IfomSpace>(b);
  }
  throw std::invalid_argument("unknown model kind");
}

// Returns the first violating (world, state) of the consecution, if any.
struct Refuter {
  FormulaDag dag;
  std::vector<std::uint32_t> ctx;
  std::uint32_t goal;
  const Consecution& c;

  explicit Refuter(const Consecution& con) : c(con) {
    for (const auto& f : c.context()) ctx.push_back(dag.add(f));
    goal = dag.add(c.formula());
  }

  template <class M>
  std::optional<std::pair<World, unsigned>> sets(const M& m) const {
    auto t = evaluate(m, dag);
    WorldSet bad = t[goal].complement();
    for (auto i : ctx) bad &= t[i];
    if (bad.empty()) return std::nullopt;
    return std::pair(*bad.begin(), 0u);
  }

  std::optional<std::pair<World, unsigned>> operator()(const AnyModel& any) const {
    if (auto* s = std::get_if<IFOMStructure>(&any)) {
      for (World w = 0; w < s->size(); ++w)
        for (World x : s->at[w].states) {
          bool holds = true;
          for (const auto& f : c.context())
            if (!eval_modal_ifom(*s, w, x, f)) {
              holds = false;
              break;
            }
          if (holds && !eval_modal_ifom(*s, w, x, c.formula())) return std::pair(w, static_cast<unsigned>(x));
        }
      return std::nullopt;
    }
    return std::visit(
        [&](const auto& m) -> std::optional<std::pair<World, unsigned>> {
          if constexpr (std::is_same_v<std::decay_t<decltype(m)>, IFOMStructure>) {
            return std::nullopt;
          } else {
            return sets(m);
          }
        },
        any);
  }
};

}  // namespace

void enumerate_models(ModelKind kind, const SearchBounds& bounds, const std::function<bool(const AnyModel&)>& visit) {
  auto space = make_space(kind, bounds);
  for (std::size_t i = 0; i < space->items(); ++i)
    if (!space->run(i, visit)) return;
}

std::uint64_t count_models(ModelKind kind, const SearchBounds& bounds) {
  std::uint64_t n = 0;
  enumerate_models(kind, bounds, [&](const AnyModel&) {
    ++n;
    return true;
  });
  return n;
}

bool is_countermodel(const Consecution& c, const AnyModel& any, World w, unsigned state) {
  auto holds = [&](const Formula& f) {
    return std::visit(
        [&](const auto& m) -> bool {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, INModel>) return eval_inm(m, w, f);
          else if constexpr (std::is_same_v<M, CNModel>) return eval_cnm(m, w, f);
          else if constexpr (std::is_same_v<M, IK2Model>) return eval_ik2(m, w, f);
          else if constexpr (std::is_same_v<M, NbhdModel>) return eval_classical(m, w, f);
          else return eval_modal_ifom(m, w, state, f);
        },
        any);
  };
  for (const auto& f : c.context())
    if (!holds(f)) return false;
  return !holds(c.formula());
}

SearchResult find_countermodel(const Consecution& c, ModelKind kind, const SearchBounds& bounds,
                               const SearchOptions& options) {
  for (const auto& f : c.context())
    if (!kind_accepts(kind, f)) throw std::invalid_argument(print(f) + " is outside the language of " + std::string(kind_name(kind)) + " models");
  if (!kind_accepts(kind, c.formula()))
    throw std::invalid_argument(print(c.formula()) + " is outside the language of " + std::string(kind_name(kind)) + " models");

  const auto start = std::chrono::steady_clock::now();
  auto space = make_space(kind, bounds);
  const Refuter refute(c);
  const std::size_t items = space->items();

  struct Outcome {
    std::uint64_t visited = 0;
    bool complete = false;
    std::optional<AnyModel> model;
    World world = 0;
    unsigned state = 0;
  };
  std::vector<Outcome> outcomes(items);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{items};
  std::atomic<bool> timed_out{false};

  auto expired = [&] {
    if (options.timeout.count() <= 0) return false;
    if (std::chrono::steady_clock::now() - start < options.timeout) return false;
    timed_out = true;
    return true;
  };

  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= items || i > best.load() || timed_out.load()) return;
      Outcome& out = outcomes[i];
      bool stopped = false;
      space->run(i, [&](const AnyModel& m) {
        if ((out.visited & 1023) == 0 && (i > best.load() || expired())) {
          stopped = true;
          return false;
        }
        ++out.visited;
        if (auto hit = refute(m)) {
          out.model = m;
          out.world = hit->first;
          out.state = hit->second;
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          return false;
        }
        return true;
      });
      out.complete = !stopped;
      if (expired()) return;
    }
  };

  unsigned n_workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SearchResult r;
  r.timed_out = timed_out.load();
  const std::size_t b = best.load();
  for (std::size_t i = 0; i < std::min(b, items); ++i) r.examined += outcomes[i].visited;
  if (b < items) {
    r.found = true;
    r.model = std::move(outcomes[b].model);
    r.world = outcomes[b].world;
    r.state = outcomes[b].state;
    r.examined += outcomes[b].visited;
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (r.found && !is_countermodel(c, *r.model, r.world, r.state))
    throw std::logic_error("search produced a countermodel that does not re-evaluate");
  return r;
}

OracleResult oracle_consequence(const std::vector<Formula>& gamma, const Formula& phi, ModelKind kind,
                                const SearchBounds& bounds, const SearchOptions& options) {
  auto r = find_countermodel(Consecution(gamma, phi), kind, bounds, options);
  OracleStatus status = r.found ? OracleStatus::RefutedAt : OracleStatus::UnrefutedWithinBounds;
  return {status, std::move(r)};
}

}  // namespace imml
