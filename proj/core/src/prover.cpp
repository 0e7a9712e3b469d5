#include "ulim/prover.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <type_traits>

#include <boost/container/small_vector.hpp>

namespace ulim {

namespace diag {
namespace {
std::atomic<std::uint64_t> g_checks{0};
std::atomic<std::uint64_t> g_violations{0};
}  // namespace

std::uint64_t descent_checks() { return g_checks.load(std::memory_order_relaxed); }
std::uint64_t descent_violations() { return g_violations.load(std::memory_order_relaxed); }

void reset_descent() {
  g_checks.store(0, std::memory_order_relaxed);
  g_violations.store(0, std::memory_order_relaxed);
}

void require_descent(bool ok, const char* where) {
  g_checks.fetch_add(1, std::memory_order_relaxed);
  if (!ok) {
    g_violations.fetch_add(1, std::memory_order_relaxed);
    throw InternalError(std::string("descent assertion failed in ") + where);
  }
}

}  // namespace diag

namespace detail {

using HotItems = boost::container::small_vector<std::pair<FormulaId, std::uint32_t>, 8>;

struct HotSeq {
  HotItems ante;  // sorted canonically, counts positive
  FormulaId succ = kNoFormula;
};

namespace {

std::size_t find_pos(const HotItems& v, FormulaId id) {
  auto it = std::lower_bound(
      v.begin(), v.end(), id,
      [](const std::pair<FormulaId, std::uint32_t>& a, FormulaId b) {
        return compare_ids(a.first, b) < 0;
      });
  return static_cast<std::size_t>(it - v.begin());
}

void add_id(HotItems& v, FormulaId id, std::uint32_t n = 1) {
  std::size_t i = find_pos(v, id);
  if (i < v.size() && v[i].first == id)
    v[i].second += n;
  else
    v.insert(v.begin() + static_cast<std::ptrdiff_t>(i), {id, n});
}

void remove_one(HotItems& v, FormulaId id) {
  std::size_t i = find_pos(v, id);
  if (i == v.size() || v[i].first != id)
    throw InternalError("g4 search lost track of an antecedent formula");
  if (--v[i].second == 0) v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
}

bool contains(const HotItems& v, FormulaId id) {
  std::size_t i = find_pos(v, id);
  return i < v.size() && v[i].first == id;
}

void append_varint(std::string& out, std::uint64_t x) {
  while (x >= 0x80) {
    out.push_back(static_cast<char>((x & 0x7F) | 0x80));
    x >>= 7;
  }
  out.push_back(static_cast<char>(x));
}

void key_of(const HotSeq& s, std::string& out) {
  out.clear();
  append_varint(out, s.ante.size());
  for (const auto& [id, n] : s.ante) {
    append_varint(out, id);
    append_varint(out, n);
  }
  if (s.succ != kNoFormula) {
    out.push_back(1);
    append_varint(out, s.succ);
  } else {
    out.push_back(0);
  }
}

HotSeq to_hot(const Sequent& s) {
  HotSeq out;
  for (const auto& [id, n] : s.ante.items()) add_id(out.ante, fnorm(id), n);
  if (s.succ) out.succ = fnorm(s.succ->id());
  return out;
}

Sequent to_sequent(const HotSeq& s) {
  FormulaBag b;
  for (const auto& [id, n] : s.ante) b.add_id(id, n);
  Sequent out(std::move(b));
  if (s.succ != kNoFormula) out.succ = Formula::from_id(s.succ);
  return out;
}

// Multiset-order check on measures (antecedent plus succedent), mirroring
// bag_precedes on the hot representation.
bool hot_precedes(const HotSeq& child, const HotSeq& parent) {
  HotItems g = child.ante;
  if (child.succ != kNoFormula) add_id(g, child.succ);
  HotItems d = parent.ante;
  if (parent.succ != kNoFormula) add_id(d, parent.succ);
  std::size_t i = 0, j = 0;
  FormulaId gmax = kNoFormula, dmax = kNoFormula;  // id order refines weight
  while (i < g.size() || j < d.size()) {
    int c;
    if (i == g.size())
      c = 1;
    else if (j == d.size())
      c = -1;
    else
      c = compare_ids(g[i].first, d[j].first);
    if (c == 0) {
      if (g[i].second > d[j].second)
        gmax = g[i].first;
      else if (g[i].second < d[j].second)
        dmax = d[j].first;
      ++i;
      ++j;
    } else if (c < 0) {
      gmax = g[i].first;
      ++i;
    } else {
      dmax = d[j].first;
      ++j;
    }
  }
  if (dmax == kNoFormula) return false;
  return gmax == kNoFormula || weight_less(gmax, dmax);
}

std::optional<RuleId> hot_axiom(const HotSeq& s, FormulaId bot_id) {
  if (s.succ != kNoFormula && fkind(s.succ) == Kind::Atom &&
      contains(s.ante, s.succ))
    return RuleId::Ax;
  if (contains(s.ante, bot_id)) return RuleId::LBot;
  return std::nullopt;
}

// Search result builders.  BoolBuild decides; TreeBuild additionally
// constructs the derivation.  Both run the same search code, so decisions
// and tree shapes cannot drift apart.
struct BoolBuild {
  using Result = bool;
  static bool fail() { return false; }
  static bool ok(bool r) { return r; }
  static bool axiom(const HotSeq&, RuleId) { return true; }
  static bool node1(const HotSeq&, RuleId, bool) { return true; }
  static bool node2(const HotSeq&, RuleId, bool, bool) { return true; }
  static bool modal(const HotSeq&, FormulaId, bool) { return true; }
};

struct TreeBuild {
  using Result = DerivationPtr;
  static Result fail() { return nullptr; }
  static bool ok(const Result& r) { return r != nullptr; }
  static Result axiom(const HotSeq& s, RuleId r) {
    return std::make_shared<Derivation>(Derivation{to_sequent(s), r, {}});
  }
  static Result node1(const HotSeq& s, RuleId r, Result c) {
    return std::make_shared<Derivation>(
        Derivation{to_sequent(s), r, {std::move(c)}});
  }
  static Result node2(const HotSeq& s, RuleId r, Result c1, Result c2) {
    return std::make_shared<Derivation>(
        Derivation{to_sequent(s), r, {std::move(c1), std::move(c2)}});
  }
  // The macro step behind a boxed succedent: weaken everything but one box
  // away, then apply M.
  static Result modal(const HotSeq& s, FormulaId box_id, Result sub) {
    std::vector<FormulaId> removals;
    for (const auto& [id, n] : s.ante) {
      std::uint32_t keep = (id == box_id) ? 1u : 0u;
      for (std::uint32_t k = keep; k < n; ++k) removals.push_back(id);
    }
    HotSeq cur;
    add_id(cur.ante, box_id);
    cur.succ = s.succ;
    Result node = std::make_shared<Derivation>(
        Derivation{to_sequent(cur), RuleId::M, {std::move(sub)}});
    for (auto it = removals.rbegin(); it != removals.rend(); ++it) {
      add_id(cur.ante, *it);
      node = std::make_shared<Derivation>(
          Derivation{to_sequent(cur), RuleId::Lw, {std::move(node)}});
    }
    return node;
  }
};

}  // namespace

struct G4Driver {
  ProofCache& cache;
  FormulaId bot_id;
  std::string keybuf;
  std::uint64_t nodes = 0;

  explicit G4Driver(ProofCache& c) : cache(c), bot_id(Arena::get().bot()) {}

  template <class B>
  typename B::Result search(const HotSeq& s, const HotSeq* parent) {
    if (parent) diag::require_descent(hot_precedes(s, *parent), "g4 search");
    ++nodes;
    if (std::optional<RuleId> ax = hot_axiom(s, bot_id)) return B::axiom(s, *ax);
    key_of(s, keybuf);
    std::string key = keybuf;
    ++cache.lookups_;
    auto it = cache.map_.find(key);
    if (it != cache.map_.end()) {
      ++cache.hits_;
      if (!it->second.provable) return B::fail();
      if constexpr (std::is_same_v<B, BoolBuild>) {
        return true;
      } else {
        if (it->second.deriv) return it->second.deriv;
        // decision cached without a tree; rebuild and fill it in
      }
    }
    typename B::Result r = expand<B>(s);
    if (cache.map_.size() >= cache.max_entries_) {
      cache.map_.clear();
      ++cache.clears_;
    }
    const std::uint8_t provable = r ? 1 : 0;
    if constexpr (std::is_same_v<B, BoolBuild>) {
      cache.map_.insert_or_assign(std::move(key),
                                  ProofCache::Entry{provable, nullptr});
    } else {
      cache.map_.insert_or_assign(std::move(key),
                                  ProofCache::Entry{provable, r});
    }
    return r;
  }

  template <class B>
  typename B::Result expand(const HotSeq& s) {
    // Invertible antecedent step: commit to the first formula, in canonical
    // order, that an invertible left rule applies to.
    for (std::size_t i = 0; i < s.ante.size(); ++i) {
      FormulaId id = s.ante[i].first;
      const FormulaNode& n = fnode(id);
      if (n.kind == Kind::And) {
        HotSeq c = s;
        remove_one(c.ante, id);
        add_id(c.ante, n.a);
        add_id(c.ante, n.b);
        auto r = search<B>(c, &s);
        if (!B::ok(r)) return B::fail();
        return B::node1(s, RuleId::LAnd, std::move(r));
      }
      if (n.kind == Kind::Or) {
        HotSeq c1 = s;
        remove_one(c1.ante, id);
        HotSeq c2 = c1;
        add_id(c1.ante, n.a);
        add_id(c2.ante, n.b);
        auto r1 = search<B>(c1, &s);
        if (!B::ok(r1)) return B::fail();
        auto r2 = search<B>(c2, &s);
        if (!B::ok(r2)) return B::fail();
        return B::node2(s, RuleId::LOr, std::move(r1), std::move(r2));
      }
      if (n.kind == Kind::Imp) {
        Kind xk = fkind(n.a);
        if (xk == Kind::Atom && contains(s.ante, n.a)) {
          HotSeq c = s;
          remove_one(c.ante, id);
          add_id(c.ante, n.b);
          auto r = search<B>(c, &s);
          if (!B::ok(r)) return B::fail();
          return B::node1(s, RuleId::LpImp, std::move(r));
        }
        if (xk == Kind::And) {
          const FormulaNode& x = fnode(n.a);
          FormulaId curried = Arena::get().make(
              Kind::Imp, x.a, Arena::get().make(Kind::Imp, x.b, n.b));
          HotSeq c = s;
          remove_one(c.ante, id);
          add_id(c.ante, curried);
          auto r = search<B>(c, &s);
          if (!B::ok(r)) return B::fail();
          return B::node1(s, RuleId::LAndImp, std::move(r));
        }
        if (xk == Kind::Or) {
          const FormulaNode& x = fnode(n.a);
          HotSeq c = s;
          remove_one(c.ante, id);
          add_id(c.ante, Arena::get().make(Kind::Imp, x.a, n.b));
          add_id(c.ante, Arena::get().make(Kind::Imp, x.b, n.b));
          auto r = search<B>(c, &s);
          if (!B::ok(r)) return B::fail();
          return B::node1(s, RuleId::LOrImp, std::move(r));
        }
      }
    }

    // Invertible succedent step.
    if (s.succ != kNoFormula) {
      const FormulaNode& d = fnode(s.succ);
      if (d.kind == Kind::And) {
        HotSeq c1 = s;
        c1.succ = d.a;
        auto r1 = search<B>(c1, &s);
        if (!B::ok(r1)) return B::fail();
        HotSeq c2 = s;
        c2.succ = d.b;
        auto r2 = search<B>(c2, &s);
        if (!B::ok(r2)) return B::fail();
        return B::node2(s, RuleId::RAnd, std::move(r1), std::move(r2));
      }
      if (d.kind == Kind::Imp) {
        HotSeq c = s;
        add_id(c.ante, d.a);
        c.succ = d.b;
        auto r = search<B>(c, &s);
        if (!B::ok(r)) return B::fail();
        return B::node1(s, RuleId::RImp, std::move(r));
      }
    }

    // Branching: disjunction on the right.
    if (s.succ != kNoFormula && fkind(s.succ) == Kind::Or) {
      const FormulaNode& d = fnode(s.succ);
      {
        HotSeq c = s;
        c.succ = d.a;
        auto r = search<B>(c, &s);
        if (B::ok(r)) return B::node1(s, RuleId::ROr1, std::move(r));
      }
      {
        HotSeq c = s;
        c.succ = d.b;
        auto r = search<B>(c, &s);
        if (B::ok(r)) return B::node1(s, RuleId::ROr2, std::move(r));
      }
    }

    // Branching: nested implications, per occurrence.
    for (std::size_t i = 0; i < s.ante.size(); ++i) {
      FormulaId id = s.ante[i].first;
      const FormulaNode& n = fnode(id);
      if (n.kind != Kind::Imp || fkind(n.a) != Kind::Imp) continue;
      const FormulaNode& x = fnode(n.a);
      HotSeq c1;
      c1.ante = s.ante;
      remove_one(c1.ante, id);
      add_id(c1.ante, Arena::get().make(Kind::Imp, x.b, n.b));
      c1.succ = n.a;
      auto r1 = search<B>(c1, &s);
      if (!B::ok(r1)) continue;
      HotSeq c2 = s;
      remove_one(c2.ante, id);
      add_id(c2.ante, n.b);
      auto r2 = search<B>(c2, &s);
      if (!B::ok(r2)) continue;
      return B::node2(s, RuleId::LImpImp, std::move(r1), std::move(r2));
    }

    // Branching: boxed implications, per (box, implication) pair.
    for (std::size_t i = 0; i < s.ante.size(); ++i) {
      FormulaId gid = s.ante[i].first;
      if (fkind(gid) != Kind::Box) continue;
      for (std::size_t j = 0; j < s.ante.size(); ++j) {
        FormulaId fid = s.ante[j].first;
        const FormulaNode& f = fnode(fid);
        if (f.kind != Kind::Imp || fkind(f.a) != Kind::Box) continue;
        HotSeq c1;
        add_id(c1.ante, fnode(gid).a);
        c1.succ = fnode(f.a).a;
        auto r1 = search<B>(c1, &s);
        if (!B::ok(r1)) continue;
        HotSeq c2 = s;
        remove_one(c2.ante, fid);
        add_id(c2.ante, f.b);
        auto r2 = search<B>(c2, &s);
        if (!B::ok(r2)) continue;
        return B::node2(s, RuleId::LMImp, std::move(r1), std::move(r2));
      }
    }

    // Modal macro: weaken to a single box, then M.
    if (s.succ != kNoFormula && fkind(s.succ) == Kind::Box) {
      FormulaId b = fnode(s.succ).a;
      for (std::size_t i = 0; i < s.ante.size(); ++i) {
        FormulaId gid = s.ante[i].first;
        if (fkind(gid) != Kind::Box) continue;
        HotSeq c;
        add_id(c.ante, fnode(gid).a);
        c.succ = b;
        auto r = search<B>(c, &s);
        if (B::ok(r)) return B::modal(s, gid, std::move(r));
      }
    }

    return B::fail();
  }
};

struct G3Driver {
  using IdSet = boost::container::small_vector<FormulaId, 8>;  // sorted by id

  struct Node {
    IdSet ante;
    FormulaId succ = kNoFormula;
  };

  static constexpr int kNoHit = INT32_MAX;
  static constexpr int kMaxDepth = 200000;

  G3Cache& cache;
  FormulaId bot_id;
  std::unordered_map<std::string, int> path;
  int depth = 0;
  std::uint64_t nodes = 0;

  explicit G3Driver(G3Cache& c) : cache(c), bot_id(Arena::get().bot()) {}

  static void add_set(IdSet& v, FormulaId id) {
    auto it = std::lower_bound(v.begin(), v.end(), id);
    if (it == v.end() || *it != id) v.insert(it, id);
  }

  static Node premise(const Node& s, FormulaId drop, FormulaId add1,
                      FormulaId add2 = kNoFormula) {
    Node out;
    out.succ = s.succ;
    out.ante.reserve(s.ante.size() + 2);
    for (FormulaId id : s.ante)
      if (id != drop) out.ante.push_back(id);
    if (add1 != kNoFormula) add_set(out.ante, add1);
    if (add2 != kNoFormula) add_set(out.ante, add2);
    return out;
  }

  bool axiom(const Node& s) const {
    if (s.succ != kNoFormula && fkind(s.succ) == Kind::Atom &&
        std::binary_search(s.ante.begin(), s.ante.end(), s.succ))
      return true;
    return std::binary_search(s.ante.begin(), s.ante.end(), bot_id);
  }

  static std::string key_of(const Node& s) {
    std::string out;
    append_varint(out, s.ante.size());
    for (FormulaId id : s.ante) append_varint(out, id);
    if (s.succ != kNoFormula) {
      out.push_back(1);
      append_varint(out, s.succ);
    } else {
      out.push_back(0);
    }
    return out;
  }

  // Enumerates every backward application; visit receives the premises and
  // returns true to stop (the application closed the goal).
  template <class F>
  bool for_each_app(const Node& s, F&& visit) {
    Node prem[2];
    for (FormulaId id : s.ante) {
      const FormulaNode& n = fnode(id);
      switch (n.kind) {
        case Kind::And:
          prem[0] = premise(s, id, n.a, n.b);
          if (visit(prem, 1)) return true;
          break;
        case Kind::Or:
          prem[0] = premise(s, id, n.a);
          prem[1] = premise(s, id, n.b);
          if (visit(prem, 2)) return true;
          break;
        case Kind::Imp:
          prem[0].ante = s.ante;  // principal stays for the left premise
          prem[0].succ = n.a;
          prem[1] = premise(s, id, n.b);
          if (visit(prem, 2)) return true;
          break;
        default:
          break;
      }
    }
    if (s.succ != kNoFormula) {
      const FormulaNode& d = fnode(s.succ);
      switch (d.kind) {
        case Kind::And:
          prem[0].ante = s.ante;
          prem[0].succ = d.a;
          prem[1].ante = s.ante;
          prem[1].succ = d.b;
          if (visit(prem, 2)) return true;
          break;
        case Kind::Or:
          prem[0].ante = s.ante;
          prem[0].succ = d.a;
          if (visit(prem, 1)) return true;
          prem[0].ante = s.ante;
          prem[0].succ = d.b;
          if (visit(prem, 1)) return true;
          break;
        case Kind::Imp:
          prem[0].ante = s.ante;
          add_set(prem[0].ante, d.a);
          prem[0].succ = d.b;
          if (visit(prem, 1)) return true;
          break;
        case Kind::Box:
          for (FormulaId id : s.ante) {
            if (fkind(id) != Kind::Box) continue;
            prem[0].ante.clear();
            prem[0].ante.push_back(fnode(id).a);
            prem[0].succ = d.a;
            if (visit(prem, 1)) return true;
          }
          break;
        default:
          break;
      }
    }
    return false;
  }

  // Returns (provable, smallest path depth reached by a loop check).  A
  // failure is absolute, and cached, when no loop check fired above this
  // node; otherwise it only holds under the current branch.
  std::pair<bool, int> search(const Node& s) {
    ++nodes;
    if (axiom(s)) return {true, kNoHit};
    std::string key = key_of(s);
    auto mit = cache.map_.find(key);
    if (mit != cache.map_.end()) return {mit->second != 0, kNoHit};
    auto pit = path.find(key);
    if (pit != path.end()) return {false, pit->second};
    if (depth >= kMaxDepth) throw InternalError("g3 search exceeded the depth limit");
    int my = depth;
    path.emplace(key, my);
    ++depth;
    int min_hit = kNoHit;
    bool proved = for_each_app(s, [&](const Node* prem, std::size_t n) {
      int m = kNoHit;
      for (std::size_t k = 0; k < n; ++k) {
        auto [r, h] = search(prem[k]);
        m = std::min(m, h);
        if (!r) {
          min_hit = std::min(min_hit, m);
          return false;
        }
      }
      return true;
    });
    --depth;
    path.erase(key);
    if (proved) {
      memo(key, 1);
      return {true, kNoHit};
    }
    if (min_hit >= my) {
      memo(key, 0);
      return {false, kNoHit};
    }
    return {false, min_hit};
  }

  void memo(const std::string& key, std::uint8_t v) {
    if (cache.map_.size() >= cache.max_entries_) cache.map_.clear();
    cache.map_.insert_or_assign(key, v);
  }

  static Node to_node(const Sequent& s) {
    Node out;
    for (const auto& [id, n] : s.ante.items()) add_set(out.ante, fnorm(id));
    if (s.succ) out.succ = fnorm(s.succ->id());
    return out;
  }

  static Sequent node_to_sequent(const Node& s) {
    FormulaBag b;
    for (FormulaId id : s.ante) b.add_id(id);
    Sequent out(std::move(b));
    if (s.succ != kNoFormula) out.succ = Formula::from_id(s.succ);
    return out;
  }
};

std::vector<std::vector<Sequent>> g3_search_apps(const Sequent& s) {
  G3Cache cache;
  G3Driver d(cache);
  G3Driver::Node root = G3Driver::to_node(s);
  std::vector<std::vector<Sequent>> out;
  d.for_each_app(root, [&](const G3Driver::Node* prem, std::size_t n) {
    std::vector<Sequent> ps;
    ps.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
      ps.push_back(G3Driver::node_to_sequent(prem[k]));
    out.push_back(std::move(ps));
    return false;
  });
  return out;
}

}  // namespace detail

bool derivable(const Sequent& s, ProofCache& cache) {
  detail::G4Driver d(cache);
  return d.search<detail::BoolBuild>(detail::to_hot(s), nullptr);
}

std::optional<DerivationPtr> prove_g4(const Sequent& s, ProofCache& cache) {
  detail::G4Driver d(cache);
  DerivationPtr r = d.search<detail::TreeBuild>(detail::to_hot(s), nullptr);
  if (!r) return std::nullopt;
  return r;
}

bool prove_g3(const Sequent& s) {
  G3Cache cache;
  return prove_g3(s, cache);
}

bool prove_g3(const Sequent& s, G3Cache& cache) {
  detail::G3Driver d(cache);
  return d.search(detail::G3Driver::to_node(s)).first;
}

bool check_derivation(const DerivationPtr& d, CalculusId c) {
  if (!d) return false;
  Sequent sq = d->seq.normalized();
  if (d->children.empty()) {
    if (d->rule == RuleId::Ax)
      return sq.succ && sq.succ->kind() == Kind::Atom && sq.ante.contains(*sq.succ);
    if (d->rule == RuleId::LBot) return sq.ante.contains(Formula::bot());
    return false;
  }
  std::vector<Sequent> prem;
  prem.reserve(d->children.size());
  for (const DerivationPtr& ch : d->children) {
    if (!ch) return false;
    prem.push_back(ch->seq);
  }
  if (!valid_app(d->rule, sq, prem, c)) return false;
  for (const DerivationPtr& ch : d->children)
    if (!check_derivation(ch, c)) return false;
  return true;
}

}  // namespace ulim
