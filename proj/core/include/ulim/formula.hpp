#pragma once

// Formulas of intuitionistic monotone modal logic.
//
// The language has atoms, falsum (#f), conjunction (&), disjunction (|),
// implication (->) and an unboxing-free monotone modality ([]).  Verum (#t)
// exists only as surface syntax: the proof machinery works on #t-free
// formulas, where #t is read as #f -> #f.  normalized() performs that
// replacement hereditarily.
//
// Design notes.
//  - Formulas are interned in a process-wide arena.  A Formula is a 32-bit
//    handle; equality is handle equality.  Weight, polarity variable sets,
//    the #t-free form and the render text length are computed once, when a
//    node is first interned.
//  - Weights count tree nodes, so shared subterms make them explode far
//    beyond any fixed width (interpolant assembly reaches them in practice).
//    Stored weights saturate; order comparisons that meet two saturated
//    nodes fall back to exact big-number weights, computed and memoized on
//    demand, so the multiset order never lies.
//  - The canonical order is (weight, render text).  Render texts are
//    materialized eagerly for small formulas; larger ones are compared by
//    streaming the render in chunks without ever building the string.
//  - Interning takes a mutex; reads are lock-free.  Nodes live in chunked
//    storage with stable addresses, published through an atomic size.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ulim {

enum class Kind : std::uint8_t { Atom, Bot, Top, And, Or, Imp, Box };

enum class Polarity : std::uint8_t { Pos, Neg };

constexpr Polarity dual(Polarity p) {
  return p == Polarity::Pos ? Polarity::Neg : Polarity::Pos;
}

constexpr const char* polarity_name(Polarity p) {
  return p == Polarity::Pos ? "+" : "-";
}

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"),
        position(pos) {}
};

// A broken internal invariant (descent failure, malformed rule instance, ...).
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// A configured resource limit was exceeded.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an interpolant is requested for a non-derivable implication.
struct NotATheoremError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using FormulaId = std::uint32_t;
inline constexpr FormulaId kNoFormula = 0xFFFFFFFFu;

namespace detail {

inline constexpr std::uint64_t kSmallTextLimit = 128;
inline constexpr std::uint32_t kNoText = 0xFFFFFFFFu;

constexpr bool is_binary(Kind k) {
  return k == Kind::And || k == Kind::Or || k == Kind::Imp;
}

// Parenthesization of renders.  & binds tighter than |, which binds tighter
// than ->; all three associate to the right; [] binds tightest.
constexpr bool left_paren(Kind op, Kind l) {
  switch (op) {
    case Kind::And: return is_binary(l);
    case Kind::Or: return l == Kind::Or || l == Kind::Imp;
    case Kind::Imp: return l == Kind::Imp;
    default: return false;
  }
}

constexpr bool right_paren(Kind op, Kind r) {
  switch (op) {
    case Kind::And: return r == Kind::Or || r == Kind::Imp;
    case Kind::Or: return r == Kind::Imp;
    default: return false;
  }
}

constexpr std::string_view separator(Kind k) {
  switch (k) {
    case Kind::And: return " & ";
    case Kind::Or: return " | ";
    default: return " -> ";
  }
}

// Stored weights clamp here; the true value is recovered through
// compare_weights when two clamped nodes must be ordered.
inline constexpr std::uint64_t kWeightSat = ~std::uint64_t{0};

struct FormulaNode {
  Kind kind = Kind::Bot;
  std::uint8_t has_top = 0;
  std::uint32_t a = 0;  // left child, box body, or atom name index
  std::uint32_t b = 0;  // right child
  std::uint64_t weight = 1;  // saturating, see kWeightSat
  FormulaId norm = 0;  // hereditarily #t-free form (self when already free)
  std::uint64_t text_len = 0;
  std::uint32_t text = kNoText;  // side-table index when materialized
  std::vector<std::uint32_t> pos_vars;  // sorted atom name indices
  std::vector<std::uint32_t> neg_vars;
};

// Append-only storage with stable addresses.  Elements are reachable without
// a lock once the owner has published the index; append runs under the
// owner's mutex.
template <typename T>
class StableStore {
 public:
  static constexpr std::uint32_t kChunkBits = 12;
  static constexpr std::uint32_t kChunkSize = 1u << kChunkBits;
  static constexpr std::uint32_t kMaxChunks = 1u << 15;

  StableStore() : chunks_(new Chunk[kMaxChunks]) {}

  const T& operator[](std::uint32_t i) const {
    return chunks_[i >> kChunkBits].ptr.load(std::memory_order_acquire)[i & (kChunkSize - 1)];
  }

  T& slot(std::uint32_t i) {
    return chunks_[i >> kChunkBits].ptr.load(std::memory_order_relaxed)[i & (kChunkSize - 1)];
  }

  void ensure(std::uint32_t i) {
    std::uint32_t c = i >> kChunkBits;
    if (c >= kMaxChunks) throw InternalError("formula arena exhausted");
    if (chunks_[c].ptr.load(std::memory_order_relaxed) == nullptr)
      chunks_[c].ptr.store(new T[kChunkSize], std::memory_order_release);
  }

 private:
  struct Chunk {
    std::atomic<T*> ptr{nullptr};
  };
  std::unique_ptr<Chunk[]> chunks_;
};

class Arena {
 public:
  static Arena& get();

  FormulaId atom(std::string_view name);
  FormulaId make(Kind k, FormulaId a = kNoFormula, FormulaId b = kNoFormula);

  const FormulaNode& node(FormulaId id) const { return nodes_[id]; }
  std::string_view name(std::uint32_t idx) const {
    const std::string& s = names_[idx];
    return s;
  }
  std::string_view text_of(const FormulaNode& n) const {
    const std::string& s = texts_[n.text];
    return s;
  }

  std::uint32_t name_index(std::string_view name);
  std::optional<std::uint32_t> find_name(std::string_view name) const;

  FormulaId bot() const { return bot_; }
  FormulaId top() const { return top_; }
  FormulaId top_normal() const { return topn_; }

  std::uint32_t size() const { return n_nodes_.load(std::memory_order_acquire); }

 private:
  Arena();
  FormulaId intern_locked(Kind k, std::uint32_t a, std::uint32_t b);

  struct NodeKey {
    Kind k;
    std::uint32_t a, b;
    bool operator==(const NodeKey&) const = default;
  };
  struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const {
      std::uint64_t h = static_cast<std::uint64_t>(k.k) * 0x9E3779B97F4A7C15ull;
      h ^= (static_cast<std::uint64_t>(k.a) << 1) * 0xC2B2AE3D27D4EB4Full;
      h ^= (static_cast<std::uint64_t>(k.b) + 0x165667B19E3779F9ull) * 0x27D4EB2F165667C5ull;
      h ^= h >> 29;
      return static_cast<std::size_t>(h * 0x9E3779B97F4A7C15ull);
    }
  };
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
    std::size_t operator()(const std::string& s) const { return std::hash<std::string_view>{}(s); }
  };

  mutable std::mutex mu_;
  StableStore<FormulaNode> nodes_;
  StableStore<std::string> texts_;
  StableStore<std::string> names_;
  std::atomic<std::uint32_t> n_nodes_{0};
  std::uint32_t n_texts_ = 0;
  std::uint32_t n_names_ = 0;
  std::unordered_map<NodeKey, FormulaId, NodeKeyHash> map_;
  std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>> name_map_;
  FormulaId bot_ = 0, topn_ = 0, top_ = 0;
};

inline const FormulaNode& fnode(FormulaId id) { return Arena::get().node(id); }
inline Kind fkind(FormulaId id) { return fnode(id).kind; }
inline std::uint64_t fweight(FormulaId id) { return fnode(id).weight; }
inline FormulaId fnorm(FormulaId id) { return fnode(id).norm; }

// Exact three-way weight comparison for two saturated nodes (big-number
// slow path; callers handle the unsaturated cases from stored weights).
int compare_weights(FormulaId a, FormulaId b);

// Exact w(a) < w(b) at any magnitude.
inline bool weight_less(FormulaId a, FormulaId b) {
  const std::uint64_t wa = fweight(a), wb = fweight(b);
  if (wa != kWeightSat || wb != kWeightSat) return wa < wb;
  return compare_weights(a, b) < 0;
}

inline const std::vector<std::uint32_t>& fvars(FormulaId id, Polarity p) {
  const FormulaNode& n = fnode(id);
  return p == Polarity::Pos ? n.pos_vars : n.neg_vars;
}

// True when the atom with the given name index does not occur with the given
// polarity in the formula.
inline bool polarity_free(FormulaId id, std::uint32_t name_idx, Polarity p) {
  const std::vector<std::uint32_t>& v = fvars(id, p);
  return !std::binary_search(v.begin(), v.end(), name_idx);
}

}  // namespace detail

// Canonical comparison: by weight, ties broken by render text.  Total order;
// zero exactly on equal handles.
int compare_ids(FormulaId a, FormulaId b);

// Streams the render of a formula into `out`.
void render_to(FormulaId id, std::string& out);

class Formula {
 public:
  Formula() = default;  // invalid handle; valid() is false

  static Formula from_id(FormulaId id) { return Formula(id); }
  static Formula atom(std::string_view name);
  static Formula bot() { return Formula(detail::Arena::get().bot()); }
  static Formula top() { return Formula(detail::Arena::get().top()); }
  static Formula conj(Formula l, Formula r) {
    return Formula(detail::Arena::get().make(Kind::And, l.id_, r.id_));
  }
  static Formula disj(Formula l, Formula r) {
    return Formula(detail::Arena::get().make(Kind::Or, l.id_, r.id_));
  }
  static Formula imp(Formula l, Formula r) {
    return Formula(detail::Arena::get().make(Kind::Imp, l.id_, r.id_));
  }
  static Formula box(Formula f) {
    return Formula(detail::Arena::get().make(Kind::Box, f.id_));
  }

  bool valid() const { return id_ != kNoFormula; }
  FormulaId id() const { return id_; }

  Kind kind() const { return detail::fkind(id_); }
  Formula lhs() const { return Formula(detail::fnode(id_).a); }
  Formula rhs() const { return Formula(detail::fnode(id_).b); }
  Formula body() const { return Formula(detail::fnode(id_).a); }
  std::string_view name() const {
    return detail::Arena::get().name(detail::fnode(id_).a);
  }

  std::uint64_t weight() const { return detail::fweight(id_); }  // saturating
  bool has_top() const { return detail::fnode(id_).has_top != 0; }
  Formula normalized() const { return Formula(detail::fnorm(id_)); }

  std::string text() const;
  std::vector<std::string> vars(Polarity p) const;
  std::vector<std::string> atoms() const;
  bool polarity_free(std::string_view atom, Polarity p) const;
  std::vector<Formula> subformulas() const;  // unique, self included, canonical order

  friend bool operator==(Formula a, Formula b) { return a.id_ == b.id_; }
  friend bool operator!=(Formula a, Formula b) { return a.id_ != b.id_; }
  friend bool operator<(Formula a, Formula b) { return compare(a, b) < 0; }

  static int compare(Formula a, Formula b) { return compare_ids(a.id_, b.id_); }

 private:
  explicit Formula(FormulaId id) : id_(id) {}
  FormulaId id_ = kNoFormula;
};

}  // namespace ulim

template <>
struct std::hash<ulim::Formula> {
  std::size_t operator()(ulim::Formula f) const {
    return std::hash<ulim::FormulaId>{}(f.id());
  }
};
