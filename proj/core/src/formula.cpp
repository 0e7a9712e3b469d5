#include "ulim/formula.hpp"

#include <cctype>
#include <cstring>

namespace ulim {
namespace detail {
namespace {

std::vector<std::uint32_t> merged(const std::vector<std::uint32_t>& x,
                                  const std::vector<std::uint32_t>& y) {
  std::vector<std::uint32_t> out;
  out.reserve(x.size() + y.size());
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

std::uint64_t sat_add(std::uint64_t x, std::uint64_t y) {
  std::uint64_t s = x + y;
  return s < x ? kWeightSat : s;
}

}  // namespace

Arena& Arena::get() {
  static Arena* arena = new Arena();  // never destroyed; formulas live for the process
  return *arena;
}

Arena::Arena() {
  std::lock_guard<std::mutex> lock(mu_);
  bot_ = intern_locked(Kind::Bot, 0, 0);
  topn_ = intern_locked(Kind::Imp, bot_, bot_);
  top_ = intern_locked(Kind::Top, 0, 0);
}

std::uint32_t Arena::name_index(std::string_view name) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = name_map_.find(name);
  if (it != name_map_.end()) return it->second;
  std::uint32_t idx = n_names_;
  names_.ensure(idx);
  names_.slot(idx) = std::string(name);
  ++n_names_;
  name_map_.emplace(std::string(name), idx);
  return idx;
}

std::optional<std::uint32_t> Arena::find_name(std::string_view name) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = name_map_.find(name);
  if (it == name_map_.end()) return std::nullopt;
  return it->second;
}

FormulaId Arena::atom(std::string_view name) {
  std::uint32_t idx = name_index(name);
  std::lock_guard<std::mutex> lock(mu_);
  return intern_locked(Kind::Atom, idx, 0);
}

FormulaId Arena::make(Kind k, FormulaId a, FormulaId b) {
  std::uint32_t n = size();
  switch (k) {
    case Kind::Bot: return bot_;
    case Kind::Top: return top_;
    case Kind::Atom:
      throw InternalError("atoms must be interned by name");
    case Kind::Box:
      if (a >= n) throw InternalError("invalid formula handle");
      b = 0;
      break;
    default:
      if (a >= n || b >= n) throw InternalError("invalid formula handle");
      break;
  }
  std::lock_guard<std::mutex> lock(mu_);
  return intern_locked(k, a, b);
}

FormulaId Arena::intern_locked(Kind k, std::uint32_t a, std::uint32_t b) {
  NodeKey key{k, a, b};
  auto it = map_.find(key);
  if (it != map_.end()) return it->second;

  FormulaNode n;
  n.kind = k;
  n.a = a;
  n.b = b;
  switch (k) {
    case Kind::Atom:
      n.pos_vars = {a};
      n.text_len = names_[a].size();
      break;
    case Kind::Bot:
    case Kind::Top:
      n.has_top = (k == Kind::Top);
      n.text_len = 2;
      break;
    case Kind::Box: {
      const FormulaNode& c = nodes_[a];
      n.weight = sat_add(c.weight, 1);
      n.pos_vars = c.pos_vars;
      n.neg_vars = c.neg_vars;
      n.has_top = c.has_top;
      n.text_len = 3 + c.text_len + (is_binary(c.kind) ? 2 : 0);
      break;
    }
    default: {
      const FormulaNode& l = nodes_[a];
      const FormulaNode& r = nodes_[b];
      n.weight = sat_add(sat_add(l.weight, r.weight), k == Kind::And ? 2 : 1);
      if (k == Kind::Imp) {
        n.pos_vars = merged(l.neg_vars, r.pos_vars);
        n.neg_vars = merged(l.pos_vars, r.neg_vars);
      } else {
        n.pos_vars = merged(l.pos_vars, r.pos_vars);
        n.neg_vars = merged(l.neg_vars, r.neg_vars);
      }
      n.has_top = l.has_top | r.has_top;
      n.text_len = l.text_len + r.text_len + separator(k).size() +
                   (left_paren(k, l.kind) ? 2 : 0) + (right_paren(k, r.kind) ? 2 : 0);
      break;
    }
  }

  if (k == Kind::Top) {
    n.norm = topn_;
  } else if (n.has_top) {
    n.norm = (k == Kind::Box) ? intern_locked(Kind::Box, nodes_[a].norm, 0)
                              : intern_locked(k, nodes_[a].norm, nodes_[b].norm);
  }

  if (n.text_len <= kSmallTextLimit) {
    std::string s;
    s.reserve(n.text_len);
    switch (k) {
      case Kind::Atom: s = names_[a]; break;
      case Kind::Bot: s = "#f"; break;
      case Kind::Top: s = "#t"; break;
      case Kind::Box: {
        const FormulaNode& c = nodes_[a];
        s += "[] ";
        if (is_binary(c.kind)) {
          s += '(';
          s += texts_[c.text];
          s += ')';
        } else {
          s += texts_[c.text];
        }
        break;
      }
      default: {
        const FormulaNode& l = nodes_[a];
        const FormulaNode& r = nodes_[b];
        if (left_paren(k, l.kind)) {
          s += '(';
          s += texts_[l.text];
          s += ')';
        } else {
          s += texts_[l.text];
        }
        s += separator(k);
        if (right_paren(k, r.kind)) {
          s += '(';
          s += texts_[r.text];
          s += ')';
        } else {
          s += texts_[r.text];
        }
        break;
      }
    }
    n.text = n_texts_;
    texts_.ensure(n_texts_);
    texts_.slot(n_texts_) = std::move(s);
    ++n_texts_;
  }

  std::uint32_t id = n_nodes_.load(std::memory_order_relaxed);
  nodes_.ensure(id);
  bool self_norm = !n.has_top;
  nodes_.slot(id) = std::move(n);
  if (self_norm) nodes_.slot(id).norm = id;
  map_.emplace(key, id);
  n_nodes_.store(id + 1, std::memory_order_release);
  return id;
}

namespace {

// Emits the render of a formula as a sequence of chunks, driven by an
// explicit stack, so that very large formulas can be rendered or compared
// without recursion and without materializing the text.
class RenderCursor {
 public:
  explicit RenderCursor(FormulaId id) {
    stack_.push_back({id, 0, 0});
    advance();
  }

  std::string_view chunk() const { return cur_; }

  void consume(std::size_t n) {
    cur_.remove_prefix(n);
    if (cur_.empty()) advance();
  }

  void append_all(std::string& out) {
    while (!cur_.empty()) {
      out += cur_;
      cur_ = {};
      advance();
    }
  }

 private:
  // stage 0: emit "(" when parenthesized; 1: emit the node head, pushing
  // children as needed; 2: emit the separator and push the right child;
  // 3: emit ")" when parenthesized and pop.
  struct Frame {
    FormulaId id;
    std::uint8_t stage;
    std::uint8_t paren;
  };

  void advance() {
    const Arena& ar = Arena::get();
    while (!stack_.empty()) {
      Frame& f = stack_.back();
      if (f.stage == 0) {
        f.stage = 1;
        if (f.paren) {
          cur_ = "(";
          return;
        }
      }
      if (f.stage == 1) {
        const FormulaNode& n = ar.node(f.id);
        if (n.text != kNoText) {
          f.stage = 3;
          cur_ = ar.text_of(n);
          return;
        }
        switch (n.kind) {
          case Kind::Atom:
            f.stage = 3;
            cur_ = ar.name(n.a);
            return;
          case Kind::Bot:
            f.stage = 3;
            cur_ = "#f";
            return;
          case Kind::Top:
            f.stage = 3;
            cur_ = "#t";
            return;
          case Kind::Box: {
            f.stage = 3;
            std::uint8_t p = is_binary(ar.node(n.a).kind) ? 1 : 0;
            cur_ = "[] ";
            stack_.push_back({n.a, 0, p});
            return;
          }
          default: {
            f.stage = 2;
            std::uint8_t p = left_paren(n.kind, ar.node(n.a).kind) ? 1 : 0;
            stack_.push_back({n.a, 0, p});
            continue;
          }
        }
      }
      if (f.stage == 2) {
        const FormulaNode& n = ar.node(f.id);
        f.stage = 3;
        cur_ = separator(n.kind);
        std::uint8_t p = right_paren(n.kind, ar.node(n.b).kind) ? 1 : 0;
        stack_.push_back({n.b, 0, p});
        return;
      }
      bool close = f.paren != 0;
      stack_.pop_back();
      if (close) {
        cur_ = ")";
        return;
      }
    }
    cur_ = {};
  }

  std::vector<Frame> stack_;
  std::string_view cur_;
};

}  // namespace

namespace {

// Exact weights for nodes whose stored weight clamped at kWeightSat.
// Little-endian 64-bit limbs, most significant limb nonzero.
using BigWeight = std::vector<std::uint64_t>;

void big_add_into(BigWeight& x, const BigWeight& y) {
  if (y.size() > x.size()) x.resize(y.size(), 0);
  unsigned __int128 carry = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    unsigned __int128 s = carry + x[i] + (i < y.size() ? y[i] : 0);
    x[i] = static_cast<std::uint64_t>(s);
    carry = s >> 64;
  }
  if (carry) x.push_back(static_cast<std::uint64_t>(carry));
}

void big_add_small(BigWeight& x, std::uint64_t v) {
  const BigWeight y{v};
  big_add_into(x, y);
}

int big_cmp(const BigWeight& x, const BigWeight& y) {
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  for (std::size_t i = x.size(); i-- > 0;)
    if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
  return 0;
}

std::mutex big_weights_mu;
std::unordered_map<FormulaId, BigWeight> big_weights;

// Fills the memo for `root` and everything saturated below it.  Iterative:
// saturated chains can be deeper than the call stack allows.
void big_weight_locked(FormulaId root) {
  auto done = [](FormulaId id) {
    return big_weights.find(id) != big_weights.end();
  };
  std::vector<FormulaId> stack{root};
  while (!stack.empty()) {
    FormulaId cur = stack.back();
    if (done(cur)) {
      stack.pop_back();
      continue;
    }
    const FormulaNode& n = fnode(cur);
    if (n.weight != kWeightSat) {
      big_weights.emplace(cur, BigWeight{n.weight});
      stack.pop_back();
      continue;
    }
    bool ready = true;
    auto need = [&](FormulaId c) {
      if (fweight(c) == kWeightSat && !done(c)) {
        stack.push_back(c);
        ready = false;
      }
    };
    if (n.kind == Kind::Box) {
      need(n.a);
    } else if (n.kind == Kind::And || n.kind == Kind::Or || n.kind == Kind::Imp) {
      need(n.a);
      need(n.b);
    }
    if (!ready) continue;
    auto value = [](FormulaId c) -> BigWeight {
      if (fweight(c) != kWeightSat) return BigWeight{fweight(c)};
      return big_weights.at(c);
    };
    BigWeight w{1};
    switch (n.kind) {
      case Kind::Box:
        w = value(n.a);
        big_add_small(w, 1);
        break;
      case Kind::And:
      case Kind::Or:
      case Kind::Imp:
        w = value(n.a);
        big_add_into(w, value(n.b));
        big_add_small(w, n.kind == Kind::And ? 2 : 1);
        break;
      default:
        break;  // leaves never saturate
    }
    big_weights.emplace(cur, std::move(w));
    stack.pop_back();
  }
}

}  // namespace

int compare_weights(FormulaId a, FormulaId b) {
  if (a == b) return 0;
  std::lock_guard<std::mutex> lock(big_weights_mu);
  big_weight_locked(a);
  big_weight_locked(b);  // may rehash, so fetch both entries afterwards
  return big_cmp(big_weights.at(a), big_weights.at(b));
}

}  // namespace detail

void render_to(FormulaId id, std::string& out) {
  const detail::FormulaNode& n = detail::fnode(id);
  if (n.text != detail::kNoText) {
    out += detail::Arena::get().text_of(n);
    return;
  }
  out.reserve(out.size() + n.text_len);
  detail::RenderCursor c(id);
  c.append_all(out);
}

int compare_ids(FormulaId a, FormulaId b) {
  if (a == b) return 0;
  const detail::FormulaNode& na = detail::fnode(a);
  const detail::FormulaNode& nb = detail::fnode(b);
  if (na.weight != nb.weight) return na.weight < nb.weight ? -1 : 1;
  if (na.weight == detail::kWeightSat) {
    int wc = detail::compare_weights(a, b);
    if (wc != 0) return wc;
  }
  if (na.text != detail::kNoText && nb.text != detail::kNoText) {
    int c = detail::Arena::get().text_of(na).compare(detail::Arena::get().text_of(nb));
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  detail::RenderCursor ca(a), cb(b);
  while (true) {
    std::string_view xa = ca.chunk(), xb = cb.chunk();
    if (xa.empty() && xb.empty()) return 0;
    if (xa.empty()) return -1;
    if (xb.empty()) return 1;
    std::size_t n = std::min(xa.size(), xb.size());
    int c = std::memcmp(xa.data(), xb.data(), n);
    if (c != 0) return c < 0 ? -1 : 1;
    ca.consume(n);
    cb.consume(n);
  }
}

Formula Formula::atom(std::string_view name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0])))
    throw std::invalid_argument("atom names start with a lowercase letter: '" +
                                std::string(name) + "'");
  for (char ch : name)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
      throw std::invalid_argument("invalid character in atom name: '" +
                                  std::string(name) + "'");
  return Formula(detail::Arena::get().atom(name));
}

std::string Formula::text() const {
  std::string out;
  render_to(id_, out);
  return out;
}

std::vector<std::string> Formula::vars(Polarity p) const {
  const std::vector<std::uint32_t>& v = detail::fvars(id_, p);
  std::vector<std::string> out;
  out.reserve(v.size());
  for (std::uint32_t idx : v) out.emplace_back(detail::Arena::get().name(idx));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> Formula::atoms() const {
  const detail::FormulaNode& n = detail::fnode(id_);
  std::vector<std::uint32_t> all;
  std::set_union(n.pos_vars.begin(), n.pos_vars.end(), n.neg_vars.begin(),
                 n.neg_vars.end(), std::back_inserter(all));
  std::vector<std::string> out;
  out.reserve(all.size());
  for (std::uint32_t idx : all) out.emplace_back(detail::Arena::get().name(idx));
  std::sort(out.begin(), out.end());
  return out;
}

bool Formula::polarity_free(std::string_view atom, Polarity p) const {
  std::optional<std::uint32_t> idx = detail::Arena::get().find_name(atom);
  if (!idx) return true;
  return detail::polarity_free(id_, *idx, p);
}

std::vector<Formula> Formula::subformulas() const {
  std::vector<FormulaId> seen;
  std::vector<FormulaId> todo{id_};
  while (!todo.empty()) {
    FormulaId cur = todo.back();
    todo.pop_back();
    if (std::find(seen.begin(), seen.end(), cur) != seen.end()) continue;
    seen.push_back(cur);
    const detail::FormulaNode& n = detail::fnode(cur);
    switch (n.kind) {
      case Kind::And:
      case Kind::Or:
      case Kind::Imp:
        todo.push_back(n.a);
        todo.push_back(n.b);
        break;
      case Kind::Box:
        todo.push_back(n.a);
        break;
      default:
        break;
    }
  }
  std::vector<Formula> out;
  out.reserve(seen.size());
  for (FormulaId id : seen) out.push_back(Formula::from_id(id));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ulim
