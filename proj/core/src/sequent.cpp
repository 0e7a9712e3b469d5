#include "ulim/sequent.hpp"

#include <algorithm>
#include <stdexcept>

#include "ulim/parse.hpp"

namespace ulim {
namespace {

void append_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7F) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

}  // namespace

FormulaBag::FormulaBag(const std::vector<Formula>& fs) {
  for (Formula f : fs) add(f);
}

FormulaBag FormulaBag::of(std::initializer_list<Formula> fs) {
  FormulaBag out;
  for (Formula f : fs) out.add(f);
  return out;
}

std::size_t FormulaBag::find(FormulaId id) const {
  auto it = std::lower_bound(
      items_.begin(), items_.end(), id,
      [](const Item& a, FormulaId b) { return compare_ids(a.first, b) < 0; });
  return static_cast<std::size_t>(it - items_.begin());
}

void FormulaBag::add(Formula f, std::uint32_t n) { add_id(f.id(), n); }

void FormulaBag::add_id(FormulaId id, std::uint32_t n) {
  if (n == 0) return;
  std::size_t i = find(id);
  if (i < items_.size() && items_[i].first == id)
    items_[i].second += n;
  else
    items_.insert(items_.begin() + static_cast<std::ptrdiff_t>(i), {id, n});
}

void FormulaBag::remove_one(Formula f) {
  std::size_t i = find(f.id());
  if (i == items_.size() || items_[i].first != f.id())
    throw std::invalid_argument("formula not in bag: " + f.text());
  if (--items_[i].second == 0)
    items_.erase(items_.begin() + static_cast<std::ptrdiff_t>(i));
}

FormulaBag FormulaBag::plus(Formula f, std::uint32_t n) const {
  FormulaBag out = *this;
  out.add(f, n);
  return out;
}

FormulaBag FormulaBag::minus_one(Formula f) const {
  FormulaBag out = *this;
  out.remove_one(f);
  return out;
}

FormulaBag FormulaBag::replaced_one(Formula from,
                                    std::initializer_list<Formula> to) const {
  FormulaBag out = *this;
  out.remove_one(from);
  for (Formula f : to) out.add(f);
  return out;
}

FormulaBag FormulaBag::united(const FormulaBag& other) const {
  FormulaBag out = *this;
  for (const Item& it : other.items_) out.add_id(it.first, it.second);
  return out;
}

FormulaBag FormulaBag::contracted() const {
  FormulaBag out = *this;
  for (Item& it : out.items_) it.second = 1;
  return out;
}

FormulaBag FormulaBag::normalized() const {
  FormulaBag out;
  for (const Item& it : items_) out.add_id(detail::fnorm(it.first), it.second);
  return out;
}

std::uint32_t FormulaBag::count(Formula f) const {
  std::size_t i = find(f.id());
  return (i < items_.size() && items_[i].first == f.id()) ? items_[i].second : 0;
}

bool FormulaBag::contains_id(FormulaId id) const {
  std::size_t i = find(id);
  return i < items_.size() && items_[i].first == id;
}

std::size_t FormulaBag::total() const {
  std::size_t n = 0;
  for (const Item& it : items_) n += it.second;
  return n;
}

std::size_t FormulaBag::total_weight() const {
  unsigned __int128 w = 0;
  for (const Item& it : items_)
    w += static_cast<unsigned __int128>(detail::fweight(it.first)) * it.second;
  if (w > detail::kWeightSat) return static_cast<std::size_t>(detail::kWeightSat);
  return static_cast<std::size_t>(w);
}

std::vector<Formula> FormulaBag::expanded() const {
  std::vector<Formula> out;
  out.reserve(total());
  for (const Item& it : items_)
    for (std::uint32_t k = 0; k < it.second; ++k)
      out.push_back(Formula::from_id(it.first));
  return out;
}

bool FormulaBag::includes(const FormulaBag& other) const {
  for (const Item& it : other.items_) {
    std::size_t i = find(it.first);
    if (i == items_.size() || items_[i].first != it.first ||
        items_[i].second < it.second)
      return false;
  }
  return true;
}

std::vector<std::string> FormulaBag::vars(Polarity p) const {
  std::vector<std::uint32_t> all;
  for (const Item& it : items_) {
    const std::vector<std::uint32_t>& v = detail::fvars(it.first, p);
    all.insert(all.end(), v.begin(), v.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::vector<std::string> out;
  out.reserve(all.size());
  for (std::uint32_t idx : all) out.emplace_back(detail::Arena::get().name(idx));
  std::sort(out.begin(), out.end());
  return out;
}

bool FormulaBag::has_var(std::uint32_t name_idx, Polarity p) const {
  for (const Item& it : items_)
    if (!detail::polarity_free(it.first, name_idx, p)) return true;
  return false;
}

void FormulaBag::append_key(std::string& out) const {
  append_varint(out, items_.size());
  for (const Item& it : items_) {
    append_varint(out, it.first);
    append_varint(out, it.second);
  }
}

std::string FormulaBag::text() const {
  std::string out;
  bool first = true;
  for (const Item& it : items_)
    for (std::uint32_t k = 0; k < it.second; ++k) {
      if (!first) out += ", ";
      first = false;
      render_to(it.first, out);
    }
  return out;
}

Sequent Sequent::normalized() const {
  Sequent out;
  out.ante = ante.normalized();
  if (succ) out.succ = succ->normalized();
  return out;
}

std::string Sequent::text() const {
  std::string out = ante.text();
  if (!out.empty()) out += ' ';
  out += "=>";
  if (succ) {
    out += ' ';
    render_to(succ->id(), out);
  }
  return out;
}

std::vector<std::string> Sequent::vars(Polarity p) const {
  std::vector<std::string> a = ante.vars(dual(p));
  if (succ) {
    std::vector<std::string> s = succ->vars(p);
    a.insert(a.end(), s.begin(), s.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return a;
}

bool Sequent::has_var(std::uint32_t name_idx, Polarity p) const {
  if (ante.has_var(name_idx, dual(p))) return true;
  return succ && !detail::polarity_free(succ->id(), name_idx, p);
}

FormulaBag Sequent::measure() const {
  FormulaBag out = ante;
  if (succ) out.add(*succ);
  return out;
}

Sequent parse_sequent(std::string_view text) {
  SequentParts parts = parse_sequent_parts(text);
  return Sequent(FormulaBag(parts.ante), parts.succ);
}

// Multiset extension of the weight order on the cancelled remainders: after
// removing the common part, the D side must be nonempty and every G-side
// formula must weigh strictly less than some D-side formula, i.e. less than
// the maximal D-side weight.  Bags are sorted by (weight, text), so the last
// remainder item carries the maximal weight.
bool bag_precedes(const FormulaBag& g, const FormulaBag& d) {
  const std::vector<FormulaBag::Item>& gi = g.items();
  const std::vector<FormulaBag::Item>& di = d.items();
  std::size_t i = 0, j = 0;
  FormulaId gmax = kNoFormula;  // heaviest G-remainder member (last one seen)
  FormulaId dmax = kNoFormula;
  while (i < gi.size() || j < di.size()) {
    int c;
    if (i == gi.size())
      c = 1;
    else if (j == di.size())
      c = -1;
    else
      c = compare_ids(gi[i].first, di[j].first);
    if (c == 0) {
      if (gi[i].second > di[j].second)
        gmax = gi[i].first;
      else if (gi[i].second < di[j].second)
        dmax = di[j].first;
      ++i;
      ++j;
    } else if (c < 0) {
      gmax = gi[i].first;
      ++i;
    } else {
      dmax = di[j].first;
      ++j;
    }
  }
  if (dmax == kNoFormula) return false;
  return gmax == kNoFormula || detail::weight_less(gmax, dmax);
}

bool seq_precedes(const Sequent& s, const Sequent& t) {
  return bag_precedes(s.measure(), t.measure());
}

bool bag_precedes_seq(const FormulaBag& g, const Sequent& t) {
  return bag_precedes(g, t.measure());
}

bool seq_precedes_bag(const Sequent& s, const FormulaBag& d) {
  return bag_precedes(s.measure(), d);
}

Sequent multiply(const Sequent& s, const Sequent& t) {
  if (s.succ && t.succ)
    throw std::invalid_argument(
        "cannot multiply sequents that both have a succedent: '" + s.text() +
        "' and '" + t.text() + "'");
  Sequent out;
  out.ante = s.ante.united(t.ante);
  out.succ = s.succ ? s.succ : t.succ;
  return out;
}

std::string canonical_key(const Sequent& s) {
  std::string out;
  s.ante.append_key(out);
  if (s.succ) {
    out.push_back(1);
    append_varint(out, s.succ->id());
  } else {
    out.push_back(0);
  }
  return out;
}

}  // namespace ulim
