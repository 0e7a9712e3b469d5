// Command line front end: prove sequents, synthesize and verify uniform
// interpolants, run the property suites, and batch-process corpus files.
//
// Exit codes: 0 success / provable, 1 not provable or a checked condition
// failed, 2 usage or input error, 3 internal assertion or resource limit.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ulim/enumerate.hpp"
#include "ulim/formula.hpp"
#include "ulim/harness.hpp"
#include "ulim/interpolate.hpp"
#include "ulim/json_io.hpp"
#include "ulim/latex.hpp"
#include "ulim/parse.hpp"
#include "ulim/prover.hpp"
#include "ulim/rules.hpp"
#include "ulim/sequent.hpp"

namespace {

using nlohmann::ordered_json;
using namespace ulim;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

// Tunables shared by every subcommand, overridable through --config.
struct Settings {
  std::uint64_t budget = InterpOptions{}.budget;
  std::size_t cache_entries = ProofCache::kDefaultMaxEntries;
  unsigned workers = 1;
};

// key=value lines, '#' comments.  Keys: budget, cache-entries, workers.
Settings load_config(const std::string& path) {
  Settings s;
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                               ": expected key=value");
    auto trim = [](std::string v) {
      std::size_t a = v.find_first_not_of(" \t");
      std::size_t b = v.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : v.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    std::uint64_t number = 0;
    try {
      number = std::stoull(value);
    } catch (const std::exception&) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": bad value for '" + key + "'");
    }
    if (key == "budget") {
      s.budget = number;
    } else if (key == "cache-entries") {
      s.cache_entries = number;
    } else if (key == "workers") {
      s.workers = number ? static_cast<unsigned>(number) : 1;
    } else {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    }
  }
  return s;
}

// Optional persistent memo keyed by canonical query text, one store file
// per query family under $ULIM_CACHE_DIR.  Lines are "key<TAB>value"; the
// store is append-only within a run.
class PersistentMemo {
 public:
  explicit PersistentMemo(std::filesystem::path file) : file_(std::move(file)) {
    std::ifstream in(file_);
    std::string line;
    while (in && std::getline(in, line)) {
      std::size_t tab = line.find('\t');
      if (tab == std::string::npos) continue;
      map_.emplace(line.substr(0, tab), line.substr(tab + 1));
    }
  }

  const std::string* find(const std::string& key) const {
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : &it->second;
  }

  void put(const std::string& key, const std::string& value) {
    if (map_.emplace(key, value).second) fresh_.emplace_back(key, value);
  }

  // Appends entries added this run; best effort, the memo is a cache.
  void flush() {
    if (fresh_.empty()) return;
    std::ofstream out(file_, std::ios::app);
    for (const auto& [k, v] : fresh_) out << k << '\t' << v << '\n';
    fresh_.clear();
  }

 private:
  std::filesystem::path file_;
  std::unordered_map<std::string, std::string> map_;
  std::vector<std::pair<std::string, std::string>> fresh_;
};

std::optional<std::filesystem::path> cache_dir_from_env() {
  const char* dir = std::getenv("ULIM_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  std::filesystem::path p(dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) {
    std::cerr << "warning: cannot create cache directory " << p << ": "
              << ec.message() << '\n';
    return std::nullopt;
  }
  return p;
}

std::vector<std::string> split_atoms(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(csv);
  while (std::getline(ss, item, ',')) {
    std::size_t a = item.find_first_not_of(" \t");
    std::size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos) continue;
    out.push_back(item.substr(a, b - a + 1));
  }
  if (out.empty()) throw std::invalid_argument("empty atom list");
  return out;
}

void print_tree(const DerivationPtr& d, int depth, std::ostream& os) {
  os << std::string(2 * std::size_t(depth), ' ') << rule_name(d->rule) << ": "
     << d->seq.text() << '\n';
  for (const auto& c : d->children) print_tree(c, depth + 1, os);
}

// ---------------------------------------------------------------------------
// prove

struct ProveArgs {
  std::string sequent;
  std::string calculus = "g4";
  std::string emit = "text";
  bool explain = false;
};

int cmd_prove(const ProveArgs& a, const Settings& st, PersistentMemo* memo) {
  // Keyed by canonical sequent text: stable across runs, unlike the arena
  // ids inside canonical_key.
  Sequent s = parse_sequent(a.sequent);
  const std::string memo_key = a.calculus + " " + s.text();

  bool provable = false;
  DerivationPtr tree;
  bool decided = false;
  if (memo && !a.explain) {
    if (const std::string* hit = memo->find(memo_key)) {
      provable = (*hit == "1");
      decided = true;
    }
  }
  if (!decided) {
    if (a.calculus == "g4") {
      ProofCache cache(st.cache_entries);
      if (a.explain) {
        auto d = prove_g4(s, cache);
        provable = d.has_value();
        if (d) tree = *d;
      } else {
        provable = derivable(s, cache);
      }
    } else {
      provable = prove_g3(s);
    }
    if (memo) memo->put(memo_key, provable ? "1" : "0");
  }

  if (a.emit == "json") {
    ordered_json j;
    j["query"] = {{"sequent", s.text()}, {"calculus", a.calculus}};
    j["provable"] = provable;
    if (tree) j["derivation"] = ordered_json::parse(derivation_json(tree));
    std::cout << j.dump() << '\n';
  } else if (a.emit == "latex") {
    if (tree) {
      std::cout << latex_derivation(tree) << '\n';
    } else {
      std::cout << "% " << (provable ? "provable" : "not provable") << '\n'
                << latex_sequent(s) << '\n';
    }
  } else {
    std::cout << (provable ? "provable" : "not provable") << '\n';
    if (tree) print_tree(tree, 0, std::cout);
  }
  return provable ? kOk : kFail;
}

// ---------------------------------------------------------------------------
// interpolate

struct InterpolateArgs {
  std::string kind;  // exists | forall
  std::string target;
  std::string atom;
  std::string polarity = "+";
  std::string emit = "json";
  std::string alphabet = "p,q";
  bool do_simplify = false;
  std::int64_t verify_bound = -1;  // context weight; <0 disables verification
};

ordered_json condition_json(const ConditionReport& r, std::int64_t bound) {
  if (r.name == "var" || r.name == "c1" || r.name == "c3")
    return ordered_json(r.ok);
  ordered_json j;
  j["bound"] = bound;
  j["counterexamples"] = r.counterexamples;
  return j;
}

int cmd_interpolate(const InterpolateArgs& a, const Settings& st,
                    PersistentMemo* memo) {
  const Polarity pol = a.polarity == "-" ? Polarity::Neg : Polarity::Pos;
  const bool exists = a.kind == "exists";
  const bool verify = a.verify_bound >= 0;

  // exists takes a bag of premises, forall a sequent; a bare formula list
  // (no "=>") is accepted for both.
  FormulaBag bag;
  Sequent seq(FormulaBag{}, std::nullopt);
  std::string target_text;
  if (a.target.find("=>") != std::string::npos) {
    Sequent s = parse_sequent(a.target);
    if (exists) {
      if (s.succ)
        throw std::invalid_argument(
            "the premise quantifier takes a bag of formulas, not a succedent");
      bag = s.ante;
      target_text = bag.text();
    } else {
      seq = s;
      target_text = seq.text();
    }
  } else if (exists) {
    for (Formula f : parse_formula_list(a.target)) bag = bag.plus(f);
    target_text = bag.text();
  } else {
    seq = Sequent(FormulaBag{}, parse_formula(a.target));
    target_text = seq.text();
  }

  InterpCache cache(st.cache_entries);
  InterpOptions opts;
  opts.budget = st.budget;

  const std::string memo_key =
      a.kind + a.polarity + " " + a.atom + " : " + target_text;

  Formula raw;
  std::vector<ConditionReport> conditions;
  bool verified_ok = true;
  if (verify) {
    QuantifierReport report =
        exists ? verify_exists(bag, a.atom, pol,
                               static_cast<std::uint32_t>(a.verify_bound),
                               split_atoms(a.alphabet), cache, opts)
               : verify_forall(seq, a.atom, pol,
                               static_cast<std::uint32_t>(a.verify_bound),
                               split_atoms(a.alphabet), cache, opts);
    raw = report.interpolant;
    verified_ok = report.ok();
    conditions = std::move(report.conditions);
    if (memo) memo->put(memo_key, raw.text());
  } else {
    const std::string* hit = memo ? memo->find(memo_key) : nullptr;
    if (hit) {
      raw = parse_formula(*hit);
    } else {
      raw = exists ? exists_q(bag, a.atom, pol, cache, opts)
                   : forall_q(seq, a.atom, pol, cache, opts);
      if (memo) memo->put(memo_key, raw.text());
    }
  }

  std::optional<Formula> simplified;
  if (a.do_simplify) simplified = simplify(raw);

  if (a.emit == "json") {
    ordered_json j;
    j["query"] = {{"kind", a.kind},
                  {"polarity", a.polarity},
                  {"atom", a.atom},
                  {"target", target_text}};
    j["raw"] = raw.text();
    if (simplified) j["simplified"] = simplified->text();
    if (verify) {
      ordered_json v;
      for (const auto& c : conditions)
        v[c.name] = condition_json(c, a.verify_bound);
      j["verified"] = v;
    }
    std::cout << j.dump() << '\n';
  } else {
    std::cout << (simplified ? *simplified : raw).text() << '\n';
    for (const auto& c : conditions)
      if (!c.ok) {
        std::cerr << "condition " << c.name << " failed";
        for (const auto& ce : c.counterexamples) std::cerr << "; " << ce;
        std::cerr << '\n';
      }
  }
  return verified_ok ? kOk : kFail;
}

// ---------------------------------------------------------------------------
// uip / lyndon

struct UipArgs {
  std::string quantifier;  // exists | forall
  std::string atom;
  std::string formula;
  std::string emit = "text";
  bool do_simplify = false;
};

int cmd_uip(const UipArgs& a, const Settings& st) {
  Formula f = parse_formula(a.formula);
  InterpCache cache(st.cache_entries);
  InterpOptions opts;
  opts.budget = st.budget;
  Formula out = a.quantifier == "exists" ? uip_exists(f, a.atom, cache, opts)
                                         : uip_forall(f, a.atom, cache, opts);
  if (a.do_simplify) out = simplify(out);
  if (a.emit == "json") {
    ordered_json j;
    j["query"] = {{"quantifier", a.quantifier},
                  {"atom", a.atom},
                  {"formula", f.text()}};
    j["result"] = out.text();
    std::cout << j.dump() << '\n';
  } else {
    std::cout << out.text() << '\n';
  }
  return kOk;
}

struct LyndonArgs {
  std::string phi, psi;
  std::string emit = "text";
  bool do_simplify = false;
};

int cmd_lyndon(const LyndonArgs& a, const Settings& st) {
  Formula phi = parse_formula(a.phi);
  Formula psi = parse_formula(a.psi);
  InterpCache cache(st.cache_entries);
  InterpOptions opts;
  opts.budget = st.budget;
  Formula theta;
  try {
    theta = lyndon_interpolant(phi, psi, cache, opts);
  } catch (const NotATheoremError& e) {
    std::cerr << e.what() << '\n';
    return kFail;
  }
  if (a.do_simplify) theta = simplify(theta);
  if (a.emit == "json") {
    ordered_json j;
    j["query"] = {{"premise", phi.text()}, {"conclusion", psi.text()}};
    j["interpolant"] = theta.text();
    std::cout << j.dump() << '\n';
  } else {
    std::cout << theta.text() << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string suite;  // equivalence | ulip | admissibility
  std::uint32_t weight_bound = 0;  // 0 = suite default
  std::uint32_t context_weight = 4;
  std::string atoms = "p,q";
  std::uint64_t samples = 500;
  std::uint64_t seed = 0x5eed;
  bool progress = false;
};

int report_suite(const SuiteResult& r) {
  std::cout << r.name << ": checked " << r.checked << ", failures "
            << r.failures << " (" << r.seconds << " s)\n";
  for (const auto& e : r.examples) std::cout << "  " << e << '\n';
  return r.ok() ? kOk : kFail;
}

int cmd_verify(const VerifyArgs& a) {
  SuiteOptions opts;
  opts.atoms = split_atoms(a.atoms);
  opts.context_weight = a.context_weight;
  opts.samples = a.samples;
  opts.seed = a.seed;
  opts.progress = a.progress;
  if (a.suite == "equivalence") {
    opts.weight_bound = a.weight_bound ? a.weight_bound : 5;
    return report_suite(run_equivalence_suite(opts));
  }
  if (a.suite == "ulip") {
    opts.weight_bound = a.weight_bound ? a.weight_bound : 6;
    return report_suite(run_quantifier_suite(opts));
  }
  opts.weight_bound = a.weight_bound ? a.weight_bound : 5;
  return report_suite(run_admissibility_suite(opts));
}

// ---------------------------------------------------------------------------
// selftest

int cmd_selftest() {
  std::uint64_t checked = 0, failures = 0;
  auto check = [&](bool ok, const char* what) {
    ++checked;
    if (!ok) {
      ++failures;
      std::cout << "FAIL: " << what << '\n';
    }
  };

  ProofCache g4;
  G3Cache g3;
  InterpCache icache;

  check(derivable(parse_sequent("=> [](p&q) -> []p & []q"), g4),
        "box distributes over conjunction");
  check(prove_g3(parse_sequent("=> [](p&q) -> []p & []q"), g3),
        "oracle agrees on the distribution axiom");
  check(!derivable(parse_sequent("[]p, []q => [](p&q)"), g4),
        "converse distribution is underivable");
  check(!prove_g3(parse_sequent("[]p, []q => [](p&q)"), g3),
        "oracle agrees on the converse");
  check(derivable(parse_sequent("p, p -> q => q"), g4), "detachment");
  check(!derivable(parse_sequent("=> p | (p -> #f)"), g4),
        "excluded middle stays underivable");

  check(simplify(uip_exists(parse_formula("q"), "p", icache)).text() == "q",
        "premise quantifier is the identity away from the atom");
  check(simplify(uip_forall(parse_formula("p"), "p", icache)).text() == "#f",
        "succedent quantifier collapses the atom itself");
  check(simplify(lyndon_interpolant(parse_formula("p & q"),
                                    parse_formula("q | r"), icache))
                .text() == "q",
        "interpolant for a shared-atom implication");
  check(simplify(parse_formula("#t & (q -> #t)")).text() == "#t",
        "simplifier folds constants");

  auto d = prove_g4(parse_sequent("p & q => q & p"), g4);
  check(d.has_value(), "conjunction commutes");
  if (d) {
    check(check_derivation(*d, CalculusId::G4iM), "returned tree validates");
    auto back = derivation_from_json(derivation_json(*d));
    check(check_derivation(back, CalculusId::G4iM),
          "tree survives a serialization round trip");
  }

  std::cout << "selftest: " << checked << " checks, " << failures
            << " failures\n";
  return failures == 0 ? kOk : kFail;
}

// ---------------------------------------------------------------------------
// corpus

struct CorpusArgs {
  std::string path;
  std::string suite = "equivalence";
  std::uint32_t context_weight = 4;
  std::string alphabet = "p,q";
  unsigned workers = 0;  // 0 = settings value
};

// Per-worker state; corpus items never share caches across workers.
struct CorpusWorker {
  ProofCache g4;
  G3Cache g3;
  InterpCache interp;
};

std::string corpus_equivalence_item(const std::string& line,
                                    CorpusWorker& w) {
  Sequent s = parse_sequent(line);
  bool a = derivable(s, w.g4);
  bool b = prove_g3(s, w.g3);
  ordered_json j;
  j["input"] = s.text();
  j["g4"] = a;
  j["g3"] = b;
  j["ok"] = (a == b);
  return j.dump();
}

std::string corpus_admissibility_item(const std::string& line,
                                      CorpusWorker& w) {
  Sequent s = parse_sequent(line);
  bool provable = derivable(s, w.g4);
  std::vector<std::string> failed;
  if (provable) {
    // Weakening: an extra copy of any antecedent member keeps the sequent
    // derivable; contraction gives the converse.
    for (const auto& [id, n] : s.ante.items()) {
      Formula f = Formula::from_id(id);
      Sequent more(s.ante.plus(f), s.succ);
      if (!derivable(more, w.g4)) failed.push_back("weakening: " + f.text());
      (void)n;
    }
    // Inversion of the right implication rule.
    if (s.succ && s.succ->kind() == Kind::Imp) {
      Sequent inv(s.ante.plus(s.succ->lhs()), s.succ->rhs());
      if (!derivable(inv, w.g4)) failed.push_back("inversion");
    }
    // Cut on each member the remaining antecedent already derives.
    for (const auto& [id, n] : s.ante.items()) {
      Formula f = Formula::from_id(id);
      FormulaBag rest = s.ante.minus_one(f);
      if (!derivable(Sequent(rest, f), w.g4)) continue;
      if (!derivable(Sequent(rest.united(rest), s.succ), w.g4))
        failed.push_back("cut: " + f.text());
      (void)n;
    }
  } else {
    // Contraction, read right to left: adding a copy cannot make an
    // underivable sequent derivable unless contraction fails.
    for (const auto& [id, n] : s.ante.items()) {
      Formula f = Formula::from_id(id);
      Sequent more(s.ante.plus(f), s.succ);
      if (derivable(more, w.g4)) failed.push_back("contraction: " + f.text());
      (void)n;
    }
  }
  ordered_json j;
  j["input"] = s.text();
  j["provable"] = provable;
  j["ok"] = failed.empty();
  if (!failed.empty()) j["failed"] = failed;
  return j.dump();
}

std::string corpus_ulip_item(const std::string& line, CorpusWorker& w,
                             const CorpusArgs& a,
                             const std::vector<std::string>& alphabet) {
  Formula f = parse_formula(line);
  std::vector<std::string> violations;
  std::uint64_t conditions = 0;
  for (const auto& atom : alphabet) {
    for (Polarity pol : {Polarity::Pos, Polarity::Neg}) {
      QuantifierReport er = verify_exists(FormulaBag::of({f}), atom, pol,
                                          a.context_weight, alphabet, w.interp);
      QuantifierReport fr =
          verify_forall(Sequent(FormulaBag{}, f), atom, pol, a.context_weight,
                        alphabet, w.interp);
      for (const QuantifierReport* r : {&er, &fr}) {
        for (const auto& c : r->conditions) {
          ++conditions;
          if (!c.ok)
            violations.push_back(std::string(r == &er ? "exists" : "forall") +
                                 " " + polarity_name(pol) + atom + " " +
                                 c.name);
        }
      }
    }
  }
  ordered_json j;
  j["input"] = f.text();
  j["conditions"] = conditions;
  j["ok"] = violations.empty();
  if (!violations.empty()) j["violations"] = violations;
  return j.dump();
}

int cmd_corpus(const CorpusArgs& a, const Settings& st) {
  std::ifstream in(a.path);
  if (!in) {
    std::cerr << "cannot read corpus file: " << a.path << '\n';
    return kUsage;
  }
  std::vector<std::pair<std::size_t, std::string>> items;  // lineno, text
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    items.emplace_back(lineno, line);
  }

  const std::vector<std::string> alphabet = split_atoms(a.alphabet);
  std::vector<std::string> results(items.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> failures{0};

  auto work = [&] {
    CorpusWorker w;
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= items.size()) break;
      ordered_json j;
      std::string out;
      try {
        if (a.suite == "equivalence") {
          out = corpus_equivalence_item(items[i].second, w);
        } else if (a.suite == "admissibility") {
          out = corpus_admissibility_item(items[i].second, w);
        } else {
          out = corpus_ulip_item(items[i].second, w, a, alphabet);
        }
      } catch (const std::exception& e) {
        j["input"] = items[i].second;
        j["line"] = items[i].first;
        j["ok"] = false;
        j["error"] = e.what();
        out = j.dump();
      }
      // "ok":false appears exactly when the item failed.
      if (out.find("\"ok\":false") != std::string::npos) ++failures;
      results[i] = std::move(out);
    }
  };

  unsigned workers = a.workers ? a.workers : st.workers;
  if (workers <= 1 || items.size() <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  // Items are merged by index, so output order matches the file.
  for (std::size_t i = 0; i < results.size(); ++i) {
    ordered_json j = ordered_json::parse(results[i]);
    ordered_json out;
    out["item"] = i;
    for (auto& [k, v] : j.items()) out[k] = v;
    std::cout << out.dump() << '\n';
  }
  std::cerr << "corpus: " << items.size() << " items, " << failures.load()
            << " failures\n";
  return failures.load() == 0 ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision procedure and uniform interpolant synthesizer for "
               "intuitionistic monotone modal logic"};
  app.set_version_flag("--version", "ulim 0.1.0");
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "key=value file: budget, cache-entries, workers");

  ProveArgs prove_args;
  CLI::App* prove = app.add_subcommand("prove", "decide a sequent");
  prove->add_option("sequent", prove_args.sequent, "e.g. \"p, p -> q => q\"")
      ->required();
  prove->add_option("--calculus", prove_args.calculus,
                    "g4 (terminating, default) or g3 (oracle)")
      ->check(CLI::IsMember({"g4", "g3"}));
  prove->add_option("--emit", prove_args.emit, "text, json, or latex")
      ->check(CLI::IsMember({"text", "json", "latex"}));
  prove->add_flag("--explain", prove_args.explain,
                  "include a derivation (g4 only)");

  InterpolateArgs interp_args;
  CLI::App* interp =
      app.add_subcommand("interpolate", "apply one propositional quantifier");
  interp->add_option("kind", interp_args.kind,
                     "exists (premise side) or forall (succedent side)")
      ->required()
      ->check(CLI::IsMember({"exists", "forall"}));
  interp
      ->add_option("target", interp_args.target,
                   "bag of formulas for exists, sequent or formula for forall")
      ->required();
  interp->add_option("--atom", interp_args.atom, "atom to quantify away")
      ->required();
  interp->add_option("--polarity", interp_args.polarity, "+ (default) or -")
      ->check(CLI::IsMember({"+", "-"}));
  interp->add_flag("--simplify", interp_args.do_simplify,
                   "also emit an equivalence-preserving simplification");
  interp->add_option("--verify-bound", interp_args.verify_bound,
                     "check the quantifier conditions with contexts up to "
                     "this weight")
      ->check(CLI::NonNegativeNumber);
  interp->add_option("--alphabet", interp_args.alphabet,
                     "comma-separated atoms for verification contexts");
  interp->add_option("--emit", interp_args.emit, "json (default) or text")
      ->check(CLI::IsMember({"text", "json"}));

  UipArgs uip_args;
  CLI::App* uip =
      app.add_subcommand("uip", "uniform interpolant of a formula");
  uip->add_option("quantifier", uip_args.quantifier, "exists or forall")
      ->required()
      ->check(CLI::IsMember({"exists", "forall"}));
  uip->add_option("atom", uip_args.atom, "atom to quantify away")->required();
  uip->add_option("formula", uip_args.formula)->required();
  uip->add_flag("--simplify", uip_args.do_simplify);
  uip->add_option("--emit", uip_args.emit, "text (default) or json")
      ->check(CLI::IsMember({"text", "json"}));

  LyndonArgs lyndon_args;
  CLI::App* lyndon = app.add_subcommand(
      "lyndon", "polarity-respecting interpolant of a provable implication");
  lyndon->add_option("premise", lyndon_args.phi)->required();
  lyndon->add_option("conclusion", lyndon_args.psi)->required();
  lyndon->add_flag("--simplify", lyndon_args.do_simplify);
  lyndon->add_option("--emit", lyndon_args.emit, "text (default) or json")
      ->check(CLI::IsMember({"text", "json"}));

  VerifyArgs verify_args;
  CLI::App* verify =
      app.add_subcommand("verify", "run one of the property suites");
  verify
      ->add_option("--suite", verify_args.suite,
                   "equivalence, ulip, or admissibility")
      ->required()
      ->check(CLI::IsMember({"equivalence", "ulip", "admissibility"}));
  verify->add_option("--weight-bound", verify_args.weight_bound,
                     "formula weight bound (0 = suite default)");
  verify->add_option("--context-weight", verify_args.context_weight,
                     "context weight for the ulip suite");
  verify->add_option("--atoms", verify_args.atoms, "comma-separated alphabet");
  verify->add_option("--samples", verify_args.samples,
                     "instances per sampled property");
  verify->add_option("--seed", verify_args.seed, "sampler seed");
  verify->add_flag("--progress", verify_args.progress,
                   "coarse progress on stderr");

  CLI::App* selftest =
      app.add_subcommand("selftest", "quick end-to-end smoke check");

  CorpusArgs corpus_args;
  CLI::App* corpus = app.add_subcommand(
      "corpus", "run a suite over a file of inputs, one JSON line per item");
  corpus->add_option("path", corpus_args.path, "one sequent or formula per "
                     "line; blank lines and # comments are skipped")
      ->required();
  corpus->add_option("--suite", corpus_args.suite,
                     "equivalence (default), ulip, or admissibility")
      ->check(CLI::IsMember({"equivalence", "ulip", "admissibility"}));
  corpus->add_option("--context-weight", corpus_args.context_weight,
                     "context weight for the ulip suite");
  corpus->add_option("--alphabet", corpus_args.alphabet,
                     "comma-separated atoms for ulip contexts");
  corpus->add_option("--workers", corpus_args.workers,
                     "worker threads (overrides the config file)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    Settings settings;
    if (!config_path.empty()) settings = load_config(config_path);

    std::optional<PersistentMemo> prove_memo, interp_memo;
    if (auto dir = cache_dir_from_env()) {
      prove_memo.emplace(*dir / "prove.memo");
      interp_memo.emplace(*dir / "interpolate.memo");
    }
    int rc = kUsage;
    if (prove->parsed()) {
      rc = cmd_prove(prove_args, settings,
                     prove_memo ? &*prove_memo : nullptr);
    } else if (interp->parsed()) {
      rc = cmd_interpolate(interp_args, settings,
                           interp_memo ? &*interp_memo : nullptr);
    } else if (uip->parsed()) {
      rc = cmd_uip(uip_args, settings);
    } else if (lyndon->parsed()) {
      rc = cmd_lyndon(lyndon_args, settings);
    } else if (verify->parsed()) {
      rc = cmd_verify(verify_args);
    } else if (selftest->parsed()) {
      rc = cmd_selftest();
    } else if (corpus->parsed()) {
      rc = cmd_corpus(corpus_args, settings);
    }
    if (prove_memo) prove_memo->flush();
    if (interp_memo) interp_memo->flush();
    return rc;
  } catch (const ParseError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const std::runtime_error& e) {
    // BudgetError, InternalError, and anything unexpected.
    std::cerr << e.what() << '\n';
    return kInternal;
  }
}
