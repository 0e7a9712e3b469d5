// Acceptance gate: one pass/fail line per criterion, exit 0 only when every
// selected criterion passes.  Domains, expected instance counts and the
// reporting time targets are pinned here; times are reported against their
// targets but do not gate, machine speed is not under test.
//
//   1  box monotonicity and congruence on sampled formulas
//   2  exhaustive prover/oracle agreement on two-atom sequents
//   3  sampled admissibility: weakening, contraction, inversion, cut
//   4  quantifier conditions for every universe formula, atom, polarity
//   5  interpolants for the curated implication list
//   6  the multiset-descent assertion never fired in this process
//   7  verified simplification of every interpolant criterion 4 produced
//
// Usage: ulim_acceptance [--criterion N|all]...   (default: all)

#include <cstdint>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "ulim/harness.hpp"
#include "ulim/prover.hpp"

using namespace ulim;

namespace {

constexpr std::uint64_t kMonoSamples = 50;  // per property; two properties
constexpr std::uint32_t kMonoWeight = 6;
constexpr std::uint64_t kMonoChecked = 100;
constexpr double kMonoTarget = 60.0;

constexpr std::uint32_t kEquivWeight = 5;
constexpr std::uint32_t kEquivBagLimit = 2;
constexpr std::uint64_t kEquivChecked = 45'058'048;
constexpr double kEquivTarget = 300.0;

constexpr std::uint64_t kAdmisSamples = 500;  // per property; four properties
constexpr std::uint64_t kAdmisChecked = 2'000;
constexpr double kAdmisTarget = 120.0;

constexpr std::uint32_t kQuantWeight = 6;
constexpr std::uint32_t kQuantContext = 4;
constexpr std::uint64_t kQuantChecked = 47'520;  // 1980 formulas x 8 x 3
constexpr double kQuantTarget = 1'800.0;

constexpr std::uint64_t kLyndonChecked = 60;  // 20 implications x 3
constexpr double kLyndonTarget = 60.0;

void print_line(int criterion, bool pass, const std::string& detail) {
  std::printf("CRITERION %d: %s  %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
}

void print_examples(const SuiteResult& r) {
  for (const std::string& e : r.examples)
    std::fprintf(stderr, "  failing instance: %s\n", e.c_str());
}

std::string suite_detail(const SuiteResult& r, std::uint64_t expected,
                         double target) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s checked=%llu failures=%llu time=%.1fs",
                r.name.c_str(), static_cast<unsigned long long>(r.checked),
                static_cast<unsigned long long>(r.failures), r.seconds);
  std::string out = buf;
  if (expected && r.checked != expected)
    out += " expected=" + std::to_string(expected);
  if (target > 0) {
    std::snprintf(buf, sizeof buf, " (target %.0fs%s)", target,
                  r.seconds > target ? ", exceeded" : "");
    out += buf;
  }
  return out;
}

struct Gate {
  std::vector<Formula> raws;  // unique raw interpolants from criterion 4
  bool have_raws = false;

  SuiteResult quantifier_suite() {
    SuiteOptions o;
    o.weight_bound = kQuantWeight;
    o.context_weight = kQuantContext;
    o.progress = true;
    std::set<Formula> seen;
    SuiteResult r = run_quantifier_suite(
        o, [&seen](Formula f) { seen.insert(f); });
    raws.assign(seen.begin(), seen.end());
    have_raws = true;
    return r;
  }

  bool run(int criterion) {
    switch (criterion) {
      case 1: {
        SuiteOptions o;
        o.samples = kMonoSamples;
        o.weight_bound = kMonoWeight;
        SuiteResult r = run_monotonicity_suite(o);
        bool pass = r.ok() && r.checked == kMonoChecked;
        print_line(1, pass, suite_detail(r, kMonoChecked, kMonoTarget));
        print_examples(r);
        return pass;
      }
      case 2: {
        SuiteOptions o;
        o.weight_bound = kEquivWeight;
        o.bag_limit = kEquivBagLimit;
        o.progress = true;
        SuiteResult r = run_equivalence_suite(o);
        bool pass = r.ok() && r.checked == kEquivChecked;
        print_line(2, pass, suite_detail(r, kEquivChecked, kEquivTarget));
        print_examples(r);
        return pass;
      }
      case 3: {
        SuiteOptions o;
        o.samples = kAdmisSamples;
        SuiteResult r = run_admissibility_suite(o);
        bool pass = r.ok() && r.checked == kAdmisChecked;
        print_line(3, pass, suite_detail(r, kAdmisChecked, kAdmisTarget));
        print_examples(r);
        return pass;
      }
      case 4: {
        SuiteResult r = quantifier_suite();
        bool pass = r.ok() && r.checked == kQuantChecked;
        print_line(4, pass, suite_detail(r, kQuantChecked, kQuantTarget));
        print_examples(r);
        return pass;
      }
      case 5: {
        SuiteResult r = run_interpolant_suite(SuiteOptions{});
        bool pass = r.ok() && r.checked == kLyndonChecked &&
                    curated_implications().size() == 20;
        print_line(5, pass, suite_detail(r, kLyndonChecked, kLyndonTarget));
        print_examples(r);
        return pass;
      }
      case 6: {
        if (diag::descent_checks() == 0) {
          // Nothing ran in this process yet; generate some traffic so the
          // assertion is known to be armed.
          SuiteOptions o;
          o.samples = 50;
          run_admissibility_suite(o);
        }
        const auto checks = diag::descent_checks();
        const auto violations = diag::descent_violations();
        bool pass = checks > 0 && violations == 0;
        char buf[120];
        std::snprintf(buf, sizeof buf, "descent checks=%llu violations=%llu",
                      static_cast<unsigned long long>(checks),
                      static_cast<unsigned long long>(violations));
        print_line(6, pass, buf);
        return pass;
      }
      case 7: {
        if (!have_raws) quantifier_suite();  // criterion 4 did not run here
        SuiteOptions o;
        o.progress = true;
        SuiteResult r = run_simplify_suite(raws, o);
        bool pass = r.ok();
        print_line(7, pass, suite_detail(r, 0, 0.0));
        print_examples(r);
        return pass;
      }
    }
    return false;
  }
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> order;
  auto add = [&order](int n) {
    for (int c : order)
      if (c == n) return;
    order.push_back(n);
  };
  auto add_spec = [&](const std::string& v) -> bool {
    if (v == "all") {
      for (int n : {1, 2, 3, 4, 5, 7, 6}) add(n);  // 7 reuses 4, 6 observes all
      return true;
    }
    if (v.size() == 1 && v[0] >= '1' && v[0] <= '7') {
      add(v[0] - '0');
      return true;
    }
    return false;
  };

  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    std::string value;
    if (arg.rfind("--criterion=", 0) == 0) {
      value = arg.substr(12);
    } else if (arg == "--criterion" && i + 1 < argc) {
      value = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N|all]...\n", argv[0]);
      return 2;
    }
    if (!add_spec(value)) {
      std::fprintf(stderr, "unknown criterion '%s' (want 1-7 or all)\n",
                   value.c_str());
      return 2;
    }
  }
  if (order.empty()) add_spec("all");

  Gate gate;
  int passed = 0;
  for (int n : order)
    if (gate.run(n)) ++passed;
  std::printf("ACCEPTANCE: %s (%d of %zu)\n",
              passed == static_cast<int>(order.size()) ? "PASS" : "FAIL",
              passed, order.size());
  return passed == static_cast<int>(order.size()) ? 0 : 1;
}
