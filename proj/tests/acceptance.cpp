// Acceptance suite: one line per criterion, nonzero exit if any fails.
//
// usage: acceptance [path-to-hoas-cli]
// Without the CLI path, criterion 6 runs the command front end in-process
// only.

#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdint>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "hoas/cli.hpp"
#include "hoas/hoas.hpp"

using namespace hoas;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<Outcome()> body;
};

Term test_term() {
  return closed([](const Rename<Var, Var>&, const Var& x) {
    return lam([x](const Rename<Var, Var>& mx, const Var&) {
      return place(mx(x));
    });
  });
}

Outcome golden_outputs() {
  Outcome o;
  const Term t = test_term();
  o.expect(fold(size_alg(), t) == 3, "size != 3");
  o.expect(print_term(t) == "\\ x1. \\ x2. x1", "print mismatch");
  o.expect(to_string(fold(to_debruijn_alg(), t)(Depth{1})) == "Lam (Lam (Var 1))",
           "de Bruijn mismatch");
  return o;
}

Outcome exhaustive_roundtrip() {
  Outcome o;
  const auto terms = enumerate_terms(32);
  o.expect(terms.size() == 528, "enumeration count != 528");
  for (const auto& d : terms) {
    o.expect(to_debruijn(db_to_hoas(d)) == d, "round-trip failed on " + to_string(d));
  }
  return o;
}

Outcome differential_oracles() {
  Outcome o;
  auto check = [&o](const DbTerm& d) {
    const Term t = db_to_hoas(d);
    o.expect(fold(size_alg(), t) == oracle_size(d), "size differs on " + to_string(d));
    o.expect(print_term(t) == oracle_print(d), "print differs on " + to_string(d));
  };
  for (const auto& d : enumerate_terms(32)) check(d);
  SplitMix64 rng(0xC0FFEE);
  for (int i = 0; i < 10'000; ++i) check(gen_term(rng, 64));
  return o;
}

Outcome law_suites() {
  Outcome o;
  const auto reports = run_law_suites(8, 1000, 0x5EED);
  o.expect(reports.size() == 12, "expected 12 suite reports");
  for (const auto& r : reports) {
    o.expect(r.checked == 54 + 1000, r.suite + ": wrong case count");
    o.expect(r.ok(), render(r));
  }
  return o;
}

Outcome algebra_switch() {
  Outcome o;
  auto touched = std::make_shared<std::atomic<bool>>(false);
  const Algebra<Term> poison([touched](const TermBody<Term>&, const Embed&,
                                       const Candidate<Term>&) {
    touched->store(true);
    return db_to_hoas(DbTerm::lam(DbTerm::var(0)));
  });
  const auto talg = as_candidate(poison);
  for (const auto& d : enumerate_terms(32)) {
    const Term t = lam_alg().interpret_lam(db_body<Term>(d), identity_embed(), talg);
    o.expect(fold(size_alg(), t) == oracle_size(d), "size differs");
    o.expect(print_term(t) == oracle_print(d), "print differs");
    o.expect(to_debruijn(t) == d, "de Bruijn differs");
  }
  o.expect(!touched->load(), "construction-time algebra was invoked");
  return o;
}

std::string run_process(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    status = -1;
    return out;
  }
  std::array<char, 256> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) out += buf.data();
  const int raw = pclose(pipe);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

Outcome cli_end_to_end(const std::string& binary) {
  Outcome o;
  const std::string k = "\\x.\\y.x";
  const struct {
    std::string command;
    std::string expected;
  } golden[] = {{"size", "3\n"},
                {"print", "\\ x1. \\ x2. x1\n"},
                {"to-db", "Lam (Lam (Var 1))\n"}};
  for (const auto& g : golden) {
    const auto r = cli::run({g.command}, k);
    o.expect(r.out == g.expected && r.exit_code == 0, "in-process " + g.command);
  }
  const auto unbound = cli::run({"size"}, "\\x.y");
  o.expect(unbound.exit_code == 1 && unbound.err == "error: unbound variable y\n",
           "in-process unbound variable");

  if (!binary.empty()) {
    for (const auto& g : golden) {
      int status = 0;
      const auto out = run_process(
          "printf '%s' '" + k + "' | '" + binary + "' " + g.command, status);
      o.expect(out == g.expected && status == 0, "process " + g.command);
    }
    int status = 0;
    run_process("printf '%s' '\\x.y' | '" + binary + "' size 2>/dev/null", status);
    o.expect(status == 1, "process unbound variable exit code");
  }
  return o;
}

Outcome checker_refutes_successor() {
  Outcome o;
  const std::function<std::int64_t(const std::int64_t&)> successor =
      [](const std::int64_t& n) { return n + 1; };
  const HomInstance<std::int64_t, std::int64_t, std::int64_t> inst{
      size_alg(), size_alg(), successor, BodySkeleton{0, BodySkeleton::SlotY{}},
      1, [](const std::int64_t& n) { return n; }};
  o.expect(!check_is_hom(inst), "successor accepted on skeleton Y");

  const auto cases = skeleton_cases(8, 1000, 0x5EED);
  const Report r = check_hom<std::int64_t, std::int64_t, std::int64_t, std::int64_t>(
      "successor", size_subject(), size_subject(), successor, cases);
  o.expect(!r.failures.empty(), "no witness found");
  if (!r.failures.empty()) {
    const Witness& w = r.failures.front();
    SplitMix64 env = env_stream(w.seed);
    const auto sides = hom_sides(HomInstance<std::int64_t, std::int64_t, std::int64_t>{
        size_alg(), size_alg(), successor, w.skeleton, size_subject().sample(env),
        [](const std::int64_t& n) { return n; }});
    o.expect(!sides.agree(), "witness does not reproduce");
    if (o.pass) o.detail = "witness skeleton " + to_string(w.skeleton) + " lhs=" + w.lhs +
               " rhs=" + w.rhs;
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string binary = argc > 1 ? argv[1] : "";
  const std::vector<Criterion> criteria{
      {1, "golden outputs for \\x.\\y.x (size, print, de Bruijn)", 1.0, golden_outputs},
      {2, "exhaustive round-trip over 528 closed terms of depth <= 32", 5.0,
       exhaustive_roundtrip},
      {3, "differential oracles over 528 + 10000 generated terms", 30.0,
       differential_oracles},
      {4, "id/compose/fold homomorphism suites, 54 + 1000 cases each", 60.0, law_suites},
      {5, "lam_alg never invokes the construction-time algebra", 5.0, algebra_switch},
      {6, "CLI golden commands and unbound-variable exit code", 30.0,
       [&binary] { return cli_end_to_end(binary); }},
      {7, "checker refutes successor on the size carrier", 30.0,
       checker_refutes_successor},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = with_large_stack(c.body);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= c.budget_seconds) {
      o.pass = false;
      o.detail = "over time budget of " + std::to_string(c.budget_seconds) + " s";
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] criterion %d: %s (%.3f s)%s%s\n", o.pass ? "PASS" : "FAIL", c.id,
                c.title.c_str(), secs, o.detail.empty() ? "" : " -- ",
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
