#pragma once

// Command-line front end. `run` is the whole program minus process I/O so
// tests can drive it in-process; tools/hoas_main.cpp only forwards argv,
// stdin and the exit code.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hoas/algebras.hpp"
#include "hoas/bridge.hpp"
#include "hoas/debruijn.hpp"
#include "hoas/encoding.hpp"
#include "hoas/laws.hpp"
#include "hoas/random.hpp"
#include "hoas/stack.hpp"

namespace hoas::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_input_error = 1,
  exit_law_failure = 2,
  exit_nesting_limit = 3,
};

struct Result {
  std::string out;
  std::string err;
  int exit_code = exit_ok;
};

namespace detail {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::size_t max_nesting = default_max_nesting;
  std::size_t max_depth = 0;
  std::size_t count = 1;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
};

inline std::string read_input(const Options& opt,
                              const std::function<std::string()>& stdin_text) {
  if (opt.input.empty() || opt.input == "-") return stdin_text();
  std::ifstream file(opt.input, std::ios::binary);
  if (!file) throw InputError("cannot open " + opt.input);
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

inline Term term_of(const std::string& text) {
  return db_to_hoas(named_to_db(parse_named(text)));
}

}  // namespace detail

/// Runs one invocation. `args` excludes the program name; `stdin_text` is
/// called at most once, only when a command reads its input from stdin.
inline Result run(const std::vector<std::string>& args,
                  const std::function<std::string()>& stdin_text) {
  using detail::Options;
  Result result;
  Options opt;

  CLI::App app{"Kripke function-space HOAS encoding of binder-only lambda terms",
               "hoas"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--max-nesting", opt.max_nesting,
                 "Binder nesting limit for interpretation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto with_input = [&opt](CLI::App* sub) {
    sub->add_option("input", opt.input,
                    "Input file; stdin when omitted, '-' or after '--'");
    return sub;
  };
  auto* parse = with_input(app.add_subcommand("parse", "Parse and show the AST"));
  auto* size = with_input(app.add_subcommand("size", "Size of a term"));
  auto* print = with_input(app.add_subcommand("print", "Canonical rendering"));
  auto* to_db = with_input(app.add_subcommand("to-db", "Convert to de Bruijn"));
  auto* from_db = with_input(
      app.add_subcommand("from-db", "Convert de Bruijn text to named syntax"));

  auto* roundtrip = app.add_subcommand(
      "roundtrip", "Exhaustive de Bruijn -> encoding -> de Bruijn check");
  opt.max_depth = 32;
  roundtrip->add_option("--max-depth", opt.max_depth, "Largest binder count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* gen = app.add_subcommand("gen", "Emit seeded random closed terms");
  gen->add_option("--seed", opt.seed, "Generator seed")->required();
  gen->add_option("--max-depth", opt.max_depth, "Largest binder count")
      ->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--count", opt.count, "Number of terms")
      ->capture_default_str();

  auto* laws = app.add_subcommand("check-laws", "Run the homomorphism law suites");
  laws->add_option("--max-depth", opt.max_depth,
                   "Enumerate skeletons up to this many inner binders")
      ->check(CLI::NonNegativeNumber);
  laws->add_option("--samples", opt.samples, "Generated skeletons per suite")
      ->capture_default_str();
  laws->add_option("--seed", opt.seed, "Seed for generated cases")
      ->capture_default_str();

  std::vector<const char*> argv{"hoas"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream out, err;
    app.exit(e, out, err);
    return {out.str(), err.str(), exit_ok};
  } catch (const CLI::ParseError& e) {
    result.err = "error: " + std::string(e.what()) + "\n";
    result.exit_code = exit_input_error;
    return result;
  }
  if (laws->parsed() && laws->count("--max-depth") == 0) opt.max_depth = 8;

  auto body = [&]() {
    if (parse->parsed()) {
      result.out = render_named_ast(
                       parse_named(detail::read_input(opt, stdin_text))) +
                   "\n";
    } else if (size->parsed()) {
      const Term t = detail::term_of(detail::read_input(opt, stdin_text));
      result.out = std::to_string(fold(size_alg(), t, opt.max_nesting)) + "\n";
    } else if (print->parsed()) {
      const Term t = detail::term_of(detail::read_input(opt, stdin_text));
      result.out = print_term(t, opt.max_nesting) + "\n";
    } else if (to_db->parsed()) {
      const Term t = detail::term_of(detail::read_input(opt, stdin_text));
      result.out = to_string(to_debruijn(t, opt.max_nesting)) + "\n";
    } else if (from_db->parsed()) {
      const DbTerm d = parse_db(detail::read_input(opt, stdin_text));
      result.out = render_named(db_to_named(d)) + "\n";
    } else if (roundtrip->parsed()) {
      std::size_t total = 0, good = 0;
      for (const DbTerm& d : enumerate_terms(opt.max_depth)) {
        ++total;
        if (to_debruijn(db_to_hoas(d), opt.max_nesting) == d) {
          ++good;
        } else {
          result.err += "error: round-trip mismatch on " + to_string(d) + "\n";
        }
      }
      result.out = "roundtrip: " + std::to_string(total) + " terms, " +
                   std::to_string(good) + " ok, " +
                   std::to_string(total - good) + " failed\n";
      if (good != total) result.exit_code = exit_law_failure;
    } else if (gen->parsed()) {
      SplitMix64 rng(opt.seed);
      for (std::size_t i = 0; i < opt.count; ++i) {
        result.out += render_named(db_to_named(gen_term(rng, opt.max_depth))) + "\n";
      }
    } else if (laws->parsed()) {
      bool ok = true;
      for (const auto& r : run_law_suites(opt.max_depth, opt.samples, opt.seed)) {
        result.out += render(r);
        ok = ok && r.ok();
      }
      if (!ok) {
        result.err = "error: law suite failures\n";
        result.exit_code = exit_law_failure;
      }
    }
  };

  try {
    with_large_stack(body);
  } catch (const NestingLimitExceeded& e) {
    result.out.clear();
    result.err += "error: " + std::string(e.what()) + "\n";
    result.exit_code = exit_nesting_limit;
  } catch (const std::exception& e) {
    // syntax errors, unbound variables, open de Bruijn input, unreadable files
    result.out.clear();
    result.err += "error: " + std::string(e.what()) + "\n";
    result.exit_code = exit_input_error;
  }
  return result;
}

inline Result run(const std::vector<std::string>& args,
                  const std::string& stdin_text) {
  return run(args, [&stdin_text] { return stdin_text; });
}

}  // namespace hoas::cli
