#pragma once

// Extensional checks of the homomorphism laws.
//
// A map h : X1 -> X2 is a homomorphism from alg1 to alg2 when, for every
// binder body f rooted at X1,
//
//   h(alg1.interpret_lam(f, embed, alg1))
//     == alg2.interpret_lam(f.along(h), embed, alg2)
//
// The laws (identity, composition, and fold being a homomorphism out of
// lam_alg) hold definitionally in a dependently typed setting. Here they are
// checked at observable carriers over a finite set of bodies, so a passing
// suite is evidence, not proof; a failing one comes with a reproducible
// witness. The candidate family is fixed to Algebra with the identity
// embedding, which is the only instantiation any operation here uses.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <iomanip>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "hoas/algebras.hpp"
#include "hoas/bridge.hpp"
#include "hoas/encoding.hpp"
#include "hoas/random.hpp"

namespace hoas {

/// Finite stand-in for a binder body: `binders` inner lambdas around one
/// leaf, which is the environment slot F (an outer variable moved into the
/// body's world), the slot Y (the body's own fresh variable), or a variable
/// bound by one of the inner lambdas.
struct BodySkeleton {
  struct SlotF {
    friend bool operator==(SlotF, SlotF) = default;
  };
  struct SlotY {
    friend bool operator==(SlotY, SlotY) = default;
  };
  struct Bound {
    std::size_t index = 0;  // de Bruijn, among the inner binders
    friend bool operator==(Bound, Bound) = default;
  };
  using Leaf = std::variant<SlotF, SlotY, Bound>;

  std::size_t binders = 0;
  Leaf leaf = SlotY{};

  friend bool operator==(const BodySkeleton&, const BodySkeleton&) = default;
};

inline bool well_formed(const BodySkeleton& s) {
  if (const auto* b = std::get_if<BodySkeleton::Bound>(&s.leaf)) {
    return b->index < s.binders;
  }
  return true;
}

/// `Lam (Lam (F))`, `Y`, `Lam (Var 0)`
inline std::string to_string(const BodySkeleton& s) {
  std::string out;
  for (std::size_t i = 0; i < s.binders; ++i) out += "Lam (";
  std::visit(
      [&out](const auto& leaf) {
        using L = std::decay_t<decltype(leaf)>;
        if constexpr (std::is_same_v<L, BodySkeleton::SlotF>) {
          out += "F";
        } else if constexpr (std::is_same_v<L, BodySkeleton::SlotY>) {
          out += "Y";
        } else {
          out += "Var " + std::to_string(leaf.index);
        }
      },
      s.leaf);
  out.append(s.binders, ')');
  return out;
}

/// Every skeleton with at most `max_depth` inner binders, ordered by binder
/// count, then F, Y, Var 0, Var 1, ...
inline std::vector<BodySkeleton> enumerate_skeletons(std::size_t max_depth) {
  std::vector<BodySkeleton> out;
  for (std::size_t j = 0; j <= max_depth; ++j) {
    out.push_back({j, BodySkeleton::SlotF{}});
    out.push_back({j, BodySkeleton::SlotY{}});
    for (std::size_t i = 0; i < j; ++i) {
      out.push_back({j, BodySkeleton::Bound{i}});
    }
  }
  return out;
}

/// Inner binder count uniform in [0, max_depth]; leaf uniform among the
/// binders + 2 choices.
inline BodySkeleton gen_skeleton(SplitMix64& rng, std::size_t max_depth) {
  const auto j = static_cast<std::size_t>(rng.below(max_depth + 1));
  const auto pick = static_cast<std::size_t>(rng.below(j + 2));
  if (pick == 0) return {j, BodySkeleton::SlotF{}};
  if (pick == 1) return {j, BodySkeleton::SlotY{}};
  return {j, BodySkeleton::Bound{pick - 2}};
}

/// The Kripke body f(mx, y) described by `s`, with slot F bound to
/// mx(env_value) and slot Y to y. Internal structure uses lam and place.
template <class X>
TermBody<X> body_of_skeleton(const BodySkeleton& s, X env_value) {
  if (!well_formed(s)) {
    throw std::invalid_argument("malformed body skeleton: " + to_string(s));
  }
  return TermBody<X>([s, env = std::move(env_value)](
                         const Rename<X, Var>& mx, const Var& y) {
    if (std::holds_alternative<BodySkeleton::SlotF>(s.leaf)) {
      return detail::chain_term(s.binders, 0, mx(env));
    }
    if (std::holds_alternative<BodySkeleton::SlotY>(s.leaf)) {
      return detail::chain_term(s.binders, 0, y);
    }
    const auto index = std::get<BodySkeleton::Bound>(s.leaf).index;
    return detail::chain_term(s.binders, s.binders - index, std::nullopt);
  });
}

template <class X1, class X2, class Obs>
struct HomInstance {
  Algebra<X1> alg1;
  Algebra<X2> alg2;
  std::function<X2(const X1&)> h;
  BodySkeleton skeleton;
  X1 env_value;
  std::function<Obs(const X2&)> observe;
};

template <class Obs>
struct HomSides {
  Obs lhs;
  Obs rhs;
  bool agree() const { return lhs == rhs; }
};

/// Both sides of the homomorphism equation for one instance.
template <class X1, class X2, class Obs>
HomSides<Obs> hom_sides(const HomInstance<X1, X2, Obs>& inst) {
  const TermBody<X1> f = body_of_skeleton(inst.skeleton, inst.env_value);
  const Embed embed = identity_embed();
  Obs lhs = inst.observe(
      inst.h(inst.alg1.interpret_lam(f, embed, as_candidate(inst.alg1))));
  Obs rhs = inst.observe(inst.alg2.interpret_lam(
      f.along(Rename<X1, X2>(inst.h)), embed, as_candidate(inst.alg2)));
  return {std::move(lhs), std::move(rhs)};
}

template <class X1, class X2, class Obs>
bool check_is_hom(const HomInstance<X1, X2, Obs>& inst) {
  return hom_sides(inst).agree();
}

/// An algebra together with what the law checker needs to use it: how to
/// observe a carrier value, how to draw an environment value, and how to
/// print an observation.
template <class X, class Obs>
struct Subject {
  std::string name;
  Algebra<X> alg;
  std::function<Obs(const X&)> observe;
  std::function<X(SplitMix64&)> sample;
  std::function<std::string(const Obs&)> show;
};

inline Subject<std::int64_t, std::int64_t> size_subject() {
  return {"size", size_alg(), [](const std::int64_t& n) { return n; },
          [](SplitMix64& r) { return static_cast<std::int64_t>(r.below(100)); },
          [](const std::int64_t& n) { return std::to_string(n); }};
}

/// Observed by applying to the name stream starting at x1. Environment
/// values behave like a variable bound outside the body.
inline Subject<Printer, std::string> print_subject() {
  return {"print", print_alg(),
          [](const Printer& p) { return p(NameStream(1)); },
          [](SplitMix64& r) -> Printer {
            std::string name = "z" + std::to_string(r.below(100));
            return [name](const NameStream&) { return name; };
          },
          [](const std::string& s) { return "\"" + s + "\""; }};
}

/// Observed at depth 1. Environment values behave like a variable bound at
/// depth 0, i.e. one binder outside the observed term.
inline Subject<DbBuilder, DbTerm> debruijn_subject() {
  return {"to_debruijn", to_debruijn_alg(),
          [](const DbBuilder& b) { return b(Depth{1}); },
          [](SplitMix64&) -> DbBuilder {
            return [](Depth n) {
              return DbTerm::var(static_cast<std::uint64_t>(n.value - 1));
            };
          },
          [](const DbTerm& d) { return to_string(d); }};
}

/// lam_alg, observed through to_debruijn. Environment values are random
/// closed terms of depth at most 8.
inline Subject<Term, DbTerm> term_subject() {
  return {"lam_alg", lam_alg(),
          [](const Term& t) { return to_debruijn(t); },
          [](SplitMix64& r) { return db_to_hoas(gen_term(r, 8)); },
          [](const DbTerm& d) { return to_string(d); }};
}

/// A skeleton plus the seed that determines its environment values (and,
/// for generated cases, the skeleton itself).
struct SkeletonCase {
  std::uint64_t seed = 0;
  BodySkeleton skeleton;
};

/// Environment values for a case are drawn from this stream.
inline SplitMix64 env_stream(std::uint64_t case_seed) {
  return SplitMix64(~case_seed);
}

/// Generated case for a given case seed; reproduces a reported witness.
inline SkeletonCase generated_case(std::uint64_t case_seed,
                                   std::size_t max_depth) {
  SplitMix64 r(case_seed);
  return {case_seed, gen_skeleton(r, max_depth)};
}

/// All skeletons up to `max_depth` followed by `samples` generated ones.
/// Case seeds come from one SplitMix64 stream started at `seed`.
inline std::vector<SkeletonCase> skeleton_cases(std::size_t max_depth,
                                                std::size_t samples,
                                                std::uint64_t seed) {
  SplitMix64 seeds(seed);
  std::vector<SkeletonCase> out;
  for (const auto& s : enumerate_skeletons(max_depth)) {
    out.push_back({seeds.next(), s});
  }
  for (std::size_t i = 0; i < samples; ++i) {
    out.push_back(generated_case(seeds.next(), max_depth));
  }
  return out;
}

struct Witness {
  std::uint64_t seed = 0;
  BodySkeleton skeleton;
  std::string lhs;
  std::string rhs;
};

struct Report {
  std::string suite;
  std::size_t checked = 0;
  std::size_t premise_failures = 0;
  std::vector<Witness> failures;

  bool ok() const { return failures.empty() && premise_failures == 0; }

  void merge(Report&& other) {
    checked += other.checked;
    premise_failures += other.premise_failures;
    failures.insert(failures.end(),
                    std::make_move_iterator(other.failures.begin()),
                    std::make_move_iterator(other.failures.end()));
  }
};

/// One summary line, then one indented line per witness.
inline std::string render(const Report& r) {
  std::ostringstream out;
  out << r.suite << ": " << (r.ok() ? "pass" : "FAIL") << ", " << r.checked
      << " checked, " << r.failures.size() << " failed";
  if (r.premise_failures > 0) {
    out << ", " << r.premise_failures << " premise failures";
  }
  out << '\n';
  for (const auto& w : r.failures) {
    out << "  witness seed=0x" << std::hex << std::setw(16)
        << std::setfill('0') << w.seed << std::dec
        << " skeleton=" << to_string(w.skeleton) << " lhs=" << w.lhs
        << " rhs=" << w.rhs << '\n';
  }
  return out.str();
}

namespace detail {

// Runs check(case, report) over all cases on up to hardware_concurrency
// threads. Each worker fills its own report over a contiguous range; reports
// are merged in range order so the result does not depend on scheduling.
template <class Check>
Report parallel_check(std::string suite, std::span<const SkeletonCase> cases,
                      const Check& check) {
  const std::size_t workers = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, cases.size() / 64));
  std::vector<Report> partial(workers);
  auto run_range = [&](std::size_t w) {
    const std::size_t begin = cases.size() * w / workers;
    const std::size_t end = cases.size() * (w + 1) / workers;
    for (std::size_t i = begin; i < end; ++i) check(cases[i], partial[w]);
  };
  if (workers == 1) {
    run_range(0);
  } else {
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          run_range(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    pool.clear();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  Report out;
  out.suite = std::move(suite);
  for (auto& p : partial) out.merge(std::move(p));
  return out;
}

template <class X1, class X2, class Obs>
bool record(const HomInstance<X1, X2, Obs>& inst, const SkeletonCase& c,
            const std::function<std::string(const Obs&)>& show, Report& r) {
  auto sides = hom_sides(inst);
  if (sides.agree()) return true;
  r.failures.push_back({c.seed, c.skeleton, show(sides.lhs), show(sides.rhs)});
  return false;
}

}  // namespace detail

/// Checks that h is a homomorphism from `from` to `to` on every case.
template <class X1, class O1, class X2, class O2>
Report check_hom(std::string suite, const Subject<X1, O1>& from,
                 const Subject<X2, O2>& to,
                 const std::function<X2(const X1&)>& h,
                 std::span<const SkeletonCase> cases) {
  return detail::parallel_check(
      std::move(suite), cases, [&](const SkeletonCase& c, Report& r) {
        SplitMix64 env = env_stream(c.seed);
        ++r.checked;
        detail::record(HomInstance<X1, X2, O2>{from.alg, to.alg, h, c.skeleton,
                                               from.sample(env), to.observe},
                       c, to.show, r);
      });
}

/// Identity is a homomorphism from an algebra to itself.
template <class X, class Obs>
Report check_id_hom(const Subject<X, Obs>& s,
                    std::span<const SkeletonCase> cases) {
  return check_hom<X, Obs, X, Obs>("id_hom[" + s.name + "]", s, s,
                                   [](const X& x) { return x; }, cases);
}

/// fold(alg) is a homomorphism from lam_alg to alg.
template <class X, class Obs>
Report check_fold_hom(const Subject<X, Obs>& s,
                      std::span<const SkeletonCase> cases) {
  const Algebra<X> alg = s.alg;
  return check_hom<Term, DbTerm, X, Obs>(
      "fold_hom[" + s.name + "]", term_subject(), s,
      [alg](const Term& t) { return fold(alg, t); }, cases);
}

/// Given homomorphisms h1 : s1 -> s2 and h2 : s2 -> s3, checks both premises
/// and that h2 . h1 is a homomorphism s1 -> s3. A premise that fails is
/// counted separately from failures of the composite.
template <class X1, class O1, class X2, class O2, class X3, class O3>
Report check_compose_hom(const Subject<X1, O1>& s1, const Subject<X2, O2>& s2,
                         const Subject<X3, O3>& s3,
                         const std::function<X2(const X1&)>& h1,
                         const std::function<X3(const X2&)>& h2,
                         std::span<const SkeletonCase> cases,
                         std::string suite = {}) {
  if (suite.empty()) {
    suite = "compose_hom[" + s1.name + ";" + s2.name + ";" + s3.name + "]";
  }
  const std::function<X3(const X1&)> composite =
      [h1, h2](const X1& x) { return h2(h1(x)); };
  return detail::parallel_check(
      std::move(suite), cases, [&](const SkeletonCase& c, Report& r) {
        SplitMix64 env = env_stream(c.seed);
        X1 env1 = s1.sample(env);
        X2 env2 = s2.sample(env);
        ++r.checked;
        Report scratch;
        if (!detail::record(HomInstance<X1, X2, O2>{s1.alg, s2.alg, h1,
                                                     c.skeleton, env1,
                                                     s2.observe},
                            c, s2.show, scratch) ||
            !detail::record(HomInstance<X2, X3, O3>{s2.alg, s3.alg, h2,
                                                     c.skeleton, env2,
                                                     s3.observe},
                            c, s3.show, scratch)) {
          ++r.premise_failures;
        }
        detail::record(HomInstance<X1, X3, O3>{s1.alg, s3.alg, composite,
                                               c.skeleton, env1, s3.observe},
                       c, s3.show, r);
      });
}

/// The full law suite for one observable algebra: identity, fold out of
/// lam_alg, and composition along lam_alg -> alg -> alg and
/// lam_alg -> lam_alg -> alg.
template <class X, class Obs>
std::vector<Report> law_suite(const Subject<X, Obs>& s,
                              std::span<const SkeletonCase> cases) {
  const Subject<Term, DbTerm> terms = term_subject();
  const Algebra<X> alg = s.alg;
  const Algebra<Term> initial = terms.alg;
  const std::function<X(const Term&)> fold_alg = [alg](const Term& t) {
    return fold(alg, t);
  };
  std::vector<Report> out;
  out.push_back(check_id_hom(s, cases));
  out.push_back(check_fold_hom(s, cases));
  out.push_back(check_compose_hom<Term, DbTerm, X, Obs, X, Obs>(
      terms, s, s, fold_alg, [](const X& x) { return x; }, cases));
  out.push_back(check_compose_hom<Term, DbTerm, Term, DbTerm, X, Obs>(
      terms, terms, s, [initial](const Term& t) { return fold(initial, t); },
      fold_alg, cases));
  return out;
}

/// Law suites for the size, print and de Bruijn algebras over all skeletons
/// up to `max_depth` plus `samples` generated ones.
inline std::vector<Report> run_law_suites(std::size_t max_depth,
                                          std::size_t samples,
                                          std::uint64_t seed) {
  const auto cases = skeleton_cases(max_depth, samples, seed);
  std::vector<Report> out;
  for (auto&& r : law_suite(size_subject(), cases)) out.push_back(std::move(r));
  for (auto&& r : law_suite(print_subject(), cases)) out.push_back(std::move(r));
  for (auto&& r : law_suite(debruijn_subject(), cases)) {
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace hoas
