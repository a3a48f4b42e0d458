#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "hoas/debruijn.hpp"
#include "hoas/encoding.hpp"

namespace hoas {

/// The infinite stream "x{n}", "x{n+1}", ... represented by its start.
class NameStream {
 public:
  explicit NameStream(std::uint64_t start = 1) : start_(start) {}

  std::string head() const { return "x" + std::to_string(start_); }
  NameStream tail() const { return NameStream(start_ + 1); }
  std::uint64_t start() const noexcept { return start_; }

  friend bool operator==(const NameStream&, const NameStream&) = default;

 private:
  std::uint64_t start_;
};

/// Current binder-nesting counter for de Bruijn conversion.
struct Depth {
  std::int64_t value = 1;
  friend bool operator==(const Depth&, const Depth&) = default;
};

using Printer = std::function<std::string(const NameStream&)>;
using DbBuilder = std::function<DbTerm(Depth)>;

/// One for the binder plus the size of the body, whose variable counts one.
inline Algebra<std::int64_t> size_alg() {
  return Algebra<std::int64_t>([](const TermBody<std::int64_t>& f,
                                  const Embed&,
                                  const Candidate<std::int64_t>& alg) {
    return 1 + f.run(Rename<std::int64_t, std::int64_t>::identity(),
                     std::int64_t{1})
                   .interpret(alg);
  });
}

/// Peels the head name for the binder and renders the body with the tail;
/// the bound variable ignores its stream and prints that name.
inline Algebra<Printer> print_alg() {
  return Algebra<Printer>([](const TermBody<Printer>& f, const Embed&,
                             const Candidate<Printer>& alg) -> Printer {
    return [f, alg](const NameStream& vars) {
      std::string x = vars.head();
      Printer bound = [x](const NameStream&) { return x; };
      Printer body =
          f.run(Rename<Printer, Printer>::identity(), bound).interpret(alg);
      return "\\ " + x + ". " + body(vars.tail());
    };
  });
}

inline std::string print_term(const Term& t,
                              std::size_t max_nesting = default_max_nesting) {
  return fold(print_alg(), t, max_nesting)(NameStream(1));
}

/// At depth v the body is interpreted at v' = v + 1; the bound variable maps
/// the depth n of its occurrence to Var(n - v').
inline Algebra<DbBuilder> to_debruijn_alg() {
  return Algebra<DbBuilder>([](const TermBody<DbBuilder>& f, const Embed&,
                               const Candidate<DbBuilder>& alg) -> DbBuilder {
    return [f, alg](Depth v) {
      const Depth inner{v.value + 1};
      DbBuilder bound = [inner](Depth n) {
        if (n.value < inner.value) {
          throw std::logic_error("variable used outside its binder");
        }
        return DbTerm::var(static_cast<std::uint64_t>(n.value - inner.value));
      };
      DbBuilder body =
          f.run(Rename<DbBuilder, DbBuilder>::identity(), bound).interpret(alg);
      return DbTerm::lam(body(inner));
    };
  });
}

inline DbTerm to_debruijn(const Term& t,
                          std::size_t max_nesting = default_max_nesting) {
  return fold(to_debruijn_alg(), t, max_nesting)(Depth{1});
}

}  // namespace hoas
