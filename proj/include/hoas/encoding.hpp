#pragma once

// Kripke function-space encoding of binder-only lambda terms.
//
// A term is a function from algebras to carriers. An algebra interprets a
// single lambda node in Mendler style: it receives the binder's body as a
// Kripke function (usable at any world Y reachable from its carrier X via a
// rename X -> Y), an embedding of algebras into an abstract candidate family,
// and itself as a candidate.
//
// C++ has no rank-2 types, so the "for every Y" quantifiers are realised by
// erasing world values behind std::any. The typed wrappers below
// (Rename, OpenTerm, TermBody, Candidate, Algebra) restore static carrier
// types at every point where client code touches a value. Term builders
// never see a concrete world: bound variables are opaque `Var` handles whose
// only uses are `place` and application of a rename. Candidates are opaque in
// the same way; an algebra can hand its candidate to an open term but cannot
// inspect or call it.

#include <any>
#include <concepts>
#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

namespace hoas {

inline constexpr std::size_t default_max_nesting = 10'000;

/// Thrown when interpretation descends through more nested binders than the
/// configured limit allows.
class NestingLimitExceeded : public std::runtime_error {
 public:
  explicit NestingLimitExceeded(std::size_t limit)
      : std::runtime_error("term nesting exceeds the limit of " +
                           std::to_string(limit) + " binders"),
        limit_(limit) {}

  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

class Var;
class Term;
class Embed;
template <class X, class Y> class Rename;
template <class X> class OpenTerm;
template <class X> class TermBody;
template <class X> class Candidate;
template <class X> class Algebra;

namespace detail {

using Value = std::any;

struct Interp;

using RenameFn = std::function<Value(const Value&)>;
using OpenFn = std::function<Value(const Interp&)>;
using BodyFn = std::function<OpenFn(const RenameFn&, const Value&)>;
using EmbedFn = std::function<Interp(const Interp&)>;
using LamFn =
    std::function<Value(const BodyFn&, const EmbedFn&, const Interp&)>;

// An algebra as seen by the erased machinery, together with the nesting
// guard of the interpretation in progress. Plays the role of both "the
// algebra given to a term" and "the algebra as a candidate".
struct Interp {
  std::shared_ptr<const LamFn> interpret_lam;
  std::size_t depth = 0;
  std::size_t limit = default_max_nesting;

  Interp enter() const {
    if (depth >= limit) throw NestingLimitExceeded(limit);
    return Interp{interpret_lam, depth + 1, limit};
  }

  Value invoke(const BodyFn& body, const EmbedFn& embed,
               const Interp& self) const {
    return (*interpret_lam)(body, embed, self);
  }
};

inline const EmbedFn& identity_embed_fn() {
  static const EmbedFn id = [](const Interp& alg) { return alg; };
  return id;
}

template <class X>
struct carrier {
  static Value wrap(X x) { return Value(std::move(x)); }
  static X unwrap(const Value& v) { return std::any_cast<const X&>(v); }
};

template <>
struct carrier<Var>;

// Single gateway between the typed wrappers and their erased payloads.
struct access {
  template <class T>
  static const auto& erased(const T& t) {
    return t.erased_;
  }
  template <class T, class E>
  static T make(E&& e) {
    return T(std::forward<E>(e));
  }
};

}  // namespace detail

/// A value living at a world the term builder cannot name. Obtained as the
/// fresh variable of a binder; usable only through `place` and renames.
class Var {
 private:
  explicit Var(detail::Value v) : value_(std::move(v)) {}
  detail::Value value_;

  friend struct detail::carrier<Var>;
};

template <>
struct detail::carrier<Var> {
  static Value wrap(Var v) { return std::move(v.value_); }
  static Var unwrap(const Value& v) { return Var(v); }
};

/// World coercion X -> Y.
template <class X, class Y>
class Rename {
 public:
  template <class F>
    requires std::is_invocable_r_v<Y, const F&, const X&> &&
             (!std::same_as<std::remove_cvref_t<F>, Rename>)
  explicit Rename(F f)
      : erased_([f = std::move(f)](const detail::Value& v) {
          return detail::carrier<Y>::wrap(f(detail::carrier<X>::unwrap(v)));
        }) {}

  Y operator()(const X& x) const {
    return detail::carrier<Y>::unwrap(erased_(detail::carrier<X>::wrap(x)));
  }

  static Rename identity()
    requires std::same_as<X, Y>
  {
    return Rename(detail::RenameFn([](const detail::Value& v) { return v; }));
  }

 private:
  explicit Rename(detail::RenameFn fn) : erased_(std::move(fn)) {}
  detail::RenameFn erased_;

  friend struct detail::access;
  template <class, class> friend class Rename;
  template <class A, class B, class C>
  friend Rename<A, C> compose(const Rename<B, C>&, const Rename<A, B>&);
};

/// compose(g, f)(x) == g(f(x))
template <class X, class Y, class Z>
Rename<X, Z> compose(const Rename<Y, Z>& g, const Rename<X, Y>& f) {
  return Rename<X, Z>(detail::RenameFn(
      [g = g.erased_, f = f.erased_](const detail::Value& v) {
        return g(f(v));
      }));
}

/// An algebra of carrier X, hidden behind the candidate abstraction.
template <class X>
class Candidate {
 private:
  explicit Candidate(detail::Interp interp) : erased_(std::move(interp)) {}
  detail::Interp erased_;

  friend struct detail::access;
};

/// An encoded term under interpretation at carrier X: a function from an
/// algebra (or candidate) of carrier X to X.
template <class X>
class OpenTerm {
 public:
  X interpret(const Candidate<X>& alg) const {
    return detail::carrier<X>::unwrap(erased_(detail::access::erased(alg)));
  }

  X interpret(const Algebra<X>& alg,
              std::size_t max_nesting = default_max_nesting) const;

 private:
  explicit OpenTerm(detail::OpenFn fn) : erased_(std::move(fn)) {}
  detail::OpenFn erased_;

  friend struct detail::access;
};

/// Kripke body of a binder rooted at world X: for every world Y, a rename
/// X -> Y and a fresh variable at Y yield an open term at Y.
///
/// Bodies are written against the abstract world: the callable receives a
/// `Rename<X, Var>` and the fresh `Var`, and returns an `OpenTerm<Var>`.
template <class X>
class TermBody {
 public:
  template <class F>
    requires std::is_invocable_r_v<OpenTerm<Var>, const F&,
                                   const Rename<X, Var>&, const Var&>
  explicit TermBody(F f)
      : erased_([f = std::move(f)](const detail::RenameFn& mx,
                                   const detail::Value& y) {
          return detail::access::erased(
              f(detail::access::make<Rename<X, Var>>(mx),
                detail::carrier<Var>::unwrap(y)));
        }) {}

  /// Moves the body to world Y.
  template <class Y>
  OpenTerm<Y> run(const Rename<X, Y>& mx, Y fresh) const {
    return detail::access::make<OpenTerm<Y>>(erased_(
        detail::access::erased(mx), detail::carrier<Y>::wrap(std::move(fresh))));
  }

  /// Re-roots the body along h : X -> W, so that run(mx, y) on the result
  /// equals run(compose(mx, h), y) on this body.
  template <class W>
  TermBody<W> along(const Rename<X, W>& h) const {
    return detail::access::make<TermBody<W>>(detail::BodyFn(
        [f = erased_, h = detail::access::erased(h)](
            const detail::RenameFn& mx, const detail::Value& y) {
          return f(detail::RenameFn([mx, h](const detail::Value& a) {
                     return mx(h(a));
                   }),
                   y);
        }));
  }

 private:
  explicit TermBody(detail::BodyFn fn) : erased_(std::move(fn)) {}
  detail::BodyFn erased_;

  friend struct detail::access;
};

/// The algebra-to-candidate embedding handed to every algebra invocation.
class Embed {
 public:
  template <class Z>
  Candidate<Z> operator()(const Algebra<Z>& alg) const;

 private:
  Embed(detail::EmbedFn fn, std::size_t depth, std::size_t limit)
      : erased_(std::move(fn)), depth_(depth), limit_(limit) {}

  detail::EmbedFn erased_;
  std::size_t depth_;
  std::size_t limit_;

  friend struct detail::access;
  template <class> friend class Algebra;
  friend Embed identity_embed();
};

/// Embedding used when the candidate family is Algebra itself.
inline Embed identity_embed() {
  return Embed(detail::identity_embed_fn(), 0, default_max_nesting);
}

/// Mendler-style lambda-node interpreter with carrier X.
template <class X>
class Algebra {
 public:
  template <class F>
    requires std::is_invocable_r_v<X, const F&, const TermBody<X>&,
                                   const Embed&, const Candidate<X>&>
  explicit Algebra(F f)
      : erased_(std::make_shared<const detail::LamFn>(
            [f = std::move(f)](const detail::BodyFn& body,
                               const detail::EmbedFn& embed,
                               const detail::Interp& self) {
              return detail::carrier<X>::wrap(
                  f(detail::access::make<TermBody<X>>(body),
                    Embed(embed, self.depth, self.limit),
                    detail::access::make<Candidate<X>>(self)));
            })) {}

  X interpret_lam(const TermBody<X>& body, const Embed& embed,
                  const Candidate<X>& self) const {
    return detail::carrier<X>::unwrap((*erased_)(
        detail::access::erased(body), detail::access::erased(embed),
        detail::access::erased(self)));
  }

 private:
  explicit Algebra(std::shared_ptr<const detail::LamFn> fn)
      : erased_(std::move(fn)) {}
  std::shared_ptr<const detail::LamFn> erased_;

  friend struct detail::access;
};

template <class Z>
Candidate<Z> Embed::operator()(const Algebra<Z>& alg) const {
  return detail::access::make<Candidate<Z>>(
      erased_(detail::Interp{detail::access::erased(alg), depth_, limit_}));
}

template <class X>
X OpenTerm<X>::interpret(const Algebra<X>& alg,
                         std::size_t max_nesting) const {
  return detail::carrier<X>::unwrap(
      erased_(detail::Interp{detail::access::erased(alg), 0, max_nesting}));
}

/// Closed term: for every carrier X, Algebra<X> -> X.
class Term {
 public:
  template <class X>
  X run(const Algebra<X>& alg,
        std::size_t max_nesting = default_max_nesting) const {
    return detail::carrier<X>::unwrap(
        (*erased_)(detail::Interp{detail::access::erased(alg), 0, max_nesting}));
  }

 private:
  explicit Term(detail::OpenFn fn)
      : erased_(std::make_shared<const detail::OpenFn>(std::move(fn))) {}
  std::shared_ptr<const detail::OpenFn> erased_;

  friend struct detail::access;
};

template <class X>
X fold(const Algebra<X>& alg, const Term& t,
       std::size_t max_nesting = default_max_nesting) {
  return t.run(alg, max_nesting);
}

/// Candidate of an algebra under the identity embedding; what `lam` passes
/// as the algebra's self argument.
template <class X>
Candidate<X> as_candidate(const Algebra<X>& alg) {
  return identity_embed()(alg);
}

template <class X>
OpenTerm<X> place(X x) {
  return detail::access::make<OpenTerm<X>>(detail::OpenFn(
      [v = detail::carrier<X>::wrap(std::move(x))](const detail::Interp&) {
        return v;
      }));
}

/// Interprets a binder with the algebra it is given: candidate family is
/// Algebra itself, embed is the identity and the algebra is its own
/// candidate.
template <class X>
OpenTerm<X> lam(const TermBody<X>& body) {
  return detail::access::make<OpenTerm<X>>(detail::OpenFn(
      [f = detail::access::erased(body)](const detail::Interp& alg) {
        detail::Interp inner = alg.enter();
        return inner.invoke(f, detail::identity_embed_fn(), inner);
      }));
}

template <class X = Var, class F>
  requires std::is_invocable_r_v<OpenTerm<Var>, const F&,
                                 const Rename<X, Var>&, const Var&>
OpenTerm<X> lam(F f) {
  return lam(TermBody<X>(std::move(f)));
}

/// Packages a world-polymorphic outermost binder body as a closed term.
inline Term closed(const TermBody<Var>& builder) {
  return detail::access::make<Term>(detail::access::erased(lam(builder)));
}

template <class F>
  requires std::is_invocable_r_v<OpenTerm<Var>, const F&,
                                 const Rename<Var, Var>&, const Var&>
Term closed(F builder) {
  return closed(TermBody<Var>(std::move(builder)));
}

/// The weakly initial algebra. Its interpretation of a binder is a term that,
/// when folded with some algebra `alg`, re-interprets the body with `alg`
/// itself; variables of world Term met by the body are folded with `alg`
/// before being moved on. The candidate argument is never used.
inline Algebra<Term> lam_alg() {
  using namespace detail;
  return access::make<Algebra<Term>>(std::make_shared<const LamFn>(
      [](const BodyFn& f, const EmbedFn& embed, const Interp& /*talg*/) {
        return Value(access::make<Term>(OpenFn([f, embed](const Interp& outer) {
          Interp alg = outer.enter();
          BodyFn switched = [f, alg](const RenameFn& mx, const Value& y) {
            return f(RenameFn([mx, alg](const Value& t) {
                       return mx((*access::erased(
                           std::any_cast<const Term&>(t)))(alg));
                     }),
                     y);
          };
          return alg.invoke(switched, embed, embed(alg));
        })));
      }));
}

}  // namespace hoas
