#pragma once

// Conversions between the first-order representations and encoded terms,
// plus the seeded term generator used by differential tests.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "hoas/debruijn.hpp"
#include "hoas/encoding.hpp"
#include "hoas/random.hpp"

namespace hoas {

namespace detail {

// Open term `remaining` binders deep around one occurrence. `live` is the
// occurrence's variable, already moved to the current world, once its binder
// has been entered; before that the binder is `until_target` levels further
// in (1 = the next binder). Entering a binder moves the live variable along
// the binder's rename. Only the variable that is actually referenced is
// carried, so construction stays linear in the depth.
inline OpenTerm<Var> chain_term(std::size_t remaining, std::size_t until_target,
                                std::optional<Var> live) {
  if (remaining == 0) {
    if (!live) throw std::logic_error("chain occurrence never bound");
    return place(*live);
  }
  return lam([remaining, until_target, live](const Rename<Var, Var>& mx,
                                             const Var& y) {
    if (live) return chain_term(remaining - 1, 0, mx(*live));
    if (until_target == 1) return chain_term(remaining - 1, 0, y);
    return chain_term(remaining - 1, until_target - 1, std::nullopt);
  });
}

}  // namespace detail

/// Body of the outermost binder of a closed Lam term, rooted at any world X.
template <class X>
TermBody<X> db_body(const DbTerm& d) {
  if (!d.is_lam() || !db_validate(d, 0)) throw OpenTermError();
  const std::size_t inner = d.binders() - 1;
  // level of the occurrence's binder counted from the outermost, 1-based
  const std::size_t target = d.binders() - static_cast<std::size_t>(d.index());
  return TermBody<X>([inner, target](const Rename<X, Var>&, const Var& x) {
    if (target == 1) return detail::chain_term(inner, 0, x);
    return detail::chain_term(inner, target - 1, std::nullopt);
  });
}

/// Encoded term of a closed de Bruijn term; inverse of to_debruijn.
inline Term db_to_hoas(const DbTerm& d) { return closed(db_body<Var>(d)); }

/// Closed chain with depth uniform in [1, max_depth] and index uniform in
/// [0, depth).
inline DbTerm gen_term(SplitMix64& rng, std::size_t max_depth) {
  if (max_depth == 0) throw std::invalid_argument("max_depth must be >= 1");
  const std::uint64_t depth = 1 + rng.below(max_depth);
  const std::uint64_t index = rng.below(depth);
  return db_chain(static_cast<std::size_t>(depth), index);
}

inline DbTerm gen_term(std::uint64_t seed, std::size_t max_depth) {
  SplitMix64 rng(seed);
  return gen_term(rng, max_depth);
}

}  // namespace hoas
