#ifndef ORDLAB_COVERING_HPP
#define ORDLAB_COVERING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ordlab/ordinal.hpp"

namespace ordlab::covering {

// t = alpha*n + s with s < alpha, for additive principal alpha.
struct LocalTarget {
  Ordinal alpha;
  std::uint64_t n;  // >= 1
  Ordinal s;        // < alpha
  Ordinal value() const { return add(nat_mul(alpha, n), s); }
};

// The trace of t relative to alpha: {t} when t < alpha, else {t, s}.
struct TSet {
  std::vector<Ordinal> elems;  // one or two entries, first is t itself
};

// Unique decomposition of t in [alpha, alpha*w).  Throws ScopeError outside
// that interval and std::invalid_argument for non-principal alpha.
LocalTarget decompose(const Ordinal& alpha, const Ordinal& t);

// Trace set for t < alpha*w.
TSet t_set(const Ordinal& alpha, const Ordinal& t);

// The canonical partial (<,+)-isomorphism between [0, alpha*w) and
// [0, c*w): identity below min(alpha, c), alpha*n + l -> c*n + l when l < c,
// undefined (nullopt) otherwise.  Throws ScopeError for x >= alpha*w.
std::optional<Ordinal> g0_apply(const Ordinal& alpha, const Ordinal& c, const Ordinal& x);

// Domain test: the trace of t below alpha is contained in c.  Agrees with
// g0_apply(alpha, c, t) being defined.
bool g0_in_domain(const Ordinal& alpha, const Ordinal& c, const Ordinal& t);

}  // namespace ordlab::covering

#endif  // ORDLAB_COVERING_HPP
