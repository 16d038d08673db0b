#ifndef ORDLAB_REACH_HPP
#define ORDLAB_REACH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordlab/covering.hpp"
#include "ordlab/ordinal.hpp"

namespace ordlab::reach {

// Symbolic class of ordinals
//   C(level, div_exp, lower_bound)
//     = { g > lower_bound : g = phi(level, m), m > 0, nu(m) >= div_exp },
// with two refinements:
//   - allow_zero_index admits m = 0 as well (only meaningful for level >= 1
//     and div_exp = 0); the classes of the cofinality propositions at offset
//     zero need it.
//   - level = w denotes { g > lower_bound : g in Im phi_k for every finite k },
//     which is the range of phi(w, .).
// Membership is decidable from phi_inverse and nu alone.
struct ClassDescriptor {
  Ordinal level;
  Ordinal div_exp;
  Ordinal lower_bound;
  bool allow_zero_index = false;
};

struct TraceStep {
  std::string rule;
  std::string detail;
};

struct ReachAnswer {
  bool verdict = false;
  std::vector<TraceStep> trace;
};

// Decides beta <=1 beta*n + s + 1 for additive principal beta and s < beta,
// via membership in C(n-1, s+1, s).  The trace records the recursion
// unfolding that justifies the verdict; replay_trace re-checks it.
ReachAnswer d_predicate(const Ordinal& beta, std::uint64_t n, const Ordinal& s);

// Decides alpha <=1 beta for beta in [alpha, alpha*w].  Successor targets
// reduce to d_predicate; limit targets use the continuity-collapsed
// conditions; beta = alpha*w asks for every finite Veblen level.
// Throws ScopeError for beta outside the interval.
ReachAnswer le1_interval(const Ordinal& alpha, const Ordinal& beta);

struct MLocal {
  Ordinal reach;    // largest beta in [alpha, alpha*w] with alpha <=1 beta
  bool at_cap;      // reach == alpha*w; the true maximum may lie beyond
};
MLocal m_local(const Ordinal& alpha);

// Closed form for the solution class of beta <=1 g(0,alpha,beta)(t) + 1:
// C(n-1, s+1, s) for t = alpha*n + s.  Membership is additionally capped at
// beta <= alpha by callers.
ClassDescriptor descriptor_for(const Ordinal& alpha, const Ordinal& t);

// The class { beta principal : trace(t) below alpha is contained in beta and
// beta <=1 g(0,alpha,beta)(t) } from the cofinality propositions:
// C(n-1, s, s), with zero indices admitted when s = 0 and n >= 2.
ClassDescriptor prop_class_for(const Ordinal& alpha, const Ordinal& t);

bool member(const ClassDescriptor& desc, const Ordinal& gamma);

// Least member strictly above xi.
Ordinal next_above(const ClassDescriptor& desc, const Ordinal& xi);

struct SupBelow {
  enum class Kind { Empty, Sup, CofinalInBeta };
  Kind kind = Kind::Empty;
  std::optional<Ordinal> sup;  // set for Kind::Sup; the class is closed, so
                               // this is also the largest member below beta
};
SupBelow sup_below(const ClassDescriptor& desc, const Ordinal& beta);

// One unfolding of the thinning recursion with recursive occurrences
// replaced by descriptors of smaller parameters.  Used by the test harness
// to validate descriptor_for against the recursion itself.
struct UnfoldExpr {
  enum class Kind {
    BaseLimP,      // t = alpha: limits of principals, capped at alpha
    LimOfPrev,     // t successor: Lim of the class for t-1
    LimDiagonal,   // t limit: Lim of the collapsed intersection class
  };
  Kind kind;
  Ordinal alpha;
  Ordinal t;
  std::uint64_t n = 1;
  Ordinal s;
  std::optional<ClassDescriptor> prev;  // LimOfPrev
};
UnfoldExpr unfold_once(const Ordinal& alpha, const Ordinal& t);
bool member_via_unfold(const UnfoldExpr& expr, const Ordinal& gamma);

// Strict <1 fact between arbitrary ordinals, when decidable:
//   false unless a is additive principal and a < b;
//   engine verdict for b <= a*w;
//   false for b > a*w when the reach is known not to hit the cap;
//   nullopt (undecidable here) when a reaches its cap and b lies beyond.
std::optional<bool> decide_lt1(const Ordinal& a, const Ordinal& b);

// Witness for alpha <0 t: a principal delta < alpha containing every trace
// of B below alpha, together with the g(0,alpha,delta) images of B, verified
// to be a (<,+,<1)-isomorphism fixing B below alpha.
struct Lt0Witness {
  Ordinal delta;
  std::vector<std::pair<Ordinal, Ordinal>> map;  // element -> image
};
std::optional<Lt0Witness> lt0_check(const Ordinal& alpha, const Ordinal& t,
                                    const std::vector<Ordinal>& B);

// Re-checks every step of a recorded trace; true when the replay reaches the
// same verdict.
bool replay_trace(const ReachAnswer& answer);

// Cache statistics for the memoized d_predicate verdicts (testing aid).
std::size_t memo_size();
void memo_clear();

}  // namespace ordlab::reach

#endif  // ORDLAB_REACH_HPP
