#ifndef ORDLAB_ORDINAL_HPP
#define ORDLAB_ORDINAL_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ordlab {

// Raised when a query leaves the interval the engine is able to decide.
class ScopeError : public std::runtime_error {
 public:
  explicit ScopeError(const std::string& what) : std::runtime_error(what) {}
};

enum class Cmp { LT, EQ, GT };

// An ordinal below Gamma_0 in Cantor normal form over binary-Veblen
// principal terms.  Zero is the empty sum; otherwise a strictly decreasing
// sequence of principal terms with positive integer coefficients.
//
// Principal terms are phi(a, b) nodes with phi(0, x) = w^x and
// phi(1, x) = e(x) (the x-th epsilon number).  Construction keeps terms
// canonical: phi(a, b) where b is itself a single principal of level > a
// collapses to b, so equal ordinals always have identical shape.
class Ordinal {
 public:
  struct Principal;
  using PrincipalPtr = std::shared_ptr<const Principal>;

  struct Term {
    PrincipalPtr principal;  // never null
    std::uint64_t coeff;     // >= 1
  };

  Ordinal() = default;  // zero

  static Ordinal nat(std::uint64_t n);
  static Ordinal one() { return nat(1); }
  static Ordinal omega();
  // phi(level, index), normalized.
  static Ordinal phi(const Ordinal& level, const Ordinal& index);
  static Ordinal omega_pow(const Ordinal& x) { return phi(Ordinal(), x); }
  static Ordinal epsilon(const Ordinal& index) { return phi(nat(1), index); }
  // Internal: assumes the term list is already canonical.
  static Ordinal from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  // The i-th principal term as an ordinal value (coefficient 1).
  Ordinal principal_at(std::size_t i) const;

 private:
  std::vector<Term> terms_;
};

struct Ordinal::Principal {
  Ordinal level;
  Ordinal index;
};

Cmp compare(const Ordinal& x, const Ordinal& y);

inline bool operator==(const Ordinal& x, const Ordinal& y) { return compare(x, y) == Cmp::EQ; }
inline bool operator!=(const Ordinal& x, const Ordinal& y) { return compare(x, y) != Cmp::EQ; }
inline bool operator<(const Ordinal& x, const Ordinal& y) { return compare(x, y) == Cmp::LT; }
inline bool operator>(const Ordinal& x, const Ordinal& y) { return compare(x, y) == Cmp::GT; }
inline bool operator<=(const Ordinal& x, const Ordinal& y) { return compare(x, y) != Cmp::GT; }
inline bool operator>=(const Ordinal& x, const Ordinal& y) { return compare(x, y) != Cmp::LT; }

// CNF addition: trailing terms of x below y's head are absorbed.
Ordinal add(const Ordinal& x, const Ordinal& y);

// Left subtraction: the unique s with add(x, s) == y when x <= y,
// nullopt ("minus one") otherwise.
std::optional<Ordinal> left_sub(const Ordinal& x, const Ordinal& y);

// x added to itself n times (n >= 1); nat_mul(x, 0) is 0.
Ordinal nat_mul(const Ordinal& x, std::uint64_t n);

// x * omega: w^(e+1) for e the leading exponent of x; 0 for x = 0.
Ordinal mul_omega(const Ordinal& x);

enum class OrdKind { Zero, Successor, Limit };

struct Classified {
  OrdKind kind;
  std::optional<Ordinal> pred;  // set for successors
};

Classified classify(const Ordinal& x);
bool is_limit(const Ordinal& x);
bool is_successor(const Ordinal& x);
Ordinal successor(const Ordinal& x);

// Finite value if x < omega.
std::optional<std::uint64_t> as_nat(const Ordinal& x);

// (level, index) when x is a single principal term with coefficient 1.
std::optional<std::pair<Ordinal, Ordinal>> as_phi(const Ordinal& x);

// Additive principal ordinals here start at omega (1 is excluded), matching
// the convention min Class(0) = w used throughout the reach engine.
bool is_additive_principal(const Ordinal& x);

// x = w^g with g a limit, i.e. x is a limit of additive principals.
bool is_lim_P(const Ordinal& x);

// g with w^g == x, for x a principal term (including 1 -> 0).
Ordinal log_omega(const Ordinal& x);

// The unique m with phi(level, m) == x, if x lies in the range of
// phi(level, .): the stored index when levels match, x itself when x is a
// fixed point from a higher level, nullopt otherwise.
std::optional<Ordinal> phi_inverse(const Ordinal& level, const Ordinal& x);

// The largest m with phi(level, m) <= x, nullopt when phi(level, 0) > x.
std::optional<Ordinal> max_index_le(const Ordinal& level, const Ordinal& x);

// Least exponent of x's CNF (w-adic valuation): w^r divides x iff r <= nu(x).
// Requires x > 0.
Ordinal nu(const Ordinal& x);

// max(P /\ x) when principals below x are nonempty and not cofinal in x,
// nullopt otherwise (cofinal, or no principal below x at all).
// Requires x > 1 and x limit.
std::optional<Ordinal> max_P_below(const Ordinal& x);

// Least epsilon number strictly above x.
Ordinal next_epsilon(const Ordinal& x);

// k-th member of the canonical fundamental sequence of a limit x.
// Strictly increasing in k with supremum x; the convention is documented in
// the README (w[k] = k+1, w^(a+1)[k] = w^a*(k+1), w^l[k] = w^(l[k]), and
// phi towers iterate the next level down).
Ordinal fund_seq(const Ordinal& x, std::uint64_t k);

}  // namespace ordlab

#endif  // ORDLAB_ORDINAL_HPP
