#include "ordlab/covering.hpp"

#include "ordlab/parser.hpp"

namespace ordlab::covering {

namespace {

void require_principal(const Ordinal& alpha, const char* who) {
  if (!is_additive_principal(alpha)) {
    throw std::invalid_argument(std::string(who) + ": alpha must be additive principal, got " +
                                print(alpha));
  }
}

}  // namespace

LocalTarget decompose(const Ordinal& alpha, const Ordinal& t) {
  require_principal(alpha, "decompose");
  if (t < alpha || t >= mul_omega(alpha)) {
    throw ScopeError("decompose: t = " + print(t) + " outside [alpha, alpha*w) for alpha = " +
                     print(alpha));
  }
  // alpha <= t < alpha*w forces t's leading principal to equal alpha.
  std::uint64_t n = t.terms()[0].coeff;
  Ordinal s = Ordinal::from_terms({t.terms().begin() + 1, t.terms().end()});
  return LocalTarget{alpha, n, s};
}

TSet t_set(const Ordinal& alpha, const Ordinal& t) {
  require_principal(alpha, "t_set");
  if (t < alpha) return TSet{{t}};
  if (t >= mul_omega(alpha)) {
    throw ScopeError("t_set: t = " + print(t) + " outside [0, alpha*w)");
  }
  return TSet{{t, decompose(alpha, t).s}};
}

std::optional<Ordinal> g0_apply(const Ordinal& alpha, const Ordinal& c, const Ordinal& x) {
  require_principal(alpha, "g0_apply");
  require_principal(c, "g0_apply");
  if (x >= mul_omega(alpha)) {
    throw ScopeError("g0_apply: x = " + print(x) + " outside [0, alpha*w)");
  }
  if (x < alpha) {
    if (x < c) return x;
    return std::nullopt;
  }
  LocalTarget lt = decompose(alpha, x);
  if (lt.s < c) return add(nat_mul(c, lt.n), lt.s);
  return std::nullopt;
}

bool g0_in_domain(const Ordinal& alpha, const Ordinal& c, const Ordinal& t) {
  TSet ts = t_set(alpha, t);
  for (const auto& e : ts.elems) {
    if (e < alpha && e >= c) return false;
  }
  return true;
}

}  // namespace ordlab::covering
