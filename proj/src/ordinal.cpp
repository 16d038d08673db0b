#include "ordlab/ordinal.hpp"

#include <algorithm>
#include <cassert>

namespace ordlab {

namespace {

Ordinal::PrincipalPtr make_principal(const Ordinal& level, const Ordinal& index) {
  auto p = std::make_shared<Ordinal::Principal>();
  p->level = level;
  p->index = index;
  return p;
}

const Ordinal::PrincipalPtr& principal_one() {
  static const Ordinal::PrincipalPtr p = make_principal(Ordinal(), Ordinal());
  return p;
}

const Ordinal::PrincipalPtr& principal_omega() {
  static const Ordinal::PrincipalPtr p = make_principal(Ordinal(), Ordinal::nat(1));
  return p;
}

Cmp compare_principal(const Ordinal::PrincipalPtr& p, const Ordinal::PrincipalPtr& q);

Ordinal ordinal_of(const Ordinal::PrincipalPtr& p) {
  return Ordinal::from_terms({Ordinal::Term{p, 1}});
}

// Veblen comparison on canonical principal terms.  With both sides canonical
// the mixed-level case can never meet its degenerate equality branch (the
// smaller-level term would have collapsed), but it is handled anyway.
Cmp compare_principal(const Ordinal::PrincipalPtr& p, const Ordinal::PrincipalPtr& q) {
  if (p == q) return Cmp::EQ;
  Cmp lv = compare(p->level, q->level);
  if (lv == Cmp::EQ) return compare(p->index, q->index);
  if (lv == Cmp::LT) {
    // phi(a1,b1) vs phi(a2,b2), a1 < a2: the right side is a fixed point of
    // level a1, so the comparison reduces to b1 vs the right-hand value.
    Cmp c = compare(p->index, ordinal_of(q));
    return c == Cmp::GT ? Cmp::GT : (c == Cmp::LT ? Cmp::LT : Cmp::EQ);
  }
  Cmp c = compare(q->index, ordinal_of(p));
  return c == Cmp::GT ? Cmp::LT : (c == Cmp::LT ? Cmp::GT : Cmp::EQ);
}

bool is_one_principal(const Ordinal::PrincipalPtr& p) {
  return p->level.is_zero() && p->index.is_zero();
}

}  // namespace

Ordinal Ordinal::nat(std::uint64_t n) {
  if (n == 0) return Ordinal();
  return from_terms({Term{principal_one(), n}});
}

Ordinal Ordinal::omega() { return from_terms({Term{principal_omega(), 1}}); }

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  Ordinal o;
  o.terms_ = std::move(terms);
  return o;
}

Ordinal Ordinal::phi(const Ordinal& level, const Ordinal& index) {
  // Collapse phi(a, b) = b when b is a single principal of strictly higher
  // level; this is what keeps representations unique.
  if (index.term_count() == 1 && index.terms()[0].coeff == 1) {
    const auto& p = index.terms()[0].principal;
    if (compare(p->level, level) == Cmp::GT) return index;
  }
  return from_terms({Term{make_principal(level, index), 1}});
}

Ordinal Ordinal::principal_at(std::size_t i) const {
  return from_terms({Term{terms_.at(i).principal, 1}});
}

Cmp compare(const Ordinal& x, const Ordinal& y) {
  const auto& xs = x.terms();
  const auto& ys = y.terms();
  std::size_t n = std::min(xs.size(), ys.size());
  for (std::size_t i = 0; i < n; ++i) {
    Cmp c = compare_principal(xs[i].principal, ys[i].principal);
    if (c != Cmp::EQ) return c;
    if (xs[i].coeff != ys[i].coeff) return xs[i].coeff < ys[i].coeff ? Cmp::LT : Cmp::GT;
  }
  if (xs.size() == ys.size()) return Cmp::EQ;
  return xs.size() < ys.size() ? Cmp::LT : Cmp::GT;
}

Ordinal add(const Ordinal& x, const Ordinal& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const auto& xs = x.terms();
  const auto& ys = y.terms();
  const auto& head = ys[0].principal;
  std::vector<Ordinal::Term> out;
  out.reserve(xs.size() + ys.size());
  for (const auto& t : xs) {
    Cmp c = compare_principal(t.principal, head);
    if (c == Cmp::GT) {
      out.push_back(t);
    } else if (c == Cmp::EQ) {
      out.push_back(Ordinal::Term{head, t.coeff + ys[0].coeff});
      out.insert(out.end(), ys.begin() + 1, ys.end());
      return Ordinal::from_terms(std::move(out));
    } else {
      break;  // absorbed
    }
  }
  out.insert(out.end(), ys.begin(), ys.end());
  return Ordinal::from_terms(std::move(out));
}

std::optional<Ordinal> left_sub(const Ordinal& x, const Ordinal& y) {
  const auto& xs = x.terms();
  const auto& ys = y.terms();
  std::size_t i = 0;
  while (i < xs.size() && i < ys.size() &&
         compare_principal(xs[i].principal, ys[i].principal) == Cmp::EQ &&
         xs[i].coeff == ys[i].coeff) {
    ++i;
  }
  if (i == xs.size()) {
    return Ordinal::from_terms({ys.begin() + static_cast<std::ptrdiff_t>(i), ys.end()});
  }
  if (i == ys.size()) return std::nullopt;  // x > y
  Cmp c = compare_principal(xs[i].principal, ys[i].principal);
  if (c == Cmp::GT) return std::nullopt;
  if (c == Cmp::LT) {
    return Ordinal::from_terms({ys.begin() + static_cast<std::ptrdiff_t>(i), ys.end()});
  }
  if (xs[i].coeff > ys[i].coeff) return std::nullopt;
  std::vector<Ordinal::Term> out;
  out.push_back(Ordinal::Term{ys[i].principal, ys[i].coeff - xs[i].coeff});
  out.insert(out.end(), ys.begin() + static_cast<std::ptrdiff_t>(i) + 1, ys.end());
  return Ordinal::from_terms(std::move(out));
}

Ordinal nat_mul(const Ordinal& x, std::uint64_t n) {
  if (n == 0 || x.is_zero()) return Ordinal();
  std::vector<Ordinal::Term> out = x.terms();
  out[0].coeff *= n;
  return Ordinal::from_terms(std::move(out));
}

Ordinal mul_omega(const Ordinal& x) {
  if (x.is_zero()) return Ordinal();
  Ordinal e = log_omega(x.principal_at(0));
  return Ordinal::omega_pow(add(e, Ordinal::one()));
}

Classified classify(const Ordinal& x) {
  if (x.is_zero()) return {OrdKind::Zero, std::nullopt};
  const auto& last = x.terms().back();
  if (!is_one_principal(last.principal)) return {OrdKind::Limit, std::nullopt};
  std::vector<Ordinal::Term> out = x.terms();
  if (out.back().coeff == 1) {
    out.pop_back();
  } else {
    out.back().coeff -= 1;
  }
  return {OrdKind::Successor, Ordinal::from_terms(std::move(out))};
}

bool is_limit(const Ordinal& x) { return classify(x).kind == OrdKind::Limit; }
bool is_successor(const Ordinal& x) { return classify(x).kind == OrdKind::Successor; }

Ordinal successor(const Ordinal& x) { return add(x, Ordinal::one()); }

std::optional<std::uint64_t> as_nat(const Ordinal& x) {
  if (x.is_zero()) return 0;
  if (x.term_count() == 1 && is_one_principal(x.terms()[0].principal)) {
    return x.terms()[0].coeff;
  }
  return std::nullopt;
}

std::optional<std::pair<Ordinal, Ordinal>> as_phi(const Ordinal& x) {
  if (x.term_count() == 1 && x.terms()[0].coeff == 1) {
    const auto& p = x.terms()[0].principal;
    return std::make_pair(p->level, p->index);
  }
  return std::nullopt;
}

bool is_additive_principal(const Ordinal& x) {
  auto ph = as_phi(x);
  if (!ph) return false;
  // 1 = phi(0, 0) is excluded: principals start at w here.
  return !(ph->first.is_zero() && ph->second.is_zero());
}

Ordinal log_omega(const Ordinal& x) {
  auto ph = as_phi(x);
  if (!ph) throw std::invalid_argument("log_omega: not a principal term");
  if (ph->first.is_zero()) return ph->second;
  return x;  // fixed point of w^.
}

bool is_lim_P(const Ordinal& x) {
  if (!is_additive_principal(x)) return false;
  return is_limit(log_omega(x));
}

std::optional<Ordinal> phi_inverse(const Ordinal& level, const Ordinal& x) {
  auto ph = as_phi(x);
  if (!ph) return std::nullopt;
  Cmp c = compare(ph->first, level);
  if (c == Cmp::EQ) return ph->second;
  if (c == Cmp::GT) return x;  // x is a fixed point of phi(level, .)
  return std::nullopt;
}

std::optional<Ordinal> max_index_le(const Ordinal& level, const Ordinal& x) {
  if (x.is_zero()) return std::nullopt;  // phi(level, 0) >= 1
  auto ph = as_phi(x);
  if (!ph) {
    // phi(level, m) is principal, so only the leading power matters.
    return max_index_le(level, x.principal_at(0));
  }
  Cmp c = compare(ph->first, level);
  if (c == Cmp::EQ) return ph->second;
  if (c == Cmp::GT) return x;
  // x = phi(a, b) with a < level: canonically b is not in the range of
  // phi(level, .), so {m : phi(level, m) <= x} = {m : phi(level, m) <= b}.
  return max_index_le(level, ph->second);
}

Ordinal nu(const Ordinal& x) {
  if (x.is_zero()) throw std::invalid_argument("nu(0) is undefined");
  return log_omega(x.principal_at(x.term_count() - 1));
}

std::optional<Ordinal> max_P_below(const Ordinal& x) {
  if (compare(x, Ordinal::one()) != Cmp::GT || !is_limit(x)) {
    throw std::invalid_argument("max_P_below: requires a limit > 1");
  }
  if (!is_additive_principal(x)) {
    return x.principal_at(0);
  }
  Ordinal g = log_omega(x);
  auto cg = classify(g);
  if (cg.kind == OrdKind::Limit) return std::nullopt;  // cofinal
  assert(cg.kind == OrdKind::Successor);
  if (cg.pred->is_zero()) return std::nullopt;  // x = w: nothing principal below
  return Ordinal::omega_pow(*cg.pred);
}

Ordinal next_epsilon(const Ordinal& x) {
  auto i = max_index_le(Ordinal::nat(1), x);
  if (!i) return Ordinal::epsilon(Ordinal());
  return Ordinal::epsilon(successor(*i));
}

Ordinal fund_seq(const Ordinal& x, std::uint64_t k) {
  if (!is_limit(x)) throw std::invalid_argument("fund_seq: requires a limit ordinal");
  const auto& ts = x.terms();
  const auto& last = ts.back();
  if (ts.size() > 1 || last.coeff > 1) {
    // Strip one copy of the last principal and recurse into it.
    std::vector<Ordinal::Term> prefix = ts;
    if (prefix.back().coeff == 1) {
      prefix.pop_back();
    } else {
      prefix.back().coeff -= 1;
    }
    Ordinal p = Ordinal::from_terms({Ordinal::Term{last.principal, 1}});
    return add(Ordinal::from_terms(std::move(prefix)), fund_seq(p, k));
  }
  Ordinal a = last.principal->level;
  Ordinal b = last.principal->index;
  auto cb = classify(b);
  if (cb.kind == OrdKind::Limit) {
    return Ordinal::phi(a, fund_seq(b, k));
  }
  if (a.is_zero()) {
    // w^(b'+1)[k] = w^b' * (k+1); covers w[k] = k+1.
    assert(cb.kind == OrdKind::Successor);
    return nat_mul(Ordinal::omega_pow(*cb.pred), k + 1);
  }
  auto ca = classify(a);
  Ordinal seed = cb.kind == OrdKind::Zero
                     ? Ordinal::one()
                     : successor(Ordinal::phi(a, *cb.pred));
  if (ca.kind == OrdKind::Limit) {
    return Ordinal::phi(fund_seq(a, k), seed);
  }
  // phi(a'+1, .): iterate phi(a', .) starting from the seed.
  Ordinal t = Ordinal::phi(*ca.pred, seed);
  for (std::uint64_t i = 0; i < k; ++i) t = Ordinal::phi(*ca.pred, t);
  return t;
}

}  // namespace ordlab
