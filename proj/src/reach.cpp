#include "ordlab/reach.hpp"

#include <cassert>
#include <map>
#include <mutex>
#include <sstream>

#include "ordlab/parser.hpp"

namespace ordlab::reach {

namespace {

constexpr std::size_t kMaxTraceSteps = 64;

void push_step(std::vector<TraceStep>& trace, std::string rule, std::string detail) {
  if (trace.size() >= kMaxTraceSteps) {
    throw std::logic_error("reach trace exceeded bounded depth");
  }
  trace.push_back(TraceStep{std::move(rule), std::move(detail)});
}

void finish(ReachAnswer& ans, bool verdict) {
  ans.verdict = verdict;
  push_step(ans.trace, "verdict", std::string("value=") + (verdict ? "true" : "false"));
}

void require_principal(const Ordinal& alpha, const char* who) {
  if (!is_additive_principal(alpha)) {
    throw std::invalid_argument(std::string(who) + ": requires an additive principal, got " +
                                print(alpha));
  }
}

// CNF split at exponent r: x = high + low with every exponent of high >= r
// and low < w^r.
std::pair<Ordinal, Ordinal> split_at_exponent(const Ordinal& x, const Ordinal& r) {
  std::vector<Ordinal::Term> high, low;
  for (const auto& t : x.terms()) {
    Ordinal e = log_omega(Ordinal::from_terms({Ordinal::Term{t.principal, 1}}));
    (e >= r ? high : low).push_back(t);
  }
  return {Ordinal::from_terms(std::move(high)), Ordinal::from_terms(std::move(low))};
}

// Least positive multiple of w^r that is >= z.
Ordinal round_up_multiple(const Ordinal& z, const Ordinal& r) {
  Ordinal unit = Ordinal::omega_pow(r);
  if (z.is_zero()) return unit;
  auto [high, low] = split_at_exponent(z, r);
  if (low.is_zero()) return z;
  return add(high, unit);
}

// Largest positive multiple of w^r that is <= z, if any.
std::optional<Ordinal> largest_multiple_le(const Ordinal& z, const Ordinal& r) {
  if (z.is_zero()) return std::nullopt;
  auto [high, low] = split_at_exponent(z, r);
  if (high.is_zero()) return std::nullopt;
  if (low.is_zero()) return z;
  return high;
}

// Largest positive multiple of w^r strictly below z.  Callers have excluded
// the case nu(z) >= r+1 (where the multiples are cofinal in z).
std::optional<Ordinal> largest_multiple_lt(const Ordinal& z, const Ordinal& r) {
  Ordinal unit = Ordinal::omega_pow(r);
  if (z <= unit) return std::nullopt;
  auto [high, low] = split_at_exponent(z, r);
  if (!low.is_zero()) return high;
  // z itself is a multiple with nu(z) == r: step one unit down.
  std::vector<Ordinal::Term> terms = z.terms();
  if (terms.back().coeff > 1) {
    terms.back().coeff -= 1;
    return Ordinal::from_terms(std::move(terms));
  }
  terms.pop_back();
  return Ordinal::from_terms(std::move(terms));
}

bool zero_index_admitted(const ClassDescriptor& d) {
  return d.allow_zero_index && !d.level.is_zero() && d.div_exp.is_zero();
}

std::string print_descriptor(const ClassDescriptor& d) {
  std::ostringstream os;
  os << "C(level=" << print(d.level) << ",div=" << print(d.div_exp)
     << ",bound=" << print(d.lower_bound) << (d.allow_zero_index ? ",zero-ok" : "") << ")";
  return os.str();
}

std::map<std::string, ReachAnswer>& memo_table() {
  static std::map<std::string, ReachAnswer> table;
  return table;
}
std::mutex& memo_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

bool member(const ClassDescriptor& desc, const Ordinal& gamma) {
  if (gamma <= desc.lower_bound) return false;
  auto mu = phi_inverse(desc.level, gamma);
  if (!mu) return false;
  if (mu->is_zero()) return zero_index_admitted(desc);
  return nu(*mu) >= desc.div_exp;
}

Ordinal next_above(const ClassDescriptor& desc, const Ordinal& xi) {
  Ordinal lo = xi < desc.lower_bound ? desc.lower_bound : xi;
  auto top = max_index_le(desc.level, lo);
  Ordinal min_index = top ? successor(*top) : Ordinal();
  if (min_index.is_zero() && zero_index_admitted(desc)) {
    return Ordinal::phi(desc.level, Ordinal());
  }
  Ordinal mu = round_up_multiple(min_index, desc.div_exp);
  return Ordinal::phi(desc.level, mu);
}

SupBelow sup_below(const ClassDescriptor& desc, const Ordinal& beta) {
  if (beta <= desc.lower_bound) return {SupBelow::Kind::Empty, std::nullopt};
  auto finish_value = [&](const Ordinal& mu) -> SupBelow {
    Ordinal v = Ordinal::phi(desc.level, mu);
    if (v <= desc.lower_bound) return {SupBelow::Kind::Empty, std::nullopt};
    return {SupBelow::Kind::Sup, v};
  };
  auto mu_beta = phi_inverse(desc.level, beta);
  if (mu_beta) {
    // Members below beta are exactly the valid indices below *mu_beta.
    if (mu_beta->is_zero()) return {SupBelow::Kind::Empty, std::nullopt};
    Ordinal limit_div = successor(desc.div_exp);
    if (nu(*mu_beta) >= limit_div) {
      return {SupBelow::Kind::CofinalInBeta, std::nullopt};
    }
    auto mu = largest_multiple_lt(*mu_beta, desc.div_exp);
    if (mu) return finish_value(*mu);
    if (zero_index_admitted(desc)) return finish_value(Ordinal());
    return {SupBelow::Kind::Empty, std::nullopt};
  }
  auto top = max_index_le(desc.level, beta);
  if (!top) return {SupBelow::Kind::Empty, std::nullopt};
  auto mu = largest_multiple_le(*top, desc.div_exp);
  if (mu) return finish_value(*mu);
  if (zero_index_admitted(desc)) return finish_value(Ordinal());
  return {SupBelow::Kind::Empty, std::nullopt};
}

ReachAnswer d_predicate(const Ordinal& beta, std::uint64_t n, const Ordinal& s) {
  require_principal(beta, "d_predicate");
  if (n == 0) throw std::invalid_argument("d_predicate: n must be >= 1");
  if (!(s < beta)) {
    throw std::invalid_argument("d_predicate: requires s < beta");
  }
  std::string key = print(beta) + "|" + std::to_string(n) + "|" + print(s);
  {
    std::lock_guard<std::mutex> lock(memo_mutex());
    auto it = memo_table().find(key);
    if (it != memo_table().end()) return it->second;
  }

  ReachAnswer ans;
  Ordinal level = Ordinal::nat(n - 1);
  Ordinal required = successor(s);
  push_step(ans.trace, "target",
            "beta=" + print(beta) + " n=" + std::to_string(n) + " s=" + print(s));
  push_step(ans.trace, "descriptor",
            print_descriptor(ClassDescriptor{level, required, s}));
  auto mu = phi_inverse(level, beta);
  push_step(ans.trace, "phi-inverse",
            "level=" + print(level) + " arg=" + print(beta) +
                " result=" + (mu ? print(*mu) : "none"));
  bool verdict = false;
  if (mu && !mu->is_zero()) {
    Ordinal v = nu(*mu);
    push_step(ans.trace, "divisibility",
              "mu=" + print(*mu) + " nu=" + print(v) + " required=" + print(required));
    verdict = v >= required;
  } else if (mu) {
    push_step(ans.trace, "zero-index", "mu=0 excluded");
  }
  finish(ans, verdict);

  std::lock_guard<std::mutex> lock(memo_mutex());
  memo_table().emplace(key, ans);
  return ans;
}

ReachAnswer le1_interval(const Ordinal& alpha, const Ordinal& beta) {
  require_principal(alpha, "le1_interval");
  Ordinal cap = mul_omega(alpha);
  if (beta < alpha || beta > cap) {
    throw ScopeError("le1_interval: beta = " + print(beta) +
                     " outside [alpha, alpha*w] for alpha = " + print(alpha));
  }
  if (beta == alpha) {
    ReachAnswer ans;
    push_step(ans.trace, "reflexive", "alpha=" + print(alpha));
    finish(ans, true);
    return ans;
  }
  if (beta == cap) {
    ReachAnswer ans;
    Ordinal level = as_phi(alpha)->first;
    push_step(ans.trace, "level-cap",
              "alpha=" + print(alpha) + " level=" + print(level) + " required=w");
    finish(ans, level >= Ordinal::omega());
    return ans;
  }
  covering::LocalTarget lt = covering::decompose(alpha, beta);
  Classified cls = classify(lt.s);
  if (cls.kind == OrdKind::Successor) {
    ReachAnswer ans;
    push_step(ans.trace, "successor-target",
              "beta=" + print(beta) + " reduces to d_predicate(n=" + std::to_string(lt.n) +
                  ",s=" + print(*cls.pred) + ")");
    ReachAnswer d = d_predicate(alpha, lt.n, *cls.pred);
    for (auto& st : d.trace) ans.trace.push_back(std::move(st));
    ans.verdict = d.verdict;
    return ans;
  }
  ReachAnswer ans;
  Ordinal level = Ordinal::nat(lt.n - 1);
  auto mu = phi_inverse(level, alpha);
  if (cls.kind == OrdKind::Zero) {
    // beta = alpha*n, n >= 2: continuity collapses to alpha in Im phi_(n-1).
    push_step(ans.trace, "limit-collapse",
              "beta=" + print(beta) + " n=" + std::to_string(lt.n) + " s=0");
    push_step(ans.trace, "phi-inverse",
              "level=" + print(level) + " arg=" + print(alpha) +
                  " result=" + (mu ? print(*mu) : "none"));
    finish(ans, mu.has_value());
    return ans;
  }
  // beta = alpha*n + s with s a limit: nu of the inverse must reach s.
  push_step(ans.trace, "limit-collapse",
            "beta=" + print(beta) + " n=" + std::to_string(lt.n) + " s=" + print(lt.s));
  push_step(ans.trace, "phi-inverse",
            "level=" + print(level) + " arg=" + print(alpha) +
                " result=" + (mu ? print(*mu) : "none"));
  bool verdict = false;
  if (mu && !mu->is_zero()) {
    Ordinal v = nu(*mu);
    push_step(ans.trace, "divisibility",
              "mu=" + print(*mu) + " nu=" + print(v) + " required=" + print(lt.s));
    verdict = v >= lt.s;
  } else if (mu) {
    push_step(ans.trace, "zero-index", "mu=0 excluded");
  }
  finish(ans, verdict);
  return ans;
}

MLocal m_local(const Ordinal& alpha) {
  require_principal(alpha, "m_local");
  auto ph = as_phi(alpha);
  if (ph->first >= Ordinal::omega()) {
    return MLocal{mul_omega(alpha), true};
  }
  std::uint64_t level = *as_nat(ph->first);
  Ordinal reach = nat_mul(alpha, level + 1);
  if (!ph->second.is_zero()) reach = add(reach, nu(ph->second));
  return MLocal{reach, false};
}

ClassDescriptor descriptor_for(const Ordinal& alpha, const Ordinal& t) {
  covering::LocalTarget lt = covering::decompose(alpha, t);
  return ClassDescriptor{Ordinal::nat(lt.n - 1), successor(lt.s), lt.s, false};
}

ClassDescriptor prop_class_for(const Ordinal& alpha, const Ordinal& t) {
  covering::LocalTarget lt = covering::decompose(alpha, t);
  bool allow_zero = lt.s.is_zero() && lt.n >= 2;
  return ClassDescriptor{Ordinal::nat(lt.n - 1), lt.s, lt.s, allow_zero};
}

UnfoldExpr unfold_once(const Ordinal& alpha, const Ordinal& t) {
  covering::LocalTarget lt = covering::decompose(alpha, t);
  UnfoldExpr expr;
  expr.alpha = alpha;
  expr.t = t;
  expr.n = lt.n;
  expr.s = lt.s;
  if (lt.n == 1 && lt.s.is_zero()) {
    expr.kind = UnfoldExpr::Kind::BaseLimP;
    return expr;
  }
  Classified cls = classify(lt.s);
  if (cls.kind == OrdKind::Successor) {
    expr.kind = UnfoldExpr::Kind::LimOfPrev;
    Ordinal prev_t = add(nat_mul(alpha, lt.n), *cls.pred);
    expr.prev = descriptor_for(alpha, prev_t);
    return expr;
  }
  expr.kind = UnfoldExpr::Kind::LimDiagonal;
  return expr;
}

bool member_via_unfold(const UnfoldExpr& expr, const Ordinal& gamma) {
  if (gamma > expr.alpha) return false;  // classes live inside (0, alpha]
  switch (expr.kind) {
    case UnfoldExpr::Kind::BaseLimP:
      return is_lim_P(gamma);
    case UnfoldExpr::Kind::LimOfPrev:
      return sup_below(*expr.prev, gamma).kind == SupBelow::Kind::CofinalInBeta;
    case UnfoldExpr::Kind::LimDiagonal: {
      // The collapsed intersection class: constraints at every smaller level
      // force gamma into Im phi_(n-1); offsets below s force divisibility by
      // w^s of the index.  Its Lim is then read off with sup_below.
      ClassDescriptor q{Ordinal::nat(expr.n - 1), expr.s, expr.s, expr.s.is_zero()};
      return sup_below(q, gamma).kind == SupBelow::Kind::CofinalInBeta;
    }
  }
  return false;
}

std::optional<bool> decide_lt1(const Ordinal& a, const Ordinal& b) {
  if (compare(a, b) != Cmp::LT) return false;
  if (!is_additive_principal(a)) return false;
  Ordinal cap = mul_omega(a);
  if (b <= cap) return le1_interval(a, b).verdict;
  return m_local(a).at_cap ? std::optional<bool>() : std::optional<bool>(false);
}

std::optional<Lt0Witness> lt0_check(const Ordinal& alpha, const Ordinal& t,
                                    const std::vector<Ordinal>& B) {
  require_principal(alpha, "lt0_check");
  Ordinal cap = mul_omega(alpha);
  if (t > cap) {
    throw ScopeError("lt0_check: t = " + print(t) + " beyond alpha*w");
  }
  for (const auto& b : B) {
    if (!(b < t)) {
      throw std::invalid_argument("lt0_check: B must be a subset of t");
    }
  }
  // Every <1 fact the verification needs must be decidable.
  for (std::size_t i = 0; i < B.size(); ++i) {
    for (std::size_t j = 0; j < B.size(); ++j) {
      if (i == j) continue;
      if (!decide_lt1(B[i], B[j]).has_value()) {
        throw ScopeError("lt0_check: undecidable pair (" + print(B[i]) + ", " + print(B[j]) +
                         ")");
      }
    }
  }
  if (t <= alpha) return std::nullopt;
  if (!le1_interval(alpha, t).verdict) return std::nullopt;

  // Bound for delta: all traces below alpha, plus the local maxima of
  // elements of B below alpha (a cannot reach past m(a), so images above the
  // bound preserve negative facts).
  Ordinal bound;
  std::optional<Ordinal> top;  // max of B inside [alpha, t)
  for (const auto& b : B) {
    if (b < alpha) {
      if (b > bound) bound = b;
      if (is_additive_principal(b)) {
        MLocal m = m_local(b);
        if (m.reach < alpha && m.reach > bound) bound = m.reach;
      }
    } else {
      if (!top || b > *top) top = b;
      Ordinal s = covering::decompose(alpha, b).s;
      if (s > bound) bound = s;
    }
  }
  ClassDescriptor desc = top ? prop_class_for(alpha, *top)
                             : ClassDescriptor{Ordinal(), Ordinal(), Ordinal(), false};
  Ordinal delta = next_above(desc, bound);
  if (!(delta < alpha)) {
    throw std::logic_error("lt0_check: no class member below alpha despite positive verdict");
  }

  Lt0Witness w;
  w.delta = delta;
  for (const auto& b : B) {
    if (b < alpha) {
      w.map.emplace_back(b, b);
    } else {
      auto img = covering::g0_apply(alpha, delta, b);
      if (!img) throw std::logic_error("lt0_check: trace containment failed");
      w.map.emplace_back(b, *img);
    }
  }
  // Verify the (<, +, <1)-isomorphism conditions exhaustively.
  auto find_in = [](const std::vector<std::pair<Ordinal, Ordinal>>& m,
                    const Ordinal& v) -> std::optional<Ordinal> {
    for (const auto& [src, dst] : m) {
      if (src == v) return dst;
    }
    return std::nullopt;
  };
  for (const auto& [x, hx] : w.map) {
    for (const auto& [y, hy] : w.map) {
      if (compare(x, y) != compare(hx, hy)) return std::nullopt;
      Ordinal sum = add(x, y);
      auto in_src = find_in(w.map, sum);
      Ordinal img_sum = add(hx, hy);
      bool in_dst = false;
      for (const auto& [src, dst] : w.map) {
        (void)src;
        if (dst == img_sum) in_dst = true;
      }
      if (in_src.has_value() != in_dst) return std::nullopt;
      if (in_src && *in_src != img_sum) return std::nullopt;
      if (x != y) {
        auto f1 = decide_lt1(x, y);
        auto f2 = decide_lt1(hx, hy);
        if (!f1 || !f2) {
          throw ScopeError("lt0_check: undecidable image pair");
        }
        if (*f1 != *f2) return std::nullopt;
      }
    }
  }
  return w;
}

bool replay_trace(const ReachAnswer& answer) {
  auto get = [](const std::string& detail, const std::string& key) -> std::optional<std::string> {
    std::istringstream is(detail);
    std::string tok;
    while (is >> tok) {
      auto eq = tok.find('=');
      if (eq != std::string::npos && tok.substr(0, eq) == key) return tok.substr(eq + 1);
    }
    return std::nullopt;
  };
  bool saw_verdict = false;
  bool replayed = true;
  for (const auto& step : answer.trace) {
    if (step.rule == "phi-inverse") {
      auto lv = get(step.detail, "level");
      auto arg = get(step.detail, "arg");
      auto res = get(step.detail, "result");
      if (!lv || !arg || !res) return false;
      auto mu = phi_inverse(parse(*lv), parse(*arg));
      std::string got = mu ? print(*mu) : "none";
      if (got != *res) return false;
    } else if (step.rule == "divisibility") {
      auto m = get(step.detail, "mu");
      auto v = get(step.detail, "nu");
      if (!m || !v) return false;
      if (print(nu(parse(*m))) != *v) return false;
    } else if (step.rule == "level-cap") {
      auto a = get(step.detail, "alpha");
      auto lv = get(step.detail, "level");
      if (!a || !lv) return false;
      auto ph = as_phi(parse(*a));
      if (!ph || print(ph->first) != *lv) return false;
    } else if (step.rule == "verdict") {
      auto v = get(step.detail, "value");
      if (!v) return false;
      saw_verdict = true;
      replayed = (*v == "true") == answer.verdict;
    }
  }
  return saw_verdict && replayed;
}

std::size_t memo_size() {
  std::lock_guard<std::mutex> lock(memo_mutex());
  return memo_table().size();
}

void memo_clear() {
  std::lock_guard<std::mutex> lock(memo_mutex());
  memo_table().clear();
}

}  // namespace ordlab::reach
