#include "ordlab/patterns.hpp"

#include <algorithm>
#include <set>

#include "ordlab/covering.hpp"
#include "ordlab/parser.hpp"

namespace ordlab::patterns {

namespace {

using reach::ClassDescriptor;

void sort_unique(std::vector<Ordinal>& v) {
  std::sort(v.begin(), v.end(), [](const Ordinal& a, const Ordinal& b) { return a < b; });
  v.erase(std::unique(v.begin(), v.end(), [](const Ordinal& a, const Ordinal& b) { return a == b; }),
          v.end());
}

// Lower bound every covering-map image has to clear: elements fixed below
// alpha, trace offsets of the upper part, and the local reach maxima of
// principals below alpha (images above m(a) keep a's negative facts).
Ordinal delta_bound(const std::vector<Ordinal>& elems, const Ordinal& alpha) {
  Ordinal bound;
  Ordinal cap = mul_omega(alpha);
  for (const auto& e : elems) {
    if (e < alpha) {
      if (e > bound) bound = e;
      if (is_additive_principal(e)) {
        reach::MLocal m = reach::m_local(e);
        if (m.reach < alpha && m.reach > bound) bound = m.reach;
      }
    } else if (e < cap) {
      Ordinal s = covering::decompose(alpha, e).s;
      if (s > bound) bound = s;
    }
  }
  return bound;
}

// An index >= start that is a multiple of w^r with nu exactly r (successor
// index for r = 0).  Images built from such indices have local reach
// delta*(level+1) + r exactly, which preserves negative facts above the
// matched target.
Ordinal exact_index(const Ordinal& start, const Ordinal& r) {
  if (r.is_zero()) {
    if (!start.is_zero() && is_successor(start)) return start;
    return successor(start);
  }
  Ordinal unit = Ordinal::omega_pow(r);
  Ordinal mu = start.is_zero() ? unit : start;
  // round up to a multiple of w^r
  {
    std::vector<Ordinal::Term> high;
    Ordinal low;
    bool pure = true;
    for (const auto& t : mu.terms()) {
      Ordinal e = log_omega(Ordinal::from_terms({Ordinal::Term{t.principal, 1}}));
      if (e >= r) {
        high.push_back(t);
      } else {
        pure = false;
      }
    }
    Ordinal h = Ordinal::from_terms(std::move(high));
    mu = pure && !mu.is_zero() ? mu : add(h, unit);
  }
  if (nu(mu) > r) mu = add(mu, unit);  // force the last exponent to r exactly
  return mu;
}

bool images_strictly_increasing(const std::vector<Ordinal>& image) {
  for (std::size_t i = 1; i < image.size(); ++i) {
    if (!(image[i - 1] < image[i])) return false;
  }
  return true;
}

}  // namespace

std::optional<std::size_t> FiniteConfig::index_of(const Ordinal& v) const {
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (elems[i] == v) return i;
  }
  return std::nullopt;
}

FiniteConfig build_config(std::vector<Ordinal> z) {
  sort_unique(z);
  FiniteConfig cfg;
  cfg.elems = std::move(z);
  std::size_t n = cfg.elems.size();
  cfg.add_table.assign(n, std::vector<std::optional<std::size_t>>(n, std::nullopt));
  cfg.lt1.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cfg.add_table[i][j] = cfg.index_of(add(cfg.elems[i], cfg.elems[j]));
      if (i == j) continue;
      auto fact = reach::decide_lt1(cfg.elems[i], cfg.elems[j]);
      if (!fact.has_value()) {
        throw ScopeError("build_config: undecidable <1 fact for pair (" + print(cfg.elems[i]) +
                         ", " + print(cfg.elems[j]) + ")");
      }
      cfg.lt1[i][j] = *fact;
    }
  }
  return cfg;
}

bool verify_embedding(const FiniteConfig& config, const Ordinal& alpha, const Embedding& h) {
  std::size_t n = config.size();
  if (h.image.size() != n) return false;
  if (!images_strictly_increasing(h.image)) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(h.image[i] < alpha)) return false;
    if (config.elems[i] < alpha && h.image[i] != config.elems[i]) return false;
  }
  auto image_index = [&](const Ordinal& v) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < n; ++i) {
      if (h.image[i] == v) return i;
    }
    return std::nullopt;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Ordinal img_sum = add(h.image[i], h.image[j]);
      auto k_src = config.add_table[i][j];
      auto k_img = image_index(img_sum);
      if (k_src.has_value() != k_img.has_value()) return false;
      if (k_src && h.image[*k_src] != img_sum) return false;
      if (i != j) {
        auto fact = reach::decide_lt1(h.image[i], h.image[j]);
        if (!fact.has_value()) return false;  // unverifiable image pair
        if (*fact != config.lt1[i][j]) return false;
      }
    }
  }
  return true;
}

namespace {

// Covering-map candidate for a fresh principal delta.
std::optional<Embedding> g_candidate(const FiniteConfig& config, const Ordinal& alpha,
                                     const Ordinal& delta) {
  if (!(delta < alpha)) return std::nullopt;
  Ordinal cap = mul_omega(alpha);
  Embedding h;
  h.image.reserve(config.size());
  for (const auto& e : config.elems) {
    if (e < alpha) {
      h.image.push_back(e);
    } else if (e < cap) {
      auto img = covering::g0_apply(alpha, delta, e);
      if (!img) return std::nullopt;
      h.image.push_back(*img);
    } else if (e == cap) {
      h.image.push_back(mul_omega(delta));
    } else {
      return std::nullopt;
    }
  }
  if (!verify_embedding(config, alpha, h)) return std::nullopt;
  return h;
}

std::optional<Embedding> backtrack_search(const FiniteConfig& config, const Ordinal& alpha,
                                          const std::vector<Ordinal>& pool,
                                          std::uint64_t node_budget) {
  std::size_t n = config.size();
  std::vector<Ordinal> image(n);
  std::uint64_t nodes = 0;

  auto consistent = [&](std::size_t k) {
    // Checks the prefix [0..k] of a partial assignment.
    for (std::size_t i = 0; i <= k; ++i) {
      for (std::size_t j = 0; j <= k; ++j) {
        Ordinal sum = add(image[i], image[j]);
        auto k_src = config.add_table[i][j];
        std::optional<std::size_t> k_img;
        for (std::size_t m = 0; m <= k; ++m) {
          if (image[m] == sum) k_img = m;
        }
        if (k_src && *k_src <= k) {
          if (!k_img || image[*k_src] != sum) return false;
        }
        if (!k_src && k_img) return false;
        if (i != j) {
          auto fact = reach::decide_lt1(image[i], image[j]);
          if (!fact || *fact != config.lt1[i][j]) return false;
        }
      }
    }
    return true;
  };

  std::function<std::optional<Embedding>(std::size_t)> go =
      [&](std::size_t k) -> std::optional<Embedding> {
    if (k == n) {
      Embedding h{image};
      if (verify_embedding(config, alpha, h)) return h;
      return std::nullopt;
    }
    if (++nodes > node_budget) return std::nullopt;
    if (config.elems[k] < alpha) {
      image[k] = config.elems[k];
      if (consistent(k)) {
        if (auto r = go(k + 1)) return r;
      }
      return std::nullopt;
    }
    for (const auto& cand : pool) {
      if (k > 0 && !(image[k - 1] < cand)) continue;
      if (!(cand < alpha)) continue;
      image[k] = cand;
      if (consistent(k)) {
        if (auto r = go(k + 1)) return r;
      }
    }
    return std::nullopt;
  };
  return go(0);
}

}  // namespace

std::optional<Embedding> find_embedding(const FiniteConfig& config, const Ordinal& alpha,
                                        const EmbedOptions& opts) {
  if (!is_additive_principal(alpha)) {
    throw std::invalid_argument("find_embedding: alpha must be additive principal");
  }
  if (config.size() == 0) return Embedding{};

  bool all_below = true;
  for (const auto& e : config.elems) {
    if (!(e < alpha)) all_below = false;
  }
  if (all_below) {
    Embedding id{config.elems};
    if (verify_embedding(config, alpha, id)) return id;
    return std::nullopt;  // inconsistent tables; nothing can embed them
  }

  Ordinal cap = mul_omega(alpha);
  Ordinal bound = delta_bound(config.elems, alpha);
  std::vector<Ordinal> deltas;
  auto alpha_idx = config.index_of(alpha);

  // Largest target alpha must still reach, read off the config facts.
  std::optional<Ordinal> top_pos;
  if (alpha_idx) {
    for (std::size_t j = 0; j < config.size(); ++j) {
      if (config.lt1[*alpha_idx][j] && (!top_pos || config.elems[j] > *top_pos)) {
        top_pos = config.elems[j];
      }
    }
  }
  if (top_pos && *top_pos == cap) {
    ClassDescriptor d{Ordinal::omega(), Ordinal(), Ordinal(), true};
    Ordinal first = reach::next_above(d, bound);
    deltas.push_back(first);
    deltas.push_back(reach::next_above(d, first));
  } else if (top_pos) {
    covering::LocalTarget lt = covering::decompose(alpha, *top_pos);
    Ordinal level = Ordinal::nat(lt.n - 1);
    auto base = max_index_le(level, bound);
    Ordinal start = base ? successor(*base) : Ordinal();
    Ordinal mu = exact_index(start, lt.s);
    deltas.push_back(Ordinal::phi(level, mu));
    deltas.push_back(Ordinal::phi(level, exact_index(successor(mu), lt.s)));
    ClassDescriptor e = reach::prop_class_for(alpha, *top_pos);
    deltas.push_back(reach::next_above(e, bound));
  } else {
    // No positive fact from alpha upward: a fresh principal with successor
    // log keeps every reach fact minimal.
    auto base = max_index_le(Ordinal(), bound);
    Ordinal mu = exact_index(base ? successor(*base) : Ordinal(), Ordinal());
    deltas.push_back(Ordinal::omega_pow(mu));
    ClassDescriptor p{Ordinal(), Ordinal(), Ordinal(), false};
    deltas.push_back(reach::next_above(p, bound));
  }
  for (const auto& d : deltas) {
    if (auto h = g_candidate(config, alpha, d)) return h;
  }

  // Bounded backtracking over a generated pool.
  std::vector<Ordinal> pool;
  for (const auto& e : config.elems) {
    if (e < alpha) pool.push_back(e);
  }
  for (const auto& d : deltas) {
    if (!(d < alpha)) continue;
    pool.push_back(d);
    for (const auto& e : config.elems) {
      if (e >= alpha && e < cap) {
        covering::LocalTarget lt = covering::decompose(alpha, e);
        Ordinal img = add(nat_mul(d, lt.n), lt.s);
        if (img < alpha) pool.push_back(img);
      }
    }
    if (mul_omega(d) < alpha) pool.push_back(mul_omega(d));
  }
  for (std::uint64_t k = 0; k <= 3; ++k) pool.push_back(Ordinal::nat(k));
  sort_unique(pool);
  if (pool.size() > opts.pool) pool.resize(opts.pool);
  return backtrack_search(config, alpha, pool, opts.nodes);
}

std::optional<Certificate> refute(const Ordinal& alpha, const Ordinal& beta) {
  if (!(alpha < beta)) {
    throw std::invalid_argument("refute: requires alpha < beta");
  }
  auto fact = reach::decide_lt1(alpha, beta);
  if (!fact.has_value()) {
    throw ScopeError("refute: alpha reaches its cap and beta lies beyond it");
  }
  if (*fact) return std::nullopt;

  if (!is_additive_principal(alpha)) {
    if (alpha.is_zero()) return Certificate{SumWitness{Ordinal(), Ordinal()}};
    if (alpha == Ordinal::one()) {
      return Certificate{SumWitness{Ordinal(), Ordinal::one()}};
    }
    // Split off one copy of the last CNF power.
    std::vector<Ordinal::Term> prefix = alpha.terms();
    Ordinal y = Ordinal::from_terms({Ordinal::Term{prefix.back().principal, 1}});
    if (prefix.back().coeff > 1) {
      prefix.back().coeff -= 1;
    } else {
      prefix.pop_back();
    }
    return Certificate{SumWitness{Ordinal::from_terms(std::move(prefix)), y}};
  }
  if (!is_lim_P(alpha)) {
    Ordinal g = log_omega(alpha);
    Classified cg = classify(g);  // successor: alpha not in Lim P
    Ordinal max_p = Ordinal::omega_pow(*cg.pred);
    return Certificate{MaxPrincipalWitness{max_p, alpha}};
  }
  reach::MLocal m = reach::m_local(alpha);
  covering::LocalTarget lt = covering::decompose(alpha, m.reach);
  reach::SupBelow sb = reach::sup_below(reach::prop_class_for(alpha, m.reach), alpha);
  Ordinal bound = lt.s;
  if (sb.kind == reach::SupBelow::Kind::Sup && *sb.sup > bound) bound = *sb.sup;
  return Certificate{ReachMarker{m.reach, lt.n, lt.s, bound}};
}

bool verify_certificate(const Certificate& cert, const Ordinal& alpha, const Ordinal& beta) {
  if (!(alpha < beta)) return false;
  if (const auto* sw = std::get_if<SumWitness>(&cert)) {
    if (alpha.is_zero()) {
      // Z = {0}: there is no finite subset of the empty set to map into.
      return sw->x.is_zero() && sw->y.is_zero();
    }
    if (alpha == Ordinal::one()) {
      // Z = {0, 1}: the image of 1 must be 0, colliding with the fixed 0.
      return sw->x.is_zero() && sw->y == Ordinal::one();
    }
    // Z = {x, y, alpha}: both parts are fixed, so the image of alpha would
    // have to be x + y = alpha, which is not below alpha.
    if (sw->x.is_zero() || sw->y.is_zero()) return false;
    if (!(sw->x < alpha) || !(sw->y < alpha)) return false;
    return add(sw->x, sw->y) == alpha;
  }
  if (const auto* mw = std::get_if<MaxPrincipalWitness>(&cert)) {
    // Z = {max_p, p}: h(p) = h(max_p + p) = max_p + h(p) > h(p) for every
    // candidate value below alpha, because max_p + g > g for all g < alpha.
    if (!is_additive_principal(mw->p)) return false;
    if (mw->p < alpha || mw->p >= beta) return false;
    if (mw->max_p.is_zero() || !(mw->max_p < alpha)) return false;
    if (add(mw->max_p, mw->p) != mw->p) return false;
    return mul_omega(mw->max_p) >= alpha;  // max_p + g = g needs g >= max_p * w
  }
  const auto& rm = std::get<ReachMarker>(cert);
  // Replay: if alpha <1 beta then alpha <1 reach + 1 (connectedness, since
  // reach + 1 <= beta).  Closing Z = {1, bound, s, alpha, alpha+1,
  // alpha*m (+ s), reach} under the map conditions forces the image of alpha
  // to be a member of the blocking class strictly between bound and alpha.
  // The checks below establish that no such member exists.
  if (!is_additive_principal(alpha) || !is_lim_P(alpha)) return false;
  Ordinal cap = mul_omega(alpha);
  if (rm.reach < alpha || rm.reach >= cap) return false;
  covering::LocalTarget lt = covering::decompose(alpha, rm.reach);
  if (lt.n != rm.n || lt.s != rm.s) return false;
  if (!(successor(rm.reach) <= beta)) return false;
  if (!reach::le1_interval(alpha, rm.reach).verdict) return false;  // transferred fact
  if (!(rm.bound < alpha) || rm.bound < rm.s) return false;
  reach::SupBelow sb = reach::sup_below(reach::prop_class_for(alpha, rm.reach), alpha);
  if (sb.kind == reach::SupBelow::Kind::CofinalInBeta) return false;
  if (sb.kind == reach::SupBelow::Kind::Sup && !(*sb.sup <= rm.bound)) return false;
  return true;
}

std::vector<Ordinal> certificate_set(const Certificate& cert, const Ordinal& alpha) {
  std::vector<Ordinal> z;
  if (const auto* sw = std::get_if<SumWitness>(&cert)) {
    z = {sw->x, sw->y, alpha};
  } else if (const auto* mw = std::get_if<MaxPrincipalWitness>(&cert)) {
    z = {mw->max_p, mw->p};
  } else {
    const auto& rm = std::get<ReachMarker>(cert);
    z = {Ordinal::one(), rm.bound, rm.s, alpha, successor(alpha), rm.reach};
    for (std::uint64_t m = 1; m <= rm.n; ++m) {
      z.push_back(nat_mul(alpha, m));
      z.push_back(add(nat_mul(alpha, m), rm.s));
    }
  }
  sort_unique(z);
  return z;
}

std::string certificate_kind(const Certificate& cert) {
  if (std::holds_alternative<SumWitness>(cert)) return "sum_witness";
  if (std::holds_alternative<MaxPrincipalWitness>(cert)) return "max_principal_witness";
  return "reach_marker";
}

}  // namespace ordlab::patterns
