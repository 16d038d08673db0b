#ifndef ORDLAB_PATTERNS_HPP
#define ORDLAB_PATTERNS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ordlab/ordinal.hpp"
#include "ordlab/reach.hpp"

namespace ordlab::patterns {

// A finite set of ordinals with its full (<, +, <1) structure:
//   add_table[i][j] = index of elems[i] + elems[j] inside elems, or absent;
//   lt1[i][j]       = the strict <1 fact between elems[i] and elems[j].
// Construction fails with ScopeError when some <1 fact is undecidable
// (a principal reaching its decision cap with the partner beyond it).
struct FiniteConfig {
  std::vector<Ordinal> elems;  // strictly increasing
  std::vector<std::vector<std::optional<std::size_t>>> add_table;
  std::vector<std::vector<bool>> lt1;

  std::size_t size() const { return elems.size(); }
  std::optional<std::size_t> index_of(const Ordinal& v) const;
};

FiniteConfig build_config(std::vector<Ordinal> z);

// An order-preserving assignment of images to the config's elements.
struct Embedding {
  std::vector<Ordinal> image;  // image[i] corresponds to elems[i]
};

struct EmbedOptions {
  std::uint64_t pool = 64;       // candidate pool size for backtracking
  std::uint64_t nodes = 10000;   // backtracking node budget
};

// Searches for a (<, +, <1)-isomorphic copy of the config inside alpha that
// fixes every element below alpha.  Candidates: the identity, restrictions
// of the canonical covering maps for fresh principals suggested by the reach
// engine, then bounded backtracking over a generated pool.  NotFound
// (nullopt) is not a proof of nonexistence; certificates provide proofs.
std::optional<Embedding> find_embedding(const FiniteConfig& config, const Ordinal& alpha,
                                        const EmbedOptions& opts = {});

// Exhaustive verification of an embedding against the config's tables.
// Returns false as well when some image-side <1 fact is undecidable.
bool verify_embedding(const FiniteConfig& config, const Ordinal& alpha, const Embedding& h);

// Typed refutation witnesses for alpha not <1 beta, replayed symbolically.
//
// SumWitness: alpha splits as x + y below itself, so any candidate map sends
// the sum outside alpha (degenerate alpha in {0, 1} use the cardinality and
// injectivity forms of the same argument).
struct SumWitness {
  Ordinal x, y;
};
// MaxPrincipalWitness: max_p + p = p while max_p + g > g for every g below
// alpha, so Z = {max_p, p} admits no +-isomorphism fixing max_p.
struct MaxPrincipalWitness {
  Ordinal max_p, p;
};
// ReachMarker: the image of alpha would have to be a class member in
// (bound, alpha) for the solution class of the blocking target, and the
// class has no members there.
struct ReachMarker {
  Ordinal reach;       // m_local(alpha).reach; blocking target is reach + 1
  std::uint64_t n = 1; // decomposition of reach over alpha
  Ordinal s;
  Ordinal bound;       // >= sup of the class below alpha, and >= s
};
using Certificate = std::variant<SumWitness, MaxPrincipalWitness, ReachMarker>;

// Certificate for alpha not <1 beta when the engine refutes it, nullopt when
// the engine affirms alpha <1 beta.  ScopeError when undecidable.
std::optional<Certificate> refute(const Ordinal& alpha, const Ordinal& beta);

// Replays the certificate's contradiction symbolically; never searches.
bool verify_certificate(const Certificate& cert, const Ordinal& alpha, const Ordinal& beta);

// The finite subset of beta the certificate argues about.
std::vector<Ordinal> certificate_set(const Certificate& cert, const Ordinal& alpha);

std::string certificate_kind(const Certificate& cert);

}  // namespace ordlab::patterns

#endif  // ORDLAB_PATTERNS_HPP
