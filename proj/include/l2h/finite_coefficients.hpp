#pragma once

// Specialization of Z[G]-chain complexes through finite-dimensional modules:
// finite permutation quotients, regular and matrix modules, exact Betti
// numbers, Lück-style normalized estimates and the degree-2 Hopf sequence.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "l2h/chain_complex.hpp"
#include "l2h/linalg.hpp"

namespace l2h {

using Permutation = std::vector<std::uint32_t>;  // 0-based one-line form
using DenseMatrix = std::vector<std::vector<Rational>>;

struct FiniteQuotient {
  GroupPtr source;
  std::size_t m = 0;  // number of permuted points
  std::vector<Permutation> images;
  std::size_t order = 0;
  bool transitive = false;
  std::string label;
  /// Elements of the image group as permutations, identity first.
  std::vector<Permutation> elements;
};

/// Checks the images against the relators of p (RelatorViolation) and
/// enumerates the generated permutation group (SupportCapExceeded above
/// order_cap elements).
FiniteQuotient make_quotient(const Presentation& p, GroupPtr g, std::vector<Permutation> images, std::string label,
                             std::size_t order_cap = 1u << 16);

struct QuotientOptions {
  std::size_t budget = 3;
  std::uint64_t seed = 1;
  std::size_t min_order = 1;
  std::size_t max_order = 4096;
};

/// Deterministic family: m-cycles of orders 2, 4, 8, ... for Z, a
/// transposition and seeded symmetric-group images for free groups,
/// factor-wise products for direct products, the regular action for finite
/// groups. Every entry is verified against the relators.
std::vector<FiniteQuotient> quotient_library(const Presentation& p, GroupPtr g, const QuotientOptions& opts = {});

/// Nested cyclic chain: every generator maps to the same m-cycle, m a power
/// of two. Each quotient factors through the next one. Orders that violate
/// some relator are skipped.
std::vector<FiniteQuotient> nested_cyclic_chain(const Presentation& p, GroupPtr g, std::size_t count,
                                                std::size_t min_order, std::size_t max_order = 1u << 14);

/// A right Z[G]-module on Q^dim: either permutations of a basis or
/// invertible rational matrices, one per generator.
struct CoefficientModule {
  std::size_t dim = 0;
  std::string description;
  std::vector<Permutation> perms, inverse_perms;
  std::vector<DenseMatrix> matrices, inverse_matrices;

  bool is_permutation() const noexcept { return !perms.empty() || matrices.empty(); }
  /// Matrix of v -> v.w for a normalized word.
  DenseMatrix action(const Word& w) const;
};

CoefficientModule regular_module(const FiniteQuotient& q);
CoefficientModule permutation_module(const FiniteQuotient& q);
/// Throws RelatorViolation when some relator does not act trivially and
/// InvalidArgument for singular matrices.
CoefficientModule matrix_module(const Presentation& p, std::vector<DenseMatrix> generators, std::string description);
/// Random integral unimodular matrices of the given dimension; valid for
/// presentations whose relators are freely trivial.
CoefficientModule random_matrix_module(const Presentation& p, std::size_t dim, std::uint64_t seed);

struct FiniteComplex {
  std::vector<std::size_t> dims;
  std::vector<SparseMatrix> boundaries;  // boundaries[k-1] = b_k
  std::string description;
};

FiniteComplex induce(const ChainComplex& c, const CoefficientModule& v);
FiniteComplex induce(const ChainComplex& c, const FiniteQuotient& q);

struct BettiNumbers {
  std::vector<std::size_t> values;
  std::string rank_method;  // "exact" or "modular"
};

BettiNumbers betti_numbers(const FiniteComplex& fc, RankMethod method = RankMethod::automatic);
std::size_t betti(const FiniteComplex& fc, std::size_t k, RankMethod method = RankMethod::automatic);

struct LuckEstimate {
  std::size_t degree = 0;
  std::size_t betti = 0;
  std::size_t quotient_order = 0;
  Rational value;
  std::string rank_method;
};

/// betti_k of the complex induced through the regular module, over |Q|.
LuckEstimate luck_estimate(const ChainComplex& c, const FiniteQuotient& q, std::size_t k);
std::vector<LuckEstimate> luck_estimates(const ChainComplex& c, const FiniteQuotient& q,
                                         RankMethod method = RankMethod::automatic);

struct ResolutionSpec {
  std::string tag;  // "free" or "cyclic"
  ChainComplex complex;
};

/// Built-in resolutions: free groups (length 1) and finite cyclic groups
/// (periodic, degrees <= 3). Throws UnsupportedGroupForResolution.
ResolutionSpec builtin_resolution(GroupPtr g);

/// Q-basis of {z in Q[G]^cols : supp z_j within `support`, b z = 0}, each
/// vector primitive integral with positive leading coefficient. `scalars`
/// receives the nonzero factor taking each rational solution to it.
std::vector<std::vector<GroupRingElement>> bounded_kernel(const Group& g, const GroupRingMatrix& b,
                                                          const std::vector<Word>& support,
                                                          std::vector<Rational>* scalars = nullptr);

struct HopfReport {
  std::size_t dim_h2_z = 0;
  std::optional<std::size_t> dim_h2_g;
  std::size_t image_dim = 0;
  std::size_t kernel_generators = 0;
  std::string kernel_search;  // "exact" (finite G) or "bounded L=<n>"
  std::string resolution;     // tag, or "not needed"
  std::string module;
  bool exact = false;       // image_dim + dim_h2_g == dim_h2_z
  bool surjective = false;  // image_dim == dim_h2_z
  bool kernel_search_inconclusive = false;
  bool passed = false;
};

/// `radius` bounds the kernel search for infinite groups (0 picks the
/// longest relator length).
HopfReport hopf_check(const ChainComplex& z, const CoefficientModule& v, std::size_t radius = 0);

}  // namespace l2h
