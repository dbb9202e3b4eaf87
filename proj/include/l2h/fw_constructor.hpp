#pragma once

// Attaching 3-cells to a presentation 2-complex along bounded kernel cycles
// of b_2, aiming at a complex whose reduced L2-homology vanishes in degrees
// <= 3 while the low-dimensional integral homology is kept.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "l2h/finite_coefficients.hpp"
#include "l2h/spectral.hpp"

namespace l2h {

/// Small budget for the informational certificates in degrees >= 1.
SpectralBudget reduced_budget();

enum class HypothesisVerdict { satisfied, satisfied_evidence, violated, unknown };
const char* verdict_name(HypothesisVerdict v);

struct DegreeAssessment {
  std::size_t degree = 0;
  std::string complex;  // which complex the estimates were taken on
  std::optional<SpectralCertificate> certificate;
  std::vector<LuckEstimate> estimates;  // along the quotient chain
  std::string verdict;                  // "certified", "evidence", "violated", "unknown"
  std::string reason;
};

struct HypothesisReport {
  std::vector<DegreeAssessment> degrees;  // 0, 1, 2
  HypothesisVerdict verdict = HypothesisVerdict::unknown;
  std::optional<std::size_t> violating_degree;
  std::vector<std::string> quotient_labels;
};

struct HypothesisOptions {
  GapMethod method = GapMethod::automatic;
  SpectralBudget budget;
  /// Budget used for degrees >= 1, whose certificates are informational.
  SpectralBudget high_budget = reduced_budget();
  std::size_t quotients = 3;
  std::size_t min_order = 16;
  std::size_t support_radius = 0;  // 0: budgeted default
  std::size_t unknown_budget = 1500;
  /// Ball size for the second, Lanczos-sized degree-0 truncation tried when
  /// the first certificate is inconclusive.
  std::size_t wide_truncation = 8000;
};

/// Degree 0 from the spectral certificate (vanishing evidence there means
/// the group is amenable-like), degrees 1 and 2 from normalized Betti
/// estimates along a nested quotient chain; degree 2 is taken after the
/// cycles of ker b_2 found at the support radius are filled.
HypothesisReport check_hypothesis(const Presentation& p, GroupPtr g, const HypothesisOptions& opts = {});

struct KernelCycle {
  std::vector<GroupRingElement> column;  // one entry per top cell
  Rational scalar;                       // factor taking the rational solution to `column`
  std::size_t support = 0;               // total number of terms
};

/// Largest L <= max(1, longest relator) with rank_top * |B_L| <= budget.
std::size_t default_support_radius(const ChainComplex& c, std::size_t budget);

/// Q-basis of the top-degree cycles supported in B_L, sorted by support
/// size. `limit` = 0 keeps all of them.
std::vector<KernelCycle> find_kernel_cycles(const ChainComplex& c, std::size_t radius, std::size_t limit = 0);

struct QuotientDiagnostics {
  std::string label;
  std::size_t order = 0;
  std::size_t domain = 0;      // induced dimension of the new cells
  std::size_t rank = 0;        // rank of the induced attaching map
  std::size_t kernel_dim = 0;  // dim ker of the induced top boundary
  std::size_t cokernel = 0;    // kernel_dim - rank
  std::size_t defect = 0;      // domain - rank
  std::string rank_method;
};

struct Selection {
  std::vector<std::size_t> indices;  // into the candidate list
  std::size_t considered = 0;
  std::vector<QuotientDiagnostics> diagnostics;
};

/// Greedy pass over the candidates on the first quotient: a cycle is kept
/// when it raises the rank of the induced attaching map by at least |Q|/2.
/// Diagnostics are reported on every quotient.
Selection select_basis_candidates(const ChainComplex& c, const std::vector<KernelCycle>& candidates,
                                  const std::vector<FiniteQuotient>& quotients);

struct ConstructionParams {
  std::optional<std::size_t> wedge_count;  // default 0
  std::size_t support_radius = 0;          // 0: budgeted default
  std::size_t unknown_budget = 1500;
  std::size_t quotients = 3;
  std::size_t min_order = 64;
  GapMethod method = GapMethod::automatic;
  SpectralBudget budget;
  SpectralBudget high_budget = reduced_budget();
  HypothesisOptions hypothesis;
  bool force = false;  // construct even when the hypothesis check fails
};

struct BettiRow {
  std::string label;
  std::size_t order = 0;
  std::vector<std::size_t> before, after;
  std::vector<Rational> normalized;  // after / |Q|
  std::string rank_method;
};

struct ConstructionRecord {
  std::string status;  // "Constructed" or "FailedHypothesis"
  HypothesisReport hypothesis;
  std::size_t wedge_count = 0;
  std::size_t support_radius = 0;
  std::vector<KernelCycle> candidates;
  Selection selection;
  ChainComplex complex;
  std::vector<SpectralCertificate> certificates;  // degrees 0..3
  std::vector<BettiRow> betti_table;
  std::vector<AbelianGroup> integral_homology;
  bool boundary_square_zero = false;
  bool low_degrees_unchanged = false;
  bool betti_trend_ok = false;  // normalized values <= 1/5 and non-increasing
  std::vector<std::string> notes;
};

ConstructionRecord construct(const Presentation& p, GroupPtr g, const ConstructionParams& params = {});

/// Integral homology of the constructed complex with a statement for each
/// degree that differs from the presentation complex.
struct KervaireReport {
  std::vector<AbelianGroup> before, after;
  std::vector<std::string> statements;
  bool agrees_below_two = false;
};
KervaireReport kervaire_integral_check(const ChainComplex& base, const ChainComplex& built);

}  // namespace l2h
