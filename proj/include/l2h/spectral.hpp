#pragma once

// Invertibility certificates for self-adjoint group-ring matrices: directed
// rounded norm bounds (power traces, l1 and rapid-decay estimates, radial fast
// path on free groups), ball truncations and the shift-and-bound gap test.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "l2h/chain_complex.hpp"
#include "l2h/group_ring.hpp"

namespace l2h {

enum class RDKind { free_group, product_of_free, none };

struct RDProfile {
  RDKind kind = RDKind::none;
  /// Product weights are not covered by a published inequality; every bound
  /// computed with them is checked against lower bounds and labelled.
  bool empirical = false;
  std::string name() const;
};

RDProfile rd_profile_for(const Group& g);

enum class CertificateStatus { certified_invertible, zero_evidence, inconclusive };
const char* status_name(CertificateStatus s);

enum class GapMethod { automatic, l1, rd, subadditive };
const char* method_name(GapMethod m);
GapMethod parse_method(const std::string& s);

struct SpectralBudget {
  unsigned max_power = 512;         // largest n in S^(2n)
  std::size_t max_radius = 0;       // 0 picks the largest ball within dense_dim
  std::size_t dense_dim = 1000;     // truncations up to this size use a dense solver
  std::size_t truncation_cap = 60000;
  Rational epsilon_zero{1, 100};
  RingLimits limits{400'000, 16'000'000};
  bool record_timing = false;
};

/// (<delta_e, S^(2n) delta_e>)^(1/2n) rounded down; for matrices the largest
/// diagonal entry is used.
Rational power_trace_lower_bound(const Group& g, const GroupRingMatrix& s, unsigned n, const RingLimits& limits = {});
Rational power_trace_lower_bound(const Group& g, const GroupRingElement& s, unsigned n,
                                 const RingLimits& limits = {});

/// (l1 norm of S^(2n))^(1/2n) rounded up; Schur test over entries for matrices.
Rational l1_upper_bound(const Group& g, const GroupRingMatrix& s, unsigned n, const RingLimits& limits = {});
Rational l1_upper_bound(const Group& g, const GroupRingElement& s, unsigned n, const RingLimits& limits = {});

/// Weighted sphere l2-norms of S^(2n), root rounded up. Throws
/// ProfileNotApplicable when the profile does not fit g.
Rational rd_upper_bound(const Group& g, const GroupRingMatrix& s, unsigned n, const RDProfile& profile,
                        const RingLimits& limits = {});
Rational rd_upper_bound(const Group& g, const GroupRingElement& s, unsigned n, const RDProfile& profile,
                        const RingLimits& limits = {});

/// Weighted sphere norm sum of a single element (no powers).
Rational rd_weighted_norm(const Group& g, const GroupRingElement& x, const RDProfile& profile);

/// Level values of A^power delta_e on Free(rank), A the sum of generators and
/// their inverses.
std::vector<Rational> radial_power(std::size_t rank, unsigned power);

/// Level coefficients of a radial element of Free(rank), or nullopt.
std::optional<std::vector<Rational>> radial_coefficients(const Group& g, const GroupRingElement& x);

/// f * s for radial f and radial s (level vectors) on Free(rank).
std::vector<Rational> radial_multiply(std::size_t rank, const std::vector<Rational>& f, const std::vector<Rational>& s);

struct NormBound {
  Rational value;
  unsigned power = 1;  // m with the bound taken from S^m
  std::string method;
  bool empirical = false;
};

/// Best certified upper bound on the operator norm of a self-adjoint S.
NormBound norm_upper_bound(const Group& g, const GroupRingMatrix& s, GapMethod method, const SpectralBudget& budget);

struct Truncation {
  std::size_t radius = 0;
  std::size_t dim = 0;
  Rational lambda_min_upper;  // exact Rayleigh quotient, rounded up
  double lambda_min = 0;
  double lambda_max = 0;
  double residual = 0;
  std::string solver;  // "dense" or "lanczos"
};

/// Extreme eigenvalues of the compression of Delta to the ball of radius R.
Truncation truncation_extremes(const Group& g, const GroupRingMatrix& delta, std::size_t radius,
                               const SpectralBudget& budget = {});

/// Largest radius whose truncation fits the dense solver (at least 1).
std::size_t default_radius(const Group& g, std::size_t coordinates, const SpectralBudget& budget);

struct SpectralCertificate {
  std::size_t degree = 0;
  CertificateStatus status = CertificateStatus::inconclusive;
  std::optional<Rational> gap_lower;
  Rational lambda_min_upper;
  std::string method;
  std::string profile;
  Rational c;
  Rational norm_upper;
  unsigned n = 0;
  std::size_t radius = 0;
  Rational lambda_max_upper;
  double lambda_min_approx = 0;
  double lambda_max_approx = 0;
  std::string solver;
  std::vector<std::string> notes;
  std::uint64_t runtime_ms = 0;
};

SpectralCertificate certify_gap(const Group& g, const GroupRingMatrix& delta, GapMethod method,
                                const SpectralBudget& budget = {}, std::size_t degree = 0);

struct VanishingReport {
  std::vector<SpectralCertificate> certificates;
  std::vector<std::string> statements;
};

VanishingReport homology_vanishing_report(const ChainComplex& c, std::size_t lo, std::size_t hi, GapMethod method,
                                          const SpectralBudget& budget = {});

struct EquivalenceResult {
  std::size_t trials = 0;
  std::size_t retained = 0;
  std::size_t rejected = 0;  // perturbations discarded by the b^2 = 0 filter
  std::size_t disagreements = 0;
  bool passed = false;
};

/// Random finite complexes over matrix blocks: exact homology ranks versus
/// exact positive definiteness of every Laplacian.
EquivalenceResult finite_model_equivalence_test(std::uint64_t seed, std::size_t trials);

}  // namespace l2h
