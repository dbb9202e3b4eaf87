#include <chrono>
#include <random>

#include "l2h/errors.hpp"
#include "l2h/linalg.hpp"
#include "l2h/spectral.hpp"
#include "random_util.hpp"

namespace l2h {

const char* status_name(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::certified_invertible: return "CertifiedInvertible";
    case CertificateStatus::zero_evidence: return "ZeroEvidence";
    case CertificateStatus::inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

const char* method_name(GapMethod m) {
  switch (m) {
    case GapMethod::automatic: return "auto";
    case GapMethod::l1: return "l1";
    case GapMethod::rd: return "rd";
    case GapMethod::subadditive: return "subadditive";
  }
  return "auto";
}

GapMethod parse_method(const std::string& s) {
  if (s == "auto") return GapMethod::automatic;
  if (s == "l1") return GapMethod::l1;
  if (s == "rd") return GapMethod::rd;
  if (s == "subadditive") return GapMethod::subadditive;
  throw Error(ErrorCode::invalid_argument, "unknown method '" + s + "' (auto, l1, rd, subadditive)");
}

namespace {

Rational l1_row_bound(const GroupRingMatrix& m) {
  Rational best(0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational row(0);
    for (std::size_t j = 0; j < m.cols(); ++j) row += l1_norm(m.at(i, j));
    best = std::max(best, row);
  }
  return best;
}

GroupRingMatrix shifted(const Rational& c, const GroupRingMatrix& delta) {
  return mat_add(mat_scale(c, GroupRingMatrix::identity(delta.rows())), mat_scale(Rational(-1), delta));
}

}  // namespace

SpectralCertificate certify_gap(const Group& g, const GroupRingMatrix& delta, GapMethod method,
                                const SpectralBudget& budget, std::size_t degree) {
  const auto start = std::chrono::steady_clock::now();
  if (delta.rows() != delta.cols() || !is_self_adjoint(g, delta))
    throw Error(ErrorCode::invalid_argument, "certify_gap needs a self-adjoint square matrix");
  SpectralCertificate cert;
  cert.degree = degree;
  const RDProfile profile = rd_profile_for(g);
  cert.profile = profile.name();

  const std::size_t k = std::max<std::size_t>(1, delta.rows());
  cert.radius = budget.max_radius ? budget.max_radius : default_radius(g, k, budget);
  if (delta.rows() == 0) {
    cert.status = CertificateStatus::certified_invertible;
    cert.gap_lower = Rational(1);
    cert.method = "empty";
    cert.notes.push_back("no cells in this degree");
    return cert;
  }
  Truncation t = truncation_extremes(g, delta, cert.radius, budget);
  cert.lambda_min_upper = t.lambda_min_upper;
  cert.lambda_min_approx = t.lambda_min;
  cert.lambda_max_approx = t.lambda_max;
  cert.solver = t.solver;
  cert.lambda_max_upper = l1_row_bound(delta);

  const Rational& lmin = cert.lambda_min_upper;
  const Rational& lmax = cert.lambda_max_upper;
  const Rational c0 = (lmax + lmin) / 2, step = (lmax - lmin) / 8;
  std::vector<Rational> shifts = {round_down(c0, 4), round_down(c0 - step, 4), round_up(c0 + step, 4)};
  bool have = false;
  Rational best_gap;
  for (const auto& c : shifts) {
    if (sgn(c) <= 0) continue;
    if (have && c == cert.c) continue;
    NormBound b = norm_upper_bound(g, shifted(c, delta), method, budget);
    // Any Rayleigh quotient theta of delta satisfies |c - theta| <= ||c - delta||.
    if (b.value < abs(c - lmin)) {
      if (!b.empirical) throw Error(ErrorCode::internal, "norm bound below a Rayleigh quotient");
      cert.notes.push_back("empirical profile bound rejected at c = " + to_string(c));
      continue;
    }
    Rational gap = c - b.value;
    if (!have || gap > best_gap) {
      have = true;
      best_gap = gap;
      cert.c = c;
      cert.norm_upper = b.value;
      cert.n = b.power;
      cert.method = b.method;
      if (b.empirical) cert.profile += " (validated empirically)";
    }
  }
  if (have && sgn(best_gap) > 0) {
    cert.status = CertificateStatus::certified_invertible;
    cert.gap_lower = round_down(best_gap, 40);
  } else if (lmin < budget.epsilon_zero) {
    cert.status = CertificateStatus::zero_evidence;
  } else {
    cert.status = CertificateStatus::inconclusive;
  }
  if (budget.record_timing)
    cert.runtime_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
  return cert;
}

VanishingReport homology_vanishing_report(const ChainComplex& c, std::size_t lo, std::size_t hi, GapMethod method,
                                          const SpectralBudget& budget) {
  if (lo > hi || hi > c.top_degree())
    throw Error(ErrorCode::degree_out_of_range, "degrees " + std::to_string(lo) + ".." + std::to_string(hi) +
                                                    " outside 0.." + std::to_string(c.top_degree()));
  VanishingReport rep;
  for (std::size_t k = lo; k <= hi; ++k) {
    LaplacianOperator lap = laplacian(c, k, budget.limits);
    SpectralCertificate cert = certify_gap(*c.group, lap.matrix, method, budget, k);
    std::string d = "degree " + std::to_string(k) + ": ";
    switch (cert.status) {
      case CertificateStatus::certified_invertible:
        rep.statements.push_back(d + "Delta_" + std::to_string(k) + " invertible with gap >= " +
                                 to_string(*cert.gap_lower) + ", so H_" + std::to_string(k) +
                                 "(X; l2 G) = 0 and H_" + std::to_string(k) + "(X; C*_r G) = 0");
        break;
      case CertificateStatus::zero_evidence:
        rep.statements.push_back(d + "no certificate; truncation lambda_min ~ " +
                                 std::to_string(cert.lambda_min_approx) +
                                 " suggests 0 in the spectrum (evidence, not proof)");
        break;
      case CertificateStatus::inconclusive:
        rep.statements.push_back(d + "inconclusive within budget");
        break;
    }
    rep.certificates.push_back(std::move(cert));
  }
  return rep;
}

// ------------------------------------------------------- finite model test

namespace {

using Dense = std::vector<std::vector<Rational>>;

Dense zeros(std::size_t r, std::size_t c) { return Dense(r, std::vector<Rational>(c)); }

Dense multiply(const Dense& a, const Dense& b, std::size_t inner, std::size_t cols) {
  Dense out = zeros(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t l = 0; l < inner; ++l) {
      if (sgn(a[i][l]) == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

Dense transpose(const Dense& a, std::size_t rows, std::size_t cols) {
  Dense out = zeros(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out[j][i] = a[i][j];
  return out;
}

// Random unimodular q and its inverse, as products of elementary matrices.
std::pair<Dense, Dense> random_unimodular(std::mt19937_64& rng, std::size_t n) {
  Dense q = zeros(n, n), inv = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) q[i][i] = inv[i][i] = 1;
  for (std::size_t step = 0; n > 1 && step < 3 * n; ++step) {
    std::size_t i = detail::uniform_below(rng, n), j = detail::uniform_below(rng, n);
    if (i == j) continue;
    long f = detail::uniform_int(rng, -2, 2);
    // q <- q (I + f E_ij): column j += f column i; inv <- (I - f E_ij) inv.
    for (std::size_t r = 0; r < n; ++r) q[r][j] += f * q[r][i];
    for (std::size_t c = 0; c < n; ++c) inv[i][c] -= f * inv[j][c];
  }
  return {q, inv};
}

std::size_t dense_rank(const Dense& a, std::size_t cols) {
  if (a.empty() || cols == 0) return 0;
  return exact_rank(SparseMatrix::from_dense(a, cols));
}

}  // namespace

EquivalenceResult finite_model_equivalence_test(std::uint64_t seed, std::size_t trials) {
  std::mt19937_64 rng(seed);
  EquivalenceResult res;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    ++res.trials;
    const std::size_t s = 1 + detail::uniform_below(rng, 2);  // block size of M_s(Q)
    const std::size_t top = 1 + detail::uniform_below(rng, 3);
    std::vector<std::size_t> blocks(top + 1), dims(top + 1), rho(top + 2, 0);
    for (std::size_t k = 0; k <= top; ++k) {
      blocks[k] = detail::uniform_below(rng, 4);
      dims[k] = blocks[k] * s;
    }
    for (std::size_t k = 1; k <= top; ++k) {
      std::size_t most = std::min(blocks[k - 1] - rho[k - 1], blocks[k]);
      rho[k] = detail::uniform_below(rng, 2) ? most : detail::uniform_below(rng, most + 1);
    }
    std::vector<std::pair<Dense, Dense>> change;
    for (std::size_t k = 0; k <= top; ++k) change.push_back(random_unimodular(rng, dims[k]));
    std::vector<Dense> b(top + 1);  // b[k]: dims[k-1] x dims[k]
    for (std::size_t k = 1; k <= top; ++k) {
      Dense e = zeros(dims[k - 1], dims[k]);
      for (std::size_t t = 0; t < rho[k] * s; ++t) e[rho[k - 1] * s + t][t] = 1;
      b[k] = multiply(multiply(change[k - 1].first, e, dims[k - 1], dims[k]), change[k].second, dims[k], dims[k]);
    }
    bool perturbed = false;
    if (detail::uniform_below(rng, 2)) {
      std::size_t k = 1 + detail::uniform_below(rng, top);
      if (dims[k - 1] > 0 && dims[k] > 0) {
        b[k][detail::uniform_below(rng, dims[k - 1])][detail::uniform_below(rng, dims[k])] +=
            detail::uniform_below(rng, 2) ? 1 : -1;
        perturbed = true;
      }
    }
    bool square_zero = true;
    for (std::size_t k = 1; k < top && square_zero; ++k) {
      Dense p = multiply(b[k], b[k + 1], dims[k], dims[k + 1]);
      for (const auto& row : p)
        for (const auto& x : row)
          if (sgn(x) != 0) square_zero = false;
    }
    if (!square_zero) {
      ++res.rejected;
      continue;
    }
    ++res.retained;
    std::vector<std::size_t> ranks(top + 2, 0);
    for (std::size_t k = 1; k <= top; ++k) ranks[k] = dense_rank(b[k], dims[k]);
    bool agree = true;
    for (std::size_t k = 0; k <= top; ++k) {
      const std::size_t h = dims[k] - ranks[k] - ranks[k + 1];
      if (!perturbed && h != (blocks[k] - rho[k] - rho[k + 1]) * s) agree = false;
      Dense lap = zeros(dims[k], dims[k]);
      if (k >= 1) {
        Dense part = multiply(transpose(b[k], dims[k - 1], dims[k]), b[k], dims[k - 1], dims[k]);
        for (std::size_t i = 0; i < dims[k]; ++i)
          for (std::size_t j = 0; j < dims[k]; ++j) lap[i][j] += part[i][j];
      }
      if (k + 1 <= top) {
        Dense part = multiply(b[k + 1], transpose(b[k + 1], dims[k], dims[k + 1]), dims[k + 1], dims[k]);
        for (std::size_t i = 0; i < dims[k]; ++i)
          for (std::size_t j = 0; j < dims[k]; ++j) lap[i][j] += part[i][j];
      }
      const bool invertible = dims[k] == 0 || is_positive_definite(lap);
      if ((h == 0) != invertible) agree = false;
    }
    if (!agree) ++res.disagreements;
  }
  res.passed = res.disagreements == 0;
  return res;
}

}  // namespace l2h
