#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "l2h/errors.hpp"
#include "l2h/linalg.hpp"
#include "l2h/spectral.hpp"

namespace l2h {
namespace {

struct Extremes {
  double lambda_min = 0, lambda_max = 0;
  Eigen::VectorXd min_vector;
};

Extremes dense_extremes(const Eigen::SparseMatrix<double>& a) {
  Eigen::MatrixXd d(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d);
  Extremes out;
  out.lambda_min = es.eigenvalues()(0);
  out.lambda_max = es.eigenvalues()(es.eigenvalues().size() - 1);
  out.min_vector = es.eigenvectors().col(0);
  return out;
}

// Lanczos with full reorthogonalization; the Ritz vector of the smallest
// Ritz value is returned for an exact Rayleigh quotient afterwards.
Extremes lanczos_extremes(const Eigen::SparseMatrix<double>& a, std::size_t max_steps) {
  const Eigen::Index n = a.rows();
  const Eigen::Index steps = std::min<Eigen::Index>(n, static_cast<Eigen::Index>(max_steps));
  Eigen::MatrixXd v(n, steps);
  std::vector<double> alpha, beta;
  Eigen::VectorXd q(n);
  for (Eigen::Index i = 0; i < n; ++i) q(i) = 1.0 + 0.5 * std::sin(static_cast<double>(i) * 0.7);
  q.normalize();
  Eigen::Index m = 0;
  for (; m < steps; ++m) {
    v.col(m) = q;
    Eigen::VectorXd w = a * q;
    alpha.push_back(q.dot(w));
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index j = 0; j <= m; ++j) w -= v.col(j).dot(w) * v.col(j);
    double b = w.norm();
    if (b < 1e-12 || m + 1 == steps) {
      ++m;
      break;
    }
    beta.push_back(b);
    q = w / b;
  }
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    t(i, i) = alpha[i];
    if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  Extremes out;
  out.lambda_min = es.eigenvalues()(0);
  out.lambda_max = es.eigenvalues()(m - 1);
  out.min_vector = v.leftCols(m) * es.eigenvectors().col(0);
  out.min_vector.normalize();
  return out;
}

}  // namespace

std::size_t default_radius(const Group& g, std::size_t coordinates, const SpectralBudget& budget) {
  const std::size_t cap = std::max<std::size_t>(1, budget.dense_dim / std::max<std::size_t>(1, coordinates));
  std::size_t radius = 1, previous = 0;
  for (std::size_t r = 1; r < 100000; ++r) {
    std::size_t size = 0;
    try {
      size = enumerate_ball(g, r, cap).size();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ball_too_large) throw;
      break;
    }
    if (size > cap) break;
    radius = r;
    if (size == previous) break;  // finite group exhausted
    previous = size;
  }
  return radius;
}

Truncation truncation_extremes(const Group& g, const GroupRingMatrix& delta, std::size_t radius,
                               const SpectralBudget& budget) {
  if (!is_self_adjoint(g, delta)) throw Error(ErrorCode::invalid_argument, "operator is not self-adjoint");
  const std::size_t k = delta.rows();
  std::vector<Word> ball = enumerate_ball(g, radius, budget.truncation_cap / std::max<std::size_t>(1, k));
  std::unordered_map<Word, std::size_t, WordHash> index;
  for (std::size_t i = 0; i < ball.size(); ++i) index.emplace(ball[i], i);
  const std::size_t dim = ball.size() * k;

  // Entry ((u,i),(v,j)) = delta_ij(v^-1 u): the image of delta_v e_j has
  // coefficient v t at coordinate i for each term t of delta_ij.
  SparseMatrix exact(dim, dim);
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t vi = 0; vi < ball.size(); ++vi)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        for (const auto& [t, q] : delta.at(i, j).terms()) {
          auto it = index.find(g.multiply(ball[vi], t));
          if (it == index.end()) continue;
          const std::size_t row = it->second * k + i, col = vi * k + j;
          exact.add(row, col, q);
          triplets.emplace_back(static_cast<int>(row), static_cast<int>(col), q.get_d());
        }
  exact.finalize();
  Eigen::SparseMatrix<double> a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  a.setFromTriplets(triplets.begin(), triplets.end());

  Truncation out;
  out.radius = radius;
  out.dim = dim;
  Extremes ex;
  if (dim <= budget.dense_dim) {
    ex = dense_extremes(a);
    out.solver = "dense";
  } else {
    ex = lanczos_extremes(a, std::min<std::size_t>(400, 40'000'000 / dim + 20));
    out.solver = "lanczos";
  }
  out.lambda_min = ex.lambda_min;
  out.lambda_max = ex.lambda_max;
  out.residual = (a * ex.min_vector - ex.lambda_min * ex.min_vector).norm();

  // Exact Rayleigh quotient of the (rationalized) Ritz vector.
  std::vector<Rational> x(dim);
  for (std::size_t i = 0; i < dim; ++i) x[i] = Rational(ex.min_vector(static_cast<Eigen::Index>(i)));
  Rational num(0), den(0);
  for (std::size_t r = 0; r < dim; ++r) {
    den += x[r] * x[r];
    if (sgn(x[r]) == 0) continue;
    Rational row(0);
    for (const auto& [c, q] : exact.row(r)) row += q * x[c];
    num += x[r] * row;
  }
  out.lambda_min_upper = sgn(den) == 0 ? Rational(0) : round_up(num / den, 40);
  return out;
}

}  // namespace l2h
