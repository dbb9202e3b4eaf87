#pragma once

// Exact linear algebra over Q and Z: sparse rank and kernels, a modular rank
// fast path, Smith normal form and exact definiteness tests.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "l2h/rational.hpp"

namespace l2h {

class SparseMatrix {
 public:
  using Entry = std::pair<std::size_t, Rational>;  // (column, value), sorted by column
  using Row = std::vector<Entry>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  /// Accumulates into (i, j). Call finalize() before reading rows.
  void add(std::size_t i, std::size_t j, const Rational& q);
  void finalize();
  const Row& row(std::size_t i) const { return data_.at(i); }
  std::size_t nonzeros() const;
  Rational at(std::size_t i, std::size_t j) const;

  SparseMatrix transpose() const;
  /// Horizontal concatenation [this | other].
  SparseMatrix hconcat(const SparseMatrix& other) const;
  SparseMatrix multiply(const SparseMatrix& other) const;
  bool is_zero() const;

  static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& d, std::size_t cols);
  std::vector<std::vector<Rational>> to_dense() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Row> data_;
};

enum class RankMethod { automatic, exact, modular };

struct RankResult {
  std::size_t rank = 0;
  /// "exact" or "modular" (rank mod large primes; a lower bound for the
  /// rational rank that is equal to it outside a finite set of primes).
  std::string method;
};

RankResult rank(const SparseMatrix& m, RankMethod method = RankMethod::automatic);
std::size_t exact_rank(const SparseMatrix& m);
std::size_t modular_rank(const SparseMatrix& m, std::uint64_t prime);

/// Basis of {x : m x = 0} from the reduced row echelon form; one vector per
/// free column in increasing column order.
std::vector<std::vector<Rational>> nullspace(const SparseMatrix& m);

/// Primitive integral multiple of a rational vector with positive leading
/// entry; `scalar` receives the positive rational factor applied.
std::vector<Integer> clear_denominators(const std::vector<Rational>& v, Rational* scalar = nullptr);

/// Invariant factors (nonzero diagonal of the Smith normal form).
std::vector<Integer> smith_invariants(std::vector<std::vector<Integer>> m);

/// Symmetric positive definiteness by exact LDL^T pivots.
bool is_positive_definite(const std::vector<std::vector<Rational>>& m);

/// Incremental column-space tracker modulo a prime, for greedy selection.
class ModularSpan {
 public:
  explicit ModularSpan(std::size_t dim, std::uint64_t prime = 2305843009213693951ull);
  /// Adds the vectors, returning how many were independent of the span.
  std::size_t add(const std::vector<std::vector<std::pair<std::size_t, Rational>>>& vectors);
  /// Like add() but leaves the span unchanged.
  std::size_t rank_increase(const std::vector<std::vector<std::pair<std::size_t, Rational>>>& vectors) const;
  std::size_t rank() const noexcept { return pivots_.size(); }

 private:
  std::vector<std::uint64_t> reduce(std::vector<std::uint64_t> v) const;
  std::vector<std::uint64_t> to_mod(const std::vector<std::pair<std::size_t, Rational>>& v) const;

  std::size_t dim_;
  std::uint64_t p_;
  std::vector<std::pair<std::size_t, std::vector<std::uint64_t>>> pivots_;  // (lead, normalized row)
  std::vector<long> lead_index_;
};

}  // namespace l2h
