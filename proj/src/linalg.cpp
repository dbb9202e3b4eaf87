#include "l2h/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "l2h/errors.hpp"

namespace l2h {

void SparseMatrix::add(std::size_t i, std::size_t j, const Rational& q) {
  if (i >= rows_ || j >= cols_) throw Error(ErrorCode::dimension_mismatch, "sparse entry out of range");
  if (sgn(q) == 0) return;
  data_[i].emplace_back(j, q);
}

void SparseMatrix::finalize() {
  for (auto& row : data_) {
    std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    Row merged;
    for (auto& e : row) {
      if (!merged.empty() && merged.back().first == e.first)
        merged.back().second += e.second;
      else
        merged.push_back(std::move(e));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Entry& e) { return sgn(e.second) == 0; }),
                 merged.end());
    row = std::move(merged);
  }
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

Rational SparseMatrix::at(std::size_t i, std::size_t j) const {
  for (const auto& [c, v] : data_.at(i))
    if (c == j) return v;
  return Rational(0);
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) t.data_[j].emplace_back(i, v);
  return t;  // rows are already sorted by construction order
}

SparseMatrix SparseMatrix::hconcat(const SparseMatrix& other) const {
  if (rows_ != other.rows_) throw Error(ErrorCode::dimension_mismatch, "hconcat: row counts differ");
  SparseMatrix out(rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    out.data_[i] = data_[i];
    for (const auto& [j, v] : other.data_[i]) out.data_[i].emplace_back(j + cols_, v);
  }
  return out;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& other) const {
  if (cols_ != other.rows_) throw Error(ErrorCode::dimension_mismatch, "sparse multiply: extents differ");
  SparseMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [l, a] : data_[i])
      for (const auto& [j, b] : other.data_[l]) out.data_[i].emplace_back(j, a * b);
  out.finalize();
  return out;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Row& r) { return r.empty(); });
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Rational>>& d, std::size_t cols) {
  SparseMatrix m(d.size(), cols);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(d[i][j]) != 0) m.data_[i].emplace_back(j, d[i][j]);
  return m;
}

std::vector<std::vector<Rational>> SparseMatrix::to_dense() const {
  std::vector<std::vector<Rational>> d(rows_, std::vector<Rational>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) d[i][j] = v;
  return d;
}

// ------------------------------------------------------- exact elimination

namespace {

using QRow = SparseMatrix::Row;

// row <- row - factor * pivot
QRow axpy(const QRow& row, const Rational& factor, const QRow& pivot) {
  QRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0;
  std::size_t j = 0;
  Rational tmp;
  while (i < row.size() || j < pivot.size()) {
    if (j >= pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back(row[i++]);
    } else if (i >= row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -factor * pivot[j].second);
      ++j;
    } else {
      tmp = row[i].second - factor * pivot[j].second;
      if (sgn(tmp) != 0) out.emplace_back(row[i].first, tmp);
      ++i;
      ++j;
    }
  }
  return out;
}

// Echelon form: map from leading column to a pivot row with leading value 1.
std::map<std::size_t, QRow> echelon(const SparseMatrix& m) {
  std::vector<std::size_t> order(m.rows());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return m.row(a).size() < m.row(b).size(); });
  std::map<std::size_t, QRow> pivots;
  for (std::size_t r : order) {
    QRow row = m.row(r);
    while (!row.empty()) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) break;
      Rational f = row.front().second;
      row = axpy(row, f, it->second);
    }
    if (row.empty()) continue;
    Rational lead = row.front().second;
    for (auto& e : row) e.second /= lead;
    pivots.emplace(row.front().first, std::move(row));
  }
  return pivots;
}

// ------------------------------------------------------ modular elimination

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 to_mod(const Rational& q, u64 p) {
  Integer pm;
  mpz_set_ui(pm.get_mpz_t(), 0);
  mpz_import(pm.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &p);
  Integer n;
  Integer d;
  mpz_mod(n.get_mpz_t(), q.get_num_mpz_t(), pm.get_mpz_t());
  mpz_mod(d.get_mpz_t(), q.get_den_mpz_t(), pm.get_mpz_t());
  u64 nn = 0;
  u64 dd = 0;
  mpz_export(&nn, nullptr, 1, sizeof(u64), 0, 0, n.get_mpz_t());
  mpz_export(&dd, nullptr, 1, sizeof(u64), 0, 0, d.get_mpz_t());
  if (dd == 0) throw Error(ErrorCode::internal, "denominator divisible by the modulus");
  return mulmod(nn, powmod(dd, p - 2, p), p);
}

using MRow = std::vector<std::pair<std::size_t, u64>>;

MRow axpy_mod(const MRow& row, u64 factor, const MRow& pivot, u64 p) {
  MRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j >= pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back(row[i++]);
    } else if (i >= row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, (p - mulmod(factor, pivot[j].second, p)) % p);
      ++j;
    } else {
      u64 v = (row[i].second + p - mulmod(factor, pivot[j].second, p)) % p;
      if (v) out.emplace_back(row[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

constexpr u64 kPrimeA = 2305843009213693951ull;  // 2^61 - 1
constexpr u64 kPrimeB = 4611686018427387847ull;  // largest prime below 2^62

}  // namespace

std::size_t exact_rank(const SparseMatrix& m) { return echelon(m).size(); }

std::size_t modular_rank(const SparseMatrix& m, std::uint64_t p) {
  std::vector<std::size_t> order(m.rows());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return m.row(a).size() < m.row(b).size(); });
  std::vector<MRow> pivot_of(m.cols());
  std::vector<bool> has_pivot(m.cols(), false);
  std::size_t rank = 0;
  for (std::size_t r : order) {
    MRow row;
    for (const auto& [j, v] : m.row(r)) {
      u64 x = to_mod(v, p);
      if (x) row.emplace_back(j, x);
    }
    while (!row.empty() && has_pivot[row.front().first]) {
      u64 f = row.front().second;
      row = axpy_mod(row, f, pivot_of[row.front().first], p);
    }
    if (row.empty()) continue;
    u64 inv = powmod(row.front().second, p - 2, p);
    for (auto& e : row) e.second = mulmod(e.second, inv, p);
    std::size_t lead = row.front().first;
    pivot_of[lead] = std::move(row);
    has_pivot[lead] = true;
    ++rank;
  }
  return rank;
}

RankResult rank(const SparseMatrix& m, RankMethod method) {
  if (method == RankMethod::automatic)
    method = (m.rows() <= 600 && m.cols() <= 600) ? RankMethod::exact : RankMethod::modular;
  if (method == RankMethod::exact) return {exact_rank(m), "exact"};
  return {std::max(modular_rank(m, kPrimeA), modular_rank(m, kPrimeB)), "modular"};
}

std::vector<std::vector<Rational>> nullspace(const SparseMatrix& m) {
  auto pivots = echelon(m);
  // Back-substitution to reduced row echelon form.
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const std::size_t c = it->first;
    const QRow& prow = it->second;
    for (auto jt = pivots.begin(); jt != pivots.end() && jt->first < c; ++jt) {
      QRow& row = jt->second;
      auto pos = std::lower_bound(row.begin(), row.end(), c,
                                  [](const SparseMatrix::Entry& e, std::size_t col) { return e.first < col; });
      if (pos == row.end() || pos->first != c) continue;
      Rational f = pos->second;
      row = axpy(row, f, prow);
    }
  }
  std::vector<long> free_slot(m.cols(), -1);
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (pivots.count(j)) continue;
    free_slot[j] = static_cast<long>(free_cols.size());
    free_cols.push_back(j);
  }
  std::vector<std::vector<Rational>> basis(free_cols.size(), std::vector<Rational>(m.cols()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) basis[k][free_cols[k]] = 1;
  for (const auto& [lead, row] : pivots)
    for (const auto& [j, v] : row)
      if (j != lead && free_slot[j] >= 0) basis[static_cast<std::size_t>(free_slot[j])][lead] = -v;
  return basis;
}

std::vector<Integer> clear_denominators(const std::vector<Rational>& v, Rational* scalar) {
  Integer den(1);
  for (const auto& q : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> out;
  Integer g(0);
  for (const auto& q : v) {
    Integer x = q.get_num() * (den / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    out.push_back(x);
  }
  Rational factor(den);
  if (g != 0) {
    for (auto& x : out) x /= g;
    factor /= Rational(g);
  }
  auto lead = std::find_if(out.begin(), out.end(), [](const Integer& x) { return sgn(x) != 0; });
  if (lead != out.end() && sgn(*lead) < 0) {
    for (auto& x : out) x = -x;
    factor = -factor;
  }
  if (scalar) *scalar = factor;
  return out;
}

std::vector<Integer> smith_invariants(std::vector<std::vector<Integer>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<Integer> inv;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Smallest nonzero entry of the trailing block as pivot.
    std::size_t pi = rows;
    std::size_t pj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (sgn(a[i][j]) != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    std::swap(a[t], a[pi]);
    for (auto& row : a) std::swap(row[t], row[pj]);
    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (sgn(a[i][t]) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
      for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
      if (sgn(a[i][t]) != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (sgn(a[t][j]) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
      for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
      if (sgn(a[t][j]) != 0) clean = false;
    }
    if (!clean) continue;
    // Pivot must divide the rest of the block.
    bool divides = true;
    for (std::size_t i = t + 1; i < rows && divides; ++i)
      for (std::size_t j = t + 1; j < cols; ++j)
        if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
          for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
          divides = false;
          break;
        }
    if (!divides) continue;
    inv.push_back(abs(a[t][t]));
    ++t;
  }
  return inv;
}

bool is_positive_definite(const std::vector<std::vector<Rational>>& m) {
  auto a = m;
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(a[k][k]) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(a[i][k]) == 0) continue;
      Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return true;
}

// ------------------------------------------------------------- ModularSpan

ModularSpan::ModularSpan(std::size_t dim, std::uint64_t prime) : dim_(dim), p_(prime), lead_index_(dim, -1) {}

std::vector<std::uint64_t> ModularSpan::to_mod(const std::vector<std::pair<std::size_t, Rational>>& v) const {
  std::vector<std::uint64_t> out(dim_, 0);
  for (const auto& [j, q] : v) out.at(j) = (out[j] + l2h::to_mod(q, p_)) % p_;
  return out;
}

std::vector<std::uint64_t> ModularSpan::reduce(std::vector<std::uint64_t> v) const {
  for (std::size_t c = 0; c < dim_; ++c) {
    if (v[c] == 0 || lead_index_[c] < 0) continue;
    const auto& prow = pivots_[static_cast<std::size_t>(lead_index_[c])].second;
    const u64 f = v[c];
    for (std::size_t j = c; j < dim_; ++j)
      if (prow[j]) v[j] = (v[j] + p_ - mulmod(f, prow[j], p_)) % p_;
  }
  return v;
}

std::size_t ModularSpan::add(const std::vector<std::vector<std::pair<std::size_t, Rational>>>& vectors) {
  std::size_t added = 0;
  for (const auto& vec : vectors) {
    auto v = reduce(to_mod(vec));
    auto lead = std::find_if(v.begin(), v.end(), [](u64 x) { return x != 0; });
    if (lead == v.end()) continue;
    std::size_t c = static_cast<std::size_t>(lead - v.begin());
    u64 inv = powmod(v[c], p_ - 2, p_);
    for (auto& x : v) x = mulmod(x, inv, p_);
    lead_index_[c] = static_cast<long>(pivots_.size());
    pivots_.emplace_back(c, std::move(v));
    ++added;
  }
  return added;
}

std::size_t ModularSpan::rank_increase(
    const std::vector<std::vector<std::pair<std::size_t, Rational>>>& vectors) const {
  ModularSpan copy = *this;
  return copy.add(vectors);
}

}  // namespace l2h
