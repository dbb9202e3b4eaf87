#include <algorithm>
#include <map>

#include "l2h/errors.hpp"
#include "l2h/spectral.hpp"

namespace l2h {
namespace {

bool is_product_of_free(const Group& g) {
  if (g.kind() != GroupKind::direct_product) return false;
  const auto& d = static_cast<const DirectProductGroup&>(g);
  for (std::size_t f = 0; f < d.num_factors(); ++f)
    if (d.factor(f)->kind() != GroupKind::free) return false;
  return true;
}

void check_profile(const Group& g, const RDProfile& profile) {
  bool ok = (profile.kind == RDKind::free_group && g.kind() == GroupKind::free) ||
            (profile.kind == RDKind::product_of_free && is_product_of_free(g));
  if (!ok)
    throw Error(ErrorCode::profile_not_applicable,
                "profile " + profile.name() + " does not apply to a " + group_kind_name(g.kind()) + " group");
}

GroupRingMatrix as_matrix(const GroupRingElement& x) {
  GroupRingMatrix m(1, 1);
  m.at(0, 0) = x;
  return m;
}

GroupRingElement peel(const GroupRingElement& x, Rational* identity) {
  *identity = x.coefficient(Word{});
  GroupRingElement rest = x;
  rest.add_term(Word{}, -*identity);
  return rest;
}

template <class Bound>
Rational schur(const GroupRingMatrix& p, Bound entry_bound) {
  Rational max_row(0), max_col(0);
  std::vector<Rational> cols(p.cols());
  for (std::size_t i = 0; i < p.rows(); ++i) {
    Rational row(0);
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (p.at(i, j).is_zero()) continue;
      Rational b = entry_bound(p.at(i, j));
      row += b;
      cols[j] += b;
    }
    max_row = std::max(max_row, row);
  }
  for (const auto& c : cols) max_col = std::max(max_col, c);
  if (max_row == max_col) return max_row;
  return sqrt_up(max_row * max_col);
}

Integer sphere_size(std::size_t rank, std::size_t k) {
  if (k == 0) return Integer(1);
  Integer s;
  mpz_ui_pow_ui(s.get_mpz_t(), 2 * rank - 1, k - 1);
  return s * static_cast<unsigned long>(2 * rank);
}

template <class T>
std::vector<T> times_adjacency(std::size_t rank, const std::vector<T>& f) {
  const unsigned long deg = 2 * rank, branch = 2 * rank - 1;
  std::vector<T> out(f.size() + 1);
  if (f.size() > 1) out[0] = f[1] * deg;
  for (std::size_t k = 1; k < out.size(); ++k) {
    out[k] = f[k - 1];
    if (k + 1 < f.size()) out[k] += f[k + 1] * branch;
  }
  return out;
}

template <class T>
std::vector<T> radial_product(std::size_t rank, const std::vector<T>& f, const std::vector<T>& s) {
  std::vector<T> out(f.size() + (s.empty() ? 0 : s.size() - 1));
  auto accumulate = [&](const std::vector<T>& g, const T& coeff) {
    if (coeff == 0) return;
    for (std::size_t k = 0; k < g.size(); ++k) out[k] += g[k] * coeff;
  };
  if (s.empty()) return out;
  std::vector<T> prev = f;
  accumulate(prev, s[0]);
  if (s.size() == 1) return out;
  std::vector<T> cur = times_adjacency(rank, f);
  accumulate(cur, s[1]);
  for (std::size_t j = 1; j + 1 < s.size(); ++j) {
    // chi_(j+1) = A chi_j - c_j chi_(j-1), c_1 = 2n and c_j = 2n - 1 after.
    const unsigned long cj = j == 1 ? 2 * rank : 2 * rank - 1;
    std::vector<T> next = times_adjacency(rank, cur);
    for (std::size_t k = 0; k < prev.size(); ++k) next[k] -= prev[k] * cj;
    accumulate(next, s[j + 1]);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

struct RadialBounds {
  Rational rd;
  Rational l1;
};

// Bounds on the norm of the radial element with integer level values u.
RadialBounds radial_norms(std::size_t rank, const std::vector<Integer>& u, std::vector<Integer>& sizes) {
  while (sizes.size() < u.size()) sizes.push_back(sphere_size(rank, sizes.size()));
  Rational rd(0);
  Integer l1(0);
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (u[k] == 0) continue;
    Integer a = abs(u[k]);
    l1 += a * sizes[k];
    rd += sqrt_up(Rational(a * a * sizes[k])) * static_cast<unsigned long>(k + 1);
  }
  return {rd, Rational(l1)};
}

// Radial engine: bounds from x^m for m = 1, 2, 4, ... (x has integer levels
// after scaling by `scale`).
NormBound radial_bound(std::size_t rank, const std::vector<Rational>& levels, bool use_rd, unsigned max_power) {
  Integer den(1);
  for (const auto& q : levels) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> x;
  for (const auto& q : levels) x.push_back(Integer(q * den));
  std::vector<Integer> sizes;
  NormBound best;
  bool have = false;
  auto consider = [&](const RadialBounds& b, unsigned m) {
    std::vector<std::pair<Rational, const char*>> options = {{b.l1, "l1-radial"}};
    if (use_rd) options.emplace_back(b.rd, "rd-radial");
    for (auto& [value, name] : options) {
      Rational bound = root_up(value, m) / Rational(den);
      if (!have || bound < best.value) {
        best = {bound, m, name, false};
        have = true;
      }
    }
  };
  std::vector<Integer> p = x;
  consider(radial_norms(rank, p, sizes), 1);
  const unsigned top = 2 * std::max(1u, max_power);
  for (unsigned m = 2; m <= top; ++m) {
    p = radial_product(rank, p, x);
    if ((m & (m - 1)) == 0) consider(radial_norms(rank, p, sizes), m);
  }
  return best;
}

Integer matrix_denominator(const GroupRingMatrix& s) {
  Integer d(1);
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) {
      Integer e = common_denominator(s.at(i, j));
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), e.get_mpz_t());
    }
  return d;
}

NormBound generic_bound(const Group& g, const GroupRingMatrix& s, GapMethod method, const SpectralBudget& budget) {
  RDProfile profile = rd_profile_for(g);
  const bool use_rd = method != GapMethod::l1 && profile.kind != RDKind::none;
  const Integer den = matrix_denominator(s);
  GroupRingMatrix p = mat_scale(Rational(den), s);
  NormBound best;
  bool have = false;
  const unsigned top = 2 * std::max(1u, budget.max_power);
  for (unsigned m = 1; m <= top; m *= 2) {
    if (m > 1) {
      try {
        p = compose(g, p, p, budget.limits);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::support_cap_exceeded) throw;
        break;
      }
    }
    Rational l1 = schur(p, [](const GroupRingElement& x) { return l1_norm(x); });
    Rational b = root_up(l1, m) / Rational(den);
    if (!have || b < best.value) {
      best = {b, m, "l1", false};
      have = true;
    }
    if (use_rd) {
      Rational rd = schur(p, [&](const GroupRingElement& x) { return rd_weighted_norm(g, x, profile); });
      Rational r = root_up(rd, m) / Rational(den);
      if (r < best.value) best = {r, m, "rd", profile.empirical};
    }
  }
  return best;
}

NormBound subadditive_bound(const DirectProductGroup& d, const GroupRingElement& x, const SpectralBudget& budget) {
  Rational identity;
  GroupRingElement rest = peel(x, &identity);
  std::vector<GroupRingElement> parts(d.num_factors());
  GroupRingElement mixed;
  for (const auto& [w, q] : rest.terms()) {
    if (auto f = d.single_factor(w))
      parts[*f].add_term(d.split(w)[*f], q);
    else
      mixed.add_term(w, q);
  }
  NormBound out{abs(identity), 1, "subadditive", false};
  unsigned power = 1;
  for (std::size_t f = 0; f < d.num_factors(); ++f) {
    if (parts[f].is_zero()) continue;
    NormBound b = norm_upper_bound(*d.factor(f), as_matrix(parts[f]), GapMethod::automatic, budget);
    out.value += b.value;
    out.empirical = out.empirical || b.empirical;
    power = std::max(power, b.power);
  }
  if (!mixed.is_zero()) {
    NormBound b = generic_bound(d, as_matrix(mixed), GapMethod::automatic, budget);
    out.value += b.value;
    out.empirical = out.empirical || b.empirical;
  }
  out.power = power;
  return out;
}

}  // namespace

std::string RDProfile::name() const {
  switch (kind) {
    case RDKind::free_group: return "FreeGroup";
    case RDKind::product_of_free: return "ProductOfFree";
    case RDKind::none: return "None";
  }
  return "None";
}

RDProfile rd_profile_for(const Group& g) {
  if (g.kind() == GroupKind::free) return {RDKind::free_group, false};
  if (is_product_of_free(g)) return {RDKind::product_of_free, true};
  return {};
}

Rational rd_weighted_norm(const Group& g, const GroupRingElement& x, const RDProfile& profile) {
  check_profile(g, profile);
  std::map<std::vector<std::size_t>, Rational> spheres;
  if (profile.kind == RDKind::free_group) {
    for (const auto& [w, q] : x.terms()) spheres[{w.size()}] += q * q;
  } else {
    const auto& d = static_cast<const DirectProductGroup&>(g);
    for (const auto& [w, q] : x.terms()) {
      std::vector<std::size_t> key;
      for (const auto& part : d.split(w)) key.push_back(part.size());
      spheres[key] += q * q;
    }
  }
  Rational total(0);
  for (const auto& [key, sq] : spheres) {
    unsigned long weight = 1;
    for (auto k : key) weight *= k + 1;
    total += sqrt_up(sq) * weight;
  }
  return total;
}

Rational power_trace_lower_bound(const Group& g, const GroupRingMatrix& s, unsigned n, const RingLimits& limits) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "power must be positive");
  if (!is_self_adjoint(g, s)) throw Error(ErrorCode::invalid_argument, "operator is not self-adjoint");
  // <delta_e e_i, S^(2n) delta_e e_i> is the squared l2-norm of column i of S^n.
  GroupRingMatrix p = compose_power(g, s, n, limits);
  Rational best(0);
  for (std::size_t i = 0; i < p.cols(); ++i) {
    Rational col(0);
    for (std::size_t l = 0; l < p.rows(); ++l) col += l2_norm_squared(p.at(l, i));
    best = std::max(best, col);
  }
  return root_down(best, 2 * n);
}

Rational power_trace_lower_bound(const Group& g, const GroupRingElement& s, unsigned n, const RingLimits& limits) {
  return power_trace_lower_bound(g, as_matrix(s), n, limits);
}

Rational l1_upper_bound(const Group& g, const GroupRingMatrix& s, unsigned n, const RingLimits& limits) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "power must be positive");
  if (!is_self_adjoint(g, s)) throw Error(ErrorCode::invalid_argument, "operator is not self-adjoint");
  GroupRingMatrix p = compose_power(g, s, 2 * n, limits);
  return root_up(schur(p, [](const GroupRingElement& x) { return l1_norm(x); }), 2 * n);
}

Rational l1_upper_bound(const Group& g, const GroupRingElement& s, unsigned n, const RingLimits& limits) {
  return l1_upper_bound(g, as_matrix(s), n, limits);
}

Rational rd_upper_bound(const Group& g, const GroupRingMatrix& s, unsigned n, const RDProfile& profile,
                        const RingLimits& limits) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "power must be positive");
  check_profile(g, profile);
  if (!is_self_adjoint(g, s)) throw Error(ErrorCode::invalid_argument, "operator is not self-adjoint");
  GroupRingMatrix p = compose_power(g, s, 2 * n, limits);
  return root_up(schur(p, [&](const GroupRingElement& x) { return rd_weighted_norm(g, x, profile); }), 2 * n);
}

Rational rd_upper_bound(const Group& g, const GroupRingElement& s, unsigned n, const RDProfile& profile,
                        const RingLimits& limits) {
  return rd_upper_bound(g, as_matrix(s), n, profile, limits);
}

std::vector<Rational> radial_power(std::size_t rank, unsigned power) {
  std::vector<Integer> f = {Integer(1)};
  for (unsigned i = 0; i < power; ++i) f = times_adjacency(rank, f);
  return std::vector<Rational>(f.begin(), f.end());
}

std::vector<Rational> radial_multiply(std::size_t rank, const std::vector<Rational>& f,
                                      const std::vector<Rational>& s) {
  return radial_product(rank, f, s);
}

std::optional<std::vector<Rational>> radial_coefficients(const Group& g, const GroupRingElement& x) {
  if (g.kind() != GroupKind::free || g.num_generators() == 0) return std::nullopt;
  const std::size_t rank = g.num_generators();
  std::map<std::size_t, std::pair<Rational, Integer>> levels;  // value, count
  for (const auto& [w, q] : x.terms()) {
    auto [it, inserted] = levels.try_emplace(w.size(), q, Integer(0));
    if (!inserted && it->second.first != q) return std::nullopt;
    it->second.second += 1;
  }
  std::vector<Rational> out(levels.empty() ? 1 : levels.rbegin()->first + 1);
  for (const auto& [k, vc] : levels) {
    if (vc.second != sphere_size(rank, k)) return std::nullopt;
    out[k] = vc.first;
  }
  return out;
}

NormBound norm_upper_bound(const Group& g, const GroupRingMatrix& s, GapMethod method, const SpectralBudget& budget) {
  if (s.rows() != s.cols()) throw Error(ErrorCode::dimension_mismatch, "norm bound of a non-square matrix");
  if (s.is_zero()) return {Rational(0), 1, "zero", false};
  if (s.rows() == 1) {
    const GroupRingElement& x = s.at(0, 0);
    Rational identity;
    GroupRingElement rest = peel(x, &identity);
    if (rest.is_zero()) return {abs(identity), 1, "scalar", false};
    if (auto levels = radial_coefficients(g, x)) {
      const bool use_rd = method != GapMethod::l1;
      NormBound direct = radial_bound(g.num_generators(), *levels, use_rd, budget.max_power);
      auto rest_levels = radial_coefficients(g, rest);
      NormBound peeled = radial_bound(g.num_generators(), *rest_levels, use_rd, budget.max_power);
      peeled.value += abs(identity);
      peeled.method += "+peel";
      return peeled.value < direct.value ? peeled : direct;
    }
    if (g.kind() == GroupKind::direct_product &&
        (method == GapMethod::subadditive || method == GapMethod::automatic))
      return subadditive_bound(static_cast<const DirectProductGroup&>(g), x, budget);
    NormBound direct = generic_bound(g, s, method, budget);
    if (sgn(identity) != 0) {
      NormBound peeled = generic_bound(g, as_matrix(rest), method, budget);
      peeled.value += abs(identity);
      peeled.method += "+peel";
      if (peeled.value < direct.value) return peeled;
    }
    return direct;
  }
  return generic_bound(g, s, method, budget);
}

}  // namespace l2h
