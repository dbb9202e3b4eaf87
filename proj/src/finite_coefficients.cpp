#include "l2h/finite_coefficients.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "l2h/errors.hpp"
#include "random_util.hpp"

namespace l2h {
namespace {

Permutation inverse_of(const Permutation& p) {
  Permutation inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<std::uint32_t>(i);
  return inv;
}

Permutation identity_perm(std::size_t m) {
  Permutation p(m);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

// Right action: first x, then y.
Permutation then(const Permutation& x, const Permutation& y) {
  Permutation out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = y[x[i]];
  return out;
}

Permutation cycle(std::size_t m) {
  Permutation p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = static_cast<std::uint32_t>((i + 1) % m);
  return p;
}

std::uint32_t act(std::uint32_t point, std::span<const Letter> word, const std::vector<Permutation>& perms,
                  const std::vector<Permutation>& inverses) {
  for (Letter l : word) point = (is_inverse(l) ? inverses : perms)[generator_of(l)][point];
  return point;
}

bool is_permutation(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  for (auto x : p) {
    if (x >= p.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

DenseMatrix identity_dense(std::size_t n) {
  DenseMatrix m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

DenseMatrix dense_mul(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  DenseMatrix out(n, std::vector<Rational>(c));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (sgn(a[i][l]) == 0) continue;
      for (std::size_t j = 0; j < c; ++j)
        if (sgn(b[l][j]) != 0) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

std::optional<DenseMatrix> dense_inverse(DenseMatrix a) {
  const std::size_t n = a.size();
  DenseMatrix inv = identity_dense(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Rational f = 1 / a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] *= f;
      inv[c][j] *= f;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(a[r][c]) == 0) continue;
      Rational g = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= g * a[c][j];
        inv[r][j] -= g * inv[c][j];
      }
    }
  }
  return inv;
}

// Relators of p whose letters all belong to `gens`, rewritten in local indices.
Presentation sub_presentation(const Presentation& p, const std::vector<std::size_t>& gens) {
  Presentation out;
  out.name = p.name;
  std::vector<long> local(p.generators.size(), -1);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    local[gens[i]] = static_cast<long>(i);
    out.generators.push_back(p.generators[gens[i]]);
  }
  for (const auto& r : p.relators) {
    std::vector<Letter> mapped;
    bool inside = true;
    for (Letter l : r) {
      long j = local[generator_of(l)];
      if (j < 0) {
        inside = false;
        break;
      }
      mapped.push_back(make_letter(static_cast<std::size_t>(j), is_inverse(l)));
    }
    if (inside) out.relators.push_back(std::move(mapped));
  }
  return out;
}

std::vector<Permutation> diagonal_images(std::size_t gens, std::size_t m) {
  return std::vector<Permutation>(gens, cycle(m));
}

std::vector<FiniteQuotient> free_library(const Presentation& p, GroupPtr g, const QuotientOptions& opts) {
  std::vector<FiniteQuotient> out;
  const std::size_t n = g->num_generators();
  if (n == 1) {
    for (std::size_t m = 2; out.size() < opts.budget && m <= opts.max_order; m *= 2)
      if (m >= opts.min_order) out.push_back(make_quotient(p, g, diagonal_images(1, m), "cyclic " + std::to_string(m)));
    return out;
  }
  if (opts.min_order <= 2 && opts.budget > 0) {
    Permutation t = {1, 0};
    out.push_back(make_quotient(p, g, std::vector<Permutation>(n, t), "transposition"));
  }
  std::mt19937_64 rng(opts.seed);
  for (std::size_t d = 3; out.size() < opts.budget && d <= 7; ++d) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::vector<Permutation> images;
      for (std::size_t i = 0; i < n; ++i) images.push_back(detail::random_permutation(rng, d));
      FiniteQuotient q = make_quotient(p, g, images, "symmetric image degree " + std::to_string(d), 5040);
      if (!q.transitive || q.order < opts.min_order || q.order > opts.max_order) continue;
      out.push_back(std::move(q));
      break;
    }
  }
  return out;
}

FiniteQuotient regular_self_quotient(const Presentation& p, GroupPtr g, const FiniteTableGroup& f) {
  std::vector<Permutation> images;
  for (std::size_t gen = 0; gen < f.num_generators(); ++gen) {
    Permutation img(f.order());
    std::size_t s = f.generator_images()[gen];
    for (std::size_t x = 0; x < f.order(); ++x) img[x] = static_cast<std::uint32_t>(f.table()[x][s]);
    images.push_back(std::move(img));
  }
  return make_quotient(p, g, std::move(images), "regular action");
}

}  // namespace

FiniteQuotient make_quotient(const Presentation& p, GroupPtr g, std::vector<Permutation> images, std::string label,
                             std::size_t order_cap) {
  if (images.size() != g->num_generators())
    throw Error(ErrorCode::dimension_mismatch, "quotient needs one permutation per generator");
  const std::size_t m = images.empty() ? 1 : images[0].size();
  for (const auto& img : images)
    if (img.size() != m || !is_permutation(img)) throw Error(ErrorCode::invalid_argument, "invalid permutation image");
  std::vector<Permutation> inverses;
  for (const auto& img : images) inverses.push_back(inverse_of(img));
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (std::uint32_t x = 0; x < m; ++x)
      if (act(x, p.relators[r], images, inverses) != x)
        throw Error(ErrorCode::relator_violation,
                    "relator " + std::to_string(r + 1) + " does not act trivially (" + label + ")");

  FiniteQuotient q;
  q.source = std::move(g);
  q.m = m;
  q.label = std::move(label);
  std::map<Permutation, std::size_t> index;
  q.elements.push_back(identity_perm(m));
  index.emplace(q.elements[0], 0);
  for (std::size_t i = 0; i < q.elements.size(); ++i)
    for (const auto& s : images) {
      Permutation next = then(q.elements[i], s);
      if (index.count(next)) continue;
      if (q.elements.size() >= order_cap)
        throw Error(ErrorCode::support_cap_exceeded, "quotient order exceeds " + std::to_string(order_cap));
      index.emplace(next, q.elements.size());
      q.elements.push_back(std::move(next));
    }
  q.order = q.elements.size();
  std::vector<bool> reached(m, false);
  std::vector<std::uint32_t> stack = {0};
  reached[0] = true;
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (const auto& s : images)
      if (!reached[s[x]]) {
        reached[s[x]] = true;
        stack.push_back(s[x]);
      }
  }
  q.transitive = std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
  q.images = std::move(images);
  return q;
}

std::vector<FiniteQuotient> quotient_library(const Presentation& p, GroupPtr g, const QuotientOptions& opts) {
  std::vector<FiniteQuotient> out;
  switch (g->kind()) {
    case GroupKind::free:
      return free_library(p, g, opts);
    case GroupKind::finite_table: {
      auto q = regular_self_quotient(p, g, static_cast<const FiniteTableGroup&>(*g));
      if (opts.budget > 0 && q.order >= opts.min_order && q.order <= opts.max_order) out.push_back(std::move(q));
      return out;
    }
    case GroupKind::direct_product: {
      const auto& d = static_cast<const DirectProductGroup&>(*g);
      std::vector<std::vector<FiniteQuotient>> per_factor;
      for (std::size_t f = 0; f < d.num_factors(); ++f) {
        std::vector<std::size_t> gens;
        for (std::size_t gen = 0; gen < g->num_generators(); ++gen)
          if (d.factor_of_generator(gen) == f) gens.push_back(gen);
        QuotientOptions sub = opts;
        sub.min_order = 1;
        sub.budget = opts.budget + 8;
        per_factor.push_back(quotient_library(sub_presentation(p, gens), d.factor(f), sub));
      }
      for (std::size_t idx = 0; out.size() < opts.budget; ++idx) {
        std::size_t m = 1, order = 1;
        bool available = true;
        for (const auto& lib : per_factor) {
          if (idx >= lib.size()) {
            available = false;
            break;
          }
          m *= lib[idx].m;
          order *= lib[idx].order;
        }
        if (!available || order > opts.max_order) break;
        if (order < opts.min_order) continue;
        // Points of the product are mixed-radix tuples, factor 0 fastest.
        std::vector<Permutation> images(g->num_generators(), Permutation(m));
        for (std::size_t gen = 0; gen < g->num_generators(); ++gen) {
          std::size_t f = d.factor_of_generator(gen);
          const Permutation& local = per_factor[f][idx].images[d.local_index(gen)];
          std::size_t stride = 1;
          for (std::size_t e = 0; e < f; ++e) stride *= per_factor[e][idx].m;
          const std::size_t mf = per_factor[f][idx].m;
          for (std::size_t x = 0; x < m; ++x) {
            std::size_t digit = (x / stride) % mf;
            images[gen][x] = static_cast<std::uint32_t>(x + (local[digit] - digit) * stride);
          }
        }
        std::string label = "product";
        for (const auto& lib : per_factor) label += " " + std::to_string(lib[idx].order);
        out.push_back(make_quotient(p, g, std::move(images), label, opts.max_order + 1));
      }
      return out;
    }
    case GroupKind::rewriting:
      return nested_cyclic_chain(p, g, opts.budget, opts.min_order, opts.max_order);
  }
  return out;
}

std::vector<FiniteQuotient> nested_cyclic_chain(const Presentation& p, GroupPtr g, std::size_t count,
                                                std::size_t min_order, std::size_t max_order) {
  std::vector<FiniteQuotient> out;
  for (std::size_t m = 2; out.size() < count && m <= max_order; m *= 2) {
    if (m < min_order) continue;
    try {
      out.push_back(make_quotient(p, g, diagonal_images(g->num_generators(), m), "cyclic " + std::to_string(m)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::relator_violation) throw;
    }
  }
  return out;
}

// ------------------------------------------------------------------ modules

DenseMatrix CoefficientModule::action(const Word& w) const {
  DenseMatrix x = identity_dense(dim);
  if (is_permutation()) {
    DenseMatrix out(dim, std::vector<Rational>(dim));
    for (std::uint32_t pt = 0; pt < dim; ++pt) out[act(pt, w.letters, perms, inverse_perms)][pt] = 1;
    return out;
  }
  for (Letter l : w.letters) x = dense_mul((is_inverse(l) ? inverse_matrices : matrices)[generator_of(l)], x);
  return x;
}

CoefficientModule regular_module(const FiniteQuotient& q) {
  std::map<Permutation, std::size_t> index;
  for (std::size_t i = 0; i < q.elements.size(); ++i) index.emplace(q.elements[i], i);
  CoefficientModule v;
  v.dim = q.order;
  v.description = "regular module of " + q.label + " (order " + std::to_string(q.order) + ")";
  for (const auto& s : q.images) {
    Permutation img(q.order);
    for (std::size_t i = 0; i < q.order; ++i) img[i] = static_cast<std::uint32_t>(index.at(then(q.elements[i], s)));
    v.inverse_perms.push_back(inverse_of(img));
    v.perms.push_back(std::move(img));
  }
  return v;
}

CoefficientModule permutation_module(const FiniteQuotient& q) {
  CoefficientModule v;
  v.dim = q.m;
  v.description = "permutation module of " + q.label + " on " + std::to_string(q.m) + " points";
  v.perms = q.images;
  for (const auto& s : q.images) v.inverse_perms.push_back(inverse_of(s));
  return v;
}

CoefficientModule matrix_module(const Presentation& p, std::vector<DenseMatrix> generators, std::string description) {
  if (generators.size() != p.generators.size())
    throw Error(ErrorCode::dimension_mismatch, "module needs one matrix per generator");
  CoefficientModule v;
  v.dim = generators.empty() ? 0 : generators[0].size();
  v.description = std::move(description);
  for (const auto& m : generators) {
    if (m.size() != v.dim || std::any_of(m.begin(), m.end(), [&](const auto& r) { return r.size() != v.dim; }))
      throw Error(ErrorCode::dimension_mismatch, "module matrices must be square of equal size");
    auto inv = dense_inverse(m);
    if (!inv) throw Error(ErrorCode::invalid_argument, "module matrix is singular");
    v.inverse_matrices.push_back(std::move(*inv));
  }
  v.matrices = std::move(generators);
  const DenseMatrix id = identity_dense(v.dim);
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    if (v.action(Word{p.relators[r]}) != id)
      throw Error(ErrorCode::relator_violation, "relator " + std::to_string(r + 1) + " does not act trivially");
  return v;
}

CoefficientModule random_matrix_module(const Presentation& p, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<DenseMatrix> mats;
  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    DenseMatrix m = identity_dense(dim);
    // A product of elementary matrices and a signed permutation.
    for (std::size_t step = 0; step < 3 * dim; ++step) {
      std::size_t i = detail::uniform_below(rng, dim), j = detail::uniform_below(rng, dim);
      if (i == j) continue;
      long f = detail::uniform_int(rng, -2, 2);
      for (std::size_t c = 0; c < dim; ++c) m[i][c] += f * m[j][c];
    }
    auto perm = detail::random_permutation(rng, dim);
    DenseMatrix pm(dim, std::vector<Rational>(dim));
    for (std::size_t i = 0; i < dim; ++i) pm[perm[i]][i] = detail::uniform_below(rng, 2) ? 1 : -1;
    mats.push_back(dense_mul(pm, m));
  }
  return matrix_module(p, std::move(mats), "random unimodular module of dimension " + std::to_string(dim) +
                                               " (seed " + std::to_string(seed) + ")");
}

// ------------------------------------------------------------------ induce

FiniteComplex induce(const ChainComplex& c, const CoefficientModule& v) {
  FiniteComplex out;
  out.description = v.description;
  const std::size_t d = v.dim;
  for (auto r : c.ranks) out.dims.push_back(r * d);
  const bool perm = v.is_permutation();
  for (const auto& b : c.boundaries) {
    SparseMatrix s(b.rows() * d, b.cols() * d);
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        for (const auto& [w, q] : b.at(i, j).terms()) {
          if (perm) {
            for (std::uint32_t pt = 0; pt < d; ++pt)
              s.add(i * d + act(pt, w.letters, v.perms, v.inverse_perms), j * d + pt, q);
          } else {
            DenseMatrix a = v.action(w);
            for (std::size_t x = 0; x < d; ++x)
              for (std::size_t y = 0; y < d; ++y)
                if (sgn(a[x][y]) != 0) s.add(i * d + x, j * d + y, q * a[x][y]);
          }
        }
    s.finalize();
    out.boundaries.push_back(std::move(s));
  }
  return out;
}

FiniteComplex induce(const ChainComplex& c, const FiniteQuotient& q) { return induce(c, regular_module(q)); }

BettiNumbers betti_numbers(const FiniteComplex& fc, RankMethod method) {
  std::vector<std::size_t> ranks(fc.dims.size() + 1, 0);  // ranks[k] = rank b_k
  BettiNumbers out;
  out.rank_method = "exact";
  for (std::size_t k = 1; k < fc.dims.size(); ++k) {
    RankResult r = rank(fc.boundaries[k - 1], method);
    ranks[k] = r.rank;
    if (r.method == "modular") out.rank_method = "modular";
  }
  for (std::size_t k = 0; k < fc.dims.size(); ++k) out.values.push_back(fc.dims[k] - ranks[k] - ranks[k + 1]);
  return out;
}

std::size_t betti(const FiniteComplex& fc, std::size_t k, RankMethod method) {
  if (k >= fc.dims.size()) return 0;
  std::size_t out = fc.dims[k];
  if (k >= 1) out -= rank(fc.boundaries[k - 1], method).rank;
  if (k + 1 < fc.dims.size()) out -= rank(fc.boundaries[k], method).rank;
  return out;
}

std::vector<LuckEstimate> luck_estimates(const ChainComplex& c, const FiniteQuotient& q, RankMethod method) {
  BettiNumbers b = betti_numbers(induce(c, q), method);
  std::vector<LuckEstimate> out;
  for (std::size_t k = 0; k < b.values.size(); ++k) {
    LuckEstimate e;
    e.degree = k;
    e.betti = b.values[k];
    e.quotient_order = q.order;
    e.value = Rational(static_cast<unsigned long>(b.values[k]), static_cast<unsigned long>(q.order));
    e.value.canonicalize();
    e.rank_method = b.rank_method;
    out.push_back(std::move(e));
  }
  return out;
}

LuckEstimate luck_estimate(const ChainComplex& c, const FiniteQuotient& q, std::size_t k) {
  if (k > c.top_degree())
    throw Error(ErrorCode::degree_out_of_range, "degree " + std::to_string(k) + " above the complex");
  return luck_estimates(c, q).at(k);
}

// ---------------------------------------------------------------- Hopf check

ResolutionSpec builtin_resolution(GroupPtr g) {
  ResolutionSpec res;
  res.complex.group = g;
  if (g->kind() == GroupKind::free) {
    const std::size_t n = g->num_generators();
    res.tag = "free";
    res.complex.ranks = {1, n};
    GroupRingMatrix b1(1, n);
    for (std::size_t i = 0; i < n; ++i) {
      b1.at(0, i).add_term(g->generator(i), Rational(1));
      b1.at(0, i).add_term(g->identity(), Rational(-1));
    }
    res.complex.boundaries.push_back(std::move(b1));
    return res;
  }
  if (g->kind() == GroupKind::finite_table && g->num_generators() == 1) {
    const auto& f = static_cast<const FiniteTableGroup&>(*g);
    res.tag = "cyclic";
    GroupRingElement a_minus_1 = GroupRingElement::monomial(g->generator(0), Rational(1));
    a_minus_1.add_term(g->identity(), Rational(-1));
    GroupRingElement norm;
    for (std::size_t x = 0; x < f.order(); ++x) norm.add_term(f.canonical_word(x), Rational(1));
    res.complex.ranks = {1, 1, 1, 1};
    for (int k = 1; k <= 3; ++k) {
      GroupRingMatrix b(1, 1);
      b.at(0, 0) = k == 2 ? norm : a_minus_1;
      res.complex.boundaries.push_back(std::move(b));
    }
    verify_complex(res.complex);
    return res;
  }
  throw Error(ErrorCode::unsupported_group_for_resolution,
              std::string("no built-in resolution for a ") + group_kind_name(g->kind()) + " group");
}

std::vector<std::vector<GroupRingElement>> bounded_kernel(const Group& g, const GroupRingMatrix& b,
                                                          const std::vector<Word>& support,
                                                          std::vector<Rational>* scalars) {
  const std::size_t s = support.size();
  std::vector<std::unordered_map<Word, std::size_t, WordHash>> eq_index(b.rows());
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries;  // (equation, unknown, value)
  std::size_t equations = 0;
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t i = 0; i < b.rows(); ++i) {
      const auto& e = b.at(i, j);
      if (e.is_zero()) continue;
      for (std::size_t u = 0; u < s; ++u)
        for (const auto& [t, q] : e.terms()) {
          Word w = g.multiply(support[u], t);
          auto [it, inserted] = eq_index[i].try_emplace(std::move(w), equations);
          if (inserted) ++equations;
          entries.emplace_back(it->second, j * s + u, q);
        }
    }
  SparseMatrix eq(equations, b.cols() * s);
  for (const auto& [r, c, q] : entries) eq.add(r, c, q);
  eq.finalize();
  std::vector<std::vector<GroupRingElement>> out;
  for (const auto& v : nullspace(eq)) {
    Rational scalar;
    auto ints = clear_denominators(v, &scalar);
    if (scalars) scalars->push_back(scalar);
    std::vector<GroupRingElement> column(b.cols());
    for (std::size_t x = 0; x < ints.size(); ++x)
      if (ints[x] != 0) column[x / s].add_term(support[x % s], Rational(ints[x]));
    out.push_back(std::move(column));
  }
  return out;
}

HopfReport hopf_check(const ChainComplex& z, const CoefficientModule& v, std::size_t radius) {
  if (z.top_degree() < 2) throw Error(ErrorCode::degree_out_of_range, "Hopf check needs 2-cells");
  const Group& g = *z.group;
  HopfReport rep;
  rep.module = v.description;
  FiniteComplex zv = induce(z, v);
  rep.dim_h2_z = betti(zv, 2);

  std::optional<ResolutionSpec> res;
  try {
    res = builtin_resolution(z.group);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::unsupported_group_for_resolution || rep.dim_h2_z != 0) throw;
  }
  if (!res) {
    // H_2(Z,V) = 0 forces both other terms to vanish.
    rep.dim_h2_g = 0;
    rep.resolution = "not needed";
    rep.kernel_search = "not needed";
    rep.exact = rep.surjective = rep.passed = true;
    return rep;
  }
  rep.resolution = res->tag;
  rep.dim_h2_g = betti(induce(res->complex, v), 2);

  const GroupRingMatrix& b2 = z.boundary(2);
  std::vector<Word> support;
  if (g.kind() == GroupKind::finite_table) {
    const auto& f = static_cast<const FiniteTableGroup&>(g);
    for (std::size_t x = 0; x < f.order(); ++x) support.push_back(f.canonical_word(x));
    rep.kernel_search = "exact";
  } else {
    if (radius == 0) {
      for (std::size_t i = 0; i < b2.rows(); ++i)
        for (std::size_t j = 0; j < b2.cols(); ++j)
          for (const auto& [w, q] : b2.at(i, j).terms()) radius = std::max(radius, g.length(w) + 1);
      radius = std::max<std::size_t>(radius, 1);
    }
    support = enumerate_ball(g, radius);
    rep.kernel_search = "bounded L=" + std::to_string(radius);
  }
  auto kernel = bounded_kernel(g, b2, support);
  rep.kernel_generators = kernel.size();

  // z (x) v has block j equal to v.z_j; all basis vectors v at once.
  const std::size_t d = v.dim, r = b2.cols();
  SparseMatrix images(r * d, kernel.size() * d);
  for (std::size_t k = 0; k < kernel.size(); ++k)
    for (std::size_t j = 0; j < r; ++j)
      for (const auto& [w, q] : kernel[k][j].terms()) {
        DenseMatrix a = v.action(w);
        for (std::size_t x = 0; x < d; ++x)
          for (std::size_t y = 0; y < d; ++y)
            if (sgn(a[x][y]) != 0) images.add(j * d + x, k * d + y, q * a[x][y]);
      }
  images.finalize();
  rep.image_dim = rank(images).rank;
  rep.exact = rep.image_dim + *rep.dim_h2_g == rep.dim_h2_z;
  rep.surjective = rep.image_dim == rep.dim_h2_z;
  rep.kernel_search_inconclusive = !rep.exact && rep.kernel_search != "exact" &&
                                   rep.image_dim + *rep.dim_h2_g < rep.dim_h2_z;
  rep.passed = rep.exact && (*rep.dim_h2_g != 0 || rep.surjective);
  return rep;
}

}  // namespace l2h
