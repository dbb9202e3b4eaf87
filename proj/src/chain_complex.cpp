#include "l2h/chain_complex.hpp"

#include "l2h/errors.hpp"
#include "l2h/linalg.hpp"

namespace l2h {

long ChainComplex::euler_characteristic() const {
  long chi = 0;
  for (std::size_t k = 0; k < ranks.size(); ++k) chi += (k % 2 ? -1 : 1) * static_cast<long>(ranks[k]);
  return chi;
}

void verify_complex(const ChainComplex& c) {
  if (c.ranks.empty() || c.ranks[0] < 1) throw Error(ErrorCode::invalid_argument, "complex needs a 0-cell");
  if (c.boundaries.size() + 1 != c.ranks.size())
    throw Error(ErrorCode::dimension_mismatch, "boundary count does not match degrees");
  for (std::size_t k = 1; k < c.ranks.size(); ++k) {
    const auto& b = c.boundary(k);
    if (b.rows() != c.ranks[k - 1] || b.cols() != c.ranks[k])
      throw Error(ErrorCode::dimension_mismatch, "b_" + std::to_string(k) + " has wrong extents");
  }
  for (std::size_t k = 1; k + 1 < c.ranks.size(); ++k)
    if (!compose(*c.group, c.boundary(k), c.boundary(k + 1)).is_zero())
      throw Error(ErrorCode::not_a_cycle, "b_" + std::to_string(k) + " b_" + std::to_string(k + 1) + " != 0");
}

GroupRingElement fox_derivative(const Group& g, std::span<const Letter> relator, std::size_t generator) {
  GroupRingElement out;
  std::vector<Letter> prefix;
  for (Letter l : relator) {
    if (generator_of(l) == generator) {
      if (is_inverse(l)) {
        std::vector<Letter> through(prefix);
        through.push_back(l);
        out.add_term(g.normalize(through), Rational(-1));
      } else {
        out.add_term(g.normalize(prefix), Rational(1));
      }
    }
    prefix.push_back(l);
  }
  return out;
}

ChainComplex point_complex(GroupPtr g) {
  ChainComplex c;
  c.group = std::move(g);
  c.ranks = {1};
  c.cell_labels = {{"v"}};
  return c;
}

bool fundamental_formula_holds(const Presentation& p, std::size_t relator) {
  FreeGroup f(p.generator_names());
  const auto& r = p.relators.at(relator);
  GroupRingElement sum;
  for (std::size_t x = 0; x < p.generators.size(); ++x) {
    GroupRingElement xm1 = GroupRingElement::monomial(f.generator(x)) - GroupRingElement::scalar(1);
    sum += mul(f, fox_derivative(f, r, x), xm1);
  }
  return sum == GroupRingElement::monomial(f.normalize(r)) - GroupRingElement::scalar(1);
}

ChainComplex presentation_complex(const Presentation& p, GroupPtr g) {
  if (g->num_generators() != p.generators.size())
    throw Error(ErrorCode::dimension_mismatch, "group and presentation have different generator counts");
  for (std::size_t j = 0; j < p.relators.size(); ++j)
    if (!g->normalize(p.relators[j]).is_identity())
      throw Error(ErrorCode::relator_not_trivial,
                  "relator " + std::to_string(j + 1) + " (" + format_letters(p.relators[j], p.generator_names()) +
                      ") is not trivial in the group");
  ChainComplex c;
  c.group = g;
  const std::size_t n = p.generators.size();
  const std::size_t r = p.relators.size();
  c.ranks = {1, n};
  GroupRingMatrix b1(1, n);
  for (std::size_t i = 0; i < n; ++i) {
    b1.at(0, i).add_term(g->generator(i), Rational(1));
    b1.at(0, i).add_term(g->identity(), Rational(-1));
  }
  c.boundaries.push_back(std::move(b1));
  c.cell_labels = {{"v"}, p.generator_names()};
  c.ranks.push_back(r);
  GroupRingMatrix b2(n, r);
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t i = 0; i < n; ++i) b2.at(i, j) = fox_derivative(*g, p.relators[j], i);
    labels.push_back(format_letters(p.relators[j], p.generator_names()));
  }
  c.boundaries.push_back(std::move(b2));
  c.cell_labels.push_back(std::move(labels));
  verify_complex(c);
  return c;
}

LaplacianOperator laplacian(const ChainComplex& c, std::size_t k, const RingLimits& limits) {
  if (k > c.top_degree())
    throw Error(ErrorCode::degree_out_of_range,
                "degree " + std::to_string(k) + " outside 0.." + std::to_string(c.top_degree()));
  const Group& g = *c.group;
  GroupRingMatrix delta(c.ranks[k], c.ranks[k]);
  if (k >= 1) {
    const auto& b = c.boundary(k);
    delta = mat_add(delta, compose(g, mat_star(g, b), b, limits));
  }
  if (k + 1 <= c.top_degree()) {
    const auto& b = c.boundary(k + 1);
    delta = mat_add(delta, compose(g, b, mat_star(g, b), limits));
  }
  LaplacianOperator op;
  op.degree = k;
  op.self_adjoint = is_self_adjoint(g, delta);
  if (!op.self_adjoint) throw Error(ErrorCode::internal, "Laplacian is not self-adjoint");
  op.matrix = std::move(delta);
  return op;
}

ChainComplex wedge_spheres(const ChainComplex& c, std::size_t count) {
  if (c.top_degree() < 1) throw Error(ErrorCode::invalid_argument, "wedging 2-spheres needs a 1-skeleton");
  std::vector<std::vector<GroupRingElement>> zero(count, std::vector<GroupRingElement>(c.ranks[1]));
  ChainComplex out = attach_cells(c, 2, zero);
  auto& labels = out.cell_labels[2];
  for (std::size_t i = labels.size() - count; i < labels.size(); ++i) labels[i] = "S2_" + std::to_string(i);
  return out;
}

ChainComplex attach_cells(const ChainComplex& c, std::size_t k,
                          const std::vector<std::vector<GroupRingElement>>& cycles) {
  if (k < 1 || k > c.top_degree() + 1)
    throw Error(ErrorCode::degree_out_of_range, "cannot attach cells in degree " + std::to_string(k));
  const Group& g = *c.group;
  const std::size_t below = c.ranks[k - 1];
  GroupRingMatrix add(below, cycles.size());
  for (std::size_t j = 0; j < cycles.size(); ++j) {
    if (cycles[j].size() != below)
      throw Error(ErrorCode::dimension_mismatch, "attaching cycle has wrong length");
    for (std::size_t i = 0; i < below; ++i) add.at(i, j) = cycles[j][i];
  }
  if (k >= 2) {
    GroupRingMatrix image = compose(g, c.boundary(k - 1), add);
    if (!image.is_zero()) {
      for (std::size_t j = 0; j < cycles.size(); ++j)
        for (std::size_t i = 0; i < image.rows(); ++i)
          if (!image.at(i, j).is_zero())
            throw Error(ErrorCode::not_a_cycle, "attaching chain " + std::to_string(j) + " is not a cycle");
    }
  }
  ChainComplex out = c;
  if (out.cell_labels.size() < out.ranks.size()) out.cell_labels.resize(out.ranks.size());
  if (k == c.top_degree() + 1) {
    out.ranks.push_back(cycles.size());
    out.boundaries.push_back(std::move(add));
    out.cell_labels.emplace_back();
  } else {
    const GroupRingMatrix& old = c.boundary(k);
    GroupRingMatrix merged(below, old.cols() + cycles.size());
    for (std::size_t i = 0; i < below; ++i) {
      for (std::size_t j = 0; j < old.cols(); ++j) merged.at(i, j) = old.at(i, j);
      for (std::size_t j = 0; j < cycles.size(); ++j) merged.at(i, old.cols() + j) = add.at(i, j);
    }
    out.ranks[k] += cycles.size();
    out.boundaries[k - 1] = std::move(merged);
    if (k + 1 <= c.top_degree()) {
      // Existing (k+1)-cells do not meet the new cells.
      const GroupRingMatrix& up = c.boundary(k + 1);
      GroupRingMatrix grown(out.ranks[k], up.cols());
      for (std::size_t i = 0; i < up.rows(); ++i)
        for (std::size_t j = 0; j < up.cols(); ++j) grown.at(i, j) = up.at(i, j);
      out.boundaries[k] = std::move(grown);
    }
  }
  auto& labels = out.cell_labels[k];
  std::size_t first = labels.size();
  for (std::size_t j = 0; j < cycles.size(); ++j) labels.push_back("e" + std::to_string(k) + "_" + std::to_string(first + j));
  verify_complex(out);
  return out;
}

std::vector<std::vector<std::vector<Integer>>> integral_specialization(const ChainComplex& c) {
  std::vector<std::vector<std::vector<Integer>>> out;
  for (const auto& b : c.boundaries) {
    std::vector<std::vector<Integer>> m(b.rows(), std::vector<Integer>(b.cols()));
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) {
        Rational a = augmentation(b.at(i, j));
        if (a.get_den() != 1)
          throw Error(ErrorCode::invalid_argument, "boundary entry has non-integral augmentation");
        m[i][j] = a.get_num();
      }
    out.push_back(std::move(m));
  }
  return out;
}

std::string AbelianGroup::to_string() const {
  std::string s;
  if (rank > 0) s = rank == 1 ? "Z" : "Z^" + std::to_string(rank);
  for (const auto& t : torsion) s += (s.empty() ? "" : " + ") + std::string("Z/") + t.get_str();
  return s.empty() ? "0" : s;
}

std::vector<AbelianGroup> integral_homology(const ChainComplex& c) {
  auto mats = integral_specialization(c);
  const std::size_t top = c.top_degree();
  std::vector<std::vector<Integer>> invariants(top + 2);
  for (std::size_t k = 1; k <= top; ++k) invariants[k] = smith_invariants(mats[k - 1]);
  std::vector<AbelianGroup> out;
  for (std::size_t k = 0; k <= top; ++k) {
    AbelianGroup h;
    std::size_t rank_out = invariants[k].size();
    std::size_t rank_in = k + 1 <= top ? invariants[k + 1].size() : 0;
    h.rank = c.ranks[k] - rank_out - rank_in;
    if (k + 1 <= top)
      for (const auto& d : invariants[k + 1])
        if (d > 1) h.torsion.push_back(d);
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace l2h
