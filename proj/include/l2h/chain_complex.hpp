#pragma once

// Free Z[G]-chain complexes of universal covers: presentation 2-complexes via
// Fox calculus, Laplacians, sphere wedging, cell attachment and integral
// specialization.
//
// Conventions: b_k is stored as a rank_{k-1} x rank_k matrix. A chain is a
// column of group-ring coefficients z, and b_k acts by (b_k z)_i =
// sum_j z_j * b_k(i, j), i.e. matrix entries multiply from the right. With
// this convention b_2(i, j) is the Fox derivative of relator j along
// generator i and compose(b_1, b_2) = 0.

#include <string>
#include <vector>

#include "l2h/group.hpp"
#include "l2h/group_ring.hpp"
#include "l2h/presentation.hpp"

namespace l2h {

struct ChainComplex {
  GroupPtr group;
  std::vector<std::size_t> ranks;          // degrees 0..N
  std::vector<GroupRingMatrix> boundaries;  // boundaries[k-1] = b_k
  std::vector<std::vector<std::string>> cell_labels;

  std::size_t top_degree() const { return ranks.empty() ? 0 : ranks.size() - 1; }
  const GroupRingMatrix& boundary(std::size_t k) const { return boundaries.at(k - 1); }
  long euler_characteristic() const;
};

/// Throws DimensionMismatch on inconsistent extents and NotACycle when some
/// b_k o b_{k+1} is nonzero.
void verify_complex(const ChainComplex& c);

GroupRingElement fox_derivative(const Group& g, std::span<const Letter> relator, std::size_t generator);

/// sum_x (dr/dx)(x - 1) == r - 1 in Z[F] for relator r of p.
bool fundamental_formula_holds(const Presentation& p, std::size_t relator);

/// One 0-cell, a 1-cell per generator and a 2-cell per relator. Throws
/// RelatorNotTrivialInGroup when a relator does not normalize to e in g.
ChainComplex presentation_complex(const Presentation& p, GroupPtr g);

/// Point complex: a single 0-cell.
ChainComplex point_complex(GroupPtr g);

struct LaplacianOperator {
  std::size_t degree = 0;
  GroupRingMatrix matrix;
  bool self_adjoint = false;
};

/// Delta_k = b_k* b_k + b_{k+1} b_{k+1}* (terms omitted at the ends).
LaplacianOperator laplacian(const ChainComplex& c, std::size_t k, const RingLimits& limits = {});

ChainComplex wedge_spheres(const ChainComplex& c, std::size_t count);

/// Attaches one k-cell per cycle (each a column in degree k-1).
ChainComplex attach_cells(const ChainComplex& c, std::size_t k,
                          const std::vector<std::vector<GroupRingElement>>& cycles);

/// Boundary matrices with every entry replaced by its augmentation. Throws
/// InvalidArgument if some augmented entry is not an integer.
std::vector<std::vector<std::vector<Integer>>> integral_specialization(const ChainComplex& c);

struct AbelianGroup {
  std::size_t rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1
  std::string to_string() const;
};

std::vector<AbelianGroup> integral_homology(const ChainComplex& c);

}  // namespace l2h
