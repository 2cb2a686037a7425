#pragma once

#include "latkit/linalg.hpp"

#include <optional>
#include <vector>

namespace latkit {

// D(L) = L*/L as cyclic factors in divisibility order. Representatives are
// ambient-coordinate vectors in the dual; representative i has exact order
// orders[i] modulo L.
struct DiscriminantGroup {
  std::vector<Int> orders;
  Mat representatives;  // one row per factor, ambient coordinates

  Int order() const {
    Int p = 1;
    for (const auto& d : orders) p *= d;
    return p;
  }
};

// All lattice vectors of one norm, in basis coordinates. Closed under
// negation; sorted lexicographically, so the content is deterministic.
struct VectorSet {
  Rat norm;
  std::vector<std::vector<Int>> vectors;
};

// A finitely generated lattice, stored as an embedded basis: rows of `basis`
// span the lattice over Z inside an ambient rational space whose inner
// product is given by `metric` (symmetric positive definite; identity for
// every lattice built from explicit coordinates). The Gram matrix
// basis * metric * basis^T is cached.
//
// Values are immutable; every operation returns a new Lattice.
class Lattice {
 public:
  // Rank-0 lattice in an ambient of the given dimension.
  explicit Lattice(std::size_t ambient_dim);
  explicit Lattice(Mat basis);
  Lattice(Mat basis, Mat metric);

  // Abstract lattice with the given Gram matrix: the embedding is the unit
  // lower-triangular factor of the rational LDL^T decomposition, with the
  // pivot diagonal as ambient metric. Throws DefinitenessError.
  static Lattice from_gram(const Mat& gram);

  std::size_t rank() const { return basis_.rows(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  const Mat& basis() const { return basis_; }
  const Mat& metric() const { return metric_; }
  const Mat& gram() const { return gram_; }
  const Rat& determinant() const { return det_; }

  bool is_integral() const;
  bool is_even() const;  // integral with even diagonal

  // Inner product of two ambient-coordinate vectors under the metric.
  Rat inner(const std::vector<Rat>& a, const std::vector<Rat>& b) const;

  // Ambient coordinates of a lattice element given in basis coordinates.
  std::vector<Rat> to_ambient(const std::vector<Rat>& coords) const;
  std::vector<Rat> to_ambient(const std::vector<Int>& coords) const;

  // Coordinates of an ambient vector in this basis, if the vector lies in
  // the rational span.
  std::optional<std::vector<Rat>> coords_of(const std::vector<Rat>& ambient) const;
  bool contains(const std::vector<Rat>& ambient) const;  // integer coords

  // Sublattice spanned by the given ambient rows (canonical HNF basis).
  Lattice spanned_sublattice(const Mat& ambient_rows) const;

  // Canonical HNF basis of the same lattice; equal lattices in the same
  // ambient compare equal through this.
  Mat canonical_basis() const;
  bool same_lattice(const Lattice& other) const;

  Lattice dual() const;                    // integral L only
  DiscriminantGroup discriminant_group() const;
  Lattice even_sublattice() const;         // integral L only
  Lattice rescaled(const Rat& factor) const;

  friend Lattice orthogonal_sum(const Lattice& a, const Lattice& b);
  friend Lattice tensor(const Lattice& a, const Lattice& b);

  // |sup : sub| for a finite-index sublattice; verified against the
  // index-determinant identity and, for index <= 64, against explicit coset
  // counting.
  friend Int index_in(const Lattice& sub, const Lattice& sup);

  // Honest coset enumeration of sup/sub (BFS over canonical residues);
  // throws ResourceError beyond the cap.
  friend Int count_cosets(const Lattice& sub, const Lattice& sup, const Int& cap);

  // mu(L) and all vectors achieving it, exact Fincke-Pohst style enumeration
  // bounded by the rational LDL^T form. Rank cap 12.
  VectorSet minimal_vectors() const;

  // All vectors of norm <= bound (excluding 0), sorted by (norm, coords).
  std::vector<std::pair<Rat, std::vector<Int>>> vectors_up_to(const Rat& bound) const;

  // mu(L)^n * 3^(n(n-1)/2) <= 4^(n(n-1)/2) * det(L), evaluated exactly.
  bool hermite_check() const;

  // {x in L : (x, s) = 0 for all rows s of S}; S rows are ambient
  // coordinates and must lie in L.
  Lattice annihilator(const Mat& s_rows) const;

 private:
  Mat basis_;
  Mat metric_;
  Mat gram_;
  Rat det_;

  void finish_init();
};

Lattice orthogonal_sum(const Lattice& a, const Lattice& b);
Lattice tensor(const Lattice& a, const Lattice& b);
Int index_in(const Lattice& sub, const Lattice& sup);
Int count_cosets(const Lattice& sub, const Lattice& sup, const Int& cap);

// Rational LDL^T of a symmetric PD matrix: g = l * diag(d) * l^T with l unit
// lower triangular. Throws DefinitenessError when g is not PD.
void ldlt(const Mat& g, Mat& l, std::vector<Rat>& d);

// Integer coordinates of each row of `rows` with respect to `in` (rows must
// be elements of `in`); throws ContainmentError otherwise.
Mat integer_coords_in(const Lattice& in, const Mat& ambient_rows);

}  // namespace latkit
