#pragma once

#include "latkit/lattice.hpp"

#include <vector>

namespace latkit {

struct GluePlan {
  Lattice base;
  Mat glue_vectors;  // rows, ambient coordinates, elements of base*
  Lattice result;
  Int index;         // |result : base|
};

struct OverlatticeStep {
  Lattice base;
  std::vector<Rat> adjoined;  // ambient coordinates of the adjoined vector
  Int order_mod_base;
  Lattice result;
  bool integral;
};

// result = base + sum Z g_i. Every glue vector must pair integrally with
// base (PairingError otherwise); the index is verified against the
// determinant ratio.
GluePlan glue(const Lattice& base, const Mat& glue_vectors);

// Canonical representatives (least nonnegative coordinates in the
// SNF-derived discriminant basis) of all elements of D(L) of exact order m.
// Rows are ambient coordinates of dual vectors.
Mat dual_vectors_of_order(const Lattice& l, const Int& m);

// H = K + sum 2Z u_i for order-4 dual vectors u_i: one step per vector, each
// integral, with total index 2^k and determinant det(K)/4^k.
std::vector<OverlatticeStep> integral_overlattice_by_doubling(const Lattice& k, const Mat& us);

// Every integral overlattice of the requested index, J <= H <= J*, found by
// exhaustive subgroup enumeration of the discriminant group (|D| capped at
// 4096). Results are deterministic (canonically ordered generators).
std::vector<Lattice> integral_overlattice_search(const Lattice& j, const Int& target_index);

}  // namespace latkit
