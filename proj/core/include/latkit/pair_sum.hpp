#pragma once

#include "latkit/isometry.hpp"

#include <optional>

namespace latkit {

// K = M + N inside L perp L, where M = {(x,x)} and N = {(x,hx)}. The ambient
// is the 2n-dimensional doubled space (first n coordinates, last n
// coordinates). index_in_ambient is present exactly when K has full rank in
// L perp L.
struct PairSumResult {
  Lattice K;
  Lattice M;
  Lattice N;
  Lattice ambient;  // L perp L
  std::optional<Int> index_in_ambient;
};

PairSumResult pair_sum(const Lattice& l, const Isometry& h);

// Pair sum over a sublattice of L stabilized by h (e.g. D_n inside Z^n), for
// index comparisons between K' and K.
PairSumResult pair_sum_of_restriction(const Lattice& l, const Isometry& h, const Lattice& sub);

// Restriction of h to an h-stable sublattice, as an isometry of sub.
Isometry restrict_to(const Lattice& l, const Isometry& h, const Lattice& sub);

// Theorem witnesses: each returns the constructed pair sum together with the
// catalog lattice it must be isometric to.

// (Z^n, n-cycle) against A_{2n-1}; 2 <= n <= 6.
std::pair<PairSumResult, Lattice> theorem_ncycle_witness(std::size_t n);

// (D_n, negation of the first k coordinates) against sqrt2 * D_{n+k};
// 1 <= k < n <= 6.
std::pair<PairSumResult, Lattice> theorem_dn_negation_witness(std::size_t n, std::size_t k);

// (L, h) with h^2 + h + 1 = 0 against A_2 (x) L. Also checks, exactly, that
// the Gram of K in the basis {(v_i,v_i)} u {(hv_i,h^2 v_i)} is the Kronecker
// form [[2,-1],[-1,2]] (x) G.
std::pair<PairSumResult, Lattice> theorem_a2_tensor_witness(const Lattice& l, const Isometry& h);

// The Gram of the stacked pair-sum generators in the theorem basis above;
// exposed so the exact Kronecker-identity check is testable on its own.
Mat a2_tensor_basis_gram(const Lattice& l, const Isometry& h);

}  // namespace latkit
