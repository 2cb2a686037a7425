#pragma once

#include "latkit/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace latkit {

struct CatalogExpectations {
  Int det;
  Rat min_norm;
  std::size_t min_count;
  bool even;
};

struct CatalogEntry {
  std::string name;
  Lattice lattice;
  CatalogExpectations expected;
};

// Named constructors in the conventional coordinates: Z^n as the standard
// lattice, A_n as the zero-coordinate-sum sublattice of Z^{n+1} with basis
// v_i = e_i - e_{i+1}, D_n with basis {e_1-e_2, ..., e_{n-2}-e_{n-1},
// e_{n-1}-e_n, e_{n-1}+e_n}, and E6 < E7 < E8 as the leading sublattices of
// the E8 simple-root chain. Expected invariants are verified at build time.
CatalogEntry make_catalog(const std::string& family, std::size_t n = 0);

Lattice make_Zn(std::size_t n);
Lattice make_An(std::size_t n);
Lattice make_Dn(std::size_t n);
Lattice make_En(std::size_t n);  // n in {6, 7, 8}

// Composite catalog names, the grammar the fixtures use:
//   term ('+' term)*            orthogonal sum
//   term := [sqrt2] base ['^' k]
//   base := Z<n> | A<n> | D<n> | E6 | E7 | E8 | W<norm> | A2*A2 | A2*D4
// W<norm> is the rank-1 lattice with Gram [[norm]]; sqrt2 doubles the form.
Lattice lattice_from_name(const std::string& name);

// Certificate that two lattices are isometric: integer matrix T with
// T * G2 * T^T = G1 and |det T| = 1 (rows are the L2-basis coordinates of
// the images of L1's basis). nullopt means "provably not isometric".
std::optional<Mat> isometric(const Lattice& l1, const Lattice& l2);

struct Identification {
  enum class Verdict { named, rectangular, unknown };
  Verdict verdict = Verdict::unknown;
  std::string name;                  // for named verdicts
  std::vector<Int> diagonal;         // for rectangular verdicts
  std::optional<Mat> certificate;    // maps this lattice's Gram to the target's
};

// Uniqueness-theorem table first (small rank/determinant), then an oracle
// sweep over the catalog (including sqrt2-rescaled entries), else unknown.
Identification identify(const Lattice& l);

// Orthogonal basis extraction from the enumerated shells, confirmed by the
// oracle against the diagonal Gram; returns the sorted diagonal on success.
std::optional<std::vector<Int>> is_rectangular(const Lattice& l);

}  // namespace latkit
