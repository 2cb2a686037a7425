#pragma once

#include "latkit/matrix.hpp"

#include <vector>

namespace latkit {

// Smith normal form of an integer matrix A: left * A * right = diag(invariants)
// with unimodular integer transforms and d1 | d2 | ... | dn, all di >= 1.
// For rectangular input the diagonal has min(rows, cols) entries; zero
// diagonal entries (rank deficiency) are kept as explicit zeros at the end.
struct SmithDecomposition {
  std::vector<Int> invariants;
  Mat left;
  Mat right;

  // The di > 1 only, in divisibility order (what the discriminant group uses).
  std::vector<Int> nontrivial() const;
};

// Exact determinant via fraction-free Bareiss elimination. Rational input is
// handled by clearing row denominators first, so the elimination itself runs
// on integers.
Rat det_exact(const Mat& a);

// Throws DomainError on non-integer entries.
SmithDecomposition smith_normal_form(const Mat& a);

// Canonical row-style Hermite normal form of the row span. Input rows are
// rational; they are scaled to a common denominator, reduced over the
// integers, and scaled back. Zero rows are dropped, so the result has full
// row rank. HNF(HNF(X)) == HNF(X).
Mat hermite_normal_form(const Mat& rows);

// Exact inverse; throws SingularError.
Mat invert(const Mat& a);

// Basis (rows) of the integer kernel {x in Z^m : x * A = 0} for integral A.
Mat integer_row_kernel(const Mat& a);

// Solves x * A = b exactly over the rationals (A square nonsingular), or
// x * A = b for rectangular A via any particular solution when one exists;
// returns false if inconsistent.
bool solve_left(const Mat& a, const std::vector<Rat>& b, std::vector<Rat>& x);

// Product of the Smith invariants of an integer square matrix equals
// |det|; exposed for tests.
Int abs_int(const Int& v);

}  // namespace latkit
