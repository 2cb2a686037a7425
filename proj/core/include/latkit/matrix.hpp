#pragma once

#include "latkit/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace latkit {

// Dense row-major matrix of exact rationals. Immutable in spirit: operations
// return fresh values, and the few in-place helpers are only used while
// constructing a result.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
  Mat(std::initializer_list<std::initializer_list<Rat>> rows);

  static Mat identity(std::size_t n);
  static Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Rat& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  Rat& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }

  bool operator==(const Mat& o) const = default;

  Mat transpose() const;
  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator-() const;
  Mat scaled(const Rat& c) const;

  std::vector<Rat> row(std::size_t i) const;
  void set_row(std::size_t i, const std::vector<Rat>& r);
  // Rows i of this stacked over rows of o (column counts must agree).
  Mat vstack(const Mat& o) const;
  Mat submatrix_rows(const std::vector<std::size_t>& idx) const;

  bool is_square() const { return rows_ == cols_; }
  bool is_integral() const;
  bool is_symmetric() const;
  std::string str() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> e_;
};

// Row vector helpers (a vector is a plain std::vector<Rat>).
Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b);
std::vector<Rat> mul_row(const std::vector<Rat>& v, const Mat& m);  // v * m

// Kronecker product a (x) b.
Mat kronecker(const Mat& a, const Mat& b);

// Block-diagonal composition.
Mat block_diag(const Mat& a, const Mat& b);

}  // namespace latkit
