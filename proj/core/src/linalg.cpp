#include "latkit/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace latkit {

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int p(s.substr(0, slash)), q(s.substr(slash + 1));
    if (q == 0) throw DomainError("zero denominator in \"" + s + "\"");
    return Rat(p, q);
  } catch (const std::exception&) {
    throw DomainError("cannot parse rational \"" + s + "\"");
  }
}

std::string rat_str(const Rat& q) {
  if (is_integer(q)) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

Mat::Mat(std::initializer_list<std::initializer_list<Rat>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  e_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged initializer");
    e_.insert(e_.end(), r.begin(), r.end());
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw DimensionError("matrix product shape mismatch");
  Mat r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (o(k, j) != 0) r(i, j) += a * o(k, j);
      }
    }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sum shape mismatch");
  Mat r(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix difference shape mismatch");
  Mat r(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

Mat Mat::operator-() const {
  Mat r(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
  return r;
}

Mat Mat::scaled(const Rat& c) const {
  Mat r(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * c;
  return r;
}

std::vector<Rat> Mat::row(std::size_t i) const {
  return std::vector<Rat>(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
}

void Mat::set_row(std::size_t i, const std::vector<Rat>& r) {
  if (r.size() != cols_) throw DimensionError("row length mismatch");
  std::copy(r.begin(), r.end(), e_.begin() + i * cols_);
}

Mat Mat::vstack(const Mat& o) const {
  if (empty()) return o;
  if (o.empty()) return *this;
  if (cols_ != o.cols_) throw DimensionError("vstack column mismatch");
  Mat r(rows_ + o.rows_, cols_);
  std::copy(e_.begin(), e_.end(), r.e_.begin());
  std::copy(o.e_.begin(), o.e_.end(), r.e_.begin() + e_.size());
  return r;
}

Mat Mat::submatrix_rows(const std::vector<std::size_t>& idx) const {
  Mat r(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) r.set_row(i, row(idx[i]));
  return r;
}

bool Mat::is_integral() const {
  return std::all_of(e_.begin(), e_.end(), [](const Rat& q) { return is_integer(q); });
}

bool Mat::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

std::string Mat::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "\n[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << rat_str((*this)(i, j));
    os << "]";
  }
  return os.str();
}

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  if (a.size() != b.size()) throw DimensionError("dot length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<Rat> mul_row(const std::vector<Rat>& v, const Mat& m) {
  if (v.size() != m.rows()) throw DimensionError("row-matrix product mismatch");
  std::vector<Rat> r(m.cols());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] += v[i] * m(i, j);
  }
  return r;
}

Mat kronecker(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

Mat block_diag(const Mat& a, const Mat& b) {
  Mat r(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

namespace {

// Clears denominators row by row; returns the integer matrix and the product
// of the scale factors (multiplies the determinant).
Mat clear_row_denominators(const Mat& a, Rat& det_scale) {
  Mat m(a.rows(), a.cols());
  det_scale = 1;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Int l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) l = boost::multiprecision::lcm(l, den(a(i, j)));
    det_scale *= Rat(l);
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j) * Rat(l);
  }
  return m;
}

}  // namespace

Rat det_exact(const Mat& a) {
  if (!a.is_square()) throw DimensionError("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Rat scale;
  Mat m = clear_row_denominators(a, scale);

  // Bareiss: all intermediate entries stay integral.
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    const Int piv = to_int(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = to_int(m(i, j)) * piv - to_int(m(i, k)) * to_int(m(k, j));
        m(i, j) = Rat(v / prev);
      }
      m(i, k) = 0;
    }
    prev = piv;
  }
  return Rat(sign) * m(n - 1, n - 1) / scale;
}

namespace {

struct IntWork {
  std::vector<std::vector<Int>> a;
  std::size_t rows() const { return a.size(); }
  std::size_t cols() const { return a.empty() ? 0 : a[0].size(); }
};

IntWork to_int_work(const Mat& m) {
  IntWork w;
  w.a.resize(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    w.a[i].resize(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) w.a[i][j] = to_int(m(i, j));
  }
  return w;
}

Mat from_int_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols) {
  Mat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rat(rows[i][j]);
  return m;
}

}  // namespace

SmithDecomposition smith_normal_form(const Mat& input) {
  if (!input.is_integral()) throw DomainError("Smith normal form needs integer entries");
  IntWork w = to_int_work(input);
  const std::size_t m = w.rows(), n = w.cols();
  auto& a = w.a;

  std::vector<std::vector<Int>> L(m, std::vector<Int>(m, 0)), R(n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < m; ++i) L[i][i] = 1;
  for (std::size_t j = 0; j < n; ++j) R[j][j] = 1;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(L[i], L[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < m; ++r) std::swap(a[r][i], a[r][j]);
    for (std::size_t r = 0; r < n; ++r) std::swap(R[r][i], R[r][j]);
  };
  auto add_row = [&](std::size_t dst, std::size_t src, const Int& c) {
    for (std::size_t j = 0; j < n; ++j) a[dst][j] += c * a[src][j];
    for (std::size_t j = 0; j < m; ++j) L[dst][j] += c * L[src][j];
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Int& c) {
    for (std::size_t i = 0; i < m; ++i) a[i][dst] += c * a[i][src];
    for (std::size_t i = 0; i < n; ++i) R[i][dst] += c * R[i][src];
  };
  auto negate_row = [&](std::size_t i) {
    for (auto& v : a[i]) v = -v;
    for (auto& v : L[i]) v = -v;
  };

  const std::size_t k = std::min(m, n);
  for (std::size_t t = 0; t < k; ++t) {
    // Pivot: minimal absolute nonzero entry, row-major first occurrence.
    bool found = false;
    std::size_t pi = t, pj = t;
    Int best = 0;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (a[i][j] == 0) continue;
        Int v = abs_int(a[i][j]);
        if (!found || v < best) {
          found = true;
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    if (pi != t) swap_rows(t, pi);
    if (pj != t) swap_cols(t, pj);

    for (;;) {
      // Kill the rest of column t, re-pivoting on a smaller remainder when one appears.
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        Int q = a[i][t] / a[t][t];
        add_row(i, t, -q);
        if (a[i][t] != 0) {
          swap_rows(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        Int q = a[t][j] / a[t][t];
        add_col(j, t, -q);
        if (a[t][j] != 0) {
          swap_cols(t, j);
          dirty = true;
        }
      }
      if (!dirty) break;
    }

    // Divisibility fix-up: fold any non-multiple into the pivot position.
    for (;;) {
      bool fixed = true;
      for (std::size_t i = t + 1; i < m && fixed; ++i)
        for (std::size_t j = t + 1; j < n && fixed; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            add_row(t, i, 1);
            fixed = false;
          }
        }
      if (fixed) break;
      for (;;) {
        bool dirty = false;
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a[t][j] == 0) continue;
          Int q = a[t][j] / a[t][t];
          add_col(j, t, -q);
          if (a[t][j] != 0) {
            swap_cols(t, j);
            dirty = true;
          }
        }
        for (std::size_t i = t + 1; i < m; ++i) {
          if (a[i][t] == 0) continue;
          Int q = a[i][t] / a[t][t];
          add_row(i, t, -q);
          if (a[i][t] != 0) {
            swap_rows(t, i);
            dirty = true;
          }
        }
        if (!dirty) break;
      }
    }
    if (a[t][t] < 0) negate_row(t);
  }

  SmithDecomposition out;
  out.invariants.resize(k);
  for (std::size_t t = 0; t < k; ++t) out.invariants[t] = a[t][t];
  out.left = from_int_rows(L, m);
  out.right = from_int_rows(R, n);
  return out;
}

std::vector<Int> SmithDecomposition::nontrivial() const {
  std::vector<Int> r;
  for (const auto& d : invariants)
    if (d > 1) r.push_back(d);
  return r;
}

namespace {

// Row HNF over the integers with optional unimodular transform tracking.
// Returns the number of nonzero (pivot) rows; rows are reordered so pivots
// come first in echelon position.
std::size_t hnf_in_place(std::vector<std::vector<Int>>& rows, std::vector<std::vector<Int>>* tr) {
  const std::size_t m = rows.size();
  const std::size_t n = m ? rows[0].size() : 0;
  auto swap2 = [&](std::size_t i, std::size_t j) {
    std::swap(rows[i], rows[j]);
    if (tr) std::swap((*tr)[i], (*tr)[j]);
  };
  auto axpy = [&](std::size_t dst, std::size_t src, const Int& c) {
    for (std::size_t t = 0; t < n; ++t) rows[dst][t] += c * rows[src][t];
    if (tr)
      for (std::size_t t = 0; t < (*tr)[dst].size(); ++t) (*tr)[dst][t] += c * (*tr)[src][t];
  };
  auto negate = [&](std::size_t i) {
    for (auto& v : rows[i]) v = -v;
    if (tr)
      for (auto& v : (*tr)[i]) v = -v;
  };

  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    // Euclidean reduction within column c.
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (rows[i][c] != 0 && (best == m || abs_int(rows[i][c]) < abs_int(rows[best][c]))) best = i;
      if (best == m) break;
      swap2(r, best);
      bool all_zero = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (rows[i][c] == 0) continue;
        Int q = rows[i][c] / rows[r][c];
        axpy(i, r, -q);
        if (rows[i][c] != 0) all_zero = false;
      }
      if (all_zero) break;
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0) negate(r);
    // Reduce entries above the pivot to the canonical range [0, pivot).
    for (std::size_t i = 0; i < r; ++i) {
      Int q = rows[i][c] / rows[r][c];
      if (rows[i][c] % rows[r][c] < 0) q -= 1;
      if (q != 0) axpy(i, r, -q);
    }
    ++r;
  }
  return r;
}

}  // namespace

Mat hermite_normal_form(const Mat& input) {
  if (input.rows() == 0) return Mat(0, input.cols());
  Int l = 1;
  for (std::size_t i = 0; i < input.rows(); ++i)
    for (std::size_t j = 0; j < input.cols(); ++j) l = boost::multiprecision::lcm(l, den(input(i, j)));
  std::vector<std::vector<Int>> rows(input.rows(), std::vector<Int>(input.cols()));
  for (std::size_t i = 0; i < input.rows(); ++i)
    for (std::size_t j = 0; j < input.cols(); ++j) rows[i][j] = num(input(i, j) * Rat(l));
  std::size_t r = hnf_in_place(rows, nullptr);
  Mat out(r, input.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < input.cols(); ++j) out(i, j) = Rat(rows[i][j], l);
  return out;
}

Mat integer_row_kernel(const Mat& input) {
  if (!input.is_integral()) throw DomainError("integer kernel needs integer entries");
  const std::size_t m = input.rows();
  std::vector<std::vector<Int>> rows(m, std::vector<Int>(input.cols()));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < input.cols(); ++j) rows[i][j] = to_int(input(i, j));
  std::vector<std::vector<Int>> tr(m, std::vector<Int>(m, 0));
  for (std::size_t i = 0; i < m; ++i) tr[i][i] = 1;
  std::size_t r = hnf_in_place(rows, &tr);
  Mat out(m - r, m);
  for (std::size_t i = r; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out(i - r, j) = Rat(tr[i][j]);
  return out;
}

Mat invert(const Mat& a) {
  if (!a.is_square()) throw DimensionError("inverse of non-square matrix");
  const std::size_t n = a.rows();
  Mat m = a, inv = Mat::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) throw SingularError("matrix is singular");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(c, j), m(p, j));
        std::swap(inv(c, j), inv(p, j));
      }
    const Rat piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      const Rat f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

bool solve_left(const Mat& a, const std::vector<Rat>& b, std::vector<Rat>& x) {
  // x * a = b for a with full row rank: x = b * a^T * (a a^T)^{-1}, verified.
  if (b.size() != a.cols()) throw DimensionError("solve_left shape mismatch");
  Mat at = a.transpose();
  Mat gram = a * at;
  Mat gi;
  try {
    gi = invert(gram);
  } catch (const SingularError&) {
    throw SingularError("solve_left needs a full-row-rank matrix");
  }
  std::vector<Rat> y = mul_row(b, at);
  x = mul_row(y, gi);
  return mul_row(x, a) == b;
}

}  // namespace latkit
