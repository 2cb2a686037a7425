#include "latkit/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace latkit {

void ldlt(const Mat& g, Mat& l, std::vector<Rat>& d) {
  if (!g.is_symmetric()) throw DefinitenessError("form is not symmetric");
  const std::size_t n = g.rows();
  l = Mat::identity(n);
  d.assign(n, Rat(0));
  for (std::size_t j = 0; j < n; ++j) {
    Rat dj = g(j, j);
    for (std::size_t k = 0; k < j; ++k) dj -= l(j, k) * l(j, k) * d[k];
    if (dj <= 0) throw DefinitenessError("form is not positive definite");
    d[j] = dj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rat v = g(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k) * d[k];
      l(i, j) = v / dj;
    }
  }
}

Lattice::Lattice(std::size_t ambient_dim)
    : basis_(0, ambient_dim), metric_(Mat::identity(ambient_dim)) {
  finish_init();
}

Lattice::Lattice(Mat basis) : basis_(std::move(basis)) {
  metric_ = Mat::identity(basis_.cols());
  finish_init();
}

Lattice::Lattice(Mat basis, Mat metric) : basis_(std::move(basis)), metric_(std::move(metric)) {
  if (metric_.rows() != basis_.cols() || metric_.cols() != basis_.cols())
    throw DimensionError("metric shape does not match ambient dimension");
  finish_init();
}

void Lattice::finish_init() {
  gram_ = basis_ * metric_ * basis_.transpose();
  Mat l;
  std::vector<Rat> d;
  ldlt(gram_, l, d);  // rejects dependent rows and indefinite forms
  det_ = det_exact(gram_);
}

Lattice Lattice::from_gram(const Mat& gram) {
  Mat l;
  std::vector<Rat> d;
  ldlt(gram, l, d);
  Mat metric(gram.rows(), gram.cols());
  for (std::size_t i = 0; i < d.size(); ++i) metric(i, i) = d[i];
  return Lattice(l, metric);
}

bool Lattice::is_integral() const { return gram_.is_integral(); }

bool Lattice::is_even() const {
  if (!is_integral()) return false;
  for (std::size_t i = 0; i < rank(); ++i)
    if (num(gram_(i, i)) % 2 != 0) return false;
  return true;
}

Rat Lattice::inner(const std::vector<Rat>& a, const std::vector<Rat>& b) const {
  return dot(mul_row(a, metric_), b);
}

std::vector<Rat> Lattice::to_ambient(const std::vector<Rat>& coords) const {
  return mul_row(coords, basis_);
}

std::vector<Rat> Lattice::to_ambient(const std::vector<Int>& coords) const {
  std::vector<Rat> c(coords.begin(), coords.end());
  return mul_row(c, basis_);
}

std::optional<std::vector<Rat>> Lattice::coords_of(const std::vector<Rat>& ambient) const {
  if (ambient.size() != ambient_dim()) throw DimensionError("ambient vector length mismatch");
  // x * basis = ambient, via x = ambient * metric * basis^T * gram^{-1}.
  std::vector<Rat> y = mul_row(mul_row(ambient, metric_), basis_.transpose());
  std::vector<Rat> x = mul_row(y, invert(gram_));
  if (mul_row(x, basis_) != ambient) return std::nullopt;
  return x;
}

bool Lattice::contains(const std::vector<Rat>& ambient) const {
  auto c = coords_of(ambient);
  if (!c) return false;
  return std::all_of(c->begin(), c->end(), [](const Rat& q) { return is_integer(q); });
}

Lattice Lattice::spanned_sublattice(const Mat& ambient_rows) const {
  Mat h = hermite_normal_form(ambient_rows);
  return Lattice(h, metric_);
}

Mat Lattice::canonical_basis() const { return hermite_normal_form(basis_); }

bool Lattice::same_lattice(const Lattice& other) const {
  return ambient_dim() == other.ambient_dim() && metric_ == other.metric_ &&
         canonical_basis() == other.canonical_basis();
}

Lattice Lattice::dual() const {
  if (!is_integral()) throw PreconditionError("dual() expects an integral lattice");
  return Lattice(invert(gram_) * basis_, metric_);
}

DiscriminantGroup Lattice::discriminant_group() const {
  if (!is_integral()) throw PreconditionError("discriminant group needs an integral lattice");
  SmithDecomposition snf = smith_normal_form(gram_);
  Mat dual_basis = invert(gram_) * basis_;
  Mat vinv = invert(snf.right);
  DiscriminantGroup g;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < snf.invariants.size(); ++i)
    if (snf.invariants[i] > 1) {
      g.orders.push_back(snf.invariants[i]);
      idx.push_back(i);
    }
  Mat reps(idx.size(), ambient_dim());
  for (std::size_t k = 0; k < idx.size(); ++k)
    reps.set_row(k, mul_row(vinv.row(idx[k]), dual_basis));
  g.representatives = std::move(reps);
  return g;
}

Lattice Lattice::even_sublattice() const {
  if (!is_integral()) throw PreconditionError("even sublattice needs an integral lattice");
  const std::size_t r = rank();
  std::size_t pivot = r;
  for (std::size_t i = 0; i < r; ++i)
    if (num(gram_(i, i)) % 2 != 0) {
      pivot = i;
      break;
    }
  if (pivot == r) return *this;
  // Kernel of the parity functional x -> sum of x_i * (G_ii mod 2).
  Mat gens(r, ambient_dim());
  std::size_t n = 0;
  for (std::size_t i = 0; i < r; ++i) {
    if (i == pivot) continue;
    std::vector<Rat> row = basis_.row(i);
    if (num(gram_(i, i)) % 2 != 0) {
      std::vector<Rat> p = basis_.row(pivot);
      for (std::size_t j = 0; j < row.size(); ++j) row[j] -= p[j];
    }
    gens.set_row(n++, row);
  }
  {
    std::vector<Rat> p = basis_.row(pivot);
    for (auto& v : p) v *= 2;
    gens.set_row(n++, p);
  }
  return spanned_sublattice(gens);
}

Lattice Lattice::rescaled(const Rat& factor) const {
  if (factor <= 0) throw PreconditionError("rescale factor must be positive");
  return Lattice(basis_, metric_.scaled(factor));
}

Lattice orthogonal_sum(const Lattice& a, const Lattice& b) {
  return Lattice(block_diag(a.basis_, b.basis_), block_diag(a.metric_, b.metric_));
}

Lattice tensor(const Lattice& a, const Lattice& b) {
  return Lattice(kronecker(a.basis_, b.basis_), kronecker(a.metric_, b.metric_));
}

Mat integer_coords_in(const Lattice& in, const Mat& ambient_rows) {
  Mat coords(ambient_rows.rows(), in.rank());
  for (std::size_t i = 0; i < ambient_rows.rows(); ++i) {
    auto c = in.coords_of(ambient_rows.row(i));
    if (!c) throw ContainmentError("vector is outside the lattice span");
    for (const auto& q : *c)
      if (!is_integer(q)) throw ContainmentError("vector is not a lattice element");
    coords.set_row(i, *c);
  }
  return coords;
}

Int count_cosets(const Lattice& sub, const Lattice& sup, const Int& cap) {
  Mat x = integer_coords_in(sup, sub.basis());  // sub in sup coordinates
  Mat h = hermite_normal_form(x);
  if (h.rows() != sup.rank()) throw ContainmentError("index is not finite");
  const std::size_t r = sup.rank();

  auto canonical = [&](std::vector<Int> v) {
    // Reduce modulo the rows of h (upper triangular, positive pivots).
    for (std::size_t i = 0; i < r; ++i) {
      Int piv = to_int(h(i, i));
      Int q = v[i] / piv;
      if (v[i] % piv < 0) q -= 1;
      if (q != 0)
        for (std::size_t j = i; j < r; ++j) v[j] -= q * to_int(h(i, j));
    }
    return v;
  };

  std::set<std::vector<Int>> seen;
  std::vector<std::vector<Int>> queue;
  std::vector<Int> zero(r, 0);
  seen.insert(zero);
  queue.push_back(zero);
  while (!queue.empty()) {
    std::vector<Int> cur = queue.back();
    queue.pop_back();
    for (std::size_t g = 0; g < r; ++g) {
      std::vector<Int> nxt = cur;
      nxt[g] += 1;
      nxt = canonical(std::move(nxt));
      if (seen.insert(nxt).second) {
        if (Int(seen.size()) > cap) throw ResourceError("coset enumeration exceeded cap");
        queue.push_back(nxt);
      }
    }
  }
  return Int(seen.size());
}

Int index_in(const Lattice& sub, const Lattice& sup) {
  if (sub.ambient_dim() != sup.ambient_dim())
    throw DimensionError("lattices live in different ambients");
  Mat x = integer_coords_in(sup, sub.basis());
  if (sub.rank() != sup.rank()) throw ContainmentError("sublattice has smaller rank: index not finite");
  Rat d = det_exact(x);
  Int index = abs_int(to_int(d));
  if (index == 0) throw ContainmentError("degenerate coordinate matrix");
  // Theorem: det(sub) = det(sup) * index^2.
  if (sub.determinant() != sup.determinant() * Rat(index) * Rat(index))
    throw InternalError("index-determinant identity failed");
  if (index <= 64) {
    Int counted = count_cosets(sub, sup, Int(4 * 64 + 8));
    if (counted != index) throw InternalError("coset count disagrees with determinant index");
  }
  return index;
}

bool Lattice::hermite_check() const {
  const std::size_t n = rank();
  if (n == 0) return true;
  Rat mu = minimal_vectors().norm;
  Rat lhs = 1, rhs = det_;
  for (std::size_t i = 0; i < n; ++i) lhs *= mu;
  const std::size_t e = n * (n - 1) / 2;
  for (std::size_t i = 0; i < e; ++i) {
    lhs *= 3;
    rhs *= 4;
  }
  return lhs <= rhs;
}

Lattice Lattice::annihilator(const Mat& s_rows) const {
  for (std::size_t i = 0; i < s_rows.rows(); ++i) {
    if (!contains(s_rows.row(i))) throw ContainmentError("annihilator: vector not in lattice");
  }
  if (s_rows.rows() == 0) return *this;
  // Pairings of basis vectors with S, cleared to integers column-wise.
  Mat c = basis_ * metric_ * s_rows.transpose();
  for (std::size_t j = 0; j < c.cols(); ++j) {
    Int l = 1;
    for (std::size_t i = 0; i < c.rows(); ++i) l = boost::multiprecision::lcm(l, den(c(i, j)));
    if (l != 1)
      for (std::size_t i = 0; i < c.rows(); ++i) c(i, j) *= Rat(l);
  }
  Mat ker = integer_row_kernel(c);  // basis-coordinate rows
  if (ker.rows() == 0) return Lattice(Mat(0, ambient_dim()), metric_);
  return spanned_sublattice(ker * basis_);
}

}  // namespace latkit
