#include "latkit/isometry.hpp"

namespace latkit {

Isometry validate(const Lattice& l, const Mat& action) {
  if (!action.is_square() || action.rows() != l.rank())
    throw DimensionError("isometry matrix must be rank x rank");
  if (action * l.gram() * action.transpose() != l.gram())
    throw NotAnIsometryError("matrix does not preserve the form");
  if (!action.is_integral())
    throw NotAnAutomorphismError("matrix does not preserve the lattice");
  Rat d = det_exact(action);
  if (d != 1 && d != -1)
    throw NotAnAutomorphismError("matrix is not invertible over the integers");
  return Isometry(action);
}

Isometry Isometry::inverse() const {
  Mat inv = invert(m_);
  return Isometry(inv);
}

Isometry Isometry::negated() const { return Isometry(-m_); }

Isometry compose(const Isometry& a, const Isometry& b) {
  if (a.lattice_rank() != b.lattice_rank()) throw DimensionError("isometry rank mismatch");
  // Row convention: applying a then b is v * (a.m * b.m).
  return Isometry(a.m_ * b.m_);
}

std::size_t Isometry::order(std::size_t cap) const {
  Mat id = Mat::identity(m_.rows());
  Mat p = m_;
  for (std::size_t k = 1; k <= cap; ++k) {
    if (p == id) return k;
    p = p * m_;
  }
  throw ResourceError("isometry order exceeds the search cap");
}

bool Isometry::satisfies_h2_h_1() const {
  Mat id = Mat::identity(m_.rows());
  return m_ * m_ + m_ + id == Mat::zero(m_.rows(), m_.rows());
}

Isometry reflection_at_root(const Lattice& l, const std::vector<Rat>& root_coords) {
  if (root_coords.size() != l.rank()) throw DimensionError("root length mismatch");
  std::vector<Rat> gv = mul_row(root_coords, l.gram());  // (b_i, v) per i
  if (dot(root_coords, gv) != 2) throw RootNormError("reflection vector must have norm 2");
  // H = I - (G v^T) v : row i is e_i - (b_i, v) * v.
  Mat h = Mat::identity(l.rank());
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = 0; j < l.rank(); ++j) h(i, j) -= gv[i] * root_coords[j];
  return validate(l, h);
}

IsometrySpec IsometrySpec::identity_spec() { return {}; }

IsometrySpec IsometrySpec::negation() {
  IsometrySpec s;
  s.kind = Kind::negation_of_all;
  return s;
}

IsometrySpec IsometrySpec::perm(std::vector<std::vector<int>> cycles) {
  IsometrySpec s;
  s.kind = Kind::coordinate_permutation;
  s.cycles = std::move(cycles);
  return s;
}

IsometrySpec IsometrySpec::signed_map(std::vector<int> images) {
  IsometrySpec s;
  s.kind = Kind::signed_coordinate_map;
  s.signed_images = std::move(images);
  return s;
}

IsometrySpec IsometrySpec::reflection(std::vector<Rat> root_coords) {
  IsometrySpec s;
  s.kind = Kind::reflection_at_root;
  s.root = std::move(root_coords);
  return s;
}

IsometrySpec IsometrySpec::ambient_matrix(Mat m) {
  IsometrySpec s;
  s.kind = Kind::explicit_matrix;
  s.matrix = std::move(m);
  return s;
}

IsometrySpec IsometrySpec::negated_spec(IsometrySpec inner) {
  IsometrySpec s;
  s.kind = Kind::negated;
  s.inner = std::make_shared<IsometrySpec>(std::move(inner));
  return s;
}

namespace {

// Basis-coordinate matrix for an ambient row-action map: H with H * B = B * A.
Mat ambient_to_basis(const Lattice& l, const Mat& row_action) {
  if (row_action.rows() != l.ambient_dim())
    throw DimensionError("ambient map dimension mismatch");
  Mat target = l.basis() * row_action;
  Mat h(l.rank(), l.rank());
  for (std::size_t i = 0; i < l.rank(); ++i) {
    auto c = l.coords_of(target.row(i));
    if (!c) throw NotAnAutomorphismError("ambient map does not stabilize the lattice span");
    h.set_row(i, *c);
  }
  return h;
}

Mat perm_row_action(std::size_t m, const std::vector<std::vector<int>>& cycles) {
  std::vector<std::size_t> img(m);
  for (std::size_t i = 0; i < m; ++i) img[i] = i;
  for (const auto& cyc : cycles) {
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      int from = cyc[k], to = cyc[(k + 1) % cyc.size()];
      if (from < 1 || std::size_t(from) > m || to < 1 || std::size_t(to) > m)
        throw DimensionError("cycle index out of range");
      img[from - 1] = std::size_t(to - 1);
    }
  }
  Mat a(m, m);
  for (std::size_t i = 0; i < m; ++i) a(i, img[i]) = 1;
  return a;
}

Mat signed_row_action(std::size_t m, const std::vector<int>& images) {
  if (images.size() != m) throw DimensionError("signed image list length mismatch");
  Mat a(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    int t = images[i];
    if (t == 0 || std::size_t(t < 0 ? -t : t) > m)
      throw DimensionError("signed image index out of range");
    a(i, std::size_t(t < 0 ? -t : t) - 1) = t > 0 ? 1 : -1;
  }
  return a;
}

}  // namespace

Isometry from_spec(const Lattice& l, const IsometrySpec& spec) {
  using Kind = IsometrySpec::Kind;
  switch (spec.kind) {
    case Kind::identity:
      return validate(l, Mat::identity(l.rank()));
    case Kind::negation_of_all:
      return validate(l, -Mat::identity(l.rank()));
    case Kind::coordinate_permutation:
      return validate(l, ambient_to_basis(l, perm_row_action(l.ambient_dim(), spec.cycles)));
    case Kind::signed_coordinate_map:
      return validate(l, ambient_to_basis(l, signed_row_action(l.ambient_dim(), spec.signed_images)));
    case Kind::reflection_at_root:
      return reflection_at_root(l, spec.root);
    case Kind::explicit_matrix:
      // Printed matrices act on ambient column vectors; the row action is the
      // transpose.
      return validate(l, ambient_to_basis(l, spec.matrix.transpose()));
    case Kind::negated:
      if (!spec.inner) throw PreconditionError("negated spec without inner spec");
      return from_spec(l, *spec.inner).negated();
  }
  throw PreconditionError("unknown isometry spec kind");
}

}  // namespace latkit
