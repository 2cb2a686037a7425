#include "latkit/pair_sum.hpp"

#include "latkit/catalog.hpp"

namespace latkit {

namespace {

Mat doubled_rows(const Mat& left, const Mat& right) {
  if (left.rows() != right.rows() || left.cols() != right.cols())
    throw DimensionError("doubled rows shape mismatch");
  Mat m(left.rows(), 2 * left.cols());
  for (std::size_t i = 0; i < left.rows(); ++i) {
    for (std::size_t j = 0; j < left.cols(); ++j) {
      m(i, j) = left(i, j);
      m(i, left.cols() + j) = right(i, j);
    }
  }
  return m;
}

}  // namespace

PairSumResult pair_sum(const Lattice& l, const Isometry& h) {
  if (h.lattice_rank() != l.rank()) throw DimensionError("isometry rank does not match lattice");
  Lattice ambient = orthogonal_sum(l, l);
  Mat hb = h.matrix() * l.basis();
  Mat m_rows = doubled_rows(l.basis(), l.basis());
  Mat n_rows = doubled_rows(l.basis(), hb);
  // M and N keep the natural generator bases {(v_i,v_i)} and {(v_i,hv_i)},
  // whose Gram is 2*G_L on the nose; K gets the canonical HNF basis.
  Lattice m(m_rows, ambient.metric());
  Lattice n(n_rows, ambient.metric());
  Lattice k = ambient.spanned_sublattice(m_rows.vstack(n_rows));

  PairSumResult out{k, m, n, ambient, std::nullopt};
  if (k.rank() == ambient.rank()) out.index_in_ambient = index_in(k, ambient);
  return out;
}

Isometry restrict_to(const Lattice& l, const Isometry& h, const Lattice& sub) {
  // sub basis in l coordinates, mapped through h, re-expressed in sub.
  Mat s = integer_coords_in(l, sub.basis());
  Mat image = s * h.matrix();  // images in l coordinates
  Mat image_ambient = image * l.basis();
  Mat action(sub.rank(), sub.rank());
  for (std::size_t i = 0; i < sub.rank(); ++i) {
    auto c = sub.coords_of(image_ambient.row(i));
    if (!c) throw NotAnAutomorphismError("isometry does not stabilize the sublattice");
    action.set_row(i, *c);
  }
  try {
    return validate(sub, action);
  } catch (const NotAnIsometryError&) {
    throw;
  } catch (const Error&) {
    throw NotAnAutomorphismError("isometry does not stabilize the sublattice");
  }
}

PairSumResult pair_sum_of_restriction(const Lattice& l, const Isometry& h, const Lattice& sub) {
  return pair_sum(sub, restrict_to(l, h, sub));
}

std::pair<PairSumResult, Lattice> theorem_ncycle_witness(std::size_t n) {
  if (n < 2 || n > 6) throw PreconditionError("n-cycle witness supported for 2 <= n <= 6");
  Lattice zn = make_Zn(n);
  std::vector<int> cycle(n);
  for (std::size_t i = 0; i < n; ++i) cycle[i] = int(i + 1);
  Isometry h = from_spec(zn, IsometrySpec::perm({cycle}));
  return {pair_sum(zn, h), make_An(2 * n - 1)};
}

std::pair<PairSumResult, Lattice> theorem_dn_negation_witness(std::size_t n, std::size_t k) {
  if (k < 1 || k >= n || n > 6) throw PreconditionError("need 1 <= k < n <= 6");
  Lattice dn = make_Dn(n);
  std::vector<int> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = i < k ? -int(i + 1) : int(i + 1);
  Isometry h = from_spec(dn, IsometrySpec::signed_map(images));
  return {pair_sum(dn, h), make_Dn(n + k).rescaled(2)};
}

Mat a2_tensor_basis_gram(const Lattice& l, const Isometry& h) {
  const Mat& b = l.basis();
  Mat hb = h.matrix() * b;
  Mat h2b = h.matrix() * hb;
  Mat rows = doubled_rows(b, b).vstack(doubled_rows(hb, h2b));
  Lattice ambient = orthogonal_sum(l, l);
  return rows * ambient.metric() * rows.transpose();
}

std::pair<PairSumResult, Lattice> theorem_a2_tensor_witness(const Lattice& l, const Isometry& h) {
  if (!h.satisfies_h2_h_1()) throw PreconditionError("isometry does not satisfy h^2 + h + 1 = 0");
  PairSumResult ps = pair_sum(l, h);
  Lattice a2 = make_An(2);
  Lattice expected = tensor(a2, l);
  // The generators {(v_i,v_i)} u {(hv_i,h^2 v_i)} carry the Kronecker form
  // exactly, not just up to isometry.
  Mat got = a2_tensor_basis_gram(l, h);
  if (got != kronecker(a2.gram(), l.gram()))
    throw InternalError("pair-sum Gram does not match the Kronecker form");
  return {ps, expected};
}

}  // namespace latkit
