#pragma once

#include "latkit/lattice.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace latkit {

// An automorphism of a lattice, stored as its integer matrix on basis
// coordinates (row convention: v -> v * matrix). Construction goes through
// validate(), so a held value always satisfies matrix * G * matrix^T = G and
// det = +-1.
class Isometry {
 public:
  const Mat& matrix() const { return m_; }
  std::size_t lattice_rank() const { return m_.rows(); }

  Isometry inverse() const;
  Isometry negated() const;
  friend Isometry compose(const Isometry& a, const Isometry& b);

  // Least k >= 1 with h^k = 1; search capped (default 120) since anything
  // larger signals a bad spec at these ranks.
  std::size_t order(std::size_t cap = 120) const;

  // h^2 + h + 1 = 0, checked exactly.
  bool satisfies_h2_h_1() const;

  friend Isometry validate(const Lattice& l, const Mat& action);

 private:
  explicit Isometry(Mat m) : m_(std::move(m)) {}
  Mat m_;
};

// Checks that the basis-coordinate matrix preserves the form (else
// NotAnIsometryError) and maps the lattice onto itself (else
// NotAnAutomorphismError), and returns the validated value.
Isometry validate(const Lattice& l, const Mat& action);

// Reflection r_v(x) = x - (x,v) v at a root v ((v,v) = 2), v in basis
// coordinates. Throws RootNormError.
Isometry reflection_at_root(const Lattice& l, const std::vector<Rat>& root_coords);

Isometry compose(const Isometry& a, const Isometry& b);

// Declarative description of an isometry, mirroring how the worked cases are
// stated: actions on the ambient unit vectors e_1..e_m (1-indexed), or a
// reflection / explicit matrix. Ambient descriptions are converted to basis
// coordinates once, at construction.
struct IsometrySpec {
  enum class Kind : std::uint8_t {
    identity,
    negation_of_all,
    coordinate_permutation,   // cycles on ambient e_i
    signed_coordinate_map,    // image of e_i as +-index
    reflection_at_root,       // root in basis coordinates
    explicit_matrix,          // ambient matrix, column-vector action x -> M x
    negated,                  // negation of an inner spec
  };

  Kind kind = Kind::identity;
  std::vector<std::vector<int>> cycles;
  std::vector<int> signed_images;
  std::vector<Rat> root;
  Mat matrix;
  std::shared_ptr<IsometrySpec> inner;

  static IsometrySpec identity_spec();
  static IsometrySpec negation();
  static IsometrySpec perm(std::vector<std::vector<int>> cycles);
  static IsometrySpec signed_map(std::vector<int> images);
  static IsometrySpec reflection(std::vector<Rat> root_coords);
  static IsometrySpec ambient_matrix(Mat m);
  static IsometrySpec negated_spec(IsometrySpec inner);
};

// Realizes a spec on a concrete lattice. Ambient kinds require the described
// map to stabilize the lattice (else NotAnAutomorphismError).
Isometry from_spec(const Lattice& l, const IsometrySpec& spec);

}  // namespace latkit
