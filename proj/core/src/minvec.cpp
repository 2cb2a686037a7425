#include "latkit/lattice.hpp"

#include <algorithm>

namespace latkit {

namespace {

// Exact greedy pair-reduction of a Gram matrix: returns unimodular T with
// reduced = T * g * T^T. HNF bases can be very skewed, which makes the
// enumeration ranges explode; size-reducing first keeps them tame. This is
// plain integer size reduction, not LLL.
Mat reduce_gram(Mat& g) {
  const std::size_t n = g.rows();
  Mat t = Mat::identity(n);
  auto row_axpy = [&](std::size_t dst, std::size_t src, const Int& c) {
    Rat cc(c);
    for (std::size_t j = 0; j < n; ++j) {
      g(dst, j) += cc * g(src, j);
      t(dst, j) += cc * t(src, j);
    }
    for (std::size_t j = 0; j < n; ++j) g(j, dst) += cc * g(j, src);
  };
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(g(a, j), g(b, j));
      std::swap(t(a, j), t(b, j));
    }
    for (std::size_t j = 0; j < n; ++j) std::swap(g(j, a), g(j, b));
  };
  for (std::size_t rounds = 0; rounds < 64; ++rounds) {
    bool changed = false;
    // Keep diagonals ascending so reductions use the shortest vectors.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (g(j, j) < g(i, i)) {
          swap_rows(i, j);
          changed = true;
        }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        for (;;) {
          // q = round(g_ij / g_jj); complete Euclid on the pair
          Rat ratio = g(i, j) / g(j, j);
          Int q = floor_rat(ratio + Rat(1, 2));
          if (q == 0) break;
          row_axpy(i, j, -q);
          changed = true;
        }
      }
    if (!changed) break;
  }
  return t;
}

// Exact floor(q + sqrt(r2)) for rationals q, r2 with r2 >= 0.
Int floor_plus_sqrt(const Rat& q, const Rat& r2) {
  Int hi = floor_rat(q) + isqrt_floor(floor_rat(r2)) + 2;
  auto ok = [&](const Int& t) {
    Rat d = Rat(t) - q;
    if (d <= 0) return true;
    return d * d <= r2;
  };
  while (!ok(hi)) --hi;
  return hi;
}

Int ceil_minus_sqrt(const Rat& q, const Rat& r2) { return -floor_plus_sqrt(-q, r2); }

struct Enumerator {
  const Mat& l;               // unit lower triangular
  const std::vector<Rat>& d;  // positive pivots
  std::size_t n;
  Rat bound;
  bool shrink;  // track the minimum instead of a fixed radius
  std::vector<std::pair<Rat, std::vector<Int>>> found;
  std::vector<Int> x;
  std::vector<Rat> tail;  // tail[k] = sum_{t>k} d_t y_t^2

  Enumerator(const Mat& ll, const std::vector<Rat>& dd, Rat b, bool s)
      : l(ll), d(dd), n(dd.size()), bound(std::move(b)), shrink(s), x(n, 0), tail(n + 1, Rat(0)) {}

  // c_k = sum_{i>k} x_i * L(i,k)
  Rat offset(std::size_t k) const {
    Rat c = 0;
    for (std::size_t i = k + 1; i < n; ++i)
      if (x[i] != 0) c += Rat(x[i]) * l(i, k);
    return c;
  }

  void emit(const Rat& norm) {
    if (norm == 0) return;
    if (shrink && norm < bound) {
      bound = norm;
      found.clear();
    }
    if (!shrink || norm == bound) found.emplace_back(norm, x);
  }

  void recurse(std::size_t level) {
    if (level == 0 && n == 0) return;
    const std::size_t k = level - 1;
    const Rat rem = bound - tail[level];
    if (rem < 0) return;
    const Rat c = offset(k);
    const Rat r2 = rem / d[k];
    Int lo = ceil_minus_sqrt(-c, r2);
    Int hi = floor_plus_sqrt(-c, r2);
    for (Int v = lo; v <= hi; ++v) {
      x[k] = v;
      Rat y = Rat(v) + c;
      Rat term = d[k] * y * y;
      Rat acc = tail[level] + term;
      if (acc > bound) continue;
      if (k == 0) {
        emit(acc);
      } else {
        tail[k] = acc;
        recurse(k);
      }
    }
    x[k] = 0;
  }
};

}  // namespace

namespace {

// Coordinates found against the reduced basis are mapped back through the
// reduction transform (rows of t are the reduced basis in original coords).
std::vector<Int> unreduce(const std::vector<Int>& x, const Mat& t) {
  std::vector<Int> out(t.cols(), Int(0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < t.cols(); ++j) out[j] += x[i] * to_int(t(i, j));
  }
  return out;
}

}  // namespace

VectorSet Lattice::minimal_vectors() const {
  if (rank() > 12) throw ResourceError("minimal-vector enumeration capped at rank 12");
  VectorSet out;
  if (rank() == 0) {
    out.norm = 0;
    return out;
  }
  Mat g = gram_;
  Mat t = reduce_gram(g);
  Mat l;
  std::vector<Rat> d;
  ldlt(g, l, d);
  // Some basis vector always achieves the smallest diagonal entry, so that is
  // a valid starting radius. Probing a ladder of smaller radii first keeps
  // the search cheap when the basis is far from reduced.
  Rat top = g(0, 0);
  for (std::size_t i = 1; i < rank(); ++i) top = std::min(top, g(i, i));
  for (int k = 4; k >= 0; --k) {
    Rat start = top;
    for (int s = 0; s < k; ++s) start /= 4;
    Enumerator e(l, d, start, /*shrink=*/true);
    e.tail[rank()] = 0;
    e.recurse(rank());
    if (e.found.empty()) continue;
    out.norm = e.bound;
    std::vector<std::vector<Int>> vs;
    vs.reserve(e.found.size());
    for (auto& f : e.found) vs.push_back(unreduce(f.second, t));
    std::sort(vs.begin(), vs.end());
    out.vectors = std::move(vs);
    return out;
  }
  throw InternalError("minimal-vector search found nothing at the diagonal bound");
}

std::vector<std::pair<Rat, std::vector<Int>>> Lattice::vectors_up_to(const Rat& bound) const {
  if (rank() > 12) throw ResourceError("vector enumeration capped at rank 12");
  if (rank() == 0 || bound <= 0) return {};
  Mat g = gram_;
  Mat t = reduce_gram(g);
  Mat l;
  std::vector<Rat> d;
  ldlt(g, l, d);
  Enumerator e(l, d, bound, /*shrink=*/false);
  e.tail[rank()] = 0;
  e.recurse(rank());
  std::vector<std::pair<Rat, std::vector<Int>>> found;
  found.reserve(e.found.size());
  for (auto& f : e.found) found.emplace_back(f.first, unreduce(f.second, t));
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace latkit
