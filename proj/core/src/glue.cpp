#include "latkit/glue.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace latkit {

GluePlan glue(const Lattice& base, const Mat& glue_vectors) {
  for (std::size_t i = 0; i < glue_vectors.rows(); ++i) {
    for (std::size_t b = 0; b < base.rank(); ++b) {
      Rat p = base.inner(glue_vectors.row(i), base.basis().row(b));
      if (!is_integer(p))
        throw PairingError("glue vector does not pair integrally with the base");
    }
  }
  Lattice result = base.spanned_sublattice(base.basis().vstack(glue_vectors));
  GluePlan plan{base, glue_vectors, result, Int(1)};
  plan.index = index_in(base, result);
  return plan;
}

namespace {

// Element of D(L) written in the cyclic-factor coordinates.
struct DiscElement {
  std::vector<Int> a;  // 0 <= a[i] < orders[i]

  bool operator<(const DiscElement& o) const { return a < o.a; }
  bool operator==(const DiscElement& o) const = default;
};

struct DiscGroupCtx {
  const Lattice* l;
  DiscriminantGroup g;
  Int size;

  DiscElement zero() const { return DiscElement{std::vector<Int>(g.orders.size(), Int(0))}; }

  DiscElement add(const DiscElement& x, const DiscElement& y) const {
    DiscElement r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = (r.a[i] + y.a[i]) % g.orders[i];
    return r;
  }

  Int element_order(const DiscElement& x) const {
    Int o = 1;
    for (std::size_t i = 0; i < x.a.size(); ++i) {
      Int d = g.orders[i];
      Int gcd = boost::multiprecision::gcd(x.a[i], d);
      Int oi = d / gcd;
      o = boost::multiprecision::lcm(o, oi);
    }
    return o;
  }

  std::vector<Rat> ambient(const DiscElement& x) const {
    std::vector<Rat> v(l->ambient_dim(), Rat(0));
    for (std::size_t i = 0; i < x.a.size(); ++i) {
      if (x.a[i] == 0) continue;
      std::vector<Rat> rep = g.representatives.row(i);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += Rat(x.a[i]) * rep[j];
    }
    return v;
  }

  // Pairing (x, y) mod 1 is well defined on D(L); we return the fractional
  // part of the representative pairing.
  bool pairs_integrally(const DiscElement& x, const DiscElement& y) const {
    return is_integer(l->inner(ambient(x), ambient(y)));
  }

  bool integral_norm(const DiscElement& x) const {
    return is_integer(l->inner(ambient(x), ambient(x)));
  }

  std::vector<DiscElement> all_elements() const {
    std::vector<DiscElement> out;
    DiscElement cur = zero();
    for (;;) {
      out.push_back(cur);
      std::size_t i = 0;
      for (; i < cur.a.size(); ++i) {
        cur.a[i] += 1;
        if (cur.a[i] < g.orders[i]) break;
        cur.a[i] = 0;
      }
      if (i == cur.a.size()) break;
    }
    return out;
  }
};

DiscGroupCtx disc_ctx(const Lattice& l) {
  DiscGroupCtx ctx{&l, l.discriminant_group(), Int(1)};
  ctx.size = ctx.g.order();
  return ctx;
}

}  // namespace

Mat dual_vectors_of_order(const Lattice& l, const Int& m) {
  if (m < 2) throw PreconditionError("order must be at least 2");
  DiscGroupCtx ctx = disc_ctx(l);
  if (ctx.size > 4096) throw ResourceError("discriminant group too large to enumerate");
  std::vector<std::vector<Rat>> rows;
  for (const auto& x : ctx.all_elements())
    if (ctx.element_order(x) == m) rows.push_back(ctx.ambient(x));
  Mat out(rows.size(), l.ambient_dim());
  for (std::size_t i = 0; i < rows.size(); ++i) out.set_row(i, rows[i]);
  return out;
}

std::vector<OverlatticeStep> integral_overlattice_by_doubling(const Lattice& k, const Mat& us) {
  // Pairwise integrality (4u, w) in Z holds because 4u is a lattice vector;
  // asserted below through the integrality of every step's result.
  std::vector<OverlatticeStep> steps;
  Lattice cur = k;
  for (std::size_t i = 0; i < us.rows(); ++i) {
    std::vector<Rat> u = us.row(i);
    // u must have order 4 modulo the original lattice.
    std::vector<Rat> u2 = u, u4 = u;
    for (auto& q : u2) q *= 2;
    for (auto& q : u4) q *= 4;
    if (k.contains(u) || k.contains(u2) || !k.contains(u4))
      throw PreconditionError("doubling needs dual vectors of exact order 4");
    Mat rows(1, k.ambient_dim());
    rows.set_row(0, u2);
    Lattice result = cur.spanned_sublattice(cur.basis().vstack(rows));
    OverlatticeStep step{cur, u2, Int(2), result, result.is_integral()};
    if (!step.integral) throw InternalError("doubling produced a non-integral overlattice");
    steps.push_back(std::move(step));
    cur = steps.back().result;
  }
  // Total index 2^k and determinant det(K)/4^k.
  Rat expect = k.determinant();
  for (std::size_t i = 0; i < us.rows(); ++i) expect /= 4;
  if (!steps.empty() && steps.back().result.determinant() != expect)
    throw InternalError("doubling index accounting failed");
  return steps;
}

std::vector<Lattice> integral_overlattice_search(const Lattice& j, const Int& target_index) {
  if (!j.is_integral()) throw PreconditionError("overlattice search expects an integral lattice");
  if (target_index < 1 || target_index > 64)
    throw PreconditionError("overlattice search supports indices up to 64");
  if (target_index == 1) return {j};
  DiscGroupCtx ctx = disc_ctx(j);
  if (ctx.size > 4096) throw ResourceError("discriminant group too large to enumerate");
  if (ctx.size % target_index != 0) return {};

  // Candidate generators: classes with integral norm (a necessary condition
  // for membership in an integral overlattice subgroup).
  std::vector<DiscElement> cands;
  for (const auto& x : ctx.all_elements())
    if (!(x == ctx.zero()) && ctx.integral_norm(x)) cands.push_back(x);

  // BFS over subgroups: grow by one compatible generator at a time, closing
  // under addition; dedupe by the sorted element list.
  std::set<std::vector<DiscElement>> seen;
  std::vector<std::vector<DiscElement>> complete;
  std::vector<std::vector<DiscElement>> frontier;
  std::vector<DiscElement> trivial{ctx.zero()};
  frontier.push_back(trivial);
  seen.insert(trivial);

  auto close_under_addition = [&](std::vector<DiscElement> gens) {
    std::set<DiscElement> elems(gens.begin(), gens.end());
    std::vector<DiscElement> queue(gens.begin(), gens.end());
    while (!queue.empty()) {
      DiscElement x = queue.back();
      queue.pop_back();
      std::vector<DiscElement> snapshot(elems.begin(), elems.end());
      for (const auto& y : snapshot) {
        DiscElement z = ctx.add(x, y);
        if (elems.insert(z).second) queue.push_back(z);
      }
    }
    return std::vector<DiscElement>(elems.begin(), elems.end());
  };

  while (!frontier.empty()) {
    std::vector<std::vector<DiscElement>> next;
    for (const auto& sub : frontier) {
      if (Int(sub.size()) == target_index) {
        complete.push_back(sub);
        continue;
      }
      if (Int(sub.size()) > target_index || target_index % Int(sub.size()) != 0) continue;
      for (const auto& c : cands) {
        if (std::binary_search(sub.begin(), sub.end(), c)) continue;
        // The new generator must pair integrally with the current subgroup.
        bool ok = true;
        for (const auto& s : sub)
          if (!ctx.pairs_integrally(c, s)) {
            ok = false;
            break;
          }
        if (!ok || !ctx.pairs_integrally(c, c)) continue;
        std::vector<DiscElement> grown = close_under_addition([&] {
          std::vector<DiscElement> g = sub;
          g.push_back(c);
          return g;
        }());
        if (Int(grown.size()) > target_index || target_index % Int(grown.size()) != 0) continue;
        // Closure can add elements with fractional norms; reject those.
        bool closed_ok = true;
        for (const auto& e : grown)
          if (!ctx.integral_norm(e)) {
            closed_ok = false;
            break;
          }
        if (!closed_ok) continue;
        if (seen.insert(grown).second) next.push_back(grown);
      }
    }
    frontier = std::move(next);
  }

  std::vector<Lattice> out;
  std::vector<Mat> bases;
  for (const auto& sub : complete) {
    Mat rows(sub.size(), j.ambient_dim());
    for (std::size_t i = 0; i < sub.size(); ++i) rows.set_row(i, ctx.ambient(sub[i]));
    Lattice h = j.spanned_sublattice(j.basis().vstack(rows));
    if (!h.is_integral()) throw InternalError("search produced a non-integral overlattice");
    if (index_in(j, h) != target_index) throw InternalError("search index mismatch");
    Mat cb = h.canonical_basis();
    if (std::find(bases.begin(), bases.end(), cb) == bases.end()) {
      bases.push_back(cb);
      out.push_back(h);
    }
  }
  return out;
}

}  // namespace latkit
