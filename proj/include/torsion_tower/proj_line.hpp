#pragma once

// The projective line P^1(Z/p^n) and the left action of 2x2 matrices on
// column vectors. The stabilizer of (1:0) is the upper-triangular subgroup,
// so the orbit of (1:0) is the coset space of Gamma_0(p^n).

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "torsion_tower/residue_arith.hpp"

namespace torsion_tower {

/// Row-major [[a, b], [c, d]] over a residue ring.
struct Mat2 {
  RingElt a, b, c, d;

  friend bool operator==(const Mat2&, const Mat2&) = default;
};

inline Mat2 identity_matrix(const ResidueRing& ring) { return {ring.one(), ring.zero(), ring.zero(), ring.one()}; }

inline Mat2 make_matrix(const ResidueRing& ring, long a, long b, long c, long d) {
  return {ring.elt(a), ring.elt(b), ring.elt(c), ring.elt(d)};
}

inline Mat2 multiply(const ResidueRing& ring, const Mat2& m, const Mat2& n) {
  return {ring.add(ring.mul(m.a, n.a), ring.mul(m.b, n.c)), ring.add(ring.mul(m.a, n.b), ring.mul(m.b, n.d)),
          ring.add(ring.mul(m.c, n.a), ring.mul(m.d, n.c)), ring.add(ring.mul(m.c, n.b), ring.mul(m.d, n.d))};
}

inline RingElt determinant(const ResidueRing& ring, const Mat2& m) {
  return ring.sub(ring.mul(m.a, m.d), ring.mul(m.b, m.c));
}

inline bool is_invertible(const ResidueRing& ring, const Mat2& m) { return ring.is_unit(determinant(ring, m)); }

inline Mat2 inverse(const ResidueRing& ring, const Mat2& m) {
  const RingElt det = determinant(ring, m);
  if (!ring.is_unit(det)) throw Error(ErrorCode::NotInvertible, "matrix determinant is not a unit");
  const RingElt inv = ring.inverse(det);
  return {ring.mul(m.d, inv), ring.mul(ring.neg(m.b), inv), ring.mul(ring.neg(m.c), inv), ring.mul(m.a, inv)};
}

inline Mat2 scale(const ResidueRing& ring, const RingElt& u, const Mat2& m) {
  return {ring.mul(u, m.a), ring.mul(u, m.b), ring.mul(u, m.c), ring.mul(u, m.d)};
}

/// True iff m = u * I for a unit u.
inline bool is_scalar(const ResidueRing& ring, const Mat2& m) {
  return ring.is_zero(m.b) && ring.is_zero(m.c) && m.a == m.d && ring.is_unit(m.a);
}

/// Canonical representative: (1, y), or (x, 1) with p | x.
struct ProjPoint {
  RingElt x, y;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
};

inline ProjPoint normalize_point(const ResidueRing& ring, const RingElt& x, const RingElt& y) {
  if (ring.is_unit(x)) return {ring.one(), ring.mul(y, ring.inverse(x))};
  if (ring.is_unit(y)) return {ring.mul(x, ring.inverse(y)), ring.one()};
  throw Error(ErrorCode::NotProjective,
              "(" + x.value.get_str() + " : " + y.value.get_str() + ") has no unit coordinate");
}

/// p^n + p^(n-1); throws if the line is too large to index.
inline std::size_t projective_line_size(const ResidueRing& ring) {
  const BigInt size = ring.modulus() + ring.modulus() / static_cast<unsigned long>(ring.p());
  if (size > BigInt(static_cast<unsigned long>(std::numeric_limits<std::uint32_t>::max())))
    throw Error(ErrorCode::ResourceLimitExceeded, "projective line of size " + size.get_str() + " is too large");
  return size.get_ui();
}

/// Position of a canonical point in enumerate_projective_line order.
inline std::size_t point_index(const ResidueRing& ring, const ProjPoint& pt) {
  if (pt.x.value == 1) return pt.y.value.get_ui();
  return ring.modulus().get_ui() + BigInt(pt.x.value / static_cast<unsigned long>(ring.p())).get_ui();
}

/// (1, y) for y ascending, then (x, 1) for x in pZ/p^n ascending.
inline std::vector<ProjPoint> enumerate_projective_line(const ResidueRing& ring) {
  const std::size_t total = projective_line_size(ring);
  const std::size_t q = ring.modulus().get_ui();
  std::vector<ProjPoint> pts;
  pts.reserve(total);
  for (std::size_t y = 0; y < q; ++y) pts.push_back({ring.one(), RingElt{BigInt(static_cast<unsigned long>(y))}});
  for (std::size_t x = 0; x < q; x += ring.p()) pts.push_back({RingElt{BigInt(static_cast<unsigned long>(x))}, ring.one()});
  return pts;
}

inline ProjPoint apply_matrix(const ResidueRing& ring, const Mat2& m, const ProjPoint& pt) {
  return normalize_point(ring, ring.add(ring.mul(m.a, pt.x), ring.mul(m.b, pt.y)),
                         ring.add(ring.mul(m.c, pt.x), ring.mul(m.d, pt.y)));
}

/// perm[i] = index of m * pts[i]; pts must be the full enumeration.
inline std::vector<std::size_t> permutation_of_generator(const ResidueRing& ring, const Mat2& m,
                                                         const std::vector<ProjPoint>& pts) {
  std::vector<std::size_t> perm(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) perm[i] = point_index(ring, apply_matrix(ring, m, pts[i]));
  return perm;
}

}  // namespace torsion_tower
