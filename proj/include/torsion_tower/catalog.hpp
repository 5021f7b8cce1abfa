#pragma once

// Bundled orbifolds.
//
// Runnable entries carry a presentation and matrix generators whose
// relators hold exactly up to sign (checked again at every level by
// check_relators). Metadata-only entries describe norm-one groups of
// maximal orders in quaternion algebras; their presentations are not
// bundled and they are skipped by the batch driver.

#include <string>
#include <string_view>
#include <vector>

#include "torsion_tower/orbifold_spec.hpp"

namespace torsion_tower {

inline constexpr std::string_view kBundledCatalogJson = R"json([
  {
    "id": "modular-group",
    "field_poly": [0, 1],
    "presentation": {"generators": 2, "relators": [[1, 1], [1, 2, 1, 2, 1, 2]]},
    "matrices": [[[0, -1], [1, 0]], [[1, 1], [0, 1]]],
    "base_volume": 1.04719755119660,
    "metadata": {
      "group": "PSL(2,Z) = <S, T | S^2, (ST)^3>",
      "note": "two-dimensional; base_volume is the hyperbolic area pi/3 of the modular surface",
      "abelianization": "Z/6"
    }
  },
  {
    "id": "bianchi-gaussian",
    "field_poly": [1, 0, 1],
    "presentation": {"generators": 4, "relators": [
      [1, 1], [2, 2], [1, 2, 1, 2], [3, 2, 3, 2], [4, 2, 4, 2],
      [1, 3, 1, 3, 1, 3], [4, 1, 2, 4, 1, 2, 4, 1, 2], [3, 4, -3, -4]]},
    "matrices": [
      [[0, -1], [1, 0]],
      [[{"num": [0, -1]}, 0], [0, {"num": [0, 1]}]],
      [[1, 1], [0, 1]],
      [[1, {"num": [0, 1]}], [0, 1]]],
    "base_volume": 0.305321864725740,
    "metadata": {
      "group": "PSL(2,Z[i]) with generators a, l, t, u",
      "field": "Q(i), discriminant -4",
      "abelianization": "Z/2 + Z/2"
    }
  },
  {
    "id": "bianchi-d7",
    "field_poly": [2, -1, 1],
    "presentation": {"generators": 3, "relators": [
      [1, 1], [2, 1, 2, 1, 2, 1], [1, 2, -3, 1, 3, 1, 2, -3, 1, 3], [2, 3, -2, -3]]},
    "matrices": [
      [[0, -1], [1, 0]],
      [[1, 1], [0, 1]],
      [[1, {"num": [0, 1]}], [0, 1]]],
    "base_volume": 0.888914927816353,
    "metadata": {
      "group": "PSL(2,O) for O the ring of integers of Q(sqrt(-7)), theta = (1 + sqrt(-7))/2",
      "field": "Q(sqrt(-7)), discriminant -7; 2 splits into two primes of norm 2",
      "abelianization": "Z + Z/2"
    }
  },
  {
    "id": "figure-eight",
    "field_poly": [1, 1, 1],
    "presentation": {"generators": 2, "relators": [[-1, 2, 1, -2, 1, 2, -1, -2, 1, -2]]},
    "matrices": [
      [[1, 1], [0, 1]],
      [[1, 0], [{"num": [0, -1]}, 1]]],
    "base_volume": 2.02988321281931,
    "metadata": {
      "group": "figure-eight knot group <x, y | w x w^-1 y^-1>, w = x^-1 y x y^-1",
      "field": "Q(sqrt(-3)), theta a primitive cube root of unity",
      "abelianization": "Z",
      "cusped": "true"
    }
  }
])json";

inline constexpr std::string_view kQuaternionCatalogJson = R"json([
  {
    "id": "norm-one-m1",
    "field_poly": [1, -1, -3, -1, 1],
    "base_volume": 0.9732,
    "metadata": {"discriminant": "-1323", "finite_ramification": "none", "level_prime_norm": "5"}
  },
  {
    "id": "norm-one-m2",
    "field_poly": [-2, -2, 0, 1],
    "base_volume": 0.6617,
    "metadata": {"discriminant": "-76", "finite_ramification": "q2", "level_prime_norm": "3"}
  },
  {
    "id": "norm-one-m3",
    "field_poly": [-1, 0, 3, -2, 1],
    "base_volume": 0.5757,
    "metadata": {"discriminant": "-976", "finite_ramification": "none", "level_prime_norm": "5"}
  },
  {
    "id": "norm-one-m4",
    "field_poly": [-2, 1, -1, 1],
    "base_volume": 2.9435,
    "metadata": {"discriminant": "-83", "finite_ramification": "q5", "level_prime_norm": "2"}
  },
  {
    "id": "norm-one-m5",
    "field_poly": [2, -1, 1],
    "base_volume": 5.3334,
    "metadata": {
      "discriminant": "-7",
      "finite_ramification": "q2, q7",
      "level_prime_norm": "2 (the conjugate of the ramified q2)",
      "printed_poly": "x^2 - 7; replaced by x^2 - x + 2, which generates Q(sqrt(-7)) and has two norm-2 primes"
    }
  }
])json";

namespace detail {

inline std::vector<OrbifoldSpec> parse_catalog(std::string_view text, const std::string& name) {
  const json j = json::parse(text);
  std::vector<OrbifoldSpec> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_orbifold(j[i], name + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

/// Runnable examples with explicit presentations and generators.
inline const std::vector<OrbifoldSpec>& bundled_catalog() {
  static const std::vector<OrbifoldSpec> specs = detail::parse_catalog(kBundledCatalogJson, "bundled");
  return specs;
}

/// Metadata-only arithmetic orbifolds (field polynomial, level-prime norm, volume).
inline const std::vector<OrbifoldSpec>& quaternion_catalog() {
  static const std::vector<OrbifoldSpec> specs = detail::parse_catalog(kQuaternionCatalogJson, "quaternion");
  return specs;
}

inline std::vector<OrbifoldSpec> full_catalog() {
  std::vector<OrbifoldSpec> all = bundled_catalog();
  const auto& q = quaternion_catalog();
  all.insert(all.end(), q.begin(), q.end());
  return all;
}

inline const OrbifoldSpec* find_catalog_spec(std::string_view id) {
  for (const auto* list : {&bundled_catalog(), &quaternion_catalog()})
    for (const auto& spec : *list)
      if (spec.id == id) return &spec;
  return nullptr;
}

}  // namespace torsion_tower
