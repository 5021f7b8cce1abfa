#pragma once

// Glue between library types and the oracles.

#include <vector>

#include "oracles.hpp"
#include "torsion_tower/torsion_tower.hpp"

namespace support {

inline std::vector<long> small_coeffs(const torsion_tower::MonicIntPolynomial& f) {
  std::vector<long> out;
  for (const auto& c : f.coeffs()) out.push_back(c.get_si());
  return out;
}

inline long ipow(long p, unsigned n) {
  long q = 1;
  for (unsigned i = 0; i < n; ++i) q *= p;
  return q;
}

/// Generator images mod p^n computed by the oracle from the raw spec data.
inline std::vector<oracle::Mat> oracle_images(const torsion_tower::OrbifoldSpec& spec, long p, long root, unsigned n) {
  const long N = ipow(p, n);
  const long t = oracle::lift_by_trial(small_coeffs(spec.field_poly), p, root, N);
  std::vector<oracle::Mat> out;
  for (const auto& m : spec.generator_matrices) {
    oracle::Mat img{};
    for (int k = 0; k < 4; ++k) {
      std::vector<long> num;
      for (const auto& c : m[k].numerators()) num.push_back(c.get_si());
      img[k] = oracle::reduce_entry(num, m[k].denominator().get_si(), t, N);
    }
    out.push_back(img);
  }
  return out;
}

inline std::vector<mpz_class> sorted_divisors(const torsion_tower::ElementaryDivisors& d) {
  std::vector<mpz_class> out = d.divisors;
  std::sort(out.begin(), out.end());
  return out;
}

/// Streamlined path versus the full-word brute force at one level.
struct OracleComparison {
  bool equal = false;
  std::size_t index = 0;
  std::string detail;
};

inline OracleComparison compare_with_brute_force(const torsion_tower::OrbifoldSpec& spec,
                                                 const torsion_tower::DegreeOnePrime& prime, unsigned n) {
  using namespace torsion_tower;
  const CoverComputation cc = compute_cover(spec, prime, n);
  const auto bf = oracle::brute_force_cover(oracle_images(spec, static_cast<long>(prime.p), static_cast<long>(prime.root), n),
                                            spec.presentation->relators(), ipow(static_cast<long>(prime.p), n));
  OracleComparison out;
  out.index = cc.table.num_cosets;
  const auto lib = sorted_divisors(cc.divisors);
  out.equal = bf.index == cc.table.num_cosets && bf.schreier_generators == cc.matrix.num_cols() && bf.divisors == lib;
  if (!out.equal) {
    out.detail = spec.id + " p=" + std::to_string(prime.p) + " root=" + std::to_string(prime.root) + " n=" + std::to_string(n) +
                 ": index " + std::to_string(cc.table.num_cosets) + " vs " + std::to_string(bf.index) + ", divisors";
    for (const auto& d : lib) out.detail += " " + d.get_str();
    out.detail += " vs";
    for (const auto& d : bf.divisors) out.detail += " " + d.get_str();
  }
  return out;
}

}  // namespace support
