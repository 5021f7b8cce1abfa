#pragma once

// Slow, independent reference implementations used only by the tests.
// Nothing here calls into the library's algorithms; shared inputs are plain
// integers, words and coefficient lists.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<mpz_class>>;

inline Dense to_dense(const std::vector<std::vector<long>>& m) {
  Dense out;
  for (const auto& row : m) {
    std::vector<mpz_class> r;
    for (long v : row) r.emplace_back(v);
    out.push_back(std::move(r));
  }
  return out;
}

/// Determinant by cofactor expansion along the first row.
inline mpz_class cofactor_det(const Dense& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  mpz_class det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j] == 0) continue;
    Dense minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<mpz_class> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(std::move(row));
    }
    const mpz_class term = a[0][j] * cofactor_det(minor);
    det += (j % 2 == 0) ? term : mpz_class(-term);
  }
  return det;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// Elementary divisors from gcds of k x k minors: d_k = D_k / D_(k-1).
inline std::vector<mpz_class> gcd_of_minors_divisors(const Dense& a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<mpz_class> out;
  mpz_class prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(rows, k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    mpz_class g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        Dense sub;
        for (std::size_t i : r) {
          std::vector<mpz_class> row;
          for (std::size_t j : c) row.push_back(a[i][j]);
          sub.push_back(std::move(row));
        }
        mpz_class d = cofactor_det(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

/// Textbook Smith form: move the smallest entry to the corner, clear its
/// row and column, fix divisibility, recurse on the minor.
inline std::vector<mpz_class> naive_snf(Dense a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<mpz_class> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (bi == rows || abs(a[i][j]) < abs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == rows) return diag;
      std::swap(a[t], a[bi]);
      for (auto& row : a) std::swap(row[t], row[bj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

inline long mod(long a, long m) { return ((a % m) + m) % m; }

inline long gcd_l(long a, long b) { return std::gcd(a, b); }

/// Simple roots of f mod p by trying every residue; f ascending coefficients.
inline std::vector<long> simple_roots_by_trial(const std::vector<long>& f, long p) {
  std::vector<long> out;
  for (long r = 0; r < p; ++r) {
    long v = 0, dv = 0;
    for (std::size_t i = f.size(); i-- > 0;) v = mod(v * r + f[i], p);
    for (std::size_t i = f.size(); i-- > 1;) dv = mod(dv * r + static_cast<long>(i) * f[i], p);
    if (v == 0 && dv != 0) out.push_back(r);
  }
  return out;
}

/// Number of unit-scaling classes of pairs (x, y) mod N with gcd(x, y, N) = 1.
inline std::size_t projective_line_by_pairs(long N) {
  std::vector<long> units;
  for (long u = 1; u < N; ++u)
    if (gcd_l(u, N) == 1) units.push_back(u);
  if (N == 1) units.push_back(0);
  std::set<std::pair<long, long>> classes;
  for (long x = 0; x < N; ++x)
    for (long y = 0; y < N; ++y) {
      if (gcd_l(gcd_l(x, y), N) != 1) continue;
      std::pair<long, long> best{N, N};
      for (long u : units) best = std::min(best, std::pair<long, long>{mod(u * x, N), mod(u * y, N)});
      classes.insert(best);
    }
  return classes.size();
}

using Mat = std::array<long, 4>;

/// Reduces (c0 + c1 t + ...) / den modulo N, t a root of f mod N; den coprime to N.
inline long reduce_entry(const std::vector<long>& num, long den, long t, long N) {
  long v = 0;
  for (std::size_t i = num.size(); i-- > 0;) v = mod(v * t + mod(num[i], N), N);
  for (long inv = 1; inv < N; ++inv)
    if (mod(mod(den, N) * inv, N) == 1) return mod(v * inv, N);
  return N == 1 ? 0 : -1;
}

/// The root of f mod p^n congruent to r0 mod p, found by trying all lifts.
inline long lift_by_trial(const std::vector<long>& f, long p, long r0, long N) {
  for (long r = r0; r < N; r += p) {
    long v = 0;
    for (std::size_t i = f.size(); i-- > 0;) v = mod(v * r + mod(f[i], N), N);
    if (v == 0) return r;
  }
  return -1;
}

/// Rewrites the relators over the coset action on P^1(Z/N) from scratch and
/// returns the elementary divisors of the abelianized full-word presentation.
///
/// Points are pairs reduced to the lexicographically least unit multiple,
/// the spanning tree comes from depth-first search, and every relator is
/// rewritten into a full word in Schreier generators labelled (coset, gen)
/// before being freely reduced and abelianized.
struct CoverHomology {
  std::size_t index = 0;
  std::size_t schreier_generators = 0;
  std::vector<mpz_class> divisors;
};

inline CoverHomology brute_force_cover(const std::vector<Mat>& gens, const std::vector<std::vector<int>>& relators, long N) {
  std::vector<long> units;
  for (long u = 1; u < N; ++u)
    if (gcd_l(u, N) == 1) units.push_back(u);
  if (N == 1) units.push_back(0);
  auto canon = [&](long x, long y) {
    std::pair<long, long> best{N, N};
    for (long u : units) best = std::min(best, std::pair<long, long>{mod(u * x, N), mod(u * y, N)});
    return best;
  };
  const std::size_t g = gens.size();
  std::vector<Mat> invs;
  for (const Mat& m : gens) {
    const long det = mod(m[0] * m[3] - m[1] * m[2], N);
    long di = 0;
    for (long v = 1; v < N; ++v)
      if (mod(det * v, N) == 1) di = v;
    if (N == 1) di = 0;
    invs.push_back({mod(m[3] * di, N), mod(-m[1] * di, N), mod(-m[2] * di, N), mod(m[0] * di, N)});
  }
  auto act = [&](const Mat& m, std::pair<long, long> pt) {
    return canon(m[0] * pt.first + m[1] * pt.second, m[2] * pt.first + m[3] * pt.second);
  };

  // Orbit of (1:0) and the permutation action on it.
  std::map<std::pair<long, long>, std::size_t> id;
  std::vector<std::pair<long, long>> pts{canon(1, 0)};
  id[pts[0]] = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t k = 0; k < g; ++k)
      for (const Mat* m : std::array<const Mat*, 2>{&gens[k], &invs[k]}) {
        const auto q = act(*m, pts[i]);
        if (!id.count(q)) {
          id[q] = pts.size();
          pts.push_back(q);
        }
      }
  const std::size_t m = pts.size();
  std::vector<std::vector<std::size_t>> fwd(g, std::vector<std::size_t>(m)), bwd = fwd;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < g; ++k) {
      fwd[k][i] = id.at(act(gens[k], pts[i]));
      bwd[k][i] = id.at(act(invs[k], pts[i]));
    }

  // Depth-first spanning tree; an edge (i, k) means i --gen k--> fwd[k][i].
  std::set<std::pair<std::size_t, std::size_t>> tree;
  std::vector<bool> seen(m, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const std::size_t c = stack.back();
    stack.pop_back();
    for (std::size_t k = g; k-- > 0;) {
      if (!seen[fwd[k][c]]) {
        seen[fwd[k][c]] = true;
        tree.insert({c, k});
        stack.push_back(fwd[k][c]);
      }
      if (!seen[bwd[k][c]]) {
        seen[bwd[k][c]] = true;
        tree.insert({bwd[k][c], k});
        stack.push_back(bwd[k][c]);
      }
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> label;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < g; ++k)
      if (!tree.count({i, k})) label.emplace(std::pair{i, k}, label.size());

  // Full words: +(j+1) / -(j+1) for Schreier generator j.
  std::vector<std::vector<long>> rows;
  for (const auto& rel : relators)
    for (std::size_t start = 0; start < m; ++start) {
      std::vector<long> word;
      std::size_t c = start;
      for (int letter : rel) {
        const std::size_t k = static_cast<std::size_t>(std::abs(letter)) - 1;
        if (letter > 0) {
          if (!tree.count({c, k})) word.push_back(static_cast<long>(label.at({c, k})) + 1);
          c = fwd[k][c];
        } else {
          const std::size_t d = bwd[k][c];
          if (!tree.count({d, k})) word.push_back(-(static_cast<long>(label.at({d, k})) + 1));
          c = d;
        }
      }
      std::vector<long> reduced;
      for (long s : word) {
        if (!reduced.empty() && reduced.back() == -s)
          reduced.pop_back();
        else
          reduced.push_back(s);
      }
      std::vector<long> row(label.size(), 0);
      for (long s : reduced) row[static_cast<std::size_t>(std::labs(s)) - 1] += s > 0 ? 1 : -1;
      rows.push_back(std::move(row));
    }

  CoverHomology out;
  out.index = m;
  out.schreier_generators = label.size();
  Dense dense;
  for (const auto& r : rows) {
    std::vector<mpz_class> d;
    for (long v : r) d.emplace_back(v);
    dense.push_back(std::move(d));
  }
  out.divisors = naive_snf(std::move(dense));
  std::sort(out.divisors.begin(), out.divisors.end());
  return out;
}

}  // namespace oracle
