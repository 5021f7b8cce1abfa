#pragma once

// Smith normal form of sparse integer matrices.
//
// The pipeline has three stages:
//   1. sparse elimination on +-1 pivots chosen by Markowitz cost, which
//      never grows coefficients; stops when no unit pivot is left or the
//      active block is denser than SnfOptions::density_threshold;
//   2. dense Euclidean elimination on the remaining core;
//   3. gcd/lcm cleanup of the diagonal into a divisibility chain.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "torsion_tower/errors.hpp"
#include "torsion_tower/relation_matrix.hpp"

namespace torsion_tower {

/// d_1 | d_2 | ... | d_k, all positive, k = rank. Leading ones are kept.
struct ElementaryDivisors {
  std::vector<mpz_class> divisors;

  std::size_t rank() const { return divisors.size(); }
  friend bool operator==(const ElementaryDivisors& a, const ElementaryDivisors& b) { return a.divisors == b.divisors; }
};

struct SnfOptions {
  double density_threshold = 0.20;
  // Abort once the working matrix holds more than this many nonzeros
  // (dense cores count every cell).
  std::size_t nonzero_limit = 5'000'000;
};

struct SnfStats {
  std::size_t unit_pivots = 0;
  std::size_t dense_rows = 0;
  std::size_t dense_cols = 0;
};

namespace detail {

inline int cmpabs(const mpz_class& a, const mpz_class& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

/// Turns an arbitrary list of positive integers into the divisibility chain
/// of the same diagonal matrix.
inline std::vector<mpz_class> diagonal_to_chain(std::vector<mpz_class> diag) {
  std::size_t ones = 0;
  std::vector<mpz_class> rest;
  for (auto& d : diag) {
    if (d == 1) ++ones;
    else rest.push_back(std::move(d));
  }
  std::sort(rest.begin(), rest.end());
  for (std::size_t i = 0; i < rest.size(); ++i) {
    for (std::size_t j = i + 1; j < rest.size(); ++j) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), rest[i].get_mpz_t(), rest[j].get_mpz_t());
      if (g == rest[i]) continue;
      mpz_class l = (rest[i] / g) * rest[j];
      rest[i] = std::move(g);
      rest[j] = std::move(l);
    }
  }
  std::vector<mpz_class> out(ones, mpz_class(1));
  for (auto& d : rest) {
    if (d == 1) out.insert(out.begin(), mpz_class(1));
    else out.push_back(std::move(d));
  }
  return out;
}

using DenseMatrix = std::vector<std::vector<mpz_class>>;

/// Euclidean diagonalization; returns the absolute diagonal (not yet a chain).
inline std::vector<mpz_class> dense_diagonalize(DenseMatrix a) {
  std::vector<mpz_class> diag;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  mpz_class q;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the trailing block; ties go to the first (row, col).
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (sgn(a[i][j]) != 0 && (pr == rows || cmpabs(a[i][j], a[pr][pc]) < 0)) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;

    for (;;) {
      std::swap(a[t], a[pr]);
      if (pc != t)
        for (std::size_t i = t; i < rows; ++i) mpz_swap(a[i][t].get_mpz_t(), a[i][pc].get_mpz_t());

      bool clear = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(a[i][t]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        if (q != 0)
          for (std::size_t j = t; j < cols; ++j) mpz_submul(a[i][j].get_mpz_t(), q.get_mpz_t(), a[t][j].get_mpz_t());
        if (sgn(a[i][t]) != 0) clear = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(a[t][j]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        if (q != 0)
          for (std::size_t i = t; i < rows; ++i) mpz_submul(a[i][j].get_mpz_t(), q.get_mpz_t(), a[i][t].get_mpz_t());
        if (sgn(a[t][j]) != 0) clear = false;
      }
      if (clear) break;

      // A remainder survived; it is smaller than the pivot, so move it in.
      pr = rows;
      pc = cols;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (sgn(a[i][t]) != 0 && (pr == rows || cmpabs(a[i][t], a[pr][pc]) < 0)) {
          pr = i;
          pc = t;
        }
      for (std::size_t j = t + 1; j < cols; ++j)
        if (sgn(a[t][j]) != 0 && (pr == rows || cmpabs(a[t][j], a[pr][pc]) < 0)) {
          pr = t;
          pc = j;
        }
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

class SparseEliminator {
 public:
  SparseEliminator(const RelationMatrix& m, const SnfOptions& options)
      : options_(options), rows_(m.rows()), col_count_(m.num_cols(), 0), col_rows_(m.num_cols()), active_(rows_.size(), true) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].empty()) {
        active_[r] = false;
        continue;
      }
      nnz_ += rows_[r].size();
      for (const auto& e : rows_[r]) {
        ++col_count_[e.col];
        col_rows_[e.col].push_back(static_cast<std::uint32_t>(r));
      }
      by_length_.insert({rows_[r].size(), r});
    }
    for (std::size_t c = 0; c < col_count_.size(); ++c) {
      if (col_count_[c] > 0) ++active_cols_;
      if (col_count_[c] == 1) singleton_cols_.push_back(c);
    }
    check_limit();
  }

  /// Eliminates unit pivots until none is usable; returns the count of unit divisors.
  std::size_t run() {
    std::size_t pivots = 0;
    while (!by_length_.empty()) {
      const double area = static_cast<double>(by_length_.size()) * static_cast<double>(active_cols_);
      if (static_cast<double>(nnz_) > options_.density_threshold * area) break;
      std::size_t r = 0, c = 0;
      if (!find_pivot(r, c)) break;
      eliminate(r, c);
      ++pivots;
    }
    return pivots;
  }

  /// The active block as a dense matrix, rows and columns in index order.
  DenseMatrix remaining_core() const {
    std::vector<std::size_t> col_pos(col_count_.size(), 0);
    std::size_t ncols = 0;
    for (std::size_t c = 0; c < col_count_.size(); ++c)
      if (col_count_[c] > 0) col_pos[c] = ncols++;
    std::vector<std::size_t> live;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (active_[r]) live.push_back(r);
    if (live.size() * ncols > options_.nonzero_limit)
      throw Error(ErrorCode::ResourceLimitExceeded, "dense core " + std::to_string(live.size()) + "x" +
                                                        std::to_string(ncols) + " exceeds the nonzero limit");
    DenseMatrix dense(live.size(), std::vector<mpz_class>(ncols));
    for (std::size_t i = 0; i < live.size(); ++i)
      for (const auto& e : rows_[live[i]]) dense[i][col_pos[e.col]] = e.value;
    return dense;
  }

 private:
  static bool is_unit(const mpz_class& v) { return mpz_cmpabs_ui(v.get_mpz_t(), 1) == 0; }

  void check_limit() const {
    if (nnz_ > options_.nonzero_limit)
      throw Error(ErrorCode::ResourceLimitExceeded,
                  std::to_string(nnz_) + " nonzeros exceed the limit of " + std::to_string(options_.nonzero_limit));
  }

  bool row_has(std::size_t r, std::size_t c, const mpz_class** value) const {
    const auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const SparseEntry& e, std::size_t col) { return e.col < col; });
    if (it == row.end() || it->col != c) return false;
    if (value) *value = &it->value;
    return true;
  }

  // Markowitz cost (row_len - 1) * (col_count - 1) over unit entries.
  // Singleton columns are free; otherwise the shortest rows are searched
  // and the cheapest entry wins, ties broken by (row, col).
  bool find_pivot(std::size_t& best_r, std::size_t& best_c) {
    while (!singleton_cols_.empty()) {
      const std::size_t c = singleton_cols_.back();
      singleton_cols_.pop_back();
      if (col_count_[c] != 1) continue;
      std::size_t owner = rows_.size();
      for (std::uint32_t r : col_rows_[c])
        if (active_[r] && row_has(r, c, nullptr) && r < owner) owner = r;
      const mpz_class* v = nullptr;
      if (owner < rows_.size() && row_has(owner, c, &v) && is_unit(*v)) {
        best_r = owner;
        best_c = c;
        return true;
      }
    }

    constexpr std::size_t kRowsToSearch = 8;
    std::size_t searched = 0;
    std::size_t best_cost = SIZE_MAX;
    bool found = false;
    for (const auto& [len, r] : by_length_) {
      bool has_unit = false;
      for (const auto& e : rows_[r]) {
        if (!is_unit(e.value)) continue;
        has_unit = true;
        const std::size_t cost = (len - 1) * (col_count_[e.col] - 1);
        if (!found || cost < best_cost || (cost == best_cost && (r < best_r || (r == best_r && e.col < best_c)))) {
          best_cost = cost;
          best_r = r;
          best_c = e.col;
          found = true;
        }
      }
      if (found && best_cost == 0) break;
      if (has_unit && ++searched >= kRowsToSearch) break;
    }
    return found;
  }

  void drop_from_length_index(std::size_t r) { by_length_.erase({rows_[r].size(), r}); }

  void eliminate(std::size_t pr, std::size_t pc) {
    const mpz_class* pivot_ptr = nullptr;
    row_has(pr, pc, &pivot_ptr);
    const mpz_class pivot = *pivot_ptr;  // +-1, its own inverse

    std::vector<std::uint32_t> targets = std::move(col_rows_[pc]);
    col_rows_[pc].clear();
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

    const SparseRow& prow = rows_[pr];
    mpz_class factor;
    for (std::uint32_t i : targets) {
      if (i == pr || !active_[i]) continue;
      const mpz_class* v = nullptr;
      if (!row_has(i, pc, &v)) continue;
      factor = *v * pivot;
      drop_from_length_index(i);
      SparseRow merged;
      merged.reserve(rows_[i].size() + prow.size());
      const SparseRow& row = rows_[i];
      std::size_t a = 0, b = 0;
      while (a < row.size() || b < prow.size()) {
        if (b == prow.size() || (a < row.size() && row[a].col < prow[b].col)) {
          merged.push_back(row[a++]);
        } else if (a == row.size() || prow[b].col < row[a].col) {
          mpz_class val = -factor * prow[b].value;
          const std::size_t col = prow[b].col;
          merged.push_back({col, std::move(val)});
          if (col_count_[col]++ == 0) ++active_cols_;
          col_rows_[col].push_back(i);
          ++nnz_;
          ++b;
        } else {
          mpz_class val = row[a].value;
          mpz_submul(val.get_mpz_t(), factor.get_mpz_t(), prow[b].value.get_mpz_t());
          const std::size_t col = row[a].col;
          if (sgn(val) != 0) {
            merged.push_back({col, std::move(val)});
          } else {
            --nnz_;
            if (--col_count_[col] == 0) --active_cols_;
            else if (col_count_[col] == 1) singleton_cols_.push_back(col);
          }
          ++a;
          ++b;
        }
      }
      rows_[i] = std::move(merged);
      if (rows_[i].empty()) active_[i] = false;
      else by_length_.insert({rows_[i].size(), i});
    }

    drop_from_length_index(pr);
    for (const auto& e : prow) {
      --nnz_;
      if (--col_count_[e.col] == 0) --active_cols_;
      else if (col_count_[e.col] == 1) singleton_cols_.push_back(e.col);
    }
    active_[pr] = false;
    rows_[pr].clear();
    check_limit();
  }

  SnfOptions options_;
  std::vector<SparseRow> rows_;
  std::vector<std::size_t> col_count_;
  std::vector<std::vector<std::uint32_t>> col_rows_;  // superset of the rows touching each column
  std::vector<bool> active_;
  std::set<std::pair<std::size_t, std::size_t>> by_length_;
  std::vector<std::size_t> singleton_cols_;
  std::size_t nnz_ = 0;
  std::size_t active_cols_ = 0;
};

}  // namespace detail

inline ElementaryDivisors smith_normal_form(const RelationMatrix& m, const SnfOptions& options = {},
                                            SnfStats* stats = nullptr) {
  detail::SparseEliminator sparse(m, options);
  const std::size_t ones = sparse.run();
  detail::DenseMatrix core = sparse.remaining_core();
  if (stats) {
    stats->unit_pivots = ones;
    stats->dense_rows = core.size();
    stats->dense_cols = core.empty() ? 0 : core.front().size();
  }
  std::vector<mpz_class> diag = detail::dense_diagonalize(std::move(core));
  diag.insert(diag.end(), ones, mpz_class(1));
  return ElementaryDivisors{detail::diagonal_to_chain(std::move(diag))};
}

/// Rank over F_q by sparse row echelon insertion.
inline std::size_t rank_mod_prime(const RelationMatrix& m, std::uint64_t q) {
  using ModRow = std::vector<std::pair<std::size_t, std::uint64_t>>;
  auto mulmod = [q](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
  };
  auto invmod = [&](std::uint64_t a) {
    std::uint64_t r = 1, e = q - 2;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };

  std::vector<std::size_t> order(m.num_rows());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return m.row(a).size() < m.row(b).size(); });

  std::vector<ModRow> pivot_rows(m.num_cols());
  std::size_t rank = 0;
  for (std::size_t r : order) {
    ModRow row;
    for (const auto& e : m.row(r)) {
      const std::uint64_t v = mpz_fdiv_ui(e.value.get_mpz_t(), q);
      if (v) row.push_back({e.col, v});
    }
    while (!row.empty()) {
      const std::size_t lead = row.front().first;
      const ModRow& prow = pivot_rows[lead];
      if (prow.empty()) {
        const std::uint64_t inv = invmod(row.front().second);
        for (auto& e : row) e.second = mulmod(e.second, inv);
        pivot_rows[lead] = std::move(row);
        ++rank;
        break;
      }
      // prow is normalized with leading coefficient 1.
      const std::uint64_t factor = row.front().second;
      ModRow merged;
      merged.reserve(row.size() + prow.size());
      std::size_t a = 0, b = 0;
      while (a < row.size() || b < prow.size()) {
        if (b == prow.size() || (a < row.size() && row[a].first < prow[b].first)) {
          merged.push_back(row[a++]);
        } else if (a == row.size() || prow[b].first < row[a].first) {
          merged.push_back({prow[b].first, (q - mulmod(factor, prow[b].second)) % q});
          ++b;
        } else {
          const std::uint64_t sub = mulmod(factor, prow[b].second);
          const std::uint64_t v = row[a].second >= sub ? row[a].second - sub : row[a].second + (q - sub);
          if (v) merged.push_back({row[a].first, v});
          ++a;
          ++b;
        }
      }
      row = std::move(merged);
    }
  }
  return rank;
}

/// Random prime in [2^61, 2^62).
inline std::uint64_t random_prime_62(std::mt19937_64& rng) {
  for (;;) {
    const std::uint64_t start = (rng() & ((std::uint64_t{1} << 62) - 1)) | (std::uint64_t{1} << 61);
    mpz_class z(static_cast<unsigned long>(start));
    mpz_nextprime(z.get_mpz_t(), z.get_mpz_t());
    if (z < mpz_class(static_cast<unsigned long>(std::uint64_t{1} << 62))) return z.get_ui();
  }
}

/// Natural log of a positive big integer from its bit length and leading mantissa bits.
inline long double log_bigint(const mpz_class& x) {
  if (sgn(x) <= 0) throw Error(ErrorCode::InvalidArgument, "log of a nonpositive integer");
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());
  return std::log(static_cast<long double>(mantissa)) +
         static_cast<long double>(exponent) * std::numbers::ln2_v<long double>;
}

struct HomologySummary {
  std::size_t b1 = 0;
  std::vector<mpz_class> torsion_divisors;
  long double log_torsion = 0;
};

/// H_1 = Z^b1 + sum Z/d_i for the cokernel of a matrix on num_generators columns.
inline HomologySummary homology_summary(const ElementaryDivisors& divisors, std::size_t num_generators) {
  if (divisors.rank() > num_generators)
    throw Error(ErrorCode::DivisorCountExceedsGenerators, std::to_string(divisors.rank()) + " divisors for " +
                                                              std::to_string(num_generators) + " generators");
  HomologySummary s;
  s.b1 = num_generators - divisors.rank();
  for (const auto& d : divisors.divisors) {
    if (d > 1) {
      s.torsion_divisors.push_back(d);
      s.log_torsion += log_bigint(d);
    }
  }
  return s;
}

}  // namespace torsion_tower
