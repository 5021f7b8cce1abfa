#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "torsion_tower/errors.hpp"

namespace torsion_tower {

struct SparseEntry {
  std::size_t col;
  mpz_class value;

  friend bool operator==(const SparseEntry& a, const SparseEntry& b) { return a.col == b.col && a.value == b.value; }
};

/// Row-sorted sparse entries; never contains an explicit zero.
using SparseRow = std::vector<SparseEntry>;

/// Sparse integer matrix in row-major form.
class RelationMatrix {
 public:
  RelationMatrix() = default;
  RelationMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_cols() const { return cols_; }
  const std::vector<SparseRow>& rows() const { return rows_; }
  const SparseRow& row(std::size_t r) const { return rows_[r]; }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  /// Replaces row r; entries are sorted and zeros/duplicates are merged away.
  void set_row(std::size_t r, SparseRow entries) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.col < b.col; });
    SparseRow merged;
    for (auto& e : entries) {
      if (e.col >= cols_) throw Error(ErrorCode::InvalidArgument, "column index out of range");
      if (!merged.empty() && merged.back().col == e.col) merged.back().value += e.value;
      else merged.push_back(std::move(e));
      if (merged.back().value == 0) merged.pop_back();
    }
    rows_[r] = std::move(merged);
  }

  std::size_t append_row(SparseRow entries) {
    rows_.emplace_back();
    set_row(rows_.size() - 1, std::move(entries));
    return rows_.size() - 1;
  }

  mpz_class at(std::size_t r, std::size_t c) const {
    const auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const SparseEntry& e, std::size_t col) { return e.col < col; });
    return (it != row.end() && it->col == c) ? it->value : mpz_class(0);
  }

  static RelationMatrix from_dense(const std::vector<std::vector<long>>& dense, std::size_t cols) {
    RelationMatrix m(0, cols);
    for (const auto& row : dense) {
      SparseRow entries;
      for (std::size_t c = 0; c < row.size(); ++c)
        if (row[c] != 0) entries.push_back({c, mpz_class(row[c])});
      m.append_row(std::move(entries));
    }
    return m;
  }

  static RelationMatrix from_dense(const std::vector<std::vector<long>>& dense) {
    return from_dense(dense, dense.empty() ? 0 : dense.front().size());
  }

  friend bool operator==(const RelationMatrix& a, const RelationMatrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<SparseRow> rows_;
};

/// Plain-text triplet dump: header `rows cols nnz`, then one `row col value` per line.
inline void write_triplets(std::ostream& out, const RelationMatrix& m) {
  out << m.num_rows() << ' ' << m.num_cols() << ' ' << m.nonzeros() << '\n';
  for (std::size_t r = 0; r < m.num_rows(); ++r)
    for (const auto& e : m.row(r)) out << r << ' ' << e.col << ' ' << e.value.get_str() << '\n';
}

inline RelationMatrix read_triplets(std::istream& in) {
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(in >> rows >> cols >> nnz)) throw Error(ErrorCode::ParseError, "bad triplet header");
  std::vector<SparseRow> data(rows);
  for (std::size_t k = 0; k < nnz; ++k) {
    std::size_t r = 0, c = 0;
    std::string value;
    if (!(in >> r >> c >> value) || r >= rows) throw Error(ErrorCode::ParseError, "bad triplet line " + std::to_string(k + 2));
    data[r].push_back({c, mpz_class(value)});
  }
  RelationMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) m.set_row(r, std::move(data[r]));
  return m;
}

}  // namespace torsion_tower
