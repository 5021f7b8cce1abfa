#pragma once

// Finitely presented groups, the coset table of Gamma_0 given by the action
// on P^1(Z/p^n), and the abelianized Reidemeister-Schreier relation matrix.

#include <cstdint>
#include <cstdlib>
#include <deque>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "torsion_tower/proj_line.hpp"
#include "torsion_tower/relation_matrix.hpp"

namespace torsion_tower {

/// Letters are +k for generator k and -k for its inverse, k = 1..num_generators.
using Word = std::vector<int>;

class Presentation {
 public:
  Presentation() = default;
  Presentation(std::size_t num_generators, std::vector<Word> relators)
      : num_generators_(num_generators), relators_(std::move(relators)) {
    if (num_generators_ == 0) throw Error(ErrorCode::ValidationError, "presentation needs at least one generator");
    for (std::size_t r = 0; r < relators_.size(); ++r) {
      const Word& w = relators_[r];
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0 || static_cast<std::size_t>(std::abs(w[i])) > num_generators_)
          throw Error(ErrorCode::ValidationError,
                      "relator " + std::to_string(r) + " letter " + std::to_string(w[i]) + " out of range");
        if (i > 0 && w[i] == -w[i - 1])
          throw Error(ErrorCode::ValidationError, "relator " + std::to_string(r) + " is not freely reduced");
      }
    }
  }

  std::size_t num_generators() const { return num_generators_; }
  const std::vector<Word>& relators() const { return relators_; }

 private:
  std::size_t num_generators_ = 0;
  std::vector<Word> relators_;
};

inline Mat2 evaluate_word(const ResidueRing& ring, const Word& w, const std::vector<Mat2>& images,
                          const std::vector<Mat2>& inverses) {
  Mat2 acc = identity_matrix(ring);
  for (int letter : w) {
    const std::size_t k = static_cast<std::size_t>(std::abs(letter)) - 1;
    acc = multiply(ring, acc, letter > 0 ? images[k] : inverses[k]);
  }
  return acc;
}

namespace detail {

inline void require_images(const ResidueRing& ring, const Presentation& pres, const std::vector<Mat2>& images) {
  if (images.size() != pres.num_generators())
    throw Error(ErrorCode::ValidationError, "expected " + std::to_string(pres.num_generators()) + " generator images, got " +
                                                std::to_string(images.size()));
  for (std::size_t k = 0; k < images.size(); ++k)
    if (!is_invertible(ring, images[k]))
      throw Error(ErrorCode::NotInvertible, "image of generator " + std::to_string(k + 1) + " is not invertible");
}

inline std::vector<Mat2> inverses_of(const ResidueRing& ring, const std::vector<Mat2>& images) {
  std::vector<Mat2> out;
  out.reserve(images.size());
  for (const auto& m : images) out.push_back(inverse(ring, m));
  return out;
}

}  // namespace detail

/// True iff every relator evaluates to a scalar matrix, i.e. the images
/// define a homomorphism into PGL_2(Z/p^n).
inline bool check_relators(const ResidueRing& ring, const Presentation& pres, const std::vector<Mat2>& images) {
  detail::require_images(ring, pres, images);
  const auto inverses = detail::inverses_of(ring, images);
  for (const auto& r : pres.relators())
    if (!is_scalar(ring, evaluate_word(ring, r, images, inverses))) return false;
  return true;
}

/// Complete coset table. Column 2k is generator k+1, column 2k+1 its inverse.
struct CosetTable {
  std::size_t num_cosets = 0;
  std::size_t num_generators = 0;
  std::vector<std::uint32_t> table;
  std::size_t base_coset = 0;
  // Size of the set the group acts on, and whether the base orbit is all of it.
  std::size_t line_size = 0;
  bool transitive_on_line = true;

  std::uint32_t image(std::size_t coset, std::size_t column) const { return table[coset * 2 * num_generators + column]; }
  std::uint32_t& image(std::size_t coset, std::size_t column) { return table[coset * 2 * num_generators + column]; }

  friend bool operator==(const CosetTable&, const CosetTable&) = default;
};

namespace detail {

inline std::uint32_t trace_word(const CosetTable& ct, std::uint32_t coset, const Word& w) {
  for (int letter : w) {
    const std::size_t k = static_cast<std::size_t>(std::abs(letter)) - 1;
    coset = ct.image(coset, 2 * k + (letter > 0 ? 0 : 1));
  }
  return coset;
}

inline void require_relators_act_trivially(const Presentation& pres, const CosetTable& ct) {
  for (std::size_t r = 0; r < pres.relators().size(); ++r)
    for (std::uint32_t c = 0; c < ct.num_cosets; ++c)
      if (trace_word(ct, c, pres.relators()[r]) != c)
        throw Error(ErrorCode::RelatorViolation,
                    "relator " + std::to_string(r) + " moves coset " + std::to_string(c));
}

}  // namespace detail

/// Coset table of the stabilizer of (1:0), restricted to its orbit.
/// Cosets are numbered breadth-first, scanning columns in order.
inline CosetTable coset_action(const ResidueRing& ring, const Presentation& pres, const std::vector<Mat2>& images) {
  detail::require_images(ring, pres, images);
  const auto inverses = detail::inverses_of(ring, images);
  const std::size_t g = pres.num_generators();

  CosetTable ct;
  ct.num_generators = g;
  ct.line_size = projective_line_size(ring);
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> coset_of_point(ct.line_size, kUnseen);

  std::vector<ProjPoint> cosets;
  const ProjPoint base{ring.one(), ring.zero()};
  cosets.push_back(base);
  coset_of_point[point_index(ring, base)] = 0;

  for (std::size_t c = 0; c < cosets.size(); ++c) {
    ct.table.resize((c + 1) * 2 * g);
    for (std::size_t col = 0; col < 2 * g; ++col) {
      const Mat2& m = (col % 2 == 0) ? images[col / 2] : inverses[col / 2];
      ProjPoint next = apply_matrix(ring, m, cosets[c]);
      const std::size_t idx = point_index(ring, next);
      if (coset_of_point[idx] == kUnseen) {
        coset_of_point[idx] = static_cast<std::uint32_t>(cosets.size());
        cosets.push_back(std::move(next));
      }
      ct.table[c * 2 * g + col] = coset_of_point[idx];
    }
  }
  ct.num_cosets = cosets.size();
  ct.transitive_on_line = ct.num_cosets == ct.line_size;
  detail::require_relators_act_trivially(pres, ct);
  return ct;
}

/// Builds a table from explicit generator permutations on {0..m-1}; base coset 0.
inline CosetTable make_coset_table(const std::vector<std::vector<std::uint32_t>>& perms) {
  if (perms.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one generator permutation");
  const std::size_t m = perms.front().size();
  const std::size_t g = perms.size();
  CosetTable ct;
  ct.num_cosets = m;
  ct.num_generators = g;
  ct.line_size = m;
  ct.table.assign(m * 2 * g, 0);
  for (std::size_t k = 0; k < g; ++k) {
    if (perms[k].size() != m) throw Error(ErrorCode::InvalidArgument, "permutations differ in length");
    std::vector<bool> hit(m, false);
    for (std::uint32_t i = 0; i < m; ++i) {
      const std::uint32_t j = perms[k][i];
      if (j >= m || hit[j]) throw Error(ErrorCode::InvalidArgument, "generator " + std::to_string(k + 1) + " is not a permutation");
      hit[j] = true;
      ct.image(i, 2 * k) = j;
      ct.image(j, 2 * k + 1) = i;
    }
  }
  std::vector<bool> seen(m, false);
  std::deque<std::uint32_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::uint32_t c = queue.front();
    queue.pop_front();
    for (std::size_t col = 0; col < 2 * g; ++col) {
      const std::uint32_t d = ct.image(c, col);
      if (!seen[d]) {
        seen[d] = true;
        ++reached;
        queue.push_back(d);
      }
    }
  }
  if (reached != m) throw Error(ErrorCode::InvalidArgument, "coset table is not transitive");
  return ct;
}

/// Breadth-first spanning tree of the coset graph and the numbering of the
/// remaining (coset, generator) edges as Schreier generators.
struct SchreierData {
  static constexpr std::int64_t kTreeEdge = -1;

  std::vector<std::int64_t> parent;        // -1 at the root
  std::vector<std::int64_t> parent_column;  // column used to reach the coset from its parent
  std::vector<std::int64_t> generator_index;  // per (coset, generator); kTreeEdge for tree edges
  std::size_t num_generators = 0;
  std::size_t num_schreier_generators = 0;

  std::int64_t column_of(std::size_t coset, std::size_t generator) const {
    return generator_index[coset * num_generators + generator];
  }
};

inline SchreierData schreier_tree(const CosetTable& ct) {
  const std::size_t m = ct.num_cosets;
  const std::size_t g = ct.num_generators;
  SchreierData sd;
  sd.num_generators = g;
  sd.parent.assign(m, -1);
  sd.parent_column.assign(m, -1);
  std::vector<bool> tree_edge(m * g, false);
  std::vector<bool> seen(m, false);
  std::deque<std::size_t> queue{ct.base_coset};
  seen[ct.base_coset] = true;
  while (!queue.empty()) {
    const std::size_t c = queue.front();
    queue.pop_front();
    for (std::size_t col = 0; col < 2 * g; ++col) {
      const std::size_t d = ct.image(c, col);
      if (seen[d]) continue;
      seen[d] = true;
      sd.parent[d] = static_cast<std::int64_t>(c);
      sd.parent_column[d] = static_cast<std::int64_t>(col);
      // c --x_k--> d for a forward column, d --x_k--> c for an inverse one.
      const std::size_t k = col / 2;
      tree_edge[(col % 2 == 0 ? c : d) * g + k] = true;
      queue.push_back(d);
    }
  }
  sd.generator_index.assign(m * g, SchreierData::kTreeEdge);
  std::int64_t next = 0;
  for (std::size_t e = 0; e < m * g; ++e)
    if (!tree_edge[e]) sd.generator_index[e] = next++;
  sd.num_schreier_generators = static_cast<std::size_t>(next);
  return sd;
}

/// One row per (relator, coset), relator-major: the exponent vector of the
/// relator rewritten from that coset in the Schreier generators.
inline std::pair<SchreierData, RelationMatrix> reidemeister_schreier_abelianized(const Presentation& pres,
                                                                                const CosetTable& ct) {
  if (pres.num_generators() != ct.num_generators)
    throw Error(ErrorCode::InvalidArgument, "coset table and presentation disagree on generator count");
  SchreierData sd = schreier_tree(ct);
  RelationMatrix matrix(0, sd.num_schreier_generators);
  for (const Word& w : pres.relators()) {
    for (std::uint32_t start = 0; start < ct.num_cosets; ++start) {
      SparseRow row;
      std::uint32_t c = start;
      for (int letter : w) {
        const std::size_t k = static_cast<std::size_t>(std::abs(letter)) - 1;
        if (letter > 0) {
          const std::int64_t col = sd.column_of(c, k);
          if (col != SchreierData::kTreeEdge) row.push_back({static_cast<std::size_t>(col), mpz_class(1)});
          c = ct.image(c, 2 * k);
        } else {
          const std::uint32_t d = ct.image(c, 2 * k + 1);
          const std::int64_t col = sd.column_of(d, k);
          if (col != SchreierData::kTreeEdge) row.push_back({static_cast<std::size_t>(col), mpz_class(-1)});
          c = d;
        }
      }
      if (c != start) throw Error(ErrorCode::RelatorViolation, "relator does not close up on coset " + std::to_string(start));
      matrix.append_row(std::move(row));
    }
  }
  return {std::move(sd), std::move(matrix)};
}

/// Abelianized relators of the presentation itself.
inline RelationMatrix relator_exponent_matrix(const Presentation& pres) {
  RelationMatrix matrix(0, pres.num_generators());
  for (const Word& w : pres.relators()) {
    SparseRow row;
    for (int letter : w) row.push_back({static_cast<std::size_t>(std::abs(letter)) - 1, mpz_class(letter > 0 ? 1 : -1)});
    matrix.append_row(std::move(row));
  }
  return matrix;
}

}  // namespace torsion_tower
