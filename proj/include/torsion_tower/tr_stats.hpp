#pragma once

// Cover volumes and the normalized torsion statistic
//
//   TR(M) = 6 pi (log|H_1(M; Z)_tor| - log vol(M)) / vol(M),
//
// natural logarithms throughout. When b_1(M) = 0 the Cheeger-Mueller
// formula identifies TR(M) with 6 pi times the analytic torsion; for
// b_1 > 0 the regulator of H^1 enters as well. Neither the analytic torsion
// nor the regulator is computed here.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "torsion_tower/errors.hpp"
#include "torsion_tower/residue_arith.hpp"
#include "torsion_tower/smith_form.hpp"

namespace torsion_tower {

inline double cover_volume(double base_volume, std::uint64_t index) {
  if (!(base_volume > 0)) throw Error(ErrorCode::NonpositiveVolume, "base volume must be positive");
  if (index == 0) throw Error(ErrorCode::InvalidArgument, "cover index must be positive");
  return base_volume * static_cast<double>(index);
}

inline double tr_invariant(double log_torsion, double volume) {
  if (!(volume > 0)) throw Error(ErrorCode::NonpositiveVolume, "volume must be positive");
  if (log_torsion < 0) throw Error(ErrorCode::InvalidArgument, "log torsion must be nonnegative");
  return 6.0 * std::numbers::pi * (log_torsion / volume - std::log(volume) / volume);
}

/// One row of an experiment. Failed rows keep their level and carry an
/// error code; the numeric fields are then zero.
struct CoverRecord {
  std::string orbifold_id;
  std::uint64_t p = 0;
  std::uint64_t root = 0;
  unsigned n = 0;
  std::uint64_t index = 0;
  double volume = 0;
  std::uint64_t b1 = 0;
  double log_torsion = 0;
  double tr = 0;
  bool transitive = true;
  std::string error;

  bool ok() const { return error.empty(); }

  friend bool operator==(const CoverRecord&, const CoverRecord&) = default;
};

enum class PlotClass { Blue, Red };

/// Blue for b_1 = 0, red for b_1 > 0.
inline PlotClass plot_class(const CoverRecord& r) { return r.b1 == 0 ? PlotClass::Blue : PlotClass::Red; }

inline CoverRecord assemble_record(std::string orbifold_id, const DegreeOnePrime& prime, unsigned n, std::uint64_t index,
                                   const HomologySummary& summary, double base_volume, bool transitive = true) {
  CoverRecord r;
  r.orbifold_id = std::move(orbifold_id);
  r.p = prime.p;
  r.root = prime.root;
  r.n = n;
  r.index = index;
  r.volume = cover_volume(base_volume, index);
  r.b1 = summary.b1;
  r.log_torsion = static_cast<double>(summary.log_torsion);
  r.tr = tr_invariant(r.log_torsion, r.volume);
  r.transitive = transitive;
  return r;
}

inline CoverRecord failed_record(std::string orbifold_id, const DegreeOnePrime& prime, unsigned n, ErrorCode code) {
  CoverRecord r;
  r.orbifold_id = std::move(orbifold_id);
  r.p = prime.p;
  r.root = prime.root;
  r.n = n;
  r.error = std::string(to_string(code));
  return r;
}

}  // namespace torsion_tower
