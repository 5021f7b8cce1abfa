#pragma once

// Batch orchestration: one task per (orbifold, level), run on a bounded
// worker pool, results sorted by (orbifold_id, p, root, n).

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <random>
#include <tuple>
#include <thread>
#include <vector>

#include "torsion_tower/config.hpp"
#include "torsion_tower/fp_group.hpp"
#include "torsion_tower/smith_form.hpp"
#include "torsion_tower/tr_stats.hpp"

namespace torsion_tower {

struct BatchOptions {
  unsigned jobs = 1;
  SnfOptions snf;
  // Cross-check the SNF rank against the rank mod a random 62-bit prime.
  bool verify_rank = true;
  std::uint64_t seed = 0x5eed5eedULL;
};

struct CoverTask {
  std::size_t spec_index = 0;
  DegreeOnePrime prime;
  unsigned n = 1;
};

/// Everything computed for one cover.
struct CoverComputation {
  CoverRecord record;
  CosetTable table;
  RelationMatrix matrix;
  ElementaryDivisors divisors;
};

inline std::vector<CoverTask> plan_tasks(const std::vector<OrbifoldSpec>& specs, const LevelPlan& plan) {
  std::vector<CoverTask> tasks;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    if (!specs[s].runnable()) continue;
    if (const auto* range = std::get_if<PrimeRange>(&plan)) {
      for (const auto& prime : degree_one_primes(specs[s].field_poly, range->norm_max))
        if (prime.p >= range->norm_min) tasks.push_back({s, prime, 1});
    } else {
      const auto& pp = std::get<PrimePower>(plan);
      std::vector<std::uint64_t> roots;
      if (pp.root) {
        roots.push_back(*pp.root);
      } else {
        for (const auto& prime : degree_one_primes(specs[s].field_poly, pp.p))
          if (prime.p == pp.p) roots.push_back(prime.root);
      }
      for (std::uint64_t r : roots)
        for (unsigned n = 1; n <= pp.n_max; ++n) tasks.push_back({s, {pp.p, r}, n});
    }
  }
  return tasks;
}

/// Runs the full chain for one cover; throws Error on failure.
inline CoverComputation compute_cover(const OrbifoldSpec& spec, const DegreeOnePrime& prime, unsigned n,
                                      const BatchOptions& options = {}, std::uint64_t task_seed = 0) {
  if (!spec.runnable()) throw Error(ErrorCode::InvalidArgument, spec.id + " has no presentation");
  const ResidueRing ring = ResidueRing::for_prime(spec.field_poly, prime, n);
  const std::vector<Mat2> images = reduce_generators(spec, ring);
  const Presentation& pres = *spec.presentation;
  if (!check_relators(ring, pres, images))
    throw Error(ErrorCode::RelatorViolation, spec.id + ": relators are not scalar at p = " + std::to_string(prime.p));

  CoverComputation out;
  out.table = coset_action(ring, pres, images);
  auto [schreier, matrix] = reidemeister_schreier_abelianized(pres, out.table);
  out.matrix = std::move(matrix);
  out.divisors = smith_normal_form(out.matrix, options.snf);

  if (options.verify_rank) {
    std::mt19937_64 rng(options.seed ^ (task_seed * 0x9e3779b97f4a7c15ULL));
    bool agreed = false;
    for (int attempt = 0; attempt < 2 && !agreed; ++attempt)
      agreed = rank_mod_prime(out.matrix, random_prime_62(rng)) == out.divisors.rank();
    if (!agreed) throw Error(ErrorCode::RankMismatch, spec.id + ": SNF rank disagrees with modular rank");
  }

  const HomologySummary summary = homology_summary(out.divisors, out.matrix.num_cols());
  out.record = assemble_record(spec.id, prime, n, out.table.num_cosets, summary, spec.base_volume,
                               out.table.transitive_on_line);
  return out;
}

inline CoverRecord run_cover(const OrbifoldSpec& spec, const DegreeOnePrime& prime, unsigned n,
                             const BatchOptions& options = {}, std::uint64_t task_seed = 0) {
  try {
    return compute_cover(spec, prime, n, options, task_seed).record;
  } catch (const Error& e) {
    return failed_record(spec.id, prime, n, e.code());
  } catch (const std::bad_alloc&) {
    return failed_record(spec.id, prime, n, ErrorCode::ResourceLimitExceeded);
  }
}

inline void sort_records(std::vector<CoverRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const CoverRecord& a, const CoverRecord& b) {
    return std::tie(a.orbifold_id, a.p, a.root, a.n) < std::tie(b.orbifold_id, b.p, b.root, b.n);
  });
}

inline std::vector<CoverRecord> run_tasks(const std::vector<OrbifoldSpec>& specs, const std::vector<CoverTask>& tasks,
                                          const BatchOptions& options) {
  std::vector<CoverRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const CoverTask& t = tasks[i];
      // Seeded by the level, not the slot, so results do not depend on scheduling.
      const std::uint64_t task_seed = t.prime.p * 1000003ULL + t.prime.root * 7919ULL + t.n;
      records[i] = run_cover(specs[t.spec_index], t.prime, t.n, options, task_seed);
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(std::max<std::size_t>(1, tasks.size()))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  sort_records(records);
  return records;
}

inline std::vector<CoverRecord> run_batch(const std::vector<OrbifoldSpec>& specs, const LevelPlan& plan,
                                          const BatchOptions& options = {}) {
  return run_tasks(specs, plan_tasks(specs, plan), options);
}

/// Worker count from TORSION_TOWER_JOBS, or the fallback.
inline unsigned default_jobs(unsigned fallback = 1) {
  if (const char* env = std::getenv("TORSION_TOWER_JOBS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return fallback;
}

}  // namespace torsion_tower
