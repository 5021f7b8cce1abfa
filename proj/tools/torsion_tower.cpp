// torsion-tower: batch computation of H_1 torsion for congruence covers.
//
//   torsion-tower run --config <file> --out <csv> [--plot <svg>] [--hist <svg>]
//                     [--log-x] [--jobs N] [--snf-limit <nnz>] [--bins N] [--lenient]
//   torsion-tower catalog [--json]
//   torsion-tower check --config <file>
//
// Exit codes: 0 success, 1 configuration or I/O error, 2 if any record
// carries an error (0 with --lenient).

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "torsion_tower/torsion_tower.hpp"

namespace tt = torsion_tower;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRecordErrors = 2;

struct RunArgs {
  std::string config;
  std::string out;
  std::string plot;
  std::string hist;
  bool log_x = false;
  unsigned jobs = 0;
  std::size_t snf_limit = 0;
  std::size_t bins = 0;
  bool lenient = false;
};

std::string describe_levels(const tt::LevelPlan& plan) {
  if (const auto* r = std::get_if<tt::PrimeRange>(&plan))
    return "prime levels of norm in [" + std::to_string(r->norm_min) + ", " + std::to_string(r->norm_max) + "]";
  const auto& pp = std::get<tt::PrimePower>(plan);
  return "prime powers p = " + std::to_string(pp.p) + (pp.root ? ", root " + std::to_string(*pp.root) : std::string()) +
         ", n = 1.." + std::to_string(pp.n_max);
}

int cmd_run(const RunArgs& args) {
  tt::Config cfg;
  try {
    cfg = tt::load_config(args.config);
  } catch (const tt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  const std::string out = args.out.empty() ? cfg.output.csv : args.out;
  if (out.empty()) {
    std::cerr << "error: no output CSV given (--out or output.csv)\n";
    return kExitConfig;
  }
  const std::string plot = args.plot.empty() ? cfg.output.plot : args.plot;
  const std::string hist = args.hist.empty() ? cfg.output.hist : args.hist;

  tt::BatchOptions options;
  options.jobs = args.jobs ? args.jobs : tt::default_jobs(cfg.output.jobs ? cfg.output.jobs : 1);
  options.snf.nonzero_limit = args.snf_limit ? args.snf_limit : cfg.output.snf_limit;

  for (const auto& spec : cfg.specs)
    if (!spec.runnable()) std::cerr << "warning: " << spec.id << " has no presentation; skipped\n";

  const auto records = tt::run_batch(cfg.specs, cfg.plan, options);
  std::size_t failed = 0;
  for (const auto& r : records)
    if (!r.ok()) ++failed;

  try {
    tt::emit_csv(records, out);
    if (!plot.empty()) {
      tt::ScatterOptions so;
      so.log_x = args.log_x || cfg.output.log_x;
      tt::emit_scatter_svg(records, plot, so);
    }
    if (!hist.empty()) {
      tt::HistogramOptions ho;
      ho.bins = args.bins ? args.bins : cfg.output.bins;
      tt::emit_histogram_svg(records, hist, ho);
    }
  } catch (const tt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == tt::ErrorCode::NoPlottableRecords ? kExitRecordErrors : kExitConfig;
  }

  std::cerr << records.size() << " covers (" << describe_levels(cfg.plan) << "), " << failed << " with errors\n";
  if (failed > 0 && !args.lenient) return kExitRecordErrors;
  return kExitOk;
}

int cmd_catalog(bool as_json) {
  const auto specs = tt::full_catalog();
  if (as_json) {
    tt::json arr = tt::json::array();
    for (const auto& s : specs) arr.push_back(tt::orbifold_to_json(s));
    std::cout << arr.dump(2) << "\n";
    return kExitOk;
  }
  std::printf("%-18s %-9s %-26s %-14s %s\n", "id", "runnable", "field polynomial", "base volume", "generators/relators");
  for (const auto& s : specs) {
    std::string shape = "-";
    if (s.presentation)
      shape = std::to_string(s.presentation->num_generators()) + "/" + std::to_string(s.presentation->relators().size());
    std::printf("%-18s %-9s %-26s %-14s %s\n", s.id.c_str(), s.runnable() ? "yes" : "no", s.field_poly.to_string().c_str(),
                tt::format_real(s.base_volume).c_str(), shape.c_str());
  }
  return kExitOk;
}

int cmd_check(const std::string& path) {
  try {
    const tt::Config cfg = tt::load_config(path);
    const auto tasks = tt::plan_tasks(cfg.specs, cfg.plan);
    for (const auto& s : cfg.specs)
      std::cout << s.id << ": " << (s.runnable() ? "runnable" : "metadata only") << ", field " << s.field_poly.to_string()
                << ", volume " << tt::format_real(s.base_volume) << "\n";
    std::cout << describe_levels(cfg.plan) << ": " << tasks.size() << " covers scheduled\n";
    return kExitOk;
  } catch (const tt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Torsion in homology of congruence covers"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Compute H_1 of every scheduled cover and write CSV/SVG");
  run_cmd->add_option("--config", run.config, "JSON configuration")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run.out, "Output CSV path");
  run_cmd->add_option("--plot", run.plot, "Scatter plot of TR against volume (SVG)");
  run_cmd->add_option("--hist", run.hist, "Histogram of TR (SVG)");
  run_cmd->add_flag("--log-x", run.log_x, "Logarithmic volume axis");
  run_cmd->add_option("--jobs", run.jobs, "Worker threads (default: TORSION_TOWER_JOBS or 1)")->check(CLI::PositiveNumber);
  run_cmd->add_option("--snf-limit", run.snf_limit, "Abort a cover's SNF past this many nonzeros")->check(CLI::PositiveNumber);
  run_cmd->add_option("--bins", run.bins, "Histogram bins")->check(CLI::PositiveNumber);
  run_cmd->add_flag("--lenient", run.lenient, "Exit 0 even if some records failed");

  bool catalog_json = false;
  auto* catalog_cmd = app.add_subcommand("catalog", "List bundled orbifolds");
  catalog_cmd->add_flag("--json", catalog_json, "Print the catalog as JSON");

  std::string check_config;
  auto* check_cmd = app.add_subcommand("check", "Validate a configuration without running it");
  check_cmd->add_option("--config", check_config, "JSON configuration")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*run_cmd) return cmd_run(run);
  if (*catalog_cmd) return cmd_catalog(catalog_json);
  if (*check_cmd) return cmd_check(check_config);
  return kExitConfig;
}
