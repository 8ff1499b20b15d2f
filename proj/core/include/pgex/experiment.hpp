#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pgex/diagnostics.hpp"
#include "pgex/problems.hpp"
#include "pgex/solver.hpp"

namespace pgex {

enum class Family { kLasso, kLogistic, kQp };

std::string_view to_string(Family f) noexcept;
Family parse_family(std::string_view name);

/// A schedule as named on the command line, resolved against (L, l) later.
struct ScheduleSpec {
  enum class Kind {
    kNone,           // beta_k = 0 (PG)
    kConstant,       // beta_k = value
    kConstantFrac,   // beta_k = value * sqrt(L / (L + l))  (PG_e for value 0.98)
    kFista,
    kFistaRestart,   // fixed restart every K
    kFistaAdaptive,
    kFistaBoth,      // fixed + adaptive (FISTA-R<K>)
  };
  Kind kind = Kind::kNone;
  double value = 0.0;

  /// Parses "none", "pg", "constant <b>", "constant-frac <f>", "pg-e",
  /// "fista", "fista-restart", "fista-adaptive", "fista-both".
  static ScheduleSpec parse(std::string_view name, std::optional<double> value = std::nullopt);
  std::string label(std::size_t restart_interval) const;
  BetaSchedule resolve(std::size_t restart_interval, double L, double l) const;
  bool is_fista() const noexcept;
};

struct ExperimentConfig {
  Family family = Family::kLasso;
  std::size_t m = 50;
  std::size_t n = 500;
  std::size_t sparsity = 5;
  double lambda = kDefaultLambda;
  /// Empty: the family's standard comparison set (PG, FISTA, FISTA-R<K> for
  /// convex families; PG, PG_e, FISTA for the QP).
  std::vector<ScheduleSpec> schedules;
  std::size_t restart_interval = 500;
  double tol = 1e-6;
  std::size_t max_iter = 5000;
  std::optional<double> alpha;
  std::uint64_t seed = 1;
  std::size_t instances = 10;
  std::size_t jobs = 1;
  std::string output_dir = "pgex-out";
  std::optional<std::string> instance_file;

  /// Throws ArgumentError describing the first inconsistency.
  void validate() const;
};

/// "desk": (m, n, s) = (50, 500, 5), QP n = 200. "paper": (300, 3000, 30), QP n = 2000.
void apply_preset(ExperimentConfig& config, std::string_view preset);

std::vector<ScheduleSpec> default_schedules(Family family);

ProblemInstance generate_instance(const ExperimentConfig& config, std::uint64_t seed);

/// Duality gap (convex) or successive change (QP) at config.tol, or the iteration cap.
TerminationRule default_rule(Family family, double tol, std::size_t max_iter);

/// The origin for the convex families; its simplex projection (s/n) e for the QP.
Vector initial_point(const ProblemInstance& inst);

struct AlgorithmRun {
  std::string label;
  SolveResult result;
  bool failed = false;
  std::string error;
  /// Fits of ||x^k - x*|| (x* = own final iterate) and |F(x^k) - F_min|.
  std::optional<RateFit> distance_fit;
  std::optional<RateFit> objective_fit;
};

struct ExperimentResult {
  ProblemInstance instance;
  double L = 0.0;
  double l = 0.0;
  double threshold = 1.0;
  double f_min = 0.0;
  std::vector<AlgorithmRun> runs;

  /// 0 on success, 3 if a run failed numerically, 4 if a run stopped at the
  /// iteration cap under a rule with another stopping test.
  int exit_code() const;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// Header "k,F,H,step_norm,residual,gap,feas_violation,beta,restart_flag";
/// absent optional values are empty cells; reals with 17 significant digits.
std::string trace_csv(const IterateTrace& trace);
std::string manifest_text(const ExperimentConfig& config, const ExperimentResult& result);
std::string rates_text(const ExperimentResult& result);

/// Writes instance.txt, manifest.txt, rates.txt and trace_<label>.csv.
void write_experiment(const ExperimentConfig& config, const ExperimentResult& result);

struct Table1Row {
  std::size_t instance = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  double simplex_sum = 0.0;
  std::string algorithm;
  std::size_t iterations = 0;
  double fval = 0.0;
  std::string reason;
  bool failed = false;
  std::string error;
};

struct AlgorithmSummary {
  std::string algorithm;
  double mean_iter = 0.0;
  double mean_fval = 0.0;
  std::size_t completed = 0;
  std::size_t failed = 0;
  /// Completed runs that hit the iteration cap.
  std::size_t capped = 0;
};

struct BatchSummary {
  std::vector<Table1Row> rows;
  std::vector<AlgorithmSummary> summary;
};

/// PG_e, FISTA and PG on config.instances random QP instances of size
/// config.n; instance i uses derive_seed(config.seed, i).
BatchSummary run_table1(const ExperimentConfig& config);
// Same protocol over caller-supplied instances; config.n and config.instances are ignored.
BatchSummary run_table1(const ExperimentConfig& config, std::span<const SimplexQpInstance> instances);

std::string table1_rows_csv(const BatchSummary& batch);
std::string table1_summary_csv(const BatchSummary& batch);
void write_table1(const ExperimentConfig& config, const BatchSummary& batch);

}  // namespace pgex
