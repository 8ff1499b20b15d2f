#include "pgex/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <functional>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "pgex/instance_io.hpp"
#include "pgex/proxops.hpp"
#include "pgex/random.hpp"

namespace pgex {

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::kLasso: return "lasso";
    case Family::kLogistic: return "logistic";
    case Family::kQp: return "qp";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "lasso") return Family::kLasso;
  if (name == "logistic") return Family::kLogistic;
  if (name == "qp") return Family::kQp;
  throw ArgumentError("unknown family '" + std::string(name) + "' (expected lasso, logistic or qp)");
}

// ---------------------------------------------------------------- schedules

ScheduleSpec ScheduleSpec::parse(std::string_view name, std::optional<double> value) {
  using K = Kind;
  const auto no_value = [&](Kind k) {
    if (value) throw ArgumentError("schedule '" + std::string(name) + "' takes no value");
    return ScheduleSpec{k, 0.0};
  };
  if (name == "none" || name == "pg") return no_value(K::kNone);
  if (name == "fista") return no_value(K::kFista);
  if (name == "fista-restart") return no_value(K::kFistaRestart);
  if (name == "fista-adaptive") return no_value(K::kFistaAdaptive);
  if (name == "fista-both") return no_value(K::kFistaBoth);
  if (name == "pg-e") return {K::kConstantFrac, value.value_or(0.98)};
  if (name == "constant" || name == "constant-frac") {
    if (!value) throw ArgumentError("schedule '" + std::string(name) + "' needs a value");
    if (!(*value >= 0.0)) throw ArgumentError("schedule value must be >= 0");
    if (name == "constant-frac" && *value > 1.0) throw ArgumentError("constant-frac value must be in [0, 1]");
    return {name == "constant" ? K::kConstant : K::kConstantFrac, *value};
  }
  throw ArgumentError("unknown schedule '" + std::string(name) + "'");
}

bool ScheduleSpec::is_fista() const noexcept {
  return kind == Kind::kFista || kind == Kind::kFistaRestart || kind == Kind::kFistaAdaptive ||
         kind == Kind::kFistaBoth;
}

std::string ScheduleSpec::label(std::size_t restart_interval) const {
  switch (kind) {
    case Kind::kNone: return "pg";
    case Kind::kConstant: return "constant-" + format_real(value);
    case Kind::kConstantFrac: return value == 0.98 ? "pg-e" : "constant-frac-" + format_real(value);
    case Kind::kFista: return "fista";
    case Kind::kFistaRestart: return "fista-fixed-r" + std::to_string(restart_interval);
    case Kind::kFistaAdaptive: return "fista-adaptive";
    case Kind::kFistaBoth: return "fista-r" + std::to_string(restart_interval);
  }
  return "unknown";
}

BetaSchedule ScheduleSpec::resolve(std::size_t restart_interval, double L, double l) const {
  switch (kind) {
    case Kind::kNone: return BetaSchedule::constant(0.0);
    case Kind::kConstant: return BetaSchedule::constant(value);
    case Kind::kConstantFrac: return BetaSchedule::constant(value * beta_threshold(L, l));
    case Kind::kFista: return BetaSchedule::fista();
    case Kind::kFistaRestart: return BetaSchedule::fixed_restart(restart_interval);
    case Kind::kFistaAdaptive: return BetaSchedule::adaptive_restart();
    case Kind::kFistaBoth: return BetaSchedule::both_restarts(restart_interval);
  }
  throw ArgumentError("unknown schedule kind");
}

// ---------------------------------------------------------------- config

void ExperimentConfig::validate() const {
  if (family == Family::kQp) {
    if (n == 0) throw ArgumentError("n must be >= 1");
  } else {
    if (m == 0 || n == 0) throw ArgumentError("m and n must be >= 1");
    if (sparsity > n) throw ArgumentError("sparsity must not exceed n");
    if (!(lambda > 0.0)) throw ArgumentError("lambda must be positive");
  }
  if (restart_interval == 0) throw ArgumentError("K must be >= 1");
  if (max_iter == 0) throw ArgumentError("max_iter must be >= 1");
  if (!(tol > 0.0)) throw ArgumentError("tol must be positive");
  if (instances == 0) throw ArgumentError("instances must be >= 1");
  if (jobs == 0) throw ArgumentError("jobs must be >= 1");
  if (alpha && !(*alpha >= 0.0)) throw ArgumentError("alpha must be >= 0");
}

void apply_preset(ExperimentConfig& config, std::string_view preset) {
  if (preset == "desk") {
    config.m = 50;
    config.n = config.family == Family::kQp ? 200 : 500;
    config.sparsity = 5;
  } else if (preset == "paper") {
    config.m = 300;
    config.n = config.family == Family::kQp ? 2000 : 3000;
    config.sparsity = 30;
  } else {
    throw ArgumentError("unknown preset '" + std::string(preset) + "' (expected desk or paper)");
  }
}

std::vector<ScheduleSpec> default_schedules(Family family) {
  using K = ScheduleSpec::Kind;
  if (family == Family::kQp) return {{K::kConstantFrac, 0.98}, {K::kFista, 0.0}, {K::kNone, 0.0}};
  return {{K::kFistaBoth, 0.0}, {K::kFista, 0.0}, {K::kNone, 0.0}};
}

ProblemInstance generate_instance(const ExperimentConfig& config, std::uint64_t seed) {
  switch (config.family) {
    case Family::kLasso: return gen_lasso(config.m, config.n, config.sparsity, seed, config.lambda);
    case Family::kLogistic: return gen_logistic(config.m, config.n, config.sparsity, seed, config.lambda);
    case Family::kQp: return gen_qp(config.n, seed);
  }
  throw ArgumentError("unknown family");
}

TerminationRule default_rule(Family family, double tol, std::size_t max_iter) {
  auto stop = family == Family::kQp ? TerminationRule::successive_change(tol) : TerminationRule::duality_gap(tol);
  return TerminationRule::any_of({std::move(stop), TerminationRule::max_iter(max_iter)});
}

Vector initial_point(const ProblemInstance& inst) {
  if (const auto* qp = std::get_if<SimplexQpInstance>(&inst)) {
    return project_simplex(Vector(qp->A.rows(), 0.0), qp->simplex_sum);
  }
  if (const auto* lg = std::get_if<LogisticInstance>(&inst)) return Vector(lg->A.cols() + 1, 0.0);
  return Vector(std::get<LassoInstance>(inst).A.cols(), 0.0);
}

// ---------------------------------------------------------------- experiment

namespace {

std::optional<RateFit> try_fit(std::span<const double> series) {
  try {
    return fit_linear_rate(series, 0.5);
  } catch (const InsufficientDataError&) {
    return std::nullopt;
  }
}

bool stopped_at_cap(const AlgorithmRun& run) {
  return !run.failed && run.result.reason == TerminationReason::kMaxIterations;
}

}  // namespace

int ExperimentResult::exit_code() const {
  if (std::any_of(runs.begin(), runs.end(), [](const auto& r) { return r.failed; })) return 3;
  if (std::any_of(runs.begin(), runs.end(), stopped_at_cap)) return 4;
  return 0;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult out;
  out.instance = config.instance_file ? load_instance(*config.instance_file) : generate_instance(config, config.seed);
  const CompositeObjective obj = make_objective(out.instance);
  out.L = obj.modulus_L();
  out.l = obj.modulus_l();
  out.threshold = beta_threshold(out.L, out.l);

  const Family family = parse_family(family_name(out.instance));
  const TerminationRule rule = default_rule(family, config.tol, config.max_iter);
  const Vector x0 = initial_point(out.instance);
  const auto schedules = config.schedules.empty() ? default_schedules(family) : config.schedules;

  RunOptions options;
  options.alpha = config.alpha;
  options.allow_heuristic_schedule = true;

  for (const auto& spec : schedules) {
    AlgorithmRun run;
    run.label = spec.label(config.restart_interval);
    try {
      run.result = pgex::run(obj, x0, spec.resolve(config.restart_interval, out.L, out.l), rule, options);
    } catch (const SolveFailure& e) {
      run.failed = true;
      run.error = e.what();
      run.result = e.partial();
    }
    out.runs.push_back(std::move(run));
  }

  out.f_min = std::numeric_limits<double>::infinity();
  for (const auto& run : out.runs) {
    if (!run.failed) out.f_min = std::min(out.f_min, run.result.trace.back().objective);
  }
  for (auto& run : out.runs) {
    if (run.failed) continue;
    const auto& trace = run.result.trace;
    if (!trace.iterates.empty()) run.distance_fit = try_fit(distance_to_reference(trace.iterates, run.result.x_final));
    run.objective_fit = try_fit(objective_gap_series(trace, out.f_min));
  }
  return out;
}

std::string trace_csv(const IterateTrace& trace) {
  std::ostringstream out;
  out << "k,F,H,step_norm,residual,gap,feas_violation,beta,restart_flag\n";
  const auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
  for (const auto& r : trace.records) {
    out << r.k << ',' << format_real(r.objective) << ',' << format_real(r.lyapunov) << ','
        << format_real(r.step_norm) << ',' << opt(r.residual) << ',' << opt(r.gap) << ','
        << opt(r.feasibility_violation) << ',' << format_real(r.beta) << ',' << (r.restart ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string manifest_text(const ExperimentConfig& config, const ExperimentResult& result) {
  std::ostringstream out;
  const auto& inst = result.instance;
  out << "family=" << family_name(inst) << '\n';
  std::visit(
      [&out](const auto& i) {
        using T = std::decay_t<decltype(i)>;
        out << "seed=" << i.seed << '\n';
        if constexpr (std::is_same_v<T, SimplexQpInstance>) {
          out << "n=" << i.A.rows() << '\n' << "s=" << format_real(i.simplex_sum) << '\n';
        } else {
          out << "m=" << i.A.rows() << '\n' << "n=" << i.A.cols() << '\n';
          out << "lambda=" << format_real(i.lambda) << '\n';
        }
      },
      inst);
  if (family_name(inst) != "qp") out << "sparsity=" << config.sparsity << '\n';
  out << "restart_interval=" << config.restart_interval << '\n';
  out << "tol=" << format_real(config.tol) << '\n';
  out << "max_iter=" << config.max_iter << '\n';
  out << "alpha=" << (config.alpha ? format_real(*config.alpha) : std::string("midpoint")) << '\n';
  out << "L=" << format_real(result.L) << '\n';
  out << "l=" << format_real(result.l) << '\n';
  out << "threshold=" << format_real(result.threshold) << '\n';
  out << "f_min=" << format_real(result.f_min) << '\n';
  std::string labels;
  for (const auto& run : result.runs) labels += (labels.empty() ? "" : ",") + run.label;
  out << "schedules=" << labels << '\n';
  for (const auto& run : result.runs) {
    const auto& r = run.result;
    const std::string p = run.label + '.';
    out << p << "status=" << (run.failed ? "failed" : "ok") << '\n';
    if (run.failed) out << p << "error=" << run.error << '\n';
    out << p << "iterations=" << r.iterations << '\n';
    out << p << "termination=" << to_string(r.reason) << '\n';
    out << p << "alpha=" << format_real(r.trace.alpha) << '\n';
    out << p << "beta_bound=" << format_real(r.beta_bound) << '\n';
    out << p << "within_threshold=" << (r.within_threshold ? "true" : "false") << '\n';
    out << p << "strictly_below_threshold=" << (r.strictly_below_threshold ? "true" : "false") << '\n';
    if (!r.trace.empty()) out << p << "final_F=" << format_real(r.trace.back().objective) << '\n';
  }
  return out.str();
}

std::string rates_text(const ExperimentResult& result) {
  std::ostringstream out;
  const auto emit = [&out](const std::string& prefix, const std::optional<RateFit>& fit) {
    if (!fit) {
      out << prefix << "status=insufficient_data\n";
      return;
    }
    out << prefix << "ratio_estimate=" << format_real(fit->ratio_estimate) << '\n';
    out << prefix << "slope=" << format_real(fit->slope) << '\n';
    out << prefix << "r_squared=" << format_real(fit->r_squared) << '\n';
    out << prefix << "tail_start=" << fit->tail_start << '\n';
    out << prefix << "points=" << fit->points << '\n';
  };
  for (const auto& run : result.runs) {
    emit(run.label + ".distance.", run.distance_fit);
    emit(run.label + ".objective.", run.objective_fit);
  }
  return out.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  f << content;
  if (!f) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace

void write_experiment(const ExperimentConfig& config, const ExperimentResult& result) {
  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  save_instance((dir / "instance.txt").string(), result.instance);
  write_file(dir / "manifest.txt", manifest_text(config, result));
  write_file(dir / "rates.txt", rates_text(result));
  for (const auto& run : result.runs) write_file(dir / ("trace_" + run.label + ".csv"), trace_csv(run.result.trace));
}

// ---------------------------------------------------------------- Table 1

namespace {

struct Table1Algorithm {
  const char* name;
  ScheduleSpec spec;
};

using InstanceSource = std::function<SimplexQpInstance(std::size_t)>;

std::vector<Table1Row> table1_instance(const ExperimentConfig& config, std::size_t index,
                                       const InstanceSource& source) {
  using K = ScheduleSpec::Kind;
  static const Table1Algorithm algorithms[] = {
      {"PG_e", {K::kConstantFrac, 0.98}},
      {"FISTA", {K::kFista, 0.0}},
      {"PG", {K::kNone, 0.0}},
  };
  std::vector<Table1Row> rows;
  Table1Row base;
  base.instance = index;
  base.n = config.n;

  std::optional<SimplexQpInstance> inst;
  std::optional<CompositeObjective> obj;
  try {
    inst = source(index);
    base.seed = inst->seed;
    base.n = inst->b.size();
    base.simplex_sum = inst->simplex_sum;
    obj.emplace(qp_objective(*inst));
  } catch (const Error& e) {
    for (const auto& a : algorithms) {
      Table1Row row = base;
      row.algorithm = a.name;
      row.failed = true;
      row.error = e.what();
      rows.push_back(row);
    }
    return rows;
  }

  const TerminationRule rule = default_rule(Family::kQp, config.tol, config.max_iter);
  const Vector x0 = initial_point(*inst);
  RunOptions options;
  options.alpha = config.alpha;
  options.allow_heuristic_schedule = true;
  options.keep_iterates = false;
  options.record_residual = false;
  for (const auto& a : algorithms) {
    Table1Row row = base;
    row.algorithm = a.name;
    try {
      const SolveResult r =
          run(*obj, x0, a.spec.resolve(config.restart_interval, obj->modulus_L(), obj->modulus_l()), rule, options);
      row.iterations = r.iterations;
      row.fval = r.trace.back().objective;
      row.reason = std::string(to_string(r.reason));
    } catch (const Error& e) {
      row.failed = true;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

BatchSummary run_batch(const ExperimentConfig& config, std::size_t count, const InstanceSource& source) {
  config.validate();
  if (config.family != Family::kQp) throw ArgumentError("table1 requires family qp");

  std::vector<std::vector<Table1Row>> per_instance(count);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) per_instance[i] = table1_instance(config, i, source);
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t workers = std::min(config.jobs, count);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }

  BatchSummary batch;
  for (auto& rows : per_instance)
    for (auto& row : rows) batch.rows.push_back(std::move(row));

  for (const char* name : {"PG_e", "FISTA", "PG"}) {
    AlgorithmSummary s;
    s.algorithm = name;
    double iter_sum = 0.0;
    double fval_sum = 0.0;
    for (const auto& row : batch.rows) {
      if (row.algorithm != name) continue;
      if (row.failed) {
        ++s.failed;
        continue;
      }
      ++s.completed;
      iter_sum += static_cast<double>(row.iterations);
      fval_sum += row.fval;
      if (row.reason == to_string(TerminationReason::kMaxIterations)) ++s.capped;
    }
    if (s.completed > 0) {
      s.mean_iter = iter_sum / static_cast<double>(s.completed);
      s.mean_fval = fval_sum / static_cast<double>(s.completed);
    }
    batch.summary.push_back(s);
  }
  return batch;
}

}  // namespace

BatchSummary run_table1(const ExperimentConfig& config) {
  return run_batch(config, config.instances,
                   [&config](std::size_t i) { return gen_qp(config.n, derive_seed(config.seed, i)); });
}

BatchSummary run_table1(const ExperimentConfig& config, std::span<const SimplexQpInstance> instances) {
  if (instances.empty()) throw ArgumentError("table1 requires at least one instance");
  return run_batch(config, instances.size(), [instances](std::size_t i) { return instances[i]; });
}

std::string table1_rows_csv(const BatchSummary& batch) {
  std::ostringstream out;
  out << "instance,seed,n,s,algorithm,iter,fval,termination,status\n";
  for (const auto& r : batch.rows) {
    out << r.instance << ',' << r.seed << ',' << r.n << ',' << format_real(r.simplex_sum) << ',' << r.algorithm << ','
        << r.iterations << ',' << (r.failed ? std::string() : format_real(r.fval)) << ',' << r.reason << ','
        << (r.failed ? "failed" : "ok") << '\n';
  }
  return out.str();
}

std::string table1_summary_csv(const BatchSummary& batch) {
  std::ostringstream out;
  out << "algorithm,mean_iter,mean_fval,completed,failed,capped\n";
  for (const auto& s : batch.summary) {
    out << s.algorithm << ',' << format_real(s.mean_iter) << ',' << format_real(s.mean_fval) << ',' << s.completed
        << ',' << s.failed << ',' << s.capped << '\n';
  }
  return out.str();
}

void write_table1(const ExperimentConfig& config, const BatchSummary& batch) {
  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  write_file(dir / "table1_instances.csv", table1_rows_csv(batch));
  write_file(dir / "table1_summary.csv", table1_summary_csv(batch));
}

}  // namespace pgex
