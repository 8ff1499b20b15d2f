#include "cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <ostream>
#include <sstream>

namespace pgex::cli {

namespace {

std::vector<std::string> split_words(const std::vector<std::string>& raw) {
  std::vector<std::string> words;
  for (const auto& r : raw) {
    std::istringstream ss(r);
    for (std::string w; ss >> w;) words.push_back(w);
  }
  return words;
}

ScheduleSpec parse_schedule(const std::vector<std::string>& raw) {
  const auto words = split_words(raw);
  if (words.empty() || words.size() > 2) throw ArgumentError("--schedule expects NAME [VALUE]");
  std::optional<double> value;
  if (words.size() == 2) {
    std::size_t used = 0;
    try {
      value = std::stod(words[1], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != words[1].size()) throw ArgumentError("--schedule value '" + words[1] + "' is not a number");
  }
  return ScheduleSpec::parse(words[0], value);
}

}  // namespace

std::variant<Invocation, int> parse(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proximal gradient with extrapolation: experiment runner"};
  app.set_config("--config", "", "Read flags from a key=value file");
  app.option_defaults()->always_capture_default();

  Invocation inv;
  auto& cfg = inv.config;
  std::string family = "lasso";
  std::string preset = "desk";
  std::vector<std::string> schedule;
  std::size_t m = 0, n = 0, s = 0;
  double alpha = 0.0;
  std::string instance_file;
  bool table1 = false;

  app.add_option("--family", family, "Problem family")->check(CLI::IsMember({"lasso", "logistic", "qp"}));
  app.add_option("--preset", preset, "Dimension preset")->check(CLI::IsMember({"desk", "paper"}));
  auto* m_opt = app.add_option("--m", m, "Rows of A (lasso, logistic)");
  auto* n_opt = app.add_option("--n", n, "Variables (all families)");
  auto* s_opt = app.add_option("--s", s, "Sparsity of the planted vector");
  app.add_option("--lambda", cfg.lambda, "l1 weight");
  auto* sched_opt = app.add_option("--schedule", schedule,
                                   "none | pg | pg-e | constant B | constant-frac F | fista | fista-restart | "
                                   "fista-adaptive | fista-both; default runs the family's comparison set")
                        ->expected(1, 2);
  app.add_option("--K", cfg.restart_interval, "Restart interval for fixed-restart schedules");
  app.add_option("--tol", cfg.tol, "Stopping tolerance (duality gap or successive change)");
  app.add_option("--max-iter", cfg.max_iter, "Iteration cap");
  auto* alpha_opt = app.add_option("--alpha", alpha, "Lyapunov weight (default: window midpoint)");
  app.add_option("--seed", cfg.seed, "Instance seed (base seed in table1 mode)");
  app.add_option("--instances", cfg.instances, "Batch size for --table1");
  app.add_option("--jobs", cfg.jobs, "Worker threads for --table1");
  app.add_option("--out", cfg.output_dir, "Output directory");
  auto* inst_opt = app.add_option("--instance", instance_file, "Load the instance from a file instead of generating");
  app.add_flag("--table1", table1, "Run the PG_e / FISTA / PG batch comparison on random QPs");
  app.add_flag("--quiet", inv.quiet, "Suppress the summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kUsage;
  }

  try {
    cfg.family = parse_family(family);
    apply_preset(cfg, preset);
    if (m_opt->count() > 0) cfg.m = m;
    if (n_opt->count() > 0) cfg.n = n;
    if (s_opt->count() > 0) cfg.sparsity = s;
    if (sched_opt->count() > 0) cfg.schedules = {parse_schedule(schedule)};
    if (alpha_opt->count() > 0) cfg.alpha = alpha;
    if (inst_opt->count() > 0) cfg.instance_file = instance_file;
    inv.mode = table1 ? Mode::kTable1 : Mode::kExperiment;
    if (table1 && cfg.family != Family::kQp) throw ArgumentError("--table1 requires --family qp");
    cfg.validate();
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return inv;
}

int execute(const Invocation& inv, std::ostream& out, std::ostream& err) {
  try {
    if (inv.mode == Mode::kTable1) {
      const BatchSummary batch = run_table1(inv.config);
      write_table1(inv.config, batch);
      if (!inv.quiet) {
        out << std::left << std::setw(8) << "alg" << std::setw(12) << "iter" << std::setw(14) << "fval" << "failed\n";
        for (const auto& s : batch.summary) {
          out << std::left << std::setw(8) << s.algorithm << std::setw(12) << s.mean_iter << std::setw(14)
              << s.mean_fval << s.failed << '\n';
        }
      }
      const bool any_failed =
          std::any_of(batch.summary.begin(), batch.summary.end(), [](const auto& s) { return s.failed > 0; });
      return any_failed ? kNumericalFailure : kSuccess;
    }

    const ExperimentResult result = run_experiment(inv.config);
    write_experiment(inv.config, result);
    if (!inv.quiet) {
      out << "family " << family_name(result.instance) << ": L = " << result.L << ", l = " << result.l
          << ", threshold = " << result.threshold << '\n';
      for (const auto& run : result.runs) {
        out << "  " << std::left << std::setw(16) << run.label;
        if (run.failed) {
          out << "FAILED: " << run.error << '\n';
          continue;
        }
        out << std::setw(6) << run.result.iterations << ' ' << std::setw(18) << to_string(run.result.reason)
            << " F = " << std::setprecision(12) << run.result.trace.back().objective;
        if (run.distance_fit) out << "  rate " << std::setprecision(6) << run.distance_fit->ratio_estimate;
        out << '\n';
      }
      out << "output written to " << inv.config.output_dir << '\n';
    }
    for (const auto& run : result.runs) {
      if (run.failed) err << "numerical failure in " << run.label << ": " << run.error << '\n';
    }
    return result.exit_code();
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigurationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  auto parsed = parse(argc, argv, out, err);
  if (const int* code = std::get_if<int>(&parsed)) return *code;
  return execute(std::get<Invocation>(parsed), out, err);
}

}  // namespace pgex::cli
