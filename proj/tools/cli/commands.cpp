#include "cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli/csv.hpp"
#include "json.hpp"
#include "mixem/censored.hpp"
#include "mixem/error.hpp"
#include "mixem/simbench.hpp"
#include "mixem/solve.hpp"

namespace mixem::cli {

namespace {

using nlohmann::ordered_json;

struct CommonOptions {
  std::string algorithm = "cocktail";
  double epsilon = 1e-6;
  std::size_t max_iterations = 100000;
  bool trace = false;
  bool dense_kernels = false;
  std::uint64_t seed = 0;
  std::string out_prefix;

  SolverConfig solver() const {
    SolverConfig config;
    config.algorithm = parse_algorithm(algorithm);
    config.epsilon = epsilon;
    config.max_iterations = max_iterations;
    config.trace = trace;
    return config;
  }
};

void add_common(CLI::App& app, CommonOptions& o) {
  app.add_option("--algorithm", o.algorithm, "em, squeeze1, squeeze2, nne+, vem or cocktail")
      ->capture_default_str();
  app.add_option("--epsilon", o.epsilon, "stop when the convergence gap is at most this")
      ->capture_default_str();
  app.add_option("--max-iter", o.max_iterations, "outer-iteration cap")->capture_default_str();
  app.add_flag("--trace", o.trace, "record log-likelihood and gap after every iteration");
  app.add_option("--seed", o.seed, "random seed (recorded in the manifest)")
      ->capture_default_str();
  app.add_option("--out-prefix", o.out_prefix, "prefix for output files");
}

std::string default_prefix(const std::string& input) {
  std::filesystem::path p(input);
  return (p.parent_path() / p.stem()).string();
}

std::string file_name(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  return out;
}

ordered_json config_json(const CommonOptions& o, const SolverConfig& config) {
  ordered_json j;
  j["algorithm"] = std::string(to_string(config.algorithm));
  j["epsilon"] = config.epsilon;
  j["max_iterations"] = config.max_iterations;
  j["trace"] = config.trace;
  j["dense_kernels"] = o.dense_kernels;
  return j;
}

void write_manifest(const std::string& path, const std::string& command,
                    const std::vector<std::string>& inputs, ordered_json config,
                    std::uint64_t seed, const std::vector<std::string>& outputs) {
  ordered_json m;
  m["command"] = command;
  m["inputs"] = inputs;
  m["config"] = std::move(config);
  m["version"] = MIXEM_VERSION_STRING;
  m["seed"] = seed;
  m["outputs"] = outputs;
  open_output(path) << m.dump(2) << '\n';
}

void write_report(const std::string& path, const std::string& manifest,
                  const SolverConfig& config, const SolveReport& report) {
  ordered_json r;
  r["manifest"] = file_name(manifest);
  r["algorithm"] = std::string(to_string(config.algorithm));
  r["loglik"] = report.loglik;
  r["gap"] = report.gap;
  r["iterations"] = report.iterations;
  r["converged"] = report.converged;
  r["wall_time"] = report.wall_time;
  if (config.trace) {
    ordered_json trace = ordered_json::array();
    for (const TracePoint& t : report.trace) trace.push_back({{"loglik", t.loglik}, {"gap", t.gap}});
    r["trace"] = std::move(trace);
  }
  open_output(path) << r.dump(2) << '\n';
}

void warn_if_capped(const SolveReport& report, const SolverConfig& config, std::ostream& err) {
  if (report.converged) return;
  err << "warning: not converged after " << report.iterations << " iterations (gap "
      << report.gap << " > epsilon " << config.epsilon << ")\n";
}

int cmd_npmle(const std::string& input, const CommonOptions& o, std::ostream& out,
              std::ostream& err) {
  const SolverConfig config = o.solver();
  auto in = open_input(input);
  const CensoredSample sample = read_censored_csv(in);
  const NpmleResult result =
      npmle(sample, config, o.dense_kernels ? KernelPath::dense : KernelPath::sparse);

  const std::string prefix = o.out_prefix.empty() ? default_prefix(input) : o.out_prefix;
  const std::string estimate_path = prefix + ".estimate.csv";
  const std::string report_path = prefix + ".report.json";
  const std::string manifest_path = prefix + ".manifest.json";

  {
    auto csv = open_output(estimate_path);
    csv << "# manifest: " << file_name(manifest_path) << '\n';
    csv << "z,p,F_hat\n";
    const NpmleEstimate& e = result.estimate;
    for (std::size_t j = 0; j < e.grid.finite_times.size(); ++j) {
      csv << format_number(e.grid.finite_times[j]) << ',' << format_number(e.masses[j]) << ','
          << format_number(e.cdf[j]) << '\n';
    }
    csv << "inf," << format_number(e.mass_beyond_last_time()) << ",\n";
  }
  write_report(report_path, manifest_path, config, result.report);
  write_manifest(manifest_path, "npmle", {input}, config_json(o, config), o.seed,
                 {estimate_path, report_path});
  warn_if_capped(result.report, config, err);
  out << "npmle: n=" << sample.size() << " m=" << result.estimate.masses.size()
      << " loglik=" << format_number(result.report.loglik)
      << " iterations=" << result.report.iterations << '\n';
  return kOk;
}

int cmd_solve(const std::string& input, const CommonOptions& o, std::ostream& out,
              std::ostream& err) {
  const SolverConfig config = o.solver();
  auto in = open_input(input);
  const MixtureProblem problem = MixtureProblem::dense(read_dense_csv(in));
  const SolveReport report = solve(problem, config);

  const std::string prefix = o.out_prefix.empty() ? default_prefix(input) : o.out_prefix;
  const std::string estimate_path = prefix + ".estimate.csv";
  const std::string report_path = prefix + ".report.json";
  const std::string manifest_path = prefix + ".manifest.json";
  {
    auto csv = open_output(estimate_path);
    csv << "# manifest: " << file_name(manifest_path) << '\n';
    csv << "j,p\n";
    for (std::size_t j = 0; j < report.p_hat.size(); ++j) {
      csv << j << ',' << format_number(report.p_hat[j]) << '\n';
    }
  }
  write_report(report_path, manifest_path, config, report);
  write_manifest(manifest_path, "solve", {input}, config_json(o, config), o.seed,
                 {estimate_path, report_path});
  warn_if_capped(report, config, err);
  out << "solve: n=" << problem.n() << " m=" << problem.m()
      << " loglik=" << format_number(report.loglik) << " iterations=" << report.iterations
      << '\n';
  return kOk;
}

struct BenchOptions {
  std::string generator;
  std::string dataset;
  std::size_t n = 1000;
  int q1 = 3;
  int q2 = 18;
  std::size_t replications = 10;
  std::string algorithms = "em,nne+,vem,cocktail";
  NormalGridConfig grid;
};

std::vector<Algorithm> parse_algorithm_list(const std::string& list) {
  std::vector<Algorithm> out;
  std::stringstream in(list);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (name.empty()) continue;
    const Algorithm a = parse_algorithm(name);
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  if (out.empty()) throw InputError("--algos lists no algorithm");
  return out;
}

int cmd_bench(const BenchOptions& b, const CommonOptions& o, std::ostream& out,
              std::ostream& err) {
  SolverConfig config = o.solver();
  config.trace = false;
  const auto algorithms = parse_algorithm_list(b.algorithms);
  if (b.replications < 1) throw InputError("--reps must be at least 1");

  BenchmarkSummary summary;
  ordered_json echo = config_json(o, config);
  echo.erase("algorithm");
  echo.erase("trace");
  echo["algorithms"] = b.algorithms;
  echo["replications"] = b.replications;
  std::vector<std::string> inputs;
  if (!b.dataset.empty()) {
    if (!b.generator.empty()) throw InputError("use either --gen or --dataset, not both");
    auto in = open_input(b.dataset);
    NormalGridConfig grid = b.grid;
    grid.data = read_values(in);
    const MixtureProblem problem = build_normal_grid_problem(grid);
    summary = run_benchmark([&](std::size_t) { return problem; }, b.replications, algorithms,
                            config);
    summary.n = grid.data.size();
    inputs.push_back(b.dataset);
    echo["grid_lo"] = grid.grid_lo;
    echo["grid_hi"] = grid.grid_hi;
    echo["grid_count"] = grid.grid_count;
    echo["sigma"] = grid.sigma;
  } else if (b.generator == "doubly") {
    const DoublyCensoredConfig gen{b.n, b.q1, b.q2, o.seed};
    if (gen.q1 < 1 || gen.q2 > 20 || gen.q1 >= gen.q2) {
      throw InputError("ranks must satisfy 1 <= q1 < q2 <= 20");
    }
    summary = run_benchmark(gen, b.replications, algorithms, config);
    echo["generator"] = "doubly";
    echo["n"] = b.n;
    echo["q1"] = b.q1;
    echo["q2"] = b.q2;
  } else {
    throw InputError("bench needs --gen doubly or --dataset FILE");
  }

  const std::string prefix = o.out_prefix.empty() ? "bench" : o.out_prefix;
  const std::string summary_path = prefix + ".summary.csv";
  const std::string runs_path = prefix + ".runs.csv";
  const std::string manifest_path = prefix + ".manifest.json";
  {
    auto csv = open_output(summary_path);
    csv << "# manifest: " << file_name(manifest_path) << '\n';
    write_summary_csv(csv, summary);
  }
  {
    auto csv = open_output(runs_path);
    csv << "# manifest: " << file_name(manifest_path) << '\n';
    csv << "replication,algorithm,iterations,seconds,converged,loglik\n";
    for (const RunRecord& r : summary.runs) {
      csv << r.replication << ',' << to_string(r.algorithm) << ',' << r.iterations << ','
          << format_number(r.seconds) << ',' << (r.converged ? 1 : 0) << ','
          << format_number(r.loglik) << '\n';
    }
  }
  write_manifest(manifest_path, "bench", inputs, std::move(echo), o.seed,
                 {summary_path, runs_path});
  for (const AlgorithmSummary& s : summary.algorithms) {
    if (s.capped_runs > 0) {
      err << "warning: " << to_string(s.algorithm) << " hit the iteration cap in "
          << s.capped_runs << " of " << s.runs << " runs\n";
    }
    out << to_string(s.algorithm) << ": mean iterations " << s.mean_iterations
        << ", mean seconds " << s.mean_seconds << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mixture-proportion and censored-data NPMLE solvers", "mixem"};
  app.require_subcommand(1);

  CommonOptions npmle_opts;
  std::string npmle_input;
  auto* npmle_cmd = app.add_subcommand("npmle", "NPMLE from a censored-data CSV (left,right)");
  npmle_cmd->add_option("input", npmle_input, "CSV with header left,right")->required();
  add_common(*npmle_cmd, npmle_opts);
  npmle_cmd->add_flag("--dense-kernels", npmle_opts.dense_kernels,
                      "expand the full table instead of using interval kernels");

  CommonOptions solve_opts;
  std::string solve_input;
  auto* solve_cmd = app.add_subcommand("solve", "mixture proportions for a dense density CSV");
  solve_cmd->add_option("input", solve_input, "n x m CSV of densities, no header")->required();
  add_common(*solve_cmd, solve_opts);

  CommonOptions bench_opts;
  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "compare algorithms on generated or given data");
  add_common(*bench_cmd, bench_opts);
  bench_cmd->add_option("--gen", bench.generator, "data generator: doubly");
  bench_cmd->add_option("--dataset", bench.dataset, "values for a normal location-grid mixture");
  bench_cmd->add_option("--n", bench.n, "sample size")->capture_default_str();
  bench_cmd->add_option("--q1", bench.q1, "lower inspection rank")->capture_default_str();
  bench_cmd->add_option("--q2", bench.q2, "upper inspection rank")->capture_default_str();
  bench_cmd->add_option("--reps", bench.replications, "replications")->capture_default_str();
  bench_cmd->add_option("--algos", bench.algorithms, "comma-separated algorithms")
      ->capture_default_str();
  bench_cmd->add_option("--grid-lo", bench.grid.grid_lo)->capture_default_str();
  bench_cmd->add_option("--grid-hi", bench.grid.grid_hi)->capture_default_str();
  bench_cmd->add_option("--grid-count", bench.grid.grid_count)->capture_default_str();
  bench_cmd->add_option("--sigma", bench.grid.sigma)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return kOk;
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*npmle_cmd) return cmd_npmle(npmle_input, npmle_opts, out, err);
    if (*solve_cmd) return cmd_solve(solve_input, solve_opts, out, err);
    return cmd_bench(bench, bench_opts, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DegenerateError& e) {
    err << "error: numerical degeneracy: " << e.what() << '\n';
    return kDegenerate;
  }
}

}  // namespace mixem::cli
