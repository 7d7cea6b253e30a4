// Copyright 2026 The sparseldr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "sparseldr/active_set_method.hpp"
#include "sparseldr/backend.hpp"
#include "sparseldr/bounds.hpp"
#include "sparseldr/error.hpp"
#include "sparseldr/evaluation.hpp"
#include "sparseldr/formulations.hpp"
#include "sparseldr/generators.hpp"
#include "sparseldr/instance_io.hpp"
#include "sparseldr/mps.hpp"

namespace sparseldr::cli {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolveFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

std::string overrides_text(const CommandConfig& config) {
  if (config.overrides.empty()) return "";
  if (config.overrides.front() == '@') return read_text(config.overrides.substr(1));
  return config.overrides;
}

void require_positive(int value, const char* name) {
  if (value < 1) throw ConfigError(std::string("--") + name + " must be a positive integer");
}

struct Cell {
  ROInstance instance;
  SparsityKind kind;
  SparsityParams params;
  int decision = 0;  // 0 counts every decision
  int E = 0;
};

Cell make_cell(const CommandConfig& config, int T, int E) {
  require_positive(T, "T");
  const std::string patch = overrides_text(config);
  if (config.generator == "prodinv" || config.generator == "prodinv-leadtime") {
    require_positive(E, "E");
    ProductionInventorySpec spec = benchmark_params(T, E);
    SparsityKind kind = SparsityKind::kProductionInventory;
    SparsityParams params{T, E, 0, 0};
    if (config.generator == "prodinv-leadtime") {
      if (!config.delta) throw ConfigError("prodinv-leadtime requires --delta");
      spec.leadtime.assign(E, *config.delta);
      kind = SparsityKind::kLeadtime;
      params.delta = *config.delta;
    } else if (config.delta) {
      throw ConfigError("--delta applies to prodinv-leadtime only");
    }
    if (!patch.empty()) spec = apply_overrides(spec, patch);
    return {gen_production_inventory(spec), kind, params, 0, E};
  }
  if (config.generator == "newsvendor") {
    NewsvendorSpec spec = random_newsvendor(T, config.seed);
    if (!patch.empty()) spec = apply_overrides(spec, patch);
    return {gen_newsvendor(spec), SparsityKind::kNewsvendor, {T, 1, 0, 0}, 1, 1};
  }
  throw ConfigError("unknown generator '" + config.generator + "'");
}

SolverOptions lp_options(const CommandConfig& config) {
  SolverOptions options;
  options.seed = config.seed;
  return options;
}

struct RcOutcome {
  LinearDecisionRule ldr;
  LPSolution solution;
  ModelSize size;
  double seconds = 0.0;
};

RcOutcome solve_rc(const ROInstance& instance, const CommandConfig& config) {
  const auto start = Clock::now();
  const bool dual = config.rc_form == "dual";
  const LPModel model = dual ? build_rc_dual(instance) : build_rc_primal_full(instance);
  RcOutcome out;
  out.size = model_size(model);
  out.solution = BackendRegistry::global().solve(config.backend, model, lp_options(config));
  if (out.solution.status != SolveStatus::kOptimal) {
    throw SolveFailure(std::string("robust counterpart solve ended ") +
                       ToString(out.solution.status));
  }
  // A basis of the dual model also fixes a vertex of the primal one.
  const ActiveSet full = ActiveSet::full(instance.horizon(), instance.n());
  out.ldr = dual ? extract_ldr(model, out.solution, full)
                 : ldr_from_primal(model, out.solution.primal, full);
  out.seconds = seconds_since(start);
  return out;
}

ActiveSetOptions active_set_options(const CommandConfig& config) {
  ActiveSetOptions options;
  options.seed = config.seed;
  options.eps_term = config.eps_term;
  options.max_iterations = config.max_iterations;
  options.zero_tol = config.zero_tol;
  options.backend = config.backend;
  options.lp = lp_options(config);
  return options;
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads; the first
// exception is rethrown after all workers finish.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min(jobs, count));
  std::vector<std::thread> pool;
  for (int w = 1; w < threads; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

int cmd_gen(const CommandConfig& config) {
  Cell cell = make_cell(config, config.T, config.E);
  write_output(config.output, instance_to_json(cell.instance, 2) + "\n");
  return kSuccess;
}

int cmd_solve(const CommandConfig& config) {
  if (config.input.empty()) throw ConfigError("solve requires an instance file");
  const ROInstance instance = read_instance_file(config.input);
  json doc;
  doc["method"] = config.method;
  LinearDecisionRule ldr;
  const auto start = Clock::now();
  if (config.method == "rc") {
    RcOutcome rc = solve_rc(instance, config);
    ldr = rc.ldr;
    doc["status"] = ToString(rc.solution.status);
    doc["is_vertex"] = rc.solution.is_vertex;
    doc["lp_iterations"] = rc.solution.iterations;
  } else if (config.method == "activeset") {
    ActiveSetResult result = solve_active_set(instance, active_set_options(config));
    ldr = result.ldr;
    doc["status"] = ToString(result.stats.status);
    doc["iterations"] = result.stats.iterations.size();
    doc["active_size"] = result.stats.final_active.size();
    if (!config.stats.empty()) write_output(config.stats, stats_csv(result.stats));
    if (result.stats.status == ActiveSetStatus::kInfeasible) {
      write_output(config.output, doc.dump(2) + "\n");
      throw SolveFailure("instance has no feasible linear decision rule");
    }
  } else {
    throw ConfigError("unknown method '" + config.method + "'");
  }
  const WorstCaseReport report = check_feasibility(instance, ldr, config.feas_tol);
  doc["seconds"] = seconds_since(start);
  doc["objective"] = report.objective;
  doc["c0"] = ldr.c0 ? json(*ldr.c0) : json(nullptr);
  doc["nnz"] = count_nonzeros(ldr, config.zero_tol);
  doc["params_total"] = triple_count(instance.horizon(), instance.n());
  doc["feasible"] = report.feasible;
  doc["max_violation"] = report.max_violation;
  doc["worst_row"] = report.worst_row;
  doc["ldr"] = json::parse(ldr_to_json(ldr));
  write_output(config.output, doc.dump(2) + "\n");
  return kSuccess;
}

int cmd_sparsity(const CommandConfig& config) {
  if (config.T_list.empty()) throw ConfigError("sparsity requires --T-list");
  std::vector<SparsityResult> results(config.T_list.size());
  parallel_for(static_cast<int>(config.T_list.size()), config.jobs, [&](int c) {
    const int T = config.T_list[c];
    Cell cell = make_cell(config, T, config.E);
    RcOutcome rc = solve_rc(cell.instance, config);
    SparsityResult& r = results[c];
    r.T = T;
    r.E = cell.E;
    r.params_total = ldr_param_count(T, cell.E);
    r.nnz = count_nonzeros(rc.ldr, config.zero_tol, T, cell.decision);
    r.bound = sparsity_bound(cell.kind, cell.params);
    r.static_params = static_cast<std::int64_t>(T) * cell.E;
    r.is_vertex = rc.solution.is_vertex;
  });
  for (const SparsityResult& r : results) {
    if (!r.is_vertex) throw SolveFailure("solve for T=" + std::to_string(r.T) + " is not a vertex");
  }
  write_output(config.output, emit_sparsity_csv(results));
  return kSuccess;
}

int cmd_bench(const CommandConfig& config) {
  if (config.T_list.empty()) throw ConfigError("bench requires --T-list");
  std::vector<std::string> rows(config.T_list.size());
  parallel_for(static_cast<int>(config.T_list.size()), config.jobs, [&](int c) {
    const int T = config.T_list[c];
    Cell cell = make_cell(config, T, config.E);
    RcOutcome rc = solve_rc(cell.instance, config);
    ActiveSetOptions options = active_set_options(config);
    options.reference_objective = rc.solution.objective;
    options.target_gap = config.target_gap;
    const auto start = Clock::now();
    ActiveSetResult as = solve_active_set(cell.instance, options);
    const double as_seconds = seconds_since(start);
    std::int64_t peak = 0;
    for (const IterationRecord& it : as.stats.iterations) {
      peak = std::max(peak, it.model.nonzeros);
    }
    char line[512];
    std::snprintf(line, sizeof(line), "%d,%d,%.12g,%.3f,%lld,%.12g,%.3f,%zu,%zu,%lld,%.3e,%.3f\n",
                  T, cell.E, rc.solution.objective, rc.seconds,
                  static_cast<long long>(rc.size.nonzeros), as.stats.objective,
                  as_seconds, as.stats.iterations.size(), as.stats.final_active.size(),
                  static_cast<long long>(peak), as.stats.gap.value_or(0.0),
                  as_seconds > 0.0 ? rc.seconds / as_seconds : 0.0);
    rows[c] = line;
  });
  std::string csv =
      "T,E,rc_objective,rc_seconds,rc_nonzeros,activeset_objective,activeset_seconds,"
      "activeset_iterations,final_active,activeset_peak_nonzeros,gap,speedup\n";
  for (const std::string& row : rows) csv += row;
  write_output(config.output, csv);
  return kSuccess;
}

int cmd_export_mps(const CommandConfig& config) {
  if (config.input.empty()) throw ConfigError("export-mps requires an instance file");
  const ROInstance instance = read_instance_file(config.input);
  LPModel model;
  if (config.model == "rc-primal") {
    model = build_rc_primal_full(instance);
  } else if (config.model == "rc-dual") {
    model = build_rc_dual(instance);
  } else if (config.model == "markovian-primal" || config.model == "markovian-dual") {
    const ActiveSet active = markovian_init(instance.horizon(), instance.n());
    const TupleIndex idx = dedup_tuples(instance, active);
    model = config.model == "markovian-primal" ? build_P_A(instance, active, idx)
                                               : build_D_A(instance, active, idx);
  } else {
    throw ConfigError("unknown model '" + config.model + "'");
  }
  write_output(config.output, write_mps(model));
  return kSuccess;
}

}  // namespace

std::string emit_sparsity_csv(const std::vector<SparsityResult>& results) {
  std::string csv = "T,E,params_total,nnz,pct_nonzero,bound_thm,static_params\n";
  for (const SparsityResult& r : results) {
    if (!r.is_vertex) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sparsity counts require a vertex solution (T=" + std::to_string(r.T) + ")");
    }
    const double pct = r.params_total > 0 ? 100.0 * r.nnz / r.params_total : 0.0;
    char line[256];
    std::snprintf(line, sizeof(line), "%d,%d,%lld,%lld,%.4f,%lld,%lld\n", r.T, r.E,
                  static_cast<long long>(r.params_total), static_cast<long long>(r.nnz),
                  pct, static_cast<long long>(r.bound),
                  static_cast<long long>(r.static_params));
    csv += line;
  }
  return csv;
}

int run_command(const CommandConfig& config) {
  try {
    if (config.jobs < 1) throw ConfigError("--jobs must be >= 1");
    if (!BackendRegistry::global().contains(config.backend)) {
      throw ConfigError("unknown backend '" + config.backend + "'");
    }
    if (config.command == "gen") return cmd_gen(config);
    if (config.command == "solve") return cmd_solve(config);
    if (config.command == "sparsity") return cmd_sparsity(config);
    if (config.command == "bench") return cmd_bench(config);
    if (config.command == "export-mps") return cmd_export_mps(config);
    throw ConfigError("unknown command '" + config.command + "'");
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const SolveFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kNotOptimal:
      case ErrorCode::kSolverFailure:
        return kSolverFailure;
      default:
        return kConfigError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

int main_with_args(int argc, char** argv) {
  CommandConfig config;
  CLI::App app{"Sparse linear decision rules for multistage robust optimization"};
  app.require_subcommand(1);
  app.add_option("--jobs", config.jobs, "Parallel grid cells")->capture_default_str();
  app.add_option("--backend", config.backend, "LP backend name")->capture_default_str();
  app.add_option("--seed", config.seed, "Random seed")->capture_default_str();

  auto add_generator_flags = [&](CLI::App* sub) {
    sub->add_option("--E", config.E, "Factories");
    sub->add_option("--delta", config.delta, "Lead time (prodinv-leadtime)");
    sub->add_option("--k", config.k, "Budget parameter");
    sub->add_option("--overrides", config.overrides, "JSON merge patch or @file");
    sub->add_option("--seed", config.seed, "Random seed");
  };
  auto add_solver_flags = [&](CLI::App* sub) {
    sub->add_option("--eps-term", config.eps_term, "Residual termination tolerance");
    sub->add_option("--feas-tol", config.feas_tol, "Feasibility check tolerance");
    sub->add_option("--zero-tol", config.zero_tol, "Nonzero counting tolerance");
    sub->add_option("--max-iterations", config.max_iterations, "Active-set iteration cap");
    sub->add_option("--jobs", config.jobs, "Parallel grid cells");
    sub->add_option("--backend", config.backend, "LP backend name");
    sub->add_option("--rc-form", config.rc_form, "Robust counterpart solved as primal | dual")
        ->check(CLI::IsMember({"primal", "dual"}))
        ->capture_default_str();
  };

  CLI::App* gen = app.add_subcommand("gen", "Generate an instance JSON");
  gen->add_option("generator", config.generator, "prodinv | prodinv-leadtime | newsvendor")
      ->required();
  gen->add_option("--T", config.T, "Periods")->required();
  gen->add_flag("--benchmark", config.benchmark,
               "Seasonal benchmark parameters (the default base for prodinv)");
  gen->add_option("-o,--output", config.output, "Output path");
  add_generator_flags(gen);

  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("instance", config.input, "Instance JSON")->required();
  solve_cmd->add_option("--method", config.method, "rc | activeset")->capture_default_str();
  solve_cmd->add_option("--seed", config.seed, "Random seed");
  solve_cmd->add_option("--stats", config.stats, "Active-set stats CSV path");
  solve_cmd->add_option("-o,--output", config.output, "Solution JSON path");
  add_solver_flags(solve_cmd);

  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--generator", config.generator, "Generator name")
        ->default_val("prodinv");
    sub->add_option("--T-list", config.T_list, "Comma-separated horizons")
        ->delimiter(',')
        ->required();
    sub->add_option("-o,--output", config.output, "CSV path");
    add_generator_flags(sub);
    add_solver_flags(sub);
  };
  CLI::App* sparsity = app.add_subcommand("sparsity", "Vertex sparsity over a T grid");
  add_grid(sparsity);
  CLI::App* bench = app.add_subcommand("bench", "Robust counterpart vs active-set grid");
  add_grid(bench);
  bench->add_option("--target-gap", config.target_gap, "Stop the active-set method at this gap");

  CLI::App* mps = app.add_subcommand("export-mps", "Write an LP model in MPS format");
  mps->add_option("instance", config.input, "Instance JSON")->required();
  mps->add_option("--model", config.model,
                  "rc-primal | rc-dual | markovian-primal | markovian-dual")
      ->capture_default_str();
  mps->add_option("-o,--output", config.output, "MPS path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kConfigError;
  }
  config.command = app.get_subcommands().front()->get_name();
  return run_command(config);
}

}  // namespace sparseldr::cli
