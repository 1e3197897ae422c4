// Copyright 2026 The packcover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli_commands.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "packcover/errors.hpp"
#include "packcover/matrix_market.hpp"
#include "packcover/model.hpp"
#include "packcover/oracle.hpp"
#include "packcover/report_json.hpp"
#include "packcover/verify.hpp"

namespace packcover::cli {

namespace {

using nlohmann::json;

constexpr double kDefaultEps = 0.1;

void check_eps(double eps) {
  if (!(eps > 0.0 && eps <= kMaxEpsilon)) {
    throw PreconditionError("--eps must lie in (0, 1/7]");
  }
}

void check_density(double d) {
  if (!(d > 0.0 && d <= 1.0)) {
    throw PreconditionError("--density must lie in (0, 1]");
  }
}

// Runs `body`, mapping library exceptions to exit codes.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const EmptyColumnError& e) {
    err << "error: " << e.what() << '\n';
    return kExitEmptyColumn;
  } catch (const json::exception& e) {
    err << "error: malformed solution JSON: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitCertificateFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

// Writes `text` to the --out file, or to `out` when none was given.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out);
  if (!file) throw Error("cannot write " + cfg.out);
  file << text;
  if (!file) throw Error("error writing " + cfg.out);
}

GeneralInstance load(const RunConfig& cfg) {
  std::optional<std::filesystem::path> b, a;
  if (cfg.capacities) b = *cfg.capacities;
  if (cfg.objective) a = *cfg.objective;
  return load_instance(cfg.input, b, a);
}

// OPT of the instance by the exact oracle, or nullopt (with a warning) when
// the instance is above the oracle's size cap.
std::optional<double> oracle_value(const CooMatrix& normalized,
                                   std::vector<std::string>& warnings) {
  if (normalized.rows() > kOracleMaxDim || normalized.cols() > kOracleMaxDim) {
    warnings.push_back("oracle skipped: instance exceeds " +
                       std::to_string(kOracleMaxDim) + "x" +
                       std::to_string(kOracleMaxDim));
    return std::nullopt;
  }
  const OracleResult r = solve_exact(normalized);
  if (r.status != OracleStatus::kOptimal) {
    throw InternalError("oracle returned " + std::string(to_string(r.status)));
  }
  return r.value;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

double predicted_ops(std::size_t rows, std::size_t cols, double density,
                     double eps) {
  const double r = static_cast<double>(rows);
  const double c = static_cast<double>(cols);
  return (12.0 * (r + c) + 480.0 / density) * std::log(r * c) / (eps * eps);
}

double simplex_ops(std::size_t rows, std::size_t cols) {
  const double r = static_cast<double>(rows);
  const double c = static_cast<double>(cols);
  return 5.0 * std::min(r, c) * r * c;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_density(cfg.density);
    if (cfg.rows == 0 || cfg.cols == 0) {
      throw PreconditionError("--rows and --cols must be positive");
    }
    if (cfg.out.empty()) throw PreconditionError("gen requires --out");
    const GeneralInstance inst =
        generate_random(cfg.rows, cfg.cols, cfg.density, cfg.seed);
    write_matrix_market(cfg.out, inst.matrix);
    const json report = {
        {"rows", inst.matrix.rows()}, {"cols", inst.matrix.cols()},
        {"density", cfg.density},     {"seed", cfg.seed},
        {"nnz", inst.matrix.nnz()},   {"path", cfg.out},
    };
    out << report.dump() << '\n';
    return kExitOk;
  });
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const double eps = cfg.eps.value_or(kDefaultEps);
    check_eps(eps);
    const GeneralInstance inst = load(cfg);
    NormalizedInstance norm = normalize(inst);
    auto matrix = std::make_shared<const CooMatrix>(std::move(norm.matrix));

    SolveOptions options;
    options.eps = eps;
    options.variant = cfg.variant;
    options.seed = cfg.seed;
    const SolutionPair pair = solve(matrix, options);
    const GeneralSolution general = to_general(norm.record, pair);

    std::vector<std::string> warnings = norm.record.warnings;
    std::optional<double> opt;
    if (cfg.oracle) opt = oracle_value(*matrix, warnings);
    const Certificate cert =
        certify(inst, general.primal, general.dual, eps, cfg.variant, opt);

    json doc = {
        {"instance",
         {{"path", cfg.input},
          {"rows", inst.matrix.rows()},
          {"cols", inst.matrix.cols()},
          {"nnz", inst.matrix.nnz()},
          {"kept_rows", matrix->rows()}}},
        {"eps", eps},
        {"variant", std::string(to_string(cfg.variant))},
        {"seed", cfg.seed},
        {"budget", pair.budget},
        {"primal", general.primal},
        {"dual", general.dual},
        {"primal_value", general.primal_value},
        {"dual_value", general.dual_value},
        {"ratio", cert.ratio},
        {"counters", to_json(pair.counters)},
        {"certificate", to_json(cert)},
        {"warnings", warnings},
    };
    if (cfg.variant != Variant::kSlow) {
      doc["audit"] = to_json(
          audit_counters(pair.counters, matrix->rows(), matrix->cols(), pair.budget));
    }
    for (const std::string& w : warnings) err << "warning: " << w << '\n';
    emit(cfg, out, doc.dump(2) + "\n");
    return cert.pass ? kExitOk : kExitCertificateFailed;
  });
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const GeneralInstance inst = load(cfg);
    std::ifstream in(cfg.solution);
    if (!in) throw ParseError("cannot open " + cfg.solution);
    const json sol = json::parse(in);
    const auto primal = sol.at("primal").get<std::vector<double>>();
    const auto dual = sol.at("dual").get<std::vector<double>>();
    if (primal.size() != inst.matrix.cols() || dual.size() != inst.matrix.rows()) {
      throw InvalidInstance("solution has " + std::to_string(primal.size()) +
                            " primal and " + std::to_string(dual.size()) +
                            " dual entries for a " +
                            std::to_string(inst.matrix.rows()) + "x" +
                            std::to_string(inst.matrix.cols()) + " instance");
    }
    double eps = kDefaultEps;
    if (cfg.eps) {
      eps = *cfg.eps;
    } else if (sol.contains("eps")) {
      eps = sol.at("eps").get<double>();
    }
    check_eps(eps);
    Variant variant = cfg.variant;
    if (sol.contains("variant")) {
      variant = parse_variant(sol.at("variant").get<std::string>());
    }

    std::vector<std::string> warnings;
    std::optional<double> opt;
    if (cfg.oracle) opt = oracle_value(normalize(inst).matrix, warnings);
    const Certificate cert = certify(inst, primal, dual, eps, variant, opt);
    json doc = to_json(cert);
    doc["eps"] = eps;
    doc["variant"] = std::string(to_string(variant));
    doc["warnings"] = warnings;
    for (const std::string& w : warnings) err << "warning: " << w << '\n';
    emit(cfg, out, doc.dump(2) + "\n");
    return cert.pass ? kExitOk : kExitCertificateFailed;
  });
}

const std::vector<std::string>& bench_columns() {
  static const std::vector<std::string> columns = {
      "seed",          "rows",
      "cols",          "density",
      "nnz",           "eps",
      "variant",       "budget",
      "iterations",    "empty_iterations",
      "increments",    "traversed",
      "deletions",     "sampler_updates",
      "wall_seconds",  "ratio",
      "predicted_ops", "simplex_ops",
      "predicted_speedup", "increments_over_budget",
  };
  return columns;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const double eps = cfg.eps.value_or(kDefaultEps);
    check_eps(eps);
    check_density(cfg.density);
    if (cfg.rows == 0 || cfg.cols == 0 || cfg.repeats == 0) {
      throw PreconditionError("--rows, --cols and --repeats must be positive");
    }
    const double eq1 = predicted_ops(cfg.rows, cfg.cols, cfg.density, eps);
    const double eq2 = simplex_ops(cfg.rows, cfg.cols);

    // Row k is the run with seed cfg.seed + k; workers fill rows by index and
    // the sink writes them in seed order.
    std::vector<std::string> lines(cfg.repeats);
    std::vector<std::string> errors;
    std::mutex errors_mu;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t k = next++; k < cfg.repeats; k = next++) {
        const std::uint64_t seed = cfg.seed + k;
        try {
          const GeneralInstance inst =
              generate_random(cfg.rows, cfg.cols, cfg.density, seed);
          const NormalizedInstance norm = normalize(inst);
          SolveOptions options;
          options.eps = eps;
          options.variant = cfg.variant;
          options.seed = seed;
          const auto start = std::chrono::steady_clock::now();
          const SolutionPair pair = solve(norm.matrix, options);
          const std::chrono::duration<double> wall =
              std::chrono::steady_clock::now() - start;
          const OpCounters& c = pair.counters;
          const double scale = static_cast<double>(norm.matrix.rows() +
                                                   norm.matrix.cols()) *
                               static_cast<double>(pair.budget);
          std::ostringstream row;
          row << seed << ',' << cfg.rows << ',' << cfg.cols << ','
              << format_double(cfg.density) << ',' << inst.matrix.nnz() << ','
              << format_double(eps) << ',' << to_string(cfg.variant) << ','
              << pair.budget << ',' << c.iterations << ',' << c.empty_iterations
              << ',' << c.increments << ',' << c.traversed << ',' << c.deletions
              << ',' << c.sampler_updates << ',' << format_double(wall.count())
              << ',' << format_double(pair.ratio) << ',' << format_double(eq1)
              << ',' << format_double(eq2) << ',' << format_double(eq2 / eq1)
              << ','
              << format_double(static_cast<double>(c.increments) / scale);
          lines[k] = row.str();
        } catch (const std::exception& e) {
          const std::lock_guard<std::mutex> lock(errors_mu);
          errors.push_back("seed " + std::to_string(seed) + ": " + e.what());
        }
      }
    };
    const std::size_t n_threads = std::max<std::size_t>(1, std::min(cfg.threads, cfg.repeats));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    if (!errors.empty()) throw InternalError(errors.front());

    std::ostringstream csv;
    const auto& columns = bench_columns();
    for (std::size_t k = 0; k < columns.size(); ++k) {
      csv << (k ? "," : "") << columns[k];
    }
    csv << '\n';
    for (const std::string& line : lines) csv << line << '\n';
    emit(cfg, out, csv.str());
    return kExitOk;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  double eps = kDefaultEps;
  std::string variant = "fast";
  std::string b_path, a_path;

  CLI::App app{"Approximate packing/covering LP solver with certificates"};
  app.require_subcommand(1);

  auto add_eps = [&](CLI::App* sub) {
    return sub->add_option("--eps", eps, "Accuracy parameter in (0, 1/7]");
  };
  auto add_variant = [&](CLI::App* sub) {
    sub->add_option("--variant", variant, "simple, fast or slow")
        ->check(CLI::IsMember({"simple", "fast", "slow"}));
  };
  auto add_sidecars = [&](CLI::App* sub) {
    sub->add_option("--b", b_path, "Capacity vector b, whitespace separated");
    sub->add_option("--a", a_path, "Objective vector a, whitespace separated");
  };

  CLI::App* gen = app.add_subcommand("gen", "Write a random 0/1 instance");
  gen->add_option("--rows", cfg.rows)->required();
  gen->add_option("--cols", cfg.cols)->required();
  gen->add_option("--density", cfg.density, "Cell probability in (0, 1]")->required();
  gen->add_option("--seed", cfg.seed);
  gen->add_option("--out", cfg.out, "MatrixMarket output path")->required();

  CLI::App* slv = app.add_subcommand("solve", "Solve and certify an instance");
  slv->add_option("input", cfg.input, "MatrixMarket instance")->required();
  CLI::Option* solve_eps = add_eps(slv);
  add_variant(slv);
  add_sidecars(slv);
  slv->add_option("--seed", cfg.seed);
  slv->add_flag("--oracle", cfg.oracle, "Also compare against the exact oracle");
  slv->add_option("--out", cfg.out, "JSON output path (default stdout)");

  CLI::App* ver = app.add_subcommand("verify", "Re-certify a solution JSON");
  ver->add_option("input", cfg.input, "MatrixMarket instance")->required();
  ver->add_option("solution", cfg.solution, "JSON written by solve")->required();
  CLI::Option* verify_eps = add_eps(ver);
  add_sidecars(ver);
  ver->add_flag("--oracle", cfg.oracle, "Also compare against the exact oracle");
  ver->add_option("--out", cfg.out, "JSON output path (default stdout)");

  CLI::App* bench = app.add_subcommand("bench", "Generate, solve and tabulate");
  bench->add_option("--rows", cfg.rows);
  bench->add_option("--cols", cfg.cols);
  bench->add_option("--density", cfg.density);
  CLI::Option* bench_eps = add_eps(bench);
  add_variant(bench);
  bench->add_option("--seed", cfg.seed, "First seed");
  bench->add_option("--repeats", cfg.repeats, "Number of consecutive seeds");
  bench->add_option("--threads", cfg.threads, "Worker threads");
  bench->add_option("--out", cfg.out, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (solve_eps->count() + verify_eps->count() + bench_eps->count() > 0) {
    cfg.eps = eps;
  }
  cfg.variant = parse_variant(variant);
  if (!b_path.empty()) cfg.capacities = b_path;
  if (!a_path.empty()) cfg.objective = a_path;

  if (gen->parsed()) return cmd_gen(cfg, out, err);
  if (slv->parsed()) return cmd_solve(cfg, out, err);
  if (ver->parsed()) return cmd_verify(cfg, out, err);
  return cmd_bench(cfg, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("packcover");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace packcover::cli
