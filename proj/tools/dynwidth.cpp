#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dynwidth/bench.hpp"
#include "dynwidth/errors.hpp"
#include "dynwidth/trace.hpp"

namespace {

double alpha_from_env() {
  const char* e = std::getenv("DYNWIDTH_ALPHA");
  if (!e) return 0.25;
  char* end = nullptr;
  double v = std::strtod(e, &end);
  if (end == e || v <= 0 || v >= 0.5) return 0.25;
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact dynamic width of a planar point set"};
  app.require_subcommand(1);

  std::string trace_path, out_path, mode = "incremental";
  std::size_t n = 0, repeats = 1;
  dynwidth::u64 seed = 1;
  bool fault = false;
  std::vector<std::size_t> sizes;
  auto mode_check =
      CLI::IsMember({"incremental", "decremental", "mixed", "churn"});

  CLI::App* run = app.add_subcommand("run", "replay a trace to a CSV of per-op width and churn");
  run->add_option("--trace", trace_path, "trace file")->required();
  run->add_option("--out", out_path, "CSV output path")->required();

  CLI::App* verify = app.add_subcommand("verify", "replay a trace, checking every width against the calipers oracle");
  verify->add_option("--trace", trace_path, "trace file")->required();
  verify->add_flag("--fault-inject", fault, "corrupt one reported width to prove the check bites");

  CLI::App* gen = app.add_subcommand("gen", "emit a generated workload trace");
  gen->add_option("--mode", mode, "workload shape")->check(mode_check);
  gen->add_option("--n", n, "size parameter")->required();
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* bench = app.add_subcommand("bench", "time generated workloads across sizes and fit a scaling slope");
  bench->add_option("--mode", mode, "workload shape")->check(mode_check);
  bench->add_option("--sizes", sizes, "ascending trace sizes")
      ->required()
      ->delimiter(',');
  bench->add_option("--repeats", repeats, "keep the fastest of this many runs");
  bench->add_option("--seed", seed, "RNG seed");
  bench->add_option("--out", out_path, "CSV output path")->required();

  CLI11_PARSE(app, argc, argv);
  double alpha = alpha_from_env();

  try {
    if (run->parsed()) {
      std::vector<dynwidth::TraceOp> ops =
          dynwidth::parse_trace_file(trace_path);
      std::ofstream csv(out_path);
      if (!csv) {
        std::cerr << "cannot open " << out_path << " for writing\n";
        return 2;
      }
      return dynwidth::run_trace(ops, csv, std::cerr, alpha);
    }
    if (verify->parsed()) {
      std::vector<dynwidth::TraceOp> ops =
          dynwidth::parse_trace_file(trace_path);
      return dynwidth::verify_trace(ops, std::cerr, alpha, fault);
    }
    if (gen->parsed()) {
      std::vector<dynwidth::TraceOp> ops = dynwidth::gen_trace(mode, n, seed);
      std::string text = dynwidth::print_trace(ops);
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream f(out_path);
        if (!f) {
          std::cerr << "cannot open " << out_path << " for writing\n";
          return 2;
        }
        f << text;
      }
      return 0;
    }
    std::vector<dynwidth::BenchRow> rows =
        dynwidth::bench_run(mode, sizes, repeats, alpha, seed);
    std::ofstream csv(out_path);
    if (!csv) {
      std::cerr << "cannot open " << out_path << " for writing\n";
      return 2;
    }
    dynwidth::write_bench_csv(rows, csv);
    return 0;
  } catch (const dynwidth::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const dynwidth::Error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
}
