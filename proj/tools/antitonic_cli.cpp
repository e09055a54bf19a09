// Command-line front end: fit, idr, quantiles, bench, gen.

#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "antitonic/antitonic.hpp"

namespace {

constexpr int kRuntimeError = 1;
constexpr int kUsageError = 2;

void emit(const std::string& content, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    antitonic::io::write_file(path, content);
  }
}

struct fit_options {
  std::string input;
  std::string weights;
  std::string changes;
  std::string variant = "standard";
};

int run_fit(const fit_options& opt) {
  using namespace antitonic;
  const auto v = parse_variant(opt.variant);
  auto z = io::parse_numbers(io::read_file(opt.input));
  std::vector<double> w(z.size(), 1.0);
  if (!opt.weights.empty()) w = io::parse_numbers(io::read_file(opt.weights));
  weighted_series series(std::move(z), std::move(w));
  const auto changes = opt.changes.empty() ? std::vector<io::change>{}
                                           : io::parse_changes(io::read_file(opt.changes));

  fitted_blocks blocks;
  if (v == variant::abridged) {
    sequential_state state(series);
    for (const auto& c : changes) state.update(c.index, c.value);
    blocks = state.blocks();
  } else {
    for (const auto& c : changes) series.assign(c.index, c.value);
    blocks = fit(series, v);
  }
  std::cout << io::format_fit_json(blocks);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Antitonic least-squares regression and isotonic distributional regression"};
  app.require_subcommand(1);

  fit_options fit_opt;
  auto* fit = app.add_subcommand("fit", "Antitonic fit of a series; prints JSON");
  fit->add_option("input", fit_opt.input, "File with the response values")->required();
  fit->add_option("--weights", fit_opt.weights, "File with positive weights (default all 1)");
  fit->add_option("--changes", fit_opt.changes,
                  "Rows 'index,value' applied to the series before fitting");
  fit->add_option("--variant", fit_opt.variant, "standard | modified | abridged")
      ->check(CLI::IsMember({"standard", "modified", "abridged"}));

  std::string idr_input, idr_variant = "abridged", idr_output;
  auto* idr_cmd = app.add_subcommand("idr", "Estimate the CDF family from an x,y CSV");
  idr_cmd->add_option("input", idr_input, "Observations CSV with header x,y")->required();
  idr_cmd->add_option("--variant", idr_variant, "standard | modified | abridged")
      ->check(CLI::IsMember({"standard", "modified", "abridged"}));
  idr_cmd->add_option("--output", idr_output, "Estimate CSV (default stdout)");

  std::string q_input, q_betas = "0.1,0.25,0.5,0.75,0.9", q_output;
  auto* quant = app.add_subcommand("quantiles", "Quantile curves from an estimate CSV");
  quant->add_option("estimate", q_input, "Estimate CSV written by 'idr'")->required();
  quant->add_option("--betas", q_betas, "Comma list of probabilities in (0,1]");
  quant->add_option("--output", q_output, "Quantile CSV (default stdout)");

  antitonic::bench::experiment_config bench_cfg;
  std::string bench_json;
  auto* bench = app.add_subcommand("bench", "Time the three PAVA variants on gamma data");
  bench->add_option("--n", bench_cfg.n, "Observations per data set")->check(CLI::Range(2, 1 << 24));
  bench->add_option("--replications", bench_cfg.replications, "Number of data sets")
      ->check(CLI::Range(1, 1 << 20));
  bench->add_option("--seed", bench_cfg.seed, "Random seed");
  bench->add_option("--json", bench_json, "Also write the JSON report to this file");

  antitonic::bench::experiment_config gen_cfg;
  std::string gen_output;
  auto* gen = app.add_subcommand("gen", "Write a synthetic gamma data set as x,y CSV");
  gen->add_option("--n", gen_cfg.n, "Number of observations")->check(CLI::Range(2, 1 << 26));
  gen->add_option("--seed", gen_cfg.seed, "Random seed");
  gen->add_option("--output", gen_output, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  using namespace antitonic;
  try {
    if (*fit) return run_fit(fit_opt);
    if (*idr_cmd) {
      const auto pairs = io::parse_observations(io::read_file(idr_input));
      const auto est = idr::fit_family(pairs, parse_variant(idr_variant));
      emit(io::format_estimate(est), idr_output);
    } else if (*quant) {
      const auto betas = io::parse_betas(q_betas);
      const auto est = io::parse_estimate(io::read_file(q_input));
      if (const auto defect = idr::estimate_defect(est, 1e-12)) {
        throw io::parse_error(0, "invalid estimate: " + *defect);
      }
      emit(io::format_quantiles(est, betas), q_output);
    } else if (*bench) {
      const auto report = bench::run_benchmark(bench_cfg);
      const auto json = bench::to_json(report).dump(2);
      std::cout << bench::format_table(report) << "\n" << json << "\n";
      if (!bench_json.empty()) io::write_file(bench_json, json + "\n");
    } else if (*gen) {
      emit(io::format_observations(bench::generate_dataset(gen_cfg, 0)), gen_output);
    }
  } catch (const io::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::logic_error& e) {
    // domain, range and argument errors all stem from bad input
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return 0;
}
