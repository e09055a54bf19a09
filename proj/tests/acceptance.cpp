// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "antitonic/antitonic.hpp"

namespace {

using namespace antitonic;
using reals = std::vector<double>;
using boundaries = std::vector<std::size_t>;
using clock_type = std::chrono::steady_clock;

const reals kExampleZ{1, 3, 2, 0, -1, 1, 0.5, -1, 1};

/// Collects the first failure message of a criterion.
struct checker {
  std::string failure;
  void require(bool ok, const std::string& what) {
    if (!ok && failure.empty()) failure = what;
  }
  [[nodiscard]] bool ok() const { return failure.empty(); }
};

bool near(const reals& a, const reals& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(std::abs(a[i] - b[i]) <= tol)) return false;
  }
  return true;
}

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

struct criterion {
  std::string name;
  double time_limit;  // seconds
  std::function<void(checker&, std::string& detail)> body;
};

void batch_example(checker& c, std::string& detail) {
  const weighted_series s(kExampleZ);
  double second_mean_at_7 = NAN;
  const auto start = clock_type::now();
  const auto blocks = fit_standard(s, [&](std::size_t bd, std::span<const block> stack) {
    if (bd == 7 && stack.size() >= 2) second_mean_at_7 = stack[1].mean;
  });
  const double elapsed = seconds_since(start);
  c.require(blocks.boundaries() == boundaries{0, 3, 7, 9}, "partition differs from (0,3,7,9)");
  c.require(near(blocks.means(), {2, 0.125, 0}, 1e-12), "means differ from (2, 1/8, 0)");
  c.require(std::abs(second_mean_at_7 - 0.125) <= 1e-12, "second block mean after b_d=7 is not 1/8");
  c.require(elapsed < 1e-3, "fit took longer than 1 ms");
  detail = "fit in " + std::to_string(elapsed * 1e6) + " us";
}

void abridged_example(checker& c, std::string& detail) {
  const auto start = clock_type::now();
  const auto base = init(weighted_series(kExampleZ));
  const auto upper = update_increase(base, 5, 1.0);
  const auto lower = update_increase(base, 4, 2.0);
  const double elapsed = seconds_since(start);
  c.require(near(upper.fit(), {2, 2, 2, 2.0 / 3, 2.0 / 3, 2.0 / 3, 0.5, 0, 0}, 1e-12),
            "j=5 update fit mismatch");
  c.require(upper.blocks().boundaries() == boundaries{0, 3, 6, 7, 9}, "j=5 partition mismatch");
  c.require(near(lower.fit(), {2, 2, 2, 2, 1.0 / 6, 1.0 / 6, 1.0 / 6, 0, 0}, 1e-12),
            "j=4 update fit mismatch");
  c.require(lower.blocks().boundaries() == boundaries{0, 4, 7, 9}, "j=4 partition mismatch");
  c.require(elapsed < 1e-3, "updates took longer than 1 ms");
  detail = "init + two updates in " + std::to_string(elapsed * 1e6) + " us";
}

void oracle_equivalence(checker& c, std::string& detail) {
  std::size_t instances = 0;
  auto check = [&](const weighted_series& s) {
    const auto f = oracle::minmax_fit(s);
    c.require(near(expand(fit_standard(s)), f, 1e-9), "PAVA differs from min-max oracle");
    c.require(oracle::check_fit(f, s).valid, "oracle fit fails check_fit");
    c.require(oracle::check_fit(expand(fit_standard(s)), s).valid, "PAVA fit fails check_fit");
    ++instances;
  };
  for (std::size_t m = 1; m <= 10; ++m) {
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      reals z(m);
      for (std::size_t i = 0; i < m; ++i) z[i] = (mask >> i) & 1u;
      check(weighted_series(z));
    }
  }
  std::mt19937 rng(1000);
  std::uniform_int_distribution<std::size_t> len(1, 8);
  std::uniform_int_distribution<int> value(-3, 3), weight(1, 3);
  std::uniform_real_distribution<double> real_value(-2, 2), real_weight(0.1, 3);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = len(rng);
    reals z(m), w(m);
    for (std::size_t i = 0; i < m; ++i) {
      // Half the instances on the integer grid, half with real values.
      z[i] = trial % 2 ? value(rng) : real_value(rng);
      w[i] = trial % 2 ? weight(rng) : real_weight(rng);
    }
    check(weighted_series(z, w));
  }
  detail = std::to_string(instances) + " instances";
}

struct sequence_stats {
  std::size_t updates = 0;
  std::size_t domination_checks = 0;
  std::size_t tail_components = 0;
  std::size_t coarsening_checks = 0;
};

sequence_stats run_sequences(checker& equivalence, checker& relations) {
  sequence_stats stats;
  std::mt19937 rng(500);
  std::uniform_int_distribution<std::size_t> len(1, 40);
  std::uniform_int_distribution<int> weight(1, 3), bump(1, 4);
  for (int seq = 0; seq < 500; ++seq) {
    const std::size_t m = len(rng);
    reals w(m);
    for (auto& x : w) x = weight(rng);
    sequential_state state(weighted_series(reals(m, 0.0), w));
    std::uniform_int_distribution<std::size_t> index(1, m);
    for (int step = 0; step < 200; ++step) {
      const auto old_fit = state.fit();
      const auto old_blocks = state.blocks();
      const auto old_bounds = old_blocks.boundaries();
      const std::size_t j = index(rng);
      const std::size_t old_end = old_bounds[old_blocks.partition().block_of(j)];
      state.increase(j, state.series().z()[j - 1] + 0.5 * bump(rng));

      const auto batch = fit_standard(state.series());
      const auto f = state.fit();
      equivalence.require(state.blocks().boundaries() == batch.boundaries(),
                          "partition differs from batch refit");
      equivalence.require(near(f, expand(batch), 1e-12), "fit differs from batch refit");
      ++stats.updates;

      for (std::size_t i = 0; i < m; ++i) {
        relations.require(f[i] >= old_fit[i] - 1e-12, "new fit does not dominate old fit");
      }
      ++stats.domination_checks;
      for (std::size_t i = old_end; i < m; ++i) {
        relations.require(f[i] == old_fit[i], "tail beyond b_{s_o} changed");
        ++stats.tail_components;
      }
      for (std::size_t b : state.blocks().boundaries()) {
        if (b == 0 || b >= j) continue;
        relations.require(std::binary_search(old_bounds.begin(), old_bounds.end(), b),
                          "new boundary left of j_o not in old partition");
      }
      ++stats.coarsening_checks;
    }
  }
  return stats;
}

sequence_stats shared_stats;
checker shared_relations;
bool sequences_ran = false;

void sequential_equivalence(checker& c, std::string& detail) {
  shared_stats = run_sequences(c, shared_relations);
  sequences_ran = true;
  detail = std::to_string(shared_stats.updates) + " abridged updates compared";
}

void monotone_relations(checker& c, std::string& detail) {
  c.require(sequences_ran, "sequential trials did not run");
  c.require(shared_relations.ok(), shared_relations.failure);
  c.require(shared_stats.domination_checks == 500u * 200u, "not every trial checked");
  detail = std::to_string(shared_stats.domination_checks) + " updates, " +
           std::to_string(shared_stats.tail_components) + " tail components verified";
}

void idr_pipeline(checker& c, std::string& detail) {
  std::size_t columns = 0;
  for (std::size_t rep = 0; rep < 50; ++rep) {
    bench::experiment_config cfg;
    cfg.n = 200;
    cfg.seed = 7;
    const idr::observation_set obs(bench::generate_dataset(cfg, rep));
    const auto standard = idr::fit_family(obs, variant::standard);
    const auto modified = idr::fit_family(obs, variant::modified);
    const auto abridged = idr::fit_family(obs, variant::abridged);
    c.require(bench::max_difference(standard, modified) <= 1e-12, "modified differs from standard");
    c.require(bench::max_difference(standard, abridged) <= 1e-12, "abridged differs from standard");
    for (const auto* est : {&standard, &modified, &abridged}) {
      const auto defect = idr::estimate_defect(*est);
      c.require(!defect, defect ? *defect : "");
    }
    for (std::size_t t = 1; t <= abridged.threshold_count(); ++t) {
      const auto series = idr::threshold_series(obs, abridged.thresholds()[t - 1]);
      c.require(oracle::check_fit(abridged.column(t), series).valid,
                "column " + std::to_string(t) + " fails check_fit");
      ++columns;
    }
  }
  detail = "50 data sets, " + std::to_string(columns) + " columns checked";
}

void performance(checker& c, std::string& detail) {
  bench::experiment_config cfg;
  cfg.n = 1000;
  cfg.replications = 20;
  cfg.seed = 2021;
  const auto r = bench::run_benchmark(cfg);
  const double m1 = r.times[0].median, m2 = r.times[1].median, m3 = r.times[2].median;
  c.require(m3 < m2 && m2 < m1, "median ordering T3 < T2 < T1 violated");
  c.require(r.t1_t3.mean >= 5.0, "mean T1/T3 below 5");
  c.require(r.t1_t2.mean >= 1.5, "mean T1/T2 below 1.5");
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "median T1=%.4fs T2=%.4fs T3=%.4fs; mean T1/T2=%.2f T1/T3=%.2f T2/T3=%.2f", m1,
                m2, m3, r.t1_t2.mean, r.t1_t3.mean, r.t2_t3.mean);
  detail = buf;
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void cli_round_trip(checker& c, std::string& detail) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "antitonic_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cli = ANTITONIC_CLI;
  std::string outputs[2];
  for (int run = 0; run < 2; ++run) {
    const auto tag = std::to_string(run);
    const auto data = (dir / ("data" + tag + ".csv")).string();
    const auto est = (dir / ("est" + tag + ".csv")).string();
    const auto quant = (dir / ("q" + tag + ".csv")).string();
    c.require(shell(cli + " gen --n 1000 --seed 42 --output " + data) == 0, "gen failed");
    c.require(shell(cli + " idr " + data + " --output " + est) == 0, "idr failed");
    c.require(shell(cli + " quantiles " + est + " --output " + quant) == 0, "quantiles failed");
    outputs[run] = io::read_file(data) + io::read_file(est) + io::read_file(quant);
  }
  c.require(!outputs[0].empty() && outputs[0] == outputs[1], "rerun is not byte-identical");
  detail = std::to_string(outputs[0].size()) + " bytes compared";
  fs::remove_all(dir);
}

}  // namespace

int main() {
  const std::vector<criterion> criteria{
      {"Worked example: batch fit and trace", 1e-3, batch_example},
      {"Worked example: abridged updates", 1e-3, abridged_example},
      {"Oracle equivalence", 30.0, oracle_equivalence},
      {"Sequential equivalence", 60.0, sequential_equivalence},
      {"Consecutive-fit relations (dominance, tail, coarsening)", 60.0, monotone_relations},
      {"IDR pipeline", 60.0, idr_pipeline},
      {"Performance ordering", 300.0, performance},
      {"CLI round-trip", 300.0, cli_round_trip},
  };
  int failures = 0;
  for (const auto& crit : criteria) {
    checker c;
    std::string detail;
    const auto start = clock_type::now();
    try {
      crit.body(c, detail);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed = seconds_since(start);
    c.require(elapsed < crit.time_limit, "runtime limit exceeded");
    std::printf("[%s] %-56s %8.3fs  %s\n", c.ok() ? "PASS" : "FAIL", crit.name.c_str(), elapsed,
                c.ok() ? detail.c_str() : c.failure.c_str());
    std::fflush(stdout);
    if (!c.ok()) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
