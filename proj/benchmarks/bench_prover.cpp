#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "euler/metrics.hpp"
#include "euler/semantics.hpp"
#include "euler/tactics.hpp"
#include "euler/textio.hpp"

namespace {

euler::Subgoal load_theorem(const std::string& stem) {
  std::ifstream in(std::filesystem::path(EULER_DATA_DIR) / "theorems" / "valid" / (stem + ".thm"));
  std::ostringstream text;
  text << in.rdbuf();
  return euler::textio::parse_theorem(text.str());
}

euler::ContourSet labels(std::int64_t n) {
  euler::ContourSet out;
  for (std::int64_t i = 0; i < n; ++i) out.insert(euler::Contour("C" + std::to_string(i)));
  return out;
}

void run_tactic(benchmark::State& state, const std::string& theorem, const std::string& tactic) {
  const euler::Proof start(load_theorem(theorem));
  std::size_t length = 0;
  for (auto _ : state) {
    auto proof = euler::tactics::run_tactic(start, tactic, 0);
    if (!proof) {
      state.SkipWithError("tactic failed");
      return;
    }
    length = proof->steps().size();
    benchmark::DoNotOptimize(proof);
  }
  state.counters["steps"] = static_cast<double>(length);
}

// Venn diagram on n contours against the same diagram with one zone shaded.
void BM_EntailsVenn(benchmark::State& state) {
  const auto contours = labels(state.range(0));
  const auto zones = euler::venn_zones(contours);
  const euler::Diagram plain(euler::UnitaryDiagram(contours, zones));
  const euler::Diagram shaded(euler::UnitaryDiagram(contours, zones, {*zones.rbegin()}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(euler::entails(shaded, plain));
    benchmark::DoNotOptimize(euler::entails(plain, shaded));
  }
}

void BM_ParseAndCheck(benchmark::State& state) {
  const std::string text = euler::textio::print_theorem(load_theorem("t_deep"));
  for (auto _ : state) {
    const auto g = euler::textio::parse_theorem(text);
    benchmark::DoNotOptimize(euler::entails(g.antecedent(), g.consequent()));
  }
}

void BM_ProofMetrics(benchmark::State& state) {
  const auto proof = *euler::tactics::run_tactic(euler::Proof(load_theorem("t_flat")), "venn_breadth", 0);
  for (auto _ : state) benchmark::DoNotOptimize(euler::metrics::proof_metrics(proof));
}

}  // namespace

BENCHMARK_CAPTURE(run_tactic, venn_breadth_t_flat, "t_flat", "venn_breadth");
BENCHMARK_CAPTURE(run_tactic, venn_depth_t_flat, "t_flat", "venn_depth");
BENCHMARK_CAPTURE(run_tactic, copy_shading_and_contours_t_flat, "t_flat", "copy_shading_and_contours");
BENCHMARK_CAPTURE(run_tactic, copy_shading_and_contours_t_deep, "t_deep", "copy_shading_and_contours");
BENCHMARK_CAPTURE(run_tactic, venn_depth_t_deep, "t_deep", "venn_depth");
BENCHMARK(BM_EntailsVenn)->DenseRange(2, 12, 2);
BENCHMARK(BM_ParseAndCheck);
BENCHMARK(BM_ProofMetrics);

BENCHMARK_MAIN();
