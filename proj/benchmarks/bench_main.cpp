/*
 * Copyright 2026 The bolmoufang Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include "bm/catalog.hpp"
#include "bm/finder.hpp"
#include "bm/prover.hpp"
#include "bm/table.hpp"

using namespace bm;

namespace {

void BM_CheckIdentity(benchmark::State& state) {
  const auto t = read_table_file(std::string(BM_FIXTURE_DIR) + "/elast.tbl");
  const auto ids = enumerate_bm();
  for (auto _ : state)
    for (const auto& [name, id] : ids) benchmark::DoNotOptimize(check_identity(t, id).holds);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ids.size()));
}
BENCHMARK(BM_CheckIdentity);

void BM_CompiledIdentity(benchmark::State& state) {
  const auto t = read_table_file(std::string(BM_FIXTURE_DIR) + "/elast.tbl");
  std::vector<CompiledIdentity> ids;
  for (const auto& [name, id] : enumerate_bm()) ids.emplace_back(id);
  for (auto _ : state)
    for (const auto& c : ids) benchmark::DoNotOptimize(c.holds(t));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ids.size()));
}
BENCHMARK(BM_CompiledIdentity);

// Exhaustive: C23 implies associativity, so there is nothing to find.
void BM_FinderExhaust(benchmark::State& state) {
  ConstraintSet c;
  c.satisfy = {resolve_identity("C23")};
  c.violate = {resolve_identity("assoc")};
  SearchConfig cfg;
  cfg.min_order = cfg.max_order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_model(c, cfg).nodes);
}
BENCHMARK(BM_FinderExhaust)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_FinderFind(benchmark::State& state) {
  ConstraintSet c;
  c.satisfy = {resolve_identity("C24")};
  c.violate = {resolve_identity("A14")};
  SearchConfig cfg;
  cfg.max_order = 5;
  for (auto _ : state) benchmark::DoNotOptimize(find_model(c, cfg).found());
}
BENCHMARK(BM_FinderFind)->Unit(benchmark::kMillisecond);

void BM_CountLatinSquares(benchmark::State& state) {
  const ConstraintSet none;
  for (auto _ : state) benchmark::DoNotOptimize(count_models(none, static_cast<int>(state.range(0)), {}).total);
}
BENCHMARK(BM_CountLatinSquares)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_Prove(benchmark::State& state, const char* from, const char* to) {
  const std::vector<Identity> hyps{resolve_identity(from)};
  const Identity goal = resolve_identity(to);
  for (auto _ : state) benchmark::DoNotOptimize(prove(hyps, goal).proved);
}
BENCHMARK_CAPTURE(BM_Prove, flexible_from_B45, "B45", "flex")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Prove, assoc_from_C23, "C23", "assoc")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Prove, lalt_from_A45, "A45", "lalt")->Unit(benchmark::kMillisecond);

void BM_ProveRightLoop(benchmark::State& state) {
  const std::vector<Identity> hyps{resolve_identity("E14")};
  for (auto _ : state) benchmark::DoNotOptimize(prove_right_loop(hyps).proved);
}
BENCHMARK(BM_ProveRightLoop)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
