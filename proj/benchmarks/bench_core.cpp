// Copyright 2026 The spinthermo Authors
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


#include <benchmark/benchmark.h>

#include "spinthermo/pipeline.hpp"

namespace {

using namespace spinthermo;

struct Fixture {
  SpinOperatorSet ops = build_coupled_operators(kRb87NuclearSpin, 1.4e6);
  PumpParams params;
  Matrix rho;

  Fixture() {
    params.r_op = 1.4e4;
    params.s = {0.0, 0.0, 0.5};
    params.gamma_se = 1.4e4;
    params.gamma_sd = 37.0;
    rho = spin_temperature_state(1.1, ops).matrix();
    rho(0, 5) = rho(5, 0) = 0.01;
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_MasterRhsAllocating(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(master_rhs(f.rho, f.params, f.ops));
}
BENCHMARK(BM_MasterRhsAllocating);

void BM_MasterRhsWorkspace(benchmark::State& state) {
  const auto& f = fixture();
  MasterEquation eq(f.params, f.ops);
  Matrix out(8, 8);
  for (auto _ : state) {
    eq.evaluate(f.rho, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_MasterRhsWorkspace);

void BM_IntegrateOneSpinExchangeTime(benchmark::State& state) {
  const auto& f = fixture();
  IntegrationOptions opt;
  opt.t_end = 1.0 / f.params.gamma_se;
  opt.sample_every = 1000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(DensityMatrix::maximally_mixed(8), f.params, f.ops, opt));
  }
}
BENCHMARK(BM_IntegrateOneSpinExchangeTime)->Unit(benchmark::kMillisecond);

void BM_Qfi(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(qfi(f.rho, f.ops.F[0]));
}
BENCHMARK(BM_Qfi);

void BM_ObservableSample(benchmark::State& state) {
  const auto& f = fixture();
  const Matrix h = f.ops.shifted_hamiltonian();
  for (auto _ : state) {
    benchmark::DoNotOptimize(von_neumann_entropy(f.rho));
    benchmark::DoNotOptimize(ergotropy(f.rho, h));
    benchmark::DoNotOptimize(qfi_sample(0.0, f.rho, f.ops.F));
  }
}
BENCHMARK(BM_ObservableSample);

void BM_CellRates(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gamma_sd_total(CellConfig{}));
}
BENCHMARK(BM_CellRates);

}  // namespace

BENCHMARK_MAIN();
