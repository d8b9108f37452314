/* Copyright 2026 The sa Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */
// Column-deletion ranks: serial reference, OpenMP kernel and the echelon
// read-off, on square matrices with a rank deficit of 2.
#include <benchmark/benchmark.h>

#include <random>

#include "sa/rank/rank.hpp"

using namespace sa;
using namespace sa::rank;

namespace {

struct Fixture {
    PrimeField field;
    std::vector<ModMatrix> trials;
    std::vector<Echelon> echelons;
};

Fixture make(std::size_t n) {
    Fixture f;
    std::mt19937_64 g(n);
    std::uniform_int_distribution<std::uint64_t> d(0, f.field.modulus() - 1);
    std::size_t r = n - 2;
    for (int t = 0; t < 3; ++t) {
        std::vector<std::uint64_t> a(n * r), b(r * n);
        for (auto& x : a) x = d(g);
        for (auto& x : b) x = d(g);
        ModMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                std::uint64_t s = 0;
                for (std::size_t k = 0; k < r; ++k) s = f.field.add(s, f.field.mul(a[i * r + k], b[k * n + j]));
                m.at(i, j) = s;
            }
        }
        Echelon e(f.field, n);
        for (std::size_t i = 0; i < n; ++i) e.add(std::span(m.data).subspan(i * n, n));
        f.trials.push_back(std::move(m));
        f.echelons.push_back(std::move(e));
    }
    return f;
}

void BM_Serial(benchmark::State& state) {
    auto f = make(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(deletion_ranks_serial(f.trials, f.field));
}

void BM_Parallel(benchmark::State& state) {
    auto f = make(static_cast<std::size_t>(state.range(0)));
    if (deletion_ranks_parallel(f.trials, f.field) != deletion_ranks_serial(f.trials, f.field))
        state.SkipWithError("parallel kernel disagrees with the serial reference");
    for (auto _ : state) benchmark::DoNotOptimize(deletion_ranks_parallel(f.trials, f.field));
}

void BM_Echelon(benchmark::State& state) {
    auto f = make(static_cast<std::size_t>(state.range(0)));
    if (deletion_ranks_echelon(f.echelons) != deletion_ranks_serial(f.trials, f.field))
        state.SkipWithError("echelon kernel disagrees with the serial reference");
    for (auto _ : state) benchmark::DoNotOptimize(deletion_ranks_echelon(f.echelons));
}

}  // namespace

BENCHMARK(BM_Serial)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Parallel)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Echelon)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
