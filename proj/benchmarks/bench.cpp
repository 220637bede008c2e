#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include <nilnov/homology.hpp>
#include <nilnov/novikov.hpp>
#include <nilnov/text.hpp>

using namespace nilnov;

namespace
{

std::string data(const std::string &name)
{
    return text::read_file(std::string(NILNOV_DATA_DIR) + "/" + name);
}

std::vector<Word> random_words(const PcGroup &g, std::size_t count, std::size_t len)
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> gen(0, g.num_gens() - 1);
    std::uniform_int_distribution<long> exp(-5, 5);
    std::vector<Word> out(count);
    for (auto &w : out) {
        for (std::size_t k = 0; k < len; ++k) {
            w.push_back({gen(rng), exp(rng)});
        }
    }
    return out;
}

void collect_heisenberg(benchmark::State &state)
{
    const auto h = parse_pc(data("heis.pcg"));
    const auto words = random_words(*h, 256, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        for (const auto &w : words) {
            benchmark::DoNotOptimize(h->collect(w));
        }
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(words.size()));
}
BENCHMARK(collect_heisenberg)->Arg(8)->Arg(32)->Arg(128);

void ring_mul_heisenberg(benchmark::State &state)
{
    const auto h = parse_pc(data("heis.pcg"));
    const auto q = Field::rationals();
    RingElt x = RingElt::one(h, q);
    const auto s = parse_ring("1 + a + b + c", h, q);
    for (long k = 0; k < state.range(0); ++k) {
        x = x * s;
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(ring_mul(x, x));
    }
    state.counters["terms"] = static_cast<double>(x.size());
}
BENCHMARK(ring_mul_heisenberg)->Arg(2)->Arg(4)->Arg(6);

void nov_invert_z(benchmark::State &state)
{
    const auto z = parse_pc(data("z.pcg"));
    const auto chi = parse_mchar(data("chi_z.mchar"), z);
    const auto t = state.range(0);
    const NovSeries beta(parse_ring("1 - t - t^2", z, Field::rationals()), chi,
                         Trunc::uniform(1, t, static_cast<unsigned>(2 * t)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(nov_invert(beta));
    }
}
BENCHMARK(nov_invert_z)->Arg(16)->Arg(64)->Arg(256);

void nov_invert_heisenberg(benchmark::State &state)
{
    const auto h = parse_pc(data("heis.pcg"));
    const auto chi = parse_mchar(data("chi_heis.mchar"), h);
    const NovSeries beta(parse_ring("1 - a - c", h, Field::rationals()), chi, Trunc::uniform(2, state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(nov_invert(beta));
    }
}
BENCHMARK(nov_invert_heisenberg)->Arg(3)->Arg(6)->Arg(9);

void theorem_f_mapping_torus(benchmark::State &state)
{
    const auto q = nilpotent_quotient(parse_presentation(data("mapping_torus.fpg")), 1);
    const auto chi = parse_mchar(data("chi_t.mchar"), q.target());
    for (auto _ : state) {
        benchmark::DoNotOptimize(theorem_f(q, chi, 2, Trunc::uniform(1, state.range(0))));
    }
}
BENCHMARK(theorem_f_mapping_torus)->Arg(8)->Arg(16);

} // namespace
BENCHMARK_MAIN();
