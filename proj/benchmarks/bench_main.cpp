#include <benchmark/benchmark.h>

#include "cml/abbrev.hpp"
#include "cml/enumerate.hpp"
#include "cml/eval.hpp"
#include "cml/geometry.hpp"
#include "cml/json_io.hpp"
#include "cml/oracle.hpp"
#include "cml/parser.hpp"
#include "cml/rewrite.hpp"

namespace {

using namespace cml;

Signature sig_xy() {
    return Signature({"X", "Y"}, {{Value(0LL), Value(1LL)}, {Value(0LL), Value(1LL)}});
}

CausalMultiteam bundled_model() {
    return load_model_file(std::string(CML_DATA_DIR) + "/paper_example.json");
}

void BM_eval_counterfactual_atom(benchmark::State& state) {
    CausalMultiteam m = bundled_model();
    FPtr f = parse("[Y:=1] Pr(Z=3) >= 1/2", *m.sig);
    for (auto _ : state) benchmark::DoNotOptimize(eval_pco(m, f));
}
BENCHMARK(BM_eval_counterfactual_atom);

void BM_enumerate_models(benchmark::State& state) {
    Signature sig = sig_xy();
    for (auto _ : state) {
        long long n = 0;
        enumerate_models(sig, state.range(0), LawMode::AllLaws, {}, {},
                         [&](const CausalMultiteam&) {
                             ++n;
                             return true;
                         });
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_enumerate_models)->Arg(3)->Arg(5);

void BM_oracle_equiv(benchmark::State& state) {
    Signature sig = sig_xy();
    FPtr f = parse("[X:=1] Pr(Y=1) >= 1/2", sig);
    FPtr g = push_boxright(f, sig);
    for (auto _ : state) benchmark::DoNotOptimize(equiv(f, g, sig, 4, LawMode::AllLaws));
}
BENCHMARK(BM_oracle_equiv);

void BM_extract_supset(benchmark::State& state) {
    Signature sig = sig_xy();
    FPtr f = expand_abbreviations(parse("(X=1 or Y=1) => Pr(X=1 and Y=1) <= 1/3", sig), sig);
    for (auto _ : state) benchmark::DoNotOptimize(extract(f, sig));
}
BENCHMARK(BM_extract_supset);

void BM_relativize(benchmark::State& state) {
    Signature sig = sig_xy();
    FunctionComponent laws;
    laws.add(FunctionTable{1, {0, 1}});
    FPtr f = parse("X=0 => [X:=1] Pr(Y=1) >= 1/2", sig);
    for (auto _ : state) benchmark::DoNotOptimize(relativize(f, laws, sig));
}
BENCHMARK(BM_relativize);

} // namespace

BENCHMARK_MAIN();
