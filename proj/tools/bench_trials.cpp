// Compares the serial reference trial runner against the OpenMP runner on a
// representative verification workload and checks that both produce the same
// results in the same order.
#include <chrono>
#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "hdb/context.hpp"
#include "hdb/derived.hpp"
#include "hdb/printer.hpp"
#include "hdb/trials.hpp"

using namespace hdb;

namespace {

SignaturePtr bench_signature() {
    auto sig = std::make_shared<Signature>();
    sig->declare_coordinate("x", Parity::even);
    sig->declare_coordinate("y", Parity::even);
    sig->declare_coordinate("th", Parity::odd);
    return sig;
}

// one full theorem-1 trial: random odd generator, Jacobiators n = 0..n_max
std::string trial_body(const ContextPtr& ctx, int n_max, Rng& rng) {
    DerivedEngine engine(ctx, ctx->random_element(rng, Parity::odd));
    DerivedEngine sq = engine.squared();
    std::string digest;
    for (int n = 0; n <= n_max; ++n) {
        std::vector<Element> args;
        for (int i = 0; i < n; ++i) args.push_back(ctx->random_v(rng));
        Element residual = sub(engine.jacobiator(args), sq.derived_bracket(args));
        digest += print_element(residual);
        digest += ";";
    }
    return digest;
}

template <class Fn>
double time_ms(Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs parallel trial-runner benchmark"};
    size_t trials = 64;
    int n_max = 3;
    uint64_t seed = 12345;
    int repeats = 3;
    app.add_option("--trials", trials, "trials per run");
    app.add_option("--nmax", n_max, "maximum Jacobiator arity");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--repeats", repeats, "timed repetitions (best-of)");
    CLI11_PARSE(app, argc, argv);

    ContextPtr ctx = make_context(ContextKind::ops, bench_signature());
    auto body = [&](size_t, Rng& rng) { return trial_body(ctx, n_max, rng); };

    std::vector<std::string> serial_out, parallel_out;
    double serial_ms = 1e300, parallel_ms = 1e300;
    for (int r = 0; r < repeats; ++r) {
        serial_ms = std::min(serial_ms, time_ms([&] {
            serial_out = run_trials_serial<std::string>(trials, seed, body);
        }));
        parallel_ms = std::min(parallel_ms, time_ms([&] {
            parallel_out = run_trials_parallel<std::string>(trials, seed, body);
        }));
    }

    bool identical = serial_out == parallel_out;
    size_t nonzero = 0;
    for (const auto& d : serial_out)
        if (d.find_first_not_of("0;") != std::string::npos) ++nonzero;

#ifdef _OPENMP
    int threads = omp_get_max_threads();
#else
    int threads = 1;
#endif
    std::printf("trials=%zu nmax=%d seed=%llu threads=%d\n", trials, n_max,
                static_cast<unsigned long long>(seed), threads);
    std::printf("serial:   %10.2f ms\n", serial_ms);
    std::printf("parallel: %10.2f ms  (speedup %.2fx)\n", parallel_ms,
                serial_ms / parallel_ms);
    std::printf("results identical: %s; trials with nonzero residual: %zu\n",
                identical ? "yes" : "NO", nonzero);
    return identical && nonzero == 0 ? 0 : 1;
}
