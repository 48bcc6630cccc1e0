#include "hdb/fiber.hpp"

#include <bit>
#include <stdexcept>

#include "hdb/koszul.hpp"
#include "hdb/printer.hpp"
#include "hdb/trials.hpp"

namespace hdb {

FiberEngine::FiberEngine(ContextPtr ctx, Derivation d, size_t certify_trials,
                         uint64_t certify_seed)
    : ctx_(std::move(ctx)), d_(std::move(d)) {
    if (!d_.apply) throw std::invalid_argument("fiber engine needs a derivation");
    auto cert = certify_derivation(ctx_, d_, certify_trials, certify_seed);
    if (!cert.derivation_law)
        throw std::invalid_argument("not a derivation; witness: " + cert.witness);
    if (!cert.pdp_law)
        throw std::invalid_argument("PdP = Pd fails; witness: " + cert.witness);
    Rng rng(splitmix64(certify_seed));
    for (size_t t = 0; t < certify_trials && d2_zero_; ++t) {
        Element a = ctx_->random_element(rng, rng.parity());
        if (!ctx_->is_zero(d_.apply(d_.apply(a)))) d2_zero_ = false;
    }
}

CocylPair FiberEngine::zero_pair() const { return {ctx_->zero(), ctx_->zero()}; }

bool FiberEngine::pair_is_zero(const CocylPair& p) const {
    return ctx_->is_zero(p.l) && ctx_->is_zero(p.v);
}

std::optional<Parity> FiberEngine::pair_parity(const CocylPair& p) const {
    std::optional<Parity> out;
    if (!ctx_->is_zero(p.l)) {
        auto px = ctx_->parity(p.l);
        if (!px) return std::nullopt;
        out = flip(*px);  // parity of Pi x
    }
    if (!ctx_->is_zero(p.v)) {
        auto pa = ctx_->parity(p.v);
        if (!pa) return std::nullopt;
        if (out && *out != *pa) return std::nullopt;
        out = pa;
    }
    return out ? out : std::optional<Parity>(Parity::even);
}

CocylPair FiberEngine::D(const CocylPair& p) const {
    Element da = d_.apply(p.v);
    return {d_.apply(p.l), negate(ctx_->project(add(p.l, da)))};
}

CocylPair FiberEngine::D_shifted(const CocylPair& p) const {
    Element da = d_.apply(p.v);
    return {negate(d_.apply(p.l)), ctx_->project(add(p.l, da))};
}

CocylPair FiberEngine::j(const Element& x) const {
    if (!ctx_->is_zero(ctx_->project(x)))
        throw std::invalid_argument("j is defined on Ker P only");
    return {x, ctx_->zero()};
}

Element FiberEngine::q_map(const CocylPair& p) const {
    Element s = add(p.l, d_.apply(p.v));
    return sub(s, ctx_->project(s));
}

CocylPair FiberEngine::extended_bracket(const std::vector<CocylPair>& args) const {
    const size_t n = args.size();
    CocylPair out = zero_pair();
    if (n == 0) return out;  // the 0-ary bracket is zero

    std::vector<Parity> par(n);
    for (size_t i = 0; i < n; ++i) {
        auto p = pair_parity(args[i]);
        if (!p) throw std::invalid_argument("inhomogeneous cocylinder pair");
        par[i] = *p;
    }

    // multilinear expansion over the Pi L / V components of each slot; both
    // components of a homogeneous pair carry the same parity, so the Koszul
    // signs depend only on the slot positions
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
        size_t shifted = static_cast<size_t>(std::popcount(mask));
        if (shifted >= 2 && n != 2) continue;  // all such brackets vanish
        bool skip = false;
        for (size_t i = 0; i < n && !skip; ++i)
            if (ctx_->is_zero((mask >> i) & 1 ? args[i].l : args[i].v)) skip = true;
        if (skip) continue;

        if (n == 1) {
            if (mask) {  // {Pi x} = -Pi dx + Px
                out.l = add(out.l, negate(d_.apply(args[0].l)));
                out.v = add(out.v, ctx_->project(args[0].l));
            } else {  // {a} = P da
                out.v = add(out.v, ctx_->project(d_.apply(args[0].v)));
            }
            continue;
        }
        if (shifted == 2) {  // n == 2: {Pi x, Pi y} = Pi [x,y] (-1)^{~x}
            Element b = ctx_->bracket(args[0].l, args[1].l);
            if (is_odd(ctx_->parity_or_throw(args[0].l))) b = negate(b);
            out.l = add(out.l, b);
            continue;
        }
        if (shifted == 1) {  // {Pi x, a_1, ..., a_{n-1}} = P[...[x,a_1],...]
            size_t k = static_cast<size_t>(std::countr_zero(mask));
            int sign = 1;  // Koszul move of the shifted slot to the front
            for (size_t m = 0; m < k; ++m)
                if (is_odd(par[m]) && is_odd(par[k])) sign = -sign;
            Element cur = args[k].l;
            for (size_t m = 0; m < n; ++m) {
                if (m == k) continue;
                cur = ctx_->bracket(cur, args[m].v);
            }
            cur = ctx_->project(cur);
            out.v = add(out.v, sign < 0 ? negate(cur) : cur);
            continue;
        }
        // all-V: {a_1,...,a_n} = P[...[da_1,a_2],...,a_n]
        Element cur = d_.apply(args[0].v);
        for (size_t m = 1; m < n; ++m) cur = ctx_->bracket(cur, args[m].v);
        out.v = add(out.v, ctx_->project(cur));
    }
    return out;
}

CocylPair FiberEngine::jacobiator(const std::vector<CocylPair>& args) const {
    const size_t n = args.size();
    std::vector<Parity> par(n);
    for (size_t i = 0; i < n; ++i) {
        auto p = pair_parity(args[i]);
        if (!p) throw std::invalid_argument("inhomogeneous cocylinder pair");
        par[i] = *p;
    }
    CocylPair out = zero_pair();
    for (size_t k = 1; k <= n; ++k) {  // strict: the 0-ary bracket is zero
        for (const auto& [gp, sign] : shuffles(k, n - k, par)) {
            std::vector<CocylPair> inner_args;
            for (size_t m = 0; m < k; ++m) inner_args.push_back(args[gp.perm[m]]);
            std::vector<CocylPair> outer_args = {extended_bracket(inner_args)};
            for (size_t m = k; m < n; ++m) outer_args.push_back(args[gp.perm[m]]);
            CocylPair term = extended_bracket(outer_args);
            out = sign < 0 ? sub_pair(ctx_, out, term) : add_pair(ctx_, out, term);
        }
    }
    return out;
}

CocylPair FiberEngine::random_pair(Rng& rng, std::optional<Parity> parity) const {
    Parity p = parity ? *parity : rng.parity();
    CocylPair out = zero_pair();
    if (rng.uniform(0, 3) != 0) out.l = ctx_->random_element(rng, flip(p));
    if (rng.uniform(0, 3) != 0) out.v = ctx_->random_v(rng, p);
    return out;
}

CocylPair add_pair(const ContextPtr& ctx, const CocylPair& a, const CocylPair& b) {
    (void)ctx;
    return {add(a.l, b.l), add(a.v, b.v)};
}

CocylPair sub_pair(const ContextPtr& ctx, const CocylPair& a, const CocylPair& b) {
    (void)ctx;
    return {sub(a.l, b.l), sub(a.v, b.v)};
}

CocylPair scale_pair(const CocylPair& a, const Rational& c) {
    return {scale(a.l, c), scale(a.v, c)};
}

JacobiReport verify_fiber_linfty(const FiberEngine& engine, int n_max, size_t trials,
                                 uint64_t seed) {
    JacobiReport report;
    report.what = "fiber-linfty";
    report.trials = trials;
    report.seed = seed;
    if (!engine.d_squared_probe_zero())
        report.note = "d^2 != 0 on probes: residuals reported, no strictness claim";
    const ContextPtr& ctx = engine.context();
    auto results = run_trials<std::vector<JacobiCase>>(trials, seed, [&](size_t, Rng& rng) {
        std::vector<JacobiCase> fails;
        for (int n = 1; n <= n_max; ++n) {
            std::vector<CocylPair> args;
            for (int i = 0; i < n; ++i) args.push_back(engine.random_pair(rng));
            CocylPair residual = engine.jacobiator(args);
            if (!engine.pair_is_zero(residual)) {
                JacobiCase c;
                c.inputs.push_back("n=" + std::to_string(n));
                for (const auto& a : args) c.inputs.push_back(print_pair(ctx, a));
                c.residual = print_pair(ctx, residual);
                fails.push_back(std::move(c));
            }
        }
        return fails;
    });
    for (auto& r : results)
        for (auto& c : r) report.failures.push_back(std::move(c));
    return report;
}

std::string print_pair(const ContextPtr& ctx, const CocylPair& p) {
    (void)ctx;
    return "(Pi " + print_element(p.l) + ", " + print_element(p.v) + ")";
}

}  // namespace hdb
