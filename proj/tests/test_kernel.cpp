#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hdb/koszul.hpp"
#include "hdb/rational.hpp"
#include "hdb/rng.hpp"
#include "hdb/superpoly.hpp"

#include <algorithm>
#include <numeric>

using namespace hdb;

namespace {

SignaturePtr test_sig() {
    auto sig = std::make_shared<Signature>();
    sig->declare("x", Parity::even, VarRole::base);
    sig->declare("y", Parity::even, VarRole::base);
    sig->declare("th1", Parity::odd, VarRole::base);
    sig->declare("th2", Parity::odd, VarRole::base);
    sig->declare("th3", Parity::odd, VarRole::base);
    return sig;
}

// Independent sign oracle: decompose the permutation into adjacent
// transpositions applied to the argument sequence, multiplying -1 whenever
// two odd arguments swap.
int sign_by_bubble(const GradedPermutation& gp) {
    std::vector<size_t> cur(gp.perm.size());
    std::iota(cur.begin(), cur.end(), 0);
    int sign = 1;
    for (size_t target = 0; target < gp.perm.size(); ++target) {
        size_t at = target;
        while (cur[at] != gp.perm[target]) ++at;
        for (; at > target; --at) {
            if (is_odd(gp.parities[cur[at]]) && is_odd(gp.parities[cur[at - 1]])) sign = -sign;
            std::swap(cur[at], cur[at - 1]);
        }
    }
    return sign;
}

GradedPermutation random_perm(Rng& rng, size_t n) {
    GradedPermutation gp;
    gp.perm.resize(n);
    std::iota(gp.perm.begin(), gp.perm.end(), 0);
    for (size_t i = n; i > 1; --i)
        std::swap(gp.perm[i - 1], gp.perm[static_cast<size_t>(rng.uniform(0, static_cast<int>(i) - 1))]);
    for (size_t i = 0; i < n; ++i) gp.parities.push_back(rng.parity());
    return gp;
}

SuperPoly random_test_poly(Rng& rng, const SignaturePtr& sig, Parity p) {
    SuperPoly out(sig);
    std::vector<VarId> vars = {0, 1, 2, 3, 4};
    for (int tries = 0; tries < 40 && out.term_count() < 3; ++tries) {
        Monomial m;
        for (VarId v : vars) {
            if (rng.uniform(0, 2) != 0) continue;
            if (is_odd(sig->parity(v)))
                m.odd_mask |= uint64_t{1} << v;
            else
                m.evens.push_back({v, static_cast<uint32_t>(rng.uniform(1, 2))});
        }
        if (m.parity() == p) out.add_term(m, rng.coeff());
    }
    return out;
}

}  // namespace

TEST_CASE("koszul_sign basics") {
    GradedPermutation id{{0, 1, 2}, {Parity::odd, Parity::even, Parity::odd}};
    CHECK(koszul_sign(id) == 1);

    GradedPermutation swap_oo{{1, 0}, {Parity::odd, Parity::odd}};
    CHECK(koszul_sign(swap_oo) == -1);
    GradedPermutation swap_oe{{1, 0}, {Parity::odd, Parity::even}};
    CHECK(koszul_sign(swap_oe) == 1);

    // 3-cycle 1->2->3->1 means slot k holds original argument (k-1 mod 3)
    GradedPermutation cyc{{2, 0, 1}, {Parity::odd, Parity::even, Parity::odd}};
    CHECK(koszul_sign(cyc) == sign_by_bubble(cyc));

    GradedPermutation bad{{0, 1}, {Parity::odd}};
    CHECK_THROWS_AS(koszul_sign(bad), std::invalid_argument);
}

TEST_CASE("koszul_sign agrees with transposition oracle and composes") {
    Rng rng(2026);
    for (int t = 0; t < 300; ++t) {
        size_t n = static_cast<size_t>(rng.uniform(1, 6));
        GradedPermutation a = random_perm(rng, n);
        CHECK(koszul_sign(a) == sign_by_bubble(a));

        GradedPermutation b = random_perm(rng, n);
        b.parities = a.parities;
        // c = a after b: slot k of c holds the argument b places at slot a.perm[k]
        GradedPermutation c;
        c.parities = a.parities;
        for (size_t k = 0; k < n; ++k) c.perm.push_back(b.perm[a.perm[k]]);
        // sign of the second reordering is computed on the parities as seen
        // after the first one
        GradedPermutation a_rel = a;
        for (size_t k = 0; k < n; ++k) a_rel.parities[k] = a.parities[b.perm[k]];
        CHECK(koszul_sign(c) == koszul_sign(b) * koszul_sign(a_rel));
    }
}

TEST_CASE("shuffles enumeration") {
    std::vector<Parity> ee = {Parity::even, Parity::even};
    CHECK(shuffles(0, 2, ee).size() == 1);
    CHECK(shuffles(2, 0, ee).size() == 1);
    CHECK(shuffles(0, 2, ee)[0].second == 1);

    std::vector<Parity> oo = {Parity::odd, Parity::odd};
    auto s11 = shuffles(1, 1, oo);
    REQUIRE(s11.size() == 2);
    CHECK(s11[0].first.perm == std::vector<size_t>{0, 1});
    CHECK(s11[0].second == 1);
    CHECK(s11[1].first.perm == std::vector<size_t>{1, 0});
    CHECK(s11[1].second == -1);

    std::vector<Parity> eee = {Parity::even, Parity::even, Parity::even};
    auto s21 = shuffles(2, 1, eee);
    REQUIRE(s21.size() == 3);
    for (const auto& [gp, sign] : s21) CHECK(sign == 1);

    CHECK_THROWS_AS(shuffles(1, 2, ee), std::invalid_argument);
}

TEST_CASE("shuffles cardinality and coverage") {
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        size_t n = static_cast<size_t>(rng.uniform(1, 6));
        size_t k = static_cast<size_t>(rng.uniform(0, static_cast<int>(n)));
        std::vector<Parity> ps;
        for (size_t i = 0; i < n; ++i) ps.push_back(rng.parity());
        auto sh = shuffles(k, n - k, ps);
        CHECK(Rational(sh.size()) == binomial(static_cast<int>(n), static_cast<int>(k)));
        // every k-subset appears exactly once as the first block, both blocks increasing
        std::vector<std::vector<size_t>> firsts;
        for (const auto& [gp, sign] : sh) {
            std::vector<size_t> first(gp.perm.begin(), gp.perm.begin() + static_cast<long>(k));
            CHECK(std::is_sorted(first.begin(), first.end()));
            CHECK(std::is_sorted(gp.perm.begin() + static_cast<long>(k), gp.perm.end()));
            CHECK(sign == sign_by_bubble(gp));
            firsts.push_back(first);
        }
        std::sort(firsts.begin(), firsts.end());
        CHECK(std::adjacent_find(firsts.begin(), firsts.end()) == firsts.end());
    }
}

TEST_CASE("poly_mul oddness rules") {
    auto sig = test_sig();
    SuperPoly x = SuperPoly::variable(sig, 0);
    SuperPoly th1 = SuperPoly::variable(sig, 2);
    SuperPoly th2 = SuperPoly::variable(sig, 3);

    CHECK((th1 * th1).is_zero());
    CHECK((th1 * th2 + th2 * th1).is_zero());

    SuperPoly lhs = (x + th1 * th2) * x;
    SuperPoly rhs = x * x + x * (th1 * th2);
    CHECK(lhs == rhs);
    CHECK(lhs == x * (x + th1 * th2));
}

TEST_CASE("poly_mul supercommutativity and parity (property)") {
    auto sig = test_sig();
    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        Parity pa = rng.parity(), pb = rng.parity();
        SuperPoly a = random_test_poly(rng, sig, pa);
        SuperPoly b = random_test_poly(rng, sig, pb);
        SuperPoly ab = a * b;
        SuperPoly ba = b * a;
        if (is_odd(pa) && is_odd(pb))
            CHECK((ab + ba).is_zero());
        else
            CHECK((ab - ba).is_zero());
        if (!ab.is_zero()) CHECK(*ab.parity() == pa + pb);
    }
}

TEST_CASE("partial basics") {
    auto sig = test_sig();
    SuperPoly x = SuperPoly::variable(sig, 0);
    SuperPoly th1 = SuperPoly::variable(sig, 2);
    SuperPoly th2 = SuperPoly::variable(sig, 3);

    CHECK((x * x).partial(0) == Rational(2) * x);
    // left derivative: d_th1 (th1 th2) = th2
    CHECK((th1 * th2).partial(2) == th2);
    // d_th2 (th1 th2): reorder th1 past d, pick up a sign
    CHECK((th1 * th2).partial(3) == -th1);
    // phi odd, d_th(phi th) = -phi  (th = th1, phi = th2)
    CHECK((th2 * th1).partial(2) == -th2);

    CHECK_THROWS_AS(x.partial(99), std::invalid_argument);
}

TEST_CASE("partial graded Leibniz and anticommutation (property)") {
    auto sig = test_sig();
    Rng rng(13);
    for (int t = 0; t < 200; ++t) {
        Parity pf = rng.parity();
        SuperPoly f = random_test_poly(rng, sig, pf);
        SuperPoly g = random_test_poly(rng, sig, rng.parity());
        VarId v = static_cast<VarId>(rng.uniform(0, 4));
        SuperPoly lhs = (f * g).partial(v);
        SuperPoly rhs = f.partial(v) * g;
        SuperPoly cross = f * g.partial(v);
        if (is_odd(sig->parity(v)) && is_odd(pf))
            rhs -= cross;
        else
            rhs += cross;
        CHECK(lhs == rhs);

        VarId w = static_cast<VarId>(rng.uniform(0, 4));
        SuperPoly dd = f.partial(v).partial(w);
        SuperPoly dd2 = f.partial(w).partial(v);
        if (is_odd(sig->parity(v)) && is_odd(sig->parity(w)))
            CHECK(dd == -dd2);
        else
            CHECK(dd == dd2);
    }
}

TEST_CASE("rational helpers") {
    CHECK(rat_from_string("3/4") == Rational(3, 4));
    CHECK(rat_from_string("-7") == Rational(-7));
    CHECK(rat_to_string(Rational(3, 4)) == "3/4");
    CHECK(rat_to_string(Rational(5)) == "5");
    CHECK(factorial(5) == 120);
    CHECK(binomial(5, 2) == 10);
    CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
}
