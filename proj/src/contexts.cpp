#include "hdb/context.hpp"

#include <functional>
#include <stdexcept>

#include "hdb/printer.hpp"
#include "hdb/trials.hpp"

namespace hdb {

const char* kind_name(ContextKind k) {
    switch (k) {
        case ContextKind::vect: return "vect";
        case ContextKind::ops: return "ops";
        case ContextKind::ham: return "ham";
        case ContextKind::multivec: return "multivec";
    }
    return "?";
}

std::optional<ContextKind> kind_from_name(const std::string& name) {
    if (name == "vect") return ContextKind::vect;
    if (name == "ops") return ContextKind::ops;
    if (name == "ham") return ContextKind::ham;
    if (name == "multivec") return ContextKind::multivec;
    return std::nullopt;
}

Element LieContext::embed(const SuperPoly&) const {
    throw std::logic_error("context has no function-algebra V");
}
SuperPoly LieContext::v_value(const Element&) const {
    throw std::logic_error("context has no function-algebra V");
}

bool LieContext::is_zero(const Element& a) const {
    return std::visit([](const auto& x) { return x.is_zero(); }, a);
}

bool LieContext::in_v(const Element& a) const {
    Element p = project(a);
    return is_zero(sub(p, a));
}

Parity LieContext::parity_or_throw(const Element& a) const {
    auto p = parity(a);
    if (!p) throw std::invalid_argument("inhomogeneous element");
    return *p;
}

Element add(const Element& a, const Element& b) {
    return std::visit(
        [&](const auto& x) -> Element {
            using T = std::decay_t<decltype(x)>;
            return x + std::get<T>(b);
        },
        a);
}
Element sub(const Element& a, const Element& b) {
    return std::visit(
        [&](const auto& x) -> Element {
            using T = std::decay_t<decltype(x)>;
            return x - std::get<T>(b);
        },
        a);
}
Element negate(const Element& a) { return scale(a, Rational(-1)); }
Element scale(const Element& a, const Rational& r) {
    return std::visit([&](const auto& x) -> Element { return x * r; }, a);
}

// ---------------------------------------------------------------------------
// shared helpers

std::vector<Monomial> enumerate_monomials(const Signature& sig, const std::vector<VarId>& vars,
                                          int max_degree) {
    std::vector<Monomial> out;
    Monomial cur;
    std::function<void(size_t, int)> rec = [&](size_t i, int remaining) {
        if (i == vars.size()) {
            out.push_back(cur);
            return;
        }
        VarId v = vars[i];
        rec(i + 1, remaining);
        if (remaining <= 0) return;
        if (is_odd(sig.parity(v))) {
            Monomial save = cur;
            cur.odd_mask |= uint64_t{1} << v;
            rec(i + 1, remaining - 1);
            cur = save;
        } else {
            Monomial save = cur;
            for (int e = 1; e <= remaining; ++e) {
                cur = save;
                cur.evens.push_back({v, static_cast<uint32_t>(e)});
                std::sort(cur.evens.begin(), cur.evens.end());
                rec(i + 1, remaining - e);
            }
            cur = save;
        }
    };
    rec(0, max_degree);
    return out;
}

SuperPoly random_poly(Rng& rng, const SignaturePtr& sig, const std::vector<VarId>& vars,
                      Parity parity, int max_degree, int max_terms) {
    auto all = enumerate_monomials(*sig, vars, max_degree);
    std::vector<Monomial> pool;
    for (auto& m : all)
        if (m.parity() == parity) pool.push_back(std::move(m));
    SuperPoly p(sig);
    if (pool.empty()) return p;
    int n = rng.uniform(1, max_terms);
    for (int i = 0; i < n; ++i) {
        const Monomial& m = pool[static_cast<size_t>(rng.uniform(0, static_cast<int>(pool.size()) - 1))];
        p.add_term(m, rng.coeff());
    }
    return p;
}

namespace {

std::vector<VarId> role_ids(const Signature& sig, VarRole role) { return sig.ids_with_role(role); }

bool uses_only_roles(const Signature& sig, const SuperPoly& p,
                     std::initializer_list<VarRole> roles) {
    auto keep = [&](VarId v) {
        for (VarRole r : roles)
            if (sig.role(v) == r) return true;
        return false;
    };
    return p.filter_vars(keep) == p;
}

// Splits into (even part, odd part) for bilinear extension of the brackets.
std::pair<SuperPoly, SuperPoly> parity_parts(const SuperPoly& p) {
    SuperPoly ev(p.signature()), od(p.signature());
    for (const auto& [m, c] : p.terms())
        (is_odd(m.parity()) ? od : ev).add_term(m, c);
    return {ev, od};
}

// ---------------------------------------------------------------------------
// vect: Vect(V) with P = evaluation at a point (the origin for the honest
// projector). V = constant vector fields.

class VectContext final : public LieContext {
  public:
    VectContext(SignaturePtr sig, DegreeCaps caps, Rational eval_offset = Rational(0))
        : LieContext(ContextKind::vect, std::move(sig), caps), offset_(std::move(eval_offset)) {}

    Element bracket(const Element& ea, const Element& eb) const override {
        const auto& a = std::get<VectorField>(ea);
        const auto& b = std::get<VectorField>(eb);
        VectorField out = VectorField::zero(signature(), a.declared_parity() + b.declared_parity());
        for (const auto& x : homogeneous_fields(a))
            for (const auto& y : homogeneous_fields(b)) out += lie_bracket(x, y);
        return out;
    }

    Element project(const Element& ea) const override {
        const auto& a = std::get<VectorField>(ea);
        if (offset_ == 0) return a.at_origin();
        // Deliberately broken variant: evaluates the first-order Taylor
        // truncation of each component at the shifted point (even base
        // coordinates at `offset_`, odd at zero). Idempotent with Abelian
        // image, but the kernel is not a subalgebra, so eqdistrib fails.
        VectorField out(signature(), a.declared_parity());
        const Signature& sig = *signature();
        for (size_t k = 0; k < a.components().size(); ++k) {
            SuperPoly acc(signature());
            for (const auto& [m, c] : a.component(k).terms()) {
                int base_deg = 0;
                bool odd_base = false;
                Rational value = c;
                Monomial rest;
                for (const auto& [v, e] : m.evens) {
                    if (sig.role(v) == VarRole::base) {
                        base_deg += static_cast<int>(e);
                        for (uint32_t i = 0; i < e; ++i) value *= offset_;
                    } else {
                        rest.evens.push_back({v, e});
                    }
                }
                uint64_t mask = m.odd_mask;
                while (mask) {
                    VarId v = static_cast<VarId>(std::countr_zero(mask));
                    mask &= mask - 1;
                    if (sig.role(v) == VarRole::base) {
                        ++base_deg;
                        odd_base = true;
                    } else {
                        rest.odd_mask |= uint64_t{1} << v;
                    }
                }
                if (base_deg <= 1 && !odd_base) acc.add_term(rest, value);
            }
            out.component(k) = acc;
        }
        return out;
    }

    std::optional<Parity> parity(const Element& ea) const override {
        // inferred from the components, so that sums built on top of a zero
        // field with a stale parity tag still read as homogeneous
        const auto& a = std::get<VectorField>(ea);
        if (a.is_zero()) return a.declared_parity();
        auto base = signature()->base_ids();
        std::optional<Parity> out;
        for (size_t k = 0; k < a.components().size(); ++k) {
            const auto& c = a.component(k);
            if (c.is_zero()) continue;
            auto cp = c.parity();
            if (!cp) return std::nullopt;
            Parity p = *cp + signature()->parity(base[k]);
            if (out && *out != p) return std::nullopt;
            out = p;
        }
        return out;
    }

    int order(const Element& ea) const override {
        const auto& a = std::get<VectorField>(ea);
        int d = a.coordinate_degree();
        return d < 0 ? kOrderUndefined : d;
    }

    Element zero() const override { return VectorField::zero(signature()); }
    bool v_is_function_algebra() const override { return false; }

    Element random_element(Rng& rng, Parity parity) const override {
        for (;;) {
            VectorField x(signature(), parity);
            auto base = signature()->base_ids();
            for (size_t k = 0; k < base.size(); ++k) {
                if (rng.uniform(0, 3) == 0) continue;
                x.component(k) = random_poly(rng, signature(), base,
                                             parity + signature()->parity(base[k]),
                                             caps().max_base_degree, 2);
            }
            if (!x.is_zero()) return x;
        }
    }

    Element random_v(Rng& rng, std::optional<Parity> parity) const override {
        Parity p = parity ? *parity : rng.parity();
        VectorField x(signature(), p);
        auto base = signature()->base_ids();
        auto aux = role_ids(*signature(), VarRole::aux);
        bool any = false;
        for (size_t k = 0; k < base.size(); ++k) {
            Parity need = p + signature()->parity(base[k]);
            if (rng.uniform(0, 2) == 0 && any) continue;
            SuperPoly c = need == Parity::even && (aux.empty() || rng.coin())
                              ? SuperPoly::constant(signature(), rng.coeff())
                              : random_poly(rng, signature(), aux, need, 2, 1);
            if (!c.is_zero()) any = true;
            x.component(k) = c;
        }
        return x;
    }

    std::vector<Element> v_monomials(int) const override {
        std::vector<Element> out;
        auto base = signature()->base_ids();
        for (size_t k = 0; k < base.size(); ++k)
            out.push_back(VectorField::basis(signature(), k));
        return out;
    }

  private:
    static std::vector<VectorField> homogeneous_fields(const VectorField& a) {
        if (a.is_homogeneous()) return {a};
        VectorField same(a.signature(), a.declared_parity());
        VectorField other(a.signature(), flip(a.declared_parity()));
        const Signature& sig = *a.signature();
        auto base = sig.base_ids();
        for (size_t k = 0; k < a.components().size(); ++k) {
            auto [ev, od] = parity_parts(a.component(k));
            Parity same_comp = a.declared_parity() + sig.parity(base[k]);
            same.component(k) = (same_comp == Parity::even) ? ev : od;
            other.component(k) = (same_comp == Parity::even) ? od : ev;
        }
        return {same, other};
    }

    Rational offset_;
};

// ---------------------------------------------------------------------------
// ops: linear operators on the polynomial algebra, P = evaluation at 1.
// V = multiplication operators.

class OpsContext final : public LieContext {
  public:
    OpsContext(SignaturePtr sig, DegreeCaps caps)
        : LieContext(ContextKind::ops, std::move(sig), caps) {}

    Element bracket(const Element& ea, const Element& eb) const override {
        const auto& a = std::get<DiffOperator>(ea);
        const auto& b = std::get<DiffOperator>(eb);
        DiffOperator out(signature());
        for (const auto& x : parity_ops(a)) {
            for (const auto& y : parity_ops(b)) {
                auto px = x.parity();
                auto py = y.parity();
                if (!px || !py) continue;  // zero part
                DiffOperator c = compose(x, y);
                DiffOperator d = compose(y, x);
                out += (is_odd(*px) && is_odd(*py)) ? c + d : c - d;
            }
        }
        return out;
    }

    Element project(const Element& ea) const override {
        return DiffOperator::multiplication(std::get<DiffOperator>(ea).evaluate_at_one());
    }

    std::optional<Parity> parity(const Element& ea) const override {
        const auto& a = std::get<DiffOperator>(ea);
        if (a.is_zero()) return Parity::even;
        return a.parity();
    }

    int order(const Element& ea) const override {
        int d = std::get<DiffOperator>(ea).order();
        return d < 0 ? kOrderUndefined : d;
    }

    Element zero() const override { return DiffOperator::zero(signature()); }

    Element embed(const SuperPoly& f) const override {
        if (!uses_only_roles(*signature(), f, {VarRole::base, VarRole::aux}))
            throw std::invalid_argument("V element must be a polynomial in the base variables");
        return DiffOperator::multiplication(f);
    }
    SuperPoly v_value(const Element& ea) const override {
        return std::get<DiffOperator>(ea).evaluate_at_one();
    }

    Element random_element(Rng& rng, Parity parity) const override {
        auto base = signature()->base_ids();
        auto keys = enumerate_monomials(*signature(), base, caps().max_operator_order);
        for (;;) {
            DiffOperator op(signature());
            int terms = rng.uniform(1, 3);
            for (int i = 0; i < terms; ++i) {
                const Monomial& key = keys[static_cast<size_t>(rng.uniform(0, static_cast<int>(keys.size()) - 1))];
                SuperPoly c = random_poly(rng, signature(), base, parity + key.parity(),
                                          caps().max_base_degree, 2);
                DiffOperator t(signature());
                t.add_term(key, c);
                op += t;
            }
            if (!op.is_zero()) return op;
        }
    }

    Element random_v(Rng& rng, std::optional<Parity> parity) const override {
        Parity p = parity ? *parity : rng.parity();
        return embed(random_poly(rng, signature(), signature()->base_ids(), p,
                                 caps().max_base_degree, 2));
    }

    std::vector<Element> v_monomials(int max_degree) const override {
        std::vector<Element> out;
        for (const auto& m : enumerate_monomials(*signature(), signature()->base_ids(), max_degree)) {
            SuperPoly f(signature());
            f.add_term(m, 1);
            out.push_back(DiffOperator::multiplication(f));
        }
        return out;
    }

  private:
    static std::vector<DiffOperator> parity_ops(const DiffOperator& a) {
        if (a.parity()) return {a};
        DiffOperator ev(a.signature()), od(a.signature());
        for (const auto& [key, c] : a.terms()) {
            auto [ce, co] = parity_parts(c);
            // term parity = coefficient parity + key parity
            if (is_odd(key.parity())) {
                ev.add_term(key, co);
                od.add_term(key, ce);
            } else {
                ev.add_term(key, ce);
                od.add_term(key, co);
            }
        }
        return {ev, od};
    }
};

// ---------------------------------------------------------------------------
// ham: C(T*M) with the canonical Poisson bracket, P = pullback to M (p = 0).
// V = polynomials in the base coordinates.

class HamContext final : public LieContext {
  public:
    HamContext(SignaturePtr sig, DegreeCaps caps)
        : LieContext(ContextKind::ham, std::move(sig), caps) {}

    Element bracket(const Element& ea, const Element& eb) const override {
        const auto& a = std::get<SuperPoly>(ea);
        const auto& b = std::get<SuperPoly>(eb);
        auto [a0, a1] = parity_parts(a);
        auto [b0, b1] = parity_parts(b);
        SuperPoly out(signature());
        out += poisson(a0, Parity::even, b0, Parity::even);
        out += poisson(a0, Parity::even, b1, Parity::odd);
        out += poisson(a1, Parity::odd, b0, Parity::even);
        out += poisson(a1, Parity::odd, b1, Parity::odd);
        return out;
    }

    Element project(const Element& ea) const override {
        return std::get<SuperPoly>(ea).filter_vars([&](VarId v) {
            auto r = signature()->role(v);
            return r == VarRole::base || r == VarRole::aux;
        });
    }

    std::optional<Parity> parity(const Element& ea) const override {
        const auto& a = std::get<SuperPoly>(ea);
        if (a.is_zero()) return Parity::even;
        return a.parity();
    }

    int order(const Element& ea) const override {
        int d = std::get<SuperPoly>(ea).degree_in(
            [&](VarId v) { return signature()->role(v) == VarRole::momentum; });
        return d < 0 ? kOrderUndefined : d;
    }

    Element zero() const override { return SuperPoly::zero(signature()); }

    Element embed(const SuperPoly& f) const override {
        if (!uses_only_roles(*signature(), f, {VarRole::base, VarRole::aux}))
            throw std::invalid_argument("V element must be a polynomial in the base variables");
        return f;
    }
    SuperPoly v_value(const Element& ea) const override { return std::get<SuperPoly>(ea); }

    Element random_element(Rng& rng, Parity parity) const override {
        std::vector<VarId> vars = signature()->base_ids();
        for (VarId v : role_ids(*signature(), VarRole::momentum)) vars.push_back(v);
        for (;;) {
            SuperPoly p = random_poly(rng, signature(), vars, parity,
                                      caps().max_base_degree + caps().max_operator_order, 3);
            // enforce the per-class caps
            SuperPoly out(signature());
            for (const auto& [m, c] : p.terms()) {
                int pdeg = 0, xdeg = 0;
                for (const auto& [v, e] : m.evens)
                    (signature()->role(v) == VarRole::momentum ? pdeg : xdeg) += static_cast<int>(e);
                uint64_t mask = m.odd_mask;
                while (mask) {
                    VarId v = static_cast<VarId>(std::countr_zero(mask));
                    mask &= mask - 1;
                    (signature()->role(v) == VarRole::momentum ? pdeg : xdeg) += 1;
                }
                if (pdeg <= caps().max_operator_order && xdeg <= caps().max_base_degree)
                    out.add_term(m, c);
            }
            if (!out.is_zero()) return out;
        }
    }

    Element random_v(Rng& rng, std::optional<Parity> parity) const override {
        Parity p = parity ? *parity : rng.parity();
        return random_poly(rng, signature(), signature()->base_ids(), p,
                           caps().max_base_degree, 2);
    }

    std::vector<Element> v_monomials(int max_degree) const override {
        std::vector<Element> out;
        for (const auto& m : enumerate_monomials(*signature(), signature()->base_ids(), max_degree)) {
            SuperPoly f(signature());
            f.add_term(m, 1);
            out.push_back(f);
        }
        return out;
    }

  private:
    // Canonical Poisson bracket on T*M for homogeneous f, g:
    //   (f,g) = sum_a (-1)^{e_a(~f+1)} df/dp_a dg/dx^a
    //         - (-1)^{~f~g + e_a(~g+1)} dg/dp_a df/dx^a.
    // The sign is pinned by requiring the derived brackets of S = S^a p_a and
    // S = 1/2 S^{ab} p_b p_a to reproduce the higher-Schouten coordinate
    // formulas exactly.
    SuperPoly poisson(const SuperPoly& f, Parity pf, const SuperPoly& g, Parity pg) const {
        SuperPoly out(signature());
        if (f.is_zero() || g.is_zero()) return out;
        const Signature& sig = *signature();
        for (VarId x : sig.base_ids()) {
            VarId p = *sig.momentum_of(x);
            Parity ea = sig.parity(x);
            SuperPoly t1 = f.partial(p) * g.partial(x);
            if (is_odd(ea) && !is_odd(pf)) t1 *= Rational(-1);
            SuperPoly t2 = g.partial(p) * f.partial(x);
            bool neg2 = true;  // leading minus
            if (is_odd(pf) && is_odd(pg)) neg2 = !neg2;
            if (is_odd(ea) && !is_odd(pg)) neg2 = !neg2;
            if (neg2) t2 *= Rational(-1);
            out += t1;
            out += t2;
        }
        return out;
    }
};

// ---------------------------------------------------------------------------
// multivec: C(Pi T*M) with the canonical Schouten bracket (odd; the Lie
// parity of an element is its polynomial parity shifted by one). P = restrict
// to x* = 0. V = polynomials in the base coordinates.

class MultivecContext final : public LieContext {
  public:
    MultivecContext(SignaturePtr sig, DegreeCaps caps)
        : LieContext(ContextKind::multivec, std::move(sig), caps) {}

    Element bracket(const Element& ea, const Element& eb) const override {
        const auto& a = std::get<SuperPoly>(ea);
        const auto& b = std::get<SuperPoly>(eb);
        auto [a0, a1] = parity_parts(a);
        auto [b0, b1] = parity_parts(b);
        SuperPoly out(signature());
        out += schouten(a0, Parity::even, b0);
        out += schouten(a0, Parity::even, b1);
        out += schouten(a1, Parity::odd, b0);
        out += schouten(a1, Parity::odd, b1);
        return out;
    }

    Element project(const Element& ea) const override {
        return std::get<SuperPoly>(ea).filter_vars([&](VarId v) {
            auto r = signature()->role(v);
            return r == VarRole::base || r == VarRole::aux;
        });
    }

    std::optional<Parity> parity(const Element& ea) const override {
        const auto& a = std::get<SuperPoly>(ea);
        if (a.is_zero()) return Parity::even;
        auto p = a.parity();
        if (!p) return std::nullopt;
        return flip(*p);  // parity shift of Example 4.3
    }

    int order(const Element& ea) const override {
        int d = std::get<SuperPoly>(ea).degree_in(
            [&](VarId v) { return signature()->role(v) == VarRole::antimomentum; });
        return d < 0 ? kOrderUndefined : d;
    }

    Element zero() const override { return SuperPoly::zero(signature()); }

    Element embed(const SuperPoly& f) const override {
        if (!uses_only_roles(*signature(), f, {VarRole::base, VarRole::aux}))
            throw std::invalid_argument("V element must be a polynomial in the base variables");
        return f;
    }
    SuperPoly v_value(const Element& ea) const override { return std::get<SuperPoly>(ea); }

    Element random_element(Rng& rng, Parity parity) const override {
        std::vector<VarId> vars = signature()->base_ids();
        for (VarId v : role_ids(*signature(), VarRole::antimomentum)) vars.push_back(v);
        for (;;) {
            SuperPoly p = random_poly(rng, signature(), vars, flip(parity),
                                      caps().max_base_degree + caps().max_operator_order, 3);
            SuperPoly out(signature());
            for (const auto& [m, c] : p.terms()) {
                int sdeg = 0, xdeg = 0;
                for (const auto& [v, e] : m.evens)
                    (signature()->role(v) == VarRole::antimomentum ? sdeg : xdeg) +=
                        static_cast<int>(e);
                uint64_t mask = m.odd_mask;
                while (mask) {
                    VarId v = static_cast<VarId>(std::countr_zero(mask));
                    mask &= mask - 1;
                    (signature()->role(v) == VarRole::antimomentum ? sdeg : xdeg) += 1;
                }
                if (sdeg <= caps().max_operator_order && xdeg <= caps().max_base_degree)
                    out.add_term(m, c);
            }
            if (!out.is_zero()) return out;
        }
    }

    Element random_v(Rng& rng, std::optional<Parity> parity) const override {
        // Lie parity of a V element is its polynomial parity flipped.
        Parity p = parity ? flip(*parity) : rng.parity();
        return random_poly(rng, signature(), signature()->base_ids(), p,
                           caps().max_base_degree, 2);
    }

    std::vector<Element> v_monomials(int max_degree) const override {
        std::vector<Element> out;
        for (const auto& m : enumerate_monomials(*signature(), signature()->base_ids(), max_degree)) {
            SuperPoly f(signature());
            f.add_term(m, 1);
            out.push_back(f);
        }
        return out;
    }

  private:
    // Flat odd Laplacian sum_a d/dx*_a d/dx^a; the canonical Schouten bracket
    // is its second-order defect:
    //   [[a,b]] = (-1)^{~a} (Lap(ab) - Lap(a) b - (-1)^{~a} a Lap(b)),
    // ~a the polynomial parity. Lap^2 = 0 makes the graded Jacobi identity
    // automatic.
    SuperPoly laplacian(const SuperPoly& f) const {
        SuperPoly out(signature());
        const Signature& sig = *signature();
        for (VarId x : sig.base_ids()) {
            VarId xs = *sig.antimomentum_of(x);
            out += f.partial(x).partial(xs);
        }
        return out;
    }

    SuperPoly schouten(const SuperPoly& a, Parity pa, const SuperPoly& b) const {
        if (a.is_zero() || b.is_zero()) return SuperPoly::zero(signature());
        SuperPoly defect = laplacian(a * b) - laplacian(a) * b;
        SuperPoly cross = a * laplacian(b);
        if (is_odd(pa))
            defect += cross;
        else
            defect -= cross;
        if (is_odd(pa)) defect *= Rational(-1);
        return defect;
    }
};

}  // namespace

ContextPtr make_context(ContextKind kind, SignaturePtr sig, DegreeCaps caps) {
    switch (kind) {
        case ContextKind::vect: return std::make_shared<VectContext>(std::move(sig), caps);
        case ContextKind::ops: return std::make_shared<OpsContext>(std::move(sig), caps);
        case ContextKind::ham: return std::make_shared<HamContext>(std::move(sig), caps);
        case ContextKind::multivec:
            return std::make_shared<MultivecContext>(std::move(sig), caps);
    }
    throw std::logic_error("unknown context kind");
}

ContextPtr make_vect_context_with_offset(SignaturePtr sig, DegreeCaps caps,
                                         const Rational& offset) {
    return std::make_shared<VectContext>(std::move(sig), caps, offset);
}

ProjectorReport check_projector_axioms(const LieContext& ctx, size_t trials, uint64_t seed) {
    struct TrialOut {
        std::vector<ProjectorViolation> violations;
    };
    auto results = run_trials<TrialOut>(trials, seed, [&](size_t, Rng& rng) {
        TrialOut out;
        Element a = ctx.random_element(rng, rng.parity());
        Element b = ctx.random_element(rng, rng.parity());
        Element pa = ctx.project(a);
        Element pb = ctx.project(b);
        if (!ctx.is_zero(ctx.bracket(pa, pb)))
            out.violations.push_back({"abelian-image", print_element(a), print_element(b)});
        Element lhs = ctx.project(ctx.bracket(a, b));
        Element rhs = add(ctx.project(ctx.bracket(pa, b)), ctx.project(ctx.bracket(a, pb)));
        if (!ctx.is_zero(sub(lhs, rhs)))
            out.violations.push_back({"distributive", print_element(a), print_element(b)});
        if (!ctx.is_zero(sub(ctx.project(pa), pa)))
            out.violations.push_back({"idempotent", print_element(a), ""});
        return out;
    });
    ProjectorReport report;
    report.trials = trials;
    for (auto& r : results)
        for (auto& v : r.violations) report.violations.push_back(std::move(v));
    return report;
}

bool order_bruteforce_leq(const LieContext& ctx, const Element& a, int r, int probe_degree) {
    auto probes = ctx.v_monomials(probe_degree);
    std::function<bool(const Element&, int)> rec = [&](const Element& cur, int depth) -> bool {
        if (ctx.is_zero(cur)) return true;
        if (depth == r + 1) return false;
        for (const auto& v : probes)
            if (!rec(ctx.bracket(cur, v), depth + 1)) return false;
        return true;
    };
    // all (r+1)-fold nested brackets [...[a,v_1],...,v_{r+1}] must vanish
    bool ok = true;
    for (const auto& v : probes) {
        if (!rec(ctx.bracket(a, v), 1)) {
            ok = false;
            break;
        }
    }
    return ok;
}

SuperPoly principal_symbol(const DiffOperator& op) {
    if (op.is_zero()) throw std::invalid_argument("principal symbol of the zero operator");
    const SignaturePtr& sig = op.signature();
    int s = op.order();
    SuperPoly out(sig);
    for (const auto& [key, c] : op.terms()) {
        if (static_cast<int>(key.total_degree()) != s) continue;
        SuperPoly mono = SuperPoly::constant(sig, 1);
        for (const auto& [v, e] : key.evens) {
            VarId p = *sig->momentum_of(v);
            for (uint32_t i = 0; i < e; ++i) mono = mono * SuperPoly::variable(sig, p);
        }
        uint64_t mask = key.odd_mask;
        while (mask) {
            VarId v = static_cast<VarId>(std::countr_zero(mask));
            mask &= mask - 1;
            mono = mono * SuperPoly::variable(sig, *sig->momentum_of(v));
        }
        out += c * mono;
    }
    return out;
}

}  // namespace hdb
