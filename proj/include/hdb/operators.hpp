#ifndef HDB_OPERATORS_HPP
#define HDB_OPERATORS_HPP

#include <bit>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hdb/superpoly.hpp"

namespace hdb {

// A linear differential operator in normal-ordered form: a sum of terms
// c(x) * D where every coefficient stands to the left of every derivative.
// The derivative multi-index reuses Monomial: even exponents are iterated
// even partials, the odd mask is an ascending product of odd left partials.
class DiffOperator {
  public:
    DiffOperator() = default;
    explicit DiffOperator(SignaturePtr sig) : sig_(std::move(sig)) {}

    static DiffOperator zero(SignaturePtr sig) { return DiffOperator(std::move(sig)); }
    static DiffOperator identity(SignaturePtr sig) {
        return multiplication(SuperPoly::constant(std::move(sig), 1));
    }
    static DiffOperator multiplication(SuperPoly f) {
        DiffOperator op(f.signature());
        if (!f.is_zero()) op.terms_.emplace(Monomial{}, std::move(f));
        return op;
    }
    static DiffOperator derivative(SignaturePtr sig, VarId v) {
        DiffOperator op(sig);
        Monomial key;
        if (is_odd(sig->parity(v))) {
            key.odd_mask = uint64_t{1} << v;
        } else {
            key.evens.push_back({v, 1});
        }
        op.terms_.emplace(key, SuperPoly::constant(sig, 1));
        return op;
    }

    const SignaturePtr& signature() const { return sig_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, SuperPoly>& terms() const { return terms_; }
    bool operator==(const DiffOperator& o) const { return terms_ == o.terms_; }

    void add_term(const Monomial& key, const SuperPoly& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    DiffOperator& operator+=(const DiffOperator& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    DiffOperator& operator-=(const DiffOperator& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    DiffOperator& operator*=(const Rational& r) {
        if (r == 0) {
            terms_.clear();
        } else {
            for (auto& [k, c] : terms_) c *= r;
        }
        return *this;
    }
    friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
    friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
    friend DiffOperator operator*(DiffOperator a, const Rational& r) { return a *= r; }
    friend DiffOperator operator*(const Rational& r, DiffOperator a) { return a *= r; }
    friend DiffOperator operator-(DiffOperator a) { return a *= Rational(-1); }

    // Action of one derivative multi-index on a polynomial. Within the key,
    // derivatives compose with even partials outermost and odd partials in
    // ascending order left to right, so the rightmost (largest id) odd
    // partial acts first.
    static SuperPoly apply_key(const Monomial& key, SuperPoly f) {
        uint64_t mask = key.odd_mask;
        while (mask) {
            int top = 63 - std::countl_zero(mask);
            mask &= ~(uint64_t{1} << top);
            f = f.partial(static_cast<VarId>(top));
            if (f.is_zero()) return f;
        }
        for (const auto& [v, e] : key.evens)
            for (uint32_t i = 0; i < e && !f.is_zero(); ++i) f = f.partial(v);
        return f;
    }

    SuperPoly apply(const SuperPoly& f) const {
        SuperPoly out(sig_);
        for (const auto& [key, c] : terms_) out += c * apply_key(key, f);
        return out;
    }

    // Normal-ordered composition: apply(compose(A,B), f) == A.apply(B.apply(f)).
    friend DiffOperator compose(const DiffOperator& a, const DiffOperator& b) {
        DiffOperator out(a.sig_ ? a.sig_ : b.sig_);
        for (const auto& [keyA, cA] : a.terms_) {
            DiffOperator t = b;
            // push the factors of keyA onto t from the right inward
            uint64_t mask = keyA.odd_mask;
            std::vector<VarId> odd_desc;
            while (mask) {
                int top = 63 - std::countl_zero(mask);
                mask &= ~(uint64_t{1} << top);
                odd_desc.push_back(static_cast<VarId>(top));
            }
            for (VarId v : odd_desc) t = left_derivative(t, v);
            for (const auto& [v, e] : keyA.evens)
                for (uint32_t i = 0; i < e; ++i) t = left_derivative(t, v);
            for (const auto& [key, c] : t.terms_) out.add_term(key, cA * c);
        }
        return out;
    }

    // d_v composed from the left:  d_v o (c * D) = (d_v c) D + (-1)^{~v~c} c (d_v o D).
    static DiffOperator left_derivative(const DiffOperator& op, VarId v) {
        DiffOperator out(op.sig_);
        const bool v_odd = is_odd(op.sig_->parity(v));
        for (const auto& [key, c] : op.terms_) {
            out.add_term(key, c.partial(v));
            // split the coefficient by term parity for the commutation sign
            for (const auto& [m, coeff] : c.terms()) {
                Rational pass = (v_odd && is_odd(m.parity())) ? -coeff : coeff;
                if (v_odd) {
                    if (key.has_odd(v)) continue;  // odd partial squares to zero
                    Monomial nk = key;
                    nk.odd_mask |= uint64_t{1} << v;
                    int below = std::popcount(key.odd_mask & ((uint64_t{1} << v) - 1));
                    if (below & 1) pass = -pass;
                    SuperPoly mono(op.sig_);
                    mono.add_term(m, pass);
                    out.add_term(nk, mono);
                } else {
                    Monomial nk = key;
                    bool found = false;
                    for (auto& [id, e] : nk.evens)
                        if (id == v) { ++e; found = true; }
                    if (!found) {
                        nk.evens.push_back({v, 1});
                        std::sort(nk.evens.begin(), nk.evens.end());
                    }
                    SuperPoly mono(op.sig_);
                    mono.add_term(m, pass);
                    out.add_term(nk, mono);
                }
            }
        }
        return out;
    }

    // Usual order of a differential operator; -1 for the zero operator.
    int order() const {
        int d = -1;
        for (const auto& [key, c] : terms_)
            d = std::max(d, static_cast<int>(key.total_degree()));
        return d;
    }

    // Parity of a homogeneous operator: coefficient parity plus the parity of
    // the derivative factors.
    std::optional<Parity> parity() const {
        std::optional<Parity> p;
        for (const auto& [key, c] : terms_) {
            auto cp = c.parity();
            if (!cp) return std::nullopt;
            Parity tp = *cp + key.parity();
            if (p && *p != tp) return std::nullopt;
            p = tp;
        }
        return p;
    }

    // Delta(1): the no-derivative coefficient.
    SuperPoly evaluate_at_one() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? SuperPoly::zero(sig_) : it->second;
    }

  private:
    SignaturePtr sig_;
    std::map<Monomial, SuperPoly> terms_;
};

inline DiffOperator compose_operators(const DiffOperator& a, const DiffOperator& b) {
    return compose(a, b);
}

}  // namespace hdb

#endif
