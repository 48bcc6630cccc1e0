#ifndef HDB_SUPERPOLY_HPP
#define HDB_SUPERPOLY_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hdb/rational.hpp"
#include "hdb/signature.hpp"

namespace hdb {

// A monomial over a signature: nonnegative exponents on even variables plus an
// ordered square-free subset of odd variables. Odd factors are kept in
// canonical (declaration) order; reordering signs are absorbed into the
// coefficient by the polynomial layer. Odd variable ids must be < 64.
struct Monomial {
    std::vector<std::pair<VarId, uint32_t>> evens;  // sorted by VarId, exponents > 0
    uint64_t odd_mask = 0;

    bool operator==(const Monomial&) const = default;
    auto operator<=>(const Monomial& o) const {
        if (auto c = odd_mask <=> o.odd_mask; c != 0) return c;
        return evens <=> o.evens;
    }

    bool is_one() const { return evens.empty() && odd_mask == 0; }
    Parity parity() const {
        return (std::popcount(odd_mask) & 1) ? Parity::odd : Parity::even;
    }
    uint32_t exponent(VarId v) const {
        for (const auto& [id, e] : evens)
            if (id == v) return e;
        return 0;
    }
    bool has_odd(VarId v) const { return (odd_mask >> v) & 1u; }
    uint32_t total_degree() const {
        uint32_t d = std::popcount(odd_mask);
        for (const auto& [id, e] : evens) d += e;
        return d;
    }
};

// Sign of merging two ascending odd-factor lists, left list first.
// -1 for each pair (a in lhs, b in rhs) with a > b. Zero overlap assumed.
inline int merge_sign(uint64_t lhs, uint64_t rhs) {
    int inversions = 0;
    uint64_t r = rhs;
    while (r) {
        VarId b = static_cast<VarId>(std::countr_zero(r));
        r &= r - 1;
        inversions += std::popcount(lhs >> (b + 1));
    }
    return (inversions & 1) ? -1 : 1;
}

// Exact supercommutative polynomial: sparse map from monomial to rational,
// zero coefficients never stored.
class SuperPoly {
  public:
    SuperPoly() = default;
    explicit SuperPoly(SignaturePtr sig) : sig_(std::move(sig)) {}

    static SuperPoly zero(SignaturePtr sig) { return SuperPoly(std::move(sig)); }
    static SuperPoly constant(SignaturePtr sig, Rational c) {
        SuperPoly p(std::move(sig));
        if (c != 0) p.terms_[Monomial{}] = std::move(c);
        return p;
    }
    static SuperPoly variable(SignaturePtr sig, VarId v) {
        SuperPoly p(sig);
        Monomial m;
        if (is_odd(sig->parity(v))) {
            if (v >= 64) throw std::invalid_argument("odd variable id out of range");
            m.odd_mask = uint64_t{1} << v;
        } else {
            m.evens.push_back({v, 1});
        }
        p.terms_[m] = 1;
        return p;
    }

    const SignaturePtr& signature() const { return sig_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    bool operator==(const SuperPoly& o) const { return terms_ == o.terms_; }

    // Parity of a homogeneous polynomial; nullopt for zero or mixed terms.
    std::optional<Parity> parity() const {
        if (terms_.empty()) return std::nullopt;
        Parity p = terms_.begin()->first.parity();
        for (const auto& [m, c] : terms_)
            if (m.parity() != p) return std::nullopt;
        return p;
    }
    bool is_homogeneous() const { return terms_.empty() || parity().has_value(); }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    SuperPoly& operator+=(const SuperPoly& o) {
        check_same_signature(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    SuperPoly& operator-=(const SuperPoly& o) {
        check_same_signature(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    SuperPoly& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
        } else {
            for (auto& [m, v] : terms_) v *= c;
        }
        return *this;
    }

    friend SuperPoly operator+(SuperPoly a, const SuperPoly& b) { return a += b; }
    friend SuperPoly operator-(SuperPoly a, const SuperPoly& b) { return a -= b; }
    friend SuperPoly operator*(SuperPoly a, const Rational& c) { return a *= c; }
    friend SuperPoly operator*(const Rational& c, SuperPoly a) { return a *= c; }
    friend SuperPoly operator-(SuperPoly a) { return a *= Rational(-1); }

    // Supercommutative product: ab = (-1)^{~a~b} ba on homogeneous elements.
    friend SuperPoly operator*(const SuperPoly& a, const SuperPoly& b) {
        a.check_same_signature(b);
        SuperPoly out(a.sig_ ? a.sig_ : b.sig_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                if (ma.odd_mask & mb.odd_mask) continue;  // odd square
                Monomial m;
                m.odd_mask = ma.odd_mask | mb.odd_mask;
                m.evens = merge_evens(ma.evens, mb.evens);
                Rational c = ca * cb;
                if (merge_sign(ma.odd_mask, mb.odd_mask) < 0) c = -c;
                out.add_term(m, c);
            }
        }
        return out;
    }

    // Left partial derivative by v:
    //   d_v(fg) = (d_v f) g + (-1)^{~v~f} f (d_v g).
    SuperPoly partial(VarId v) const {
        if (!sig_ || v >= sig_->size()) throw std::invalid_argument("undeclared variable");
        SuperPoly out(sig_);
        const bool v_odd = is_odd(sig_->parity(v));
        for (const auto& [m, c] : terms_) {
            if (v_odd) {
                if (!m.has_odd(v)) continue;
                Monomial r = m;
                r.odd_mask &= ~(uint64_t{1} << v);
                // bring theta_v to the front of the ascending factor list
                int below = std::popcount(m.odd_mask & ((uint64_t{1} << v) - 1));
                Rational nc = (below & 1) ? -c : c;
                out.add_term(r, nc);
            } else {
                uint32_t e = m.exponent(v);
                if (e == 0) continue;
                Monomial r = m;
                for (auto& [id, ex] : r.evens)
                    if (id == v) --ex;
                std::erase_if(r.evens, [](const auto& p) { return p.second == 0; });
                out.add_term(r, c * Rational(e));
            }
        }
        return out;
    }

    // Drops every term that contains any variable for which `keep` is false.
    template <class Pred>
    SuperPoly filter_vars(Pred keep) const {
        SuperPoly out(sig_);
        for (const auto& [m, c] : terms_) {
            bool ok = true;
            for (const auto& [id, e] : m.evens)
                if (!keep(id)) { ok = false; break; }
            uint64_t mask = m.odd_mask;
            while (ok && mask) {
                VarId v = static_cast<VarId>(std::countr_zero(mask));
                mask &= mask - 1;
                if (!keep(v)) ok = false;
            }
            if (ok) out.add_term(m, c);
        }
        return out;
    }

    Rational constant_term() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // Max total degree counting only variables selected by `count`.
    template <class Pred>
    int degree_in(Pred count) const {
        int deg = -1;
        for (const auto& [m, c] : terms_) {
            int d = 0;
            for (const auto& [id, e] : m.evens)
                if (count(id)) d += static_cast<int>(e);
            uint64_t mask = m.odd_mask;
            while (mask) {
                VarId v = static_cast<VarId>(std::countr_zero(mask));
                mask &= mask - 1;
                if (count(v)) ++d;
            }
            deg = std::max(deg, d);
        }
        return deg;  // -1 for the zero polynomial
    }

    int total_degree() const {
        return degree_in([](VarId) { return true; });
    }

  private:
    void check_same_signature(const SuperPoly& o) const {
        if (sig_ && o.sig_ && sig_ != o.sig_)
            throw std::invalid_argument("signature mismatch");
    }

    static std::vector<std::pair<VarId, uint32_t>> merge_evens(
        const std::vector<std::pair<VarId, uint32_t>>& a,
        const std::vector<std::pair<VarId, uint32_t>>& b) {
        std::vector<std::pair<VarId, uint32_t>> out;
        out.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i].first < b[j].first) {
                out.push_back(a[i++]);
            } else if (b[j].first < a[i].first) {
                out.push_back(b[j++]);
            } else {
                out.push_back({a[i].first, a[i].second + b[j].second});
                ++i;
                ++j;
            }
        }
        for (; i < a.size(); ++i) out.push_back(a[i]);
        for (; j < b.size(); ++j) out.push_back(b[j]);
        return out;
    }

    SignaturePtr sig_;
    std::map<Monomial, Rational> terms_;
};

inline SuperPoly poly_mul(const SuperPoly& a, const SuperPoly& b) { return a * b; }

}  // namespace hdb

#endif
