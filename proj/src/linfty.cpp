#include "hdb/linfty.hpp"

#include "hdb/koszul.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace hdb {

namespace {

std::vector<Rational> zero_vector(size_t n) { return std::vector<Rational>(n, Rational(0)); }

bool vector_is_zero(const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c == 0; });
}

// Sorts the index tuple ascending via adjacent swaps, accumulating the Koszul
// sign (times the permutation sign in antisymmetric mode). Returns 0 when the
// tuple dies by (anti)symmetry: a repeated odd index in symmetric mode, a
// repeated even index in antisymmetric mode.
int sort_with_sign(std::vector<size_t>& idx, const std::vector<Parity>& parities, bool anti) {
    int sign = 1;
    for (size_t i = 1; i < idx.size(); ++i)
        for (size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
            if (is_odd(parities[idx[j - 1]]) && is_odd(parities[idx[j]])) sign = -sign;
            if (anti) sign = -sign;
            std::swap(idx[j - 1], idx[j]);
        }
    for (size_t i = 1; i < idx.size(); ++i)
        if (idx[i] == idx[i - 1] &&
            (anti ? !is_odd(parities[idx[i]]) : is_odd(parities[idx[i]])))
            return 0;
    return sign;
}

std::vector<Rational> lookup(const LInftyStructure& s, std::vector<size_t> idx, bool anti) {
    for (size_t i : idx)
        if (i >= s.dim()) throw std::out_of_range("basis index out of range");
    int sign = sort_with_sign(idx, s.parities, anti);
    auto it = s.table.find(idx);
    if (sign == 0 || it == s.table.end()) return zero_vector(s.dim());
    auto out = it->second;
    if (sign < 0)
        for (auto& c : out) c = -c;
    return out;
}

void keys_rec(const std::vector<Parity>& parities, int remaining, size_t from,
              std::vector<size_t>& cur, std::vector<std::vector<size_t>>& out) {
    out.push_back(cur);
    if (remaining == 0) return;
    for (size_t i = from; i < parities.size(); ++i) {
        if (is_odd(parities[i]) && !cur.empty() && cur.back() == i) continue;
        cur.push_back(i);
        keys_rec(parities, remaining - 1, i, cur, out);
        cur.pop_back();
    }
}

LInftyStructure tables_from_field(const VectorField& q, int arity_cap) {
    const SignaturePtr& sig = q.signature();
    auto base = sig->base_ids();
    LInftyStructure s;
    s.arity_cap = arity_cap;
    for (VarId v : base) {
        s.names.push_back(sig->var(v).name);
        s.parities.push_back(sig->parity(v));
    }
    for (const auto& key : enumerate_keys(s.parities, arity_cap)) {
        VectorField cur = q;
        for (size_t idx : key) cur = lie_bracket(cur, VectorField::basis(sig, idx));
        cur = cur.at_origin();
        std::vector<Rational> value(base.size(), Rational(0));
        for (size_t k = 0; k < base.size(); ++k)
            value[k] = cur.component(k).constant_term();
        s.set_bracket(key, std::move(value));
    }
    return s;
}

// eps = x~_1(n-1) + ... + x~_{n-1}, over the parities on the unshifted side
int pi_sign(const std::vector<size_t>& key, const std::vector<Parity>& x_parities) {
    size_t n = key.size();
    int eps = 0;
    for (size_t m = 0; m + 1 < n; ++m)
        if (is_odd(x_parities[key[m]])) eps += static_cast<int>(n - 1 - m);
    return (eps & 1) ? -1 : 1;
}

LInftyStructure pi_convert(const LInftyStructure& s, const std::vector<Parity>& x_parities) {
    LInftyStructure out;
    out.names = s.names;
    out.arity_cap = s.arity_cap;
    for (Parity p : s.parities) out.parities.push_back(flip(p));
    for (const auto& [key, value] : s.table) {
        auto v = value;
        if (pi_sign(key, x_parities) < 0)
            for (auto& c : v) c = -c;
        // direct insert: the symmetric-side key check does not apply to
        // antisymmetric tables, whose repeatable indices are the shifted ones
        out.table[key] = std::move(v);
    }
    return out;
}

}  // namespace

bool LInftyStructure::strict() const { return table.find({}) == table.end(); }

Parity LInftyStructure::key_parity(const std::vector<size_t>& key) const {
    Parity p = Parity::even;
    for (size_t i : key) p = p + parities.at(i);
    return p;
}

void LInftyStructure::set_bracket(std::vector<size_t> key, std::vector<Rational> value) {
    if (!std::is_sorted(key.begin(), key.end()))
        throw std::invalid_argument("bracket key must be ascending");
    for (size_t m = 1; m < key.size(); ++m)
        if (key[m] == key[m - 1] && is_odd(parities.at(key[m])))
            throw std::invalid_argument("odd basis index repeated in bracket key");
    if (value.size() != dim()) throw std::invalid_argument("coefficient vector length mismatch");
    if (static_cast<int>(key.size()) > arity_cap)
        arity_cap = static_cast<int>(key.size());
    if (vector_is_zero(value))
        table.erase(key);
    else
        table[std::move(key)] = std::move(value);
}

std::vector<Rational> LInftyStructure::bracket(const std::vector<size_t>& indices) const {
    return lookup(*this, indices, false);
}

std::vector<Rational> LInftyStructure::bracket_anti(const std::vector<size_t>& indices) const {
    return lookup(*this, indices, true);
}

std::vector<Rational> LInftyStructure::jacobiator(const std::vector<size_t>& indices,
                                                  bool include_zeroary) const {
    const size_t n = indices.size();
    std::vector<Parity> arg_parities;
    for (size_t i : indices) arg_parities.push_back(parities.at(i));
    std::vector<Rational> out = zero_vector(dim());
    for (size_t k = include_zeroary ? 0 : 1; k <= n; ++k) {
        for (const auto& [gp, sign] : shuffles(k, n - k, arg_parities)) {
            std::vector<size_t> inner_idx;
            for (size_t m = 0; m < k; ++m) inner_idx.push_back(indices[gp.perm[m]]);
            auto inner = bracket(inner_idx);
            for (size_t e = 0; e < dim(); ++e) {
                if (inner[e] == 0) continue;
                std::vector<size_t> outer_idx = {e};
                for (size_t m = k; m < n; ++m) outer_idx.push_back(indices[gp.perm[m]]);
                auto outer = bracket(outer_idx);
                Rational c = inner[e];
                if (sign < 0) c = -c;
                for (size_t j = 0; j < dim(); ++j) out[j] += c * outer[j];
            }
        }
    }
    return out;
}

std::optional<std::string> LInftyStructure::validate() const {
    if (parities.empty()) return "empty basis";
    if (!names.empty() && names.size() != parities.size()) return "names/parities length mismatch";
    for (const auto& [key, value] : table) {
        if (!std::is_sorted(key.begin(), key.end())) return "unsorted key";
        if (static_cast<int>(key.size()) > arity_cap) return "key above the arity cap";
        if (value.size() != dim()) return "coefficient vector length mismatch";
        for (size_t i : key)
            if (i >= dim()) return "basis index out of range";
        for (size_t m = 1; m < key.size(); ++m)
            if (key[m] == key[m - 1] && is_odd(parities[key[m]]))
                return "odd basis index repeated";
        Parity want = flip(key_parity(key));  // every bracket is odd
        for (size_t k = 0; k < dim(); ++k)
            if (value[k] != 0 && parities[k] != want) return "bracket is not odd";
    }
    return std::nullopt;
}

SignaturePtr linfty_signature(const LInftyStructure& s) {
    auto sig = std::make_shared<Signature>();
    for (size_t i = 0; i < s.dim(); ++i) {
        std::string name = i < s.names.size() && !s.names[i].empty()
                               ? s.names[i]
                               : "xi" + std::to_string(i);
        sig->declare_coordinate(name, s.parities[i]);
    }
    return sig;
}

VectorField q_from_brackets(const LInftyStructure& s) {
    SignaturePtr sig = linfty_signature(s);
    auto base = sig->base_ids();
    VectorField q(sig, Parity::odd);
    for (const auto& [key, value] : s.table) {
        Monomial m;
        Rational denom = 1;
        size_t odd_count = 0;
        for (size_t pos = 0; pos < key.size(); ++pos) {
            VarId v = base[key[pos]];
            if (is_odd(sig->parity(v))) {
                m.odd_mask |= uint64_t{1} << v;
                ++odd_count;
            } else if (!m.evens.empty() && m.evens.back().first == v) {
                m.evens.back().second += 1;
                denom *= m.evens.back().second;
            } else {
                m.evens.push_back({v, 1});
            }
        }
        // reversing the p odd coordinate factors of the Maclaurin monomial
        // xi^{i_n}...xi^{i_1} costs (-1)^{p(p-1)/2}; the bracket/coefficient
        // dictionary of the Maclaurin expansion contributes (-1)^{sum ~i + n}
        size_t swaps = odd_count * (odd_count - 1) / 2;
        size_t par = swaps + key.size();
        for (size_t i : key)
            if (is_odd(s.parities[i])) ++par;
        Rational factor = Rational((par & 1) ? -1 : 1) / denom;
        for (size_t k = 0; k < s.dim(); ++k) {
            if (value[k] == 0) continue;
            SuperPoly t(sig);
            t.add_term(m, factor * value[k]);
            q.component(k) += t;
        }
    }
    return q;
}

LInftyStructure brackets_from_q(const VectorField& q, int arity_cap) {
    if (!is_odd(q.declared_parity()) || !q.is_homogeneous())
        throw std::invalid_argument("generating vector field must be odd");
    return tables_from_field(q, arity_cap);
}

JacobiReport check_jacobi_structure(const LInftyStructure& s, int n_max) {
    JacobiReport report;
    report.what = "linfty-jacobi";
    if (auto err = s.validate()) {
        report.note = "invalid structure: " + *err;
        JacobiCase c;
        c.inputs.push_back(*err);
        c.residual = "-";
        report.failures.push_back(std::move(c));
        return report;
    }
    VectorField q = q_from_brackets(s);
    VectorField j = lie_bracket(q, q) * Rational(1, 2);
    LInftyStructure jt = tables_from_field(j, n_max);

    auto describe = [&](const std::vector<size_t>& key) {
        std::string out = "{";
        for (size_t m = 0; m < key.size(); ++m) {
            if (m) out += ",";
            out += key[m] < s.names.size() ? s.names[key[m]] : "e" + std::to_string(key[m]);
        }
        return out + "}";
    };

    for (const auto& key : enumerate_keys(s.parities, n_max)) {
        auto by_shuffles = s.jacobiator(key);
        auto by_square = jt.bracket(key);
        if (by_shuffles != by_square) {
            // the two computation paths must agree identically; a mismatch is
            // an internal convention error, not a property of s
            JacobiCase c;
            c.inputs.push_back("path mismatch at " + describe(key));
            c.residual = print_coeff_vector(by_shuffles) + " vs " + print_coeff_vector(by_square);
            report.failures.push_back(std::move(c));
            report.note = "shuffle/Q^2 path disagreement";
            continue;
        }
        if (!vector_is_zero(by_shuffles)) {
            JacobiCase c;
            c.inputs.push_back("n=" + std::to_string(key.size()));
            c.inputs.push_back(describe(key));
            c.residual = print_coeff_vector(by_shuffles);
            report.failures.push_back(std::move(c));
        }
    }
    return report;
}

LInftyStructure antialgebra_convert(const LInftyStructure& s) {
    std::vector<Parity> x_parities;
    for (Parity p : s.parities) x_parities.push_back(flip(p));
    return pi_convert(s, x_parities);
}

LInftyStructure antialgebra_invert(const LInftyStructure& s) { return pi_convert(s, s.parities); }

LInftyStructure random_structure(Rng& rng, size_t dim, int arity_cap, bool strict) {
    LInftyStructure s;
    s.arity_cap = arity_cap;
    for (size_t i = 0; i < dim; ++i) {
        s.names.push_back("e" + std::to_string(i));
        s.parities.push_back(rng.parity());
    }
    for (const auto& key : enumerate_keys(s.parities, arity_cap)) {
        if (strict && key.empty()) continue;
        if (rng.uniform(0, 2) == 0) continue;
        Parity want = flip(s.key_parity(key));
        std::vector<Rational> value(dim, Rational(0));
        for (size_t k = 0; k < dim; ++k)
            if (s.parities[k] == want && rng.coin()) value[k] = rng.coeff();
        s.set_bracket(key, std::move(value));
    }
    return s;
}

std::vector<std::vector<size_t>> enumerate_keys(const std::vector<Parity>& parities,
                                                int arity_cap) {
    std::vector<std::vector<size_t>> out;
    std::vector<size_t> cur;
    keys_rec(parities, arity_cap, 0, cur, out);
    return out;
}

std::string print_coeff_vector(const std::vector<Rational>& v) {
    std::string out = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += rat_to_string(v[i]);
    }
    return out + ")";
}

}  // namespace hdb
