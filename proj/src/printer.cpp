#include "hdb/printer.hpp"

#include <bit>
#include <sstream>

namespace hdb {
namespace {

// One monomial with its coefficient, without a leading sign.
std::string monomial_body(const Signature& sig, const Monomial& m, const Rational& abs_coeff) {
    std::vector<std::string> factors;
    if (abs_coeff != 1 || m.is_one()) factors.push_back(rat_to_string(abs_coeff));
    for (const auto& [v, e] : m.evens) {
        std::string f = sig.var(v).name;
        if (e > 1) f += "^" + std::to_string(e);
        factors.push_back(f);
    }
    uint64_t mask = m.odd_mask;
    while (mask) {
        VarId v = static_cast<VarId>(std::countr_zero(mask));
        mask &= mask - 1;
        factors.push_back(sig.var(v).name);
    }
    std::string out;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) out += "*";
        out += factors[i];
    }
    return out;
}

void append_signed(std::string& out, bool negative, const std::string& body) {
    if (out.empty()) {
        if (negative) out += "-";
    } else {
        out += negative ? " - " : " + ";
    }
    out += body;
}

std::string deriv_factors(const Signature& sig, const Monomial& key) {
    std::string out;
    for (const auto& [v, e] : key.evens) {
        for (uint32_t i = 0; i < e; ++i) {
            if (!out.empty()) out += "*";
            out += "d(" + sig.var(v).name + ")";
        }
    }
    uint64_t mask = key.odd_mask;
    while (mask) {
        VarId v = static_cast<VarId>(std::countr_zero(mask));
        mask &= mask - 1;
        if (!out.empty()) out += "*";
        out += "d(" + sig.var(v).name + ")";
    }
    return out;
}

}  // namespace

std::string print_poly(const SuperPoly& p) {
    if (p.is_zero()) return "0";
    const Signature& sig = *p.signature();
    std::string out;
    for (const auto& [m, c] : p.terms()) {
        bool neg = c < 0;
        append_signed(out, neg, monomial_body(sig, m, neg ? Rational(-c) : c));
    }
    return out;
}

std::string print_operator(const DiffOperator& op) {
    if (op.is_zero()) return "0";
    const Signature& sig = *op.signature();
    std::string out;
    for (const auto& [key, coeff] : op.terms()) {
        std::string dpart = deriv_factors(sig, key);
        if (coeff.term_count() == 1) {
            const auto& [m, c] = *coeff.terms().begin();
            bool neg = c < 0;
            std::string body;
            if (dpart.empty()) {
                body = monomial_body(sig, m, neg ? Rational(-c) : c);
            } else if (m.is_one() && (c == 1 || c == -1)) {
                body = dpart;
            } else {
                body = monomial_body(sig, m, neg ? Rational(-c) : c) + "*" + dpart;
            }
            append_signed(out, neg, body);
        } else {
            std::string body = "(" + print_poly(coeff) + ")";
            if (!dpart.empty()) body += "*" + dpart;
            append_signed(out, false, body);
        }
    }
    return out;
}

std::string print_field(const VectorField& x) {
    if (x.is_zero()) return "0";
    const Signature& sig = *x.signature();
    auto base = sig.base_ids();
    std::string out;
    for (size_t k = 0; k < x.components().size(); ++k) {
        const SuperPoly& comp = x.component(k);
        std::string datom = "d(" + sig.var(base[k]).name + ")";
        for (const auto& [m, c] : comp.terms()) {
            bool neg = c < 0;
            std::string body;
            if (m.is_one() && (c == 1 || c == -1)) {
                body = datom;
            } else {
                body = monomial_body(sig, m, neg ? Rational(-c) : c) + "*" + datom;
            }
            append_signed(out, neg, body);
        }
    }
    return out;
}

std::string print_element(const Element& e) {
    if (std::holds_alternative<SuperPoly>(e)) return print_poly(std::get<SuperPoly>(e));
    if (std::holds_alternative<VectorField>(e)) return print_field(std::get<VectorField>(e));
    return print_operator(std::get<DiffOperator>(e));
}

}  // namespace hdb
