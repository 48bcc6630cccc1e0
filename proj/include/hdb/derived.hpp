#ifndef HDB_DERIVED_HPP
#define HDB_DERIVED_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hdb/context.hpp"

namespace hdb {

// An abstract derivation of the Lie superalgebra of a context. Inner
// derivations ad_Delta are the main source; the black-box form allows
// non-inner candidates, whose derivation property and the PdP = Pd law are
// then certified at runtime rather than by construction.
struct Derivation {
    Parity parity = Parity::odd;
    std::function<Element(const Element&)> apply;
    bool inner = false;
};

Derivation inner_derivation(ContextPtr ctx, Element delta);

struct DerivationCertificate {
    bool derivation_law = true;  // d[a,b] = [da,b] + (-1)^{~d~a}[a,db]
    bool pdp_law = true;         // PdP = Pd
    std::string witness;
};
DerivationCertificate certify_derivation(const ContextPtr& ctx, const Derivation& d,
                                         size_t trials, uint64_t seed);

// Context plus generator: produces the higher derived brackets and their
// Jacobiators.
class DerivedEngine {
  public:
    DerivedEngine(ContextPtr ctx, Element delta);
    DerivedEngine(ContextPtr ctx, Derivation d);

    const ContextPtr& context() const { return ctx_; }
    bool has_element_generator() const { return !is_derivation_; }
    const Element& delta() const;
    Parity generator_parity() const { return gen_parity_; }

    // {a_1,...,a_n} = P[...[[Delta,a_1],a_2],...,a_n], or
    // P[...[da_1,a_2],...,a_n] for a derivation (n >= 1 there).
    Element derived_bracket(const std::vector<Element>& args) const;

    // Phi = 0-ary bracket (element generators only).
    Element phi() const;

    // Delta^2 = 1/2 [Delta,Delta] resp. d^2 = d o d; generator must be odd.
    DerivedEngine squared() const;

    // LHS of the generalized Jacobi identity of arity n = args.size().
    // include_zeroary=false drops the k=0 shuffle block (mandatory for
    // derivation generators, optional Phi-dropping for element generators).
    Element jacobiator(const std::vector<Element>& args, bool include_zeroary = true) const;

    // Same value on n copies of an even argument, via the binomial formula.
    Element jacobiator_even(const Element& xi, int n) const;

    // {a_1,...,a_{n-1},gh} - {...,g}h - (-1)^{~g~h}{...,h}g; equal to the
    // (n+1)-ary bracket in the ops context, zero in ham/multivec.
    Element leibniz_defect(const std::vector<Element>& prefix, const Element& g,
                           const Element& h) const;

    // P[Delta, P(Delta)] = [Delta, P(Delta)] (sufficient Phi-splitting law).
    bool phi_split_condition() const;

  private:
    Element nested(Element cur, const std::vector<Element>& args, size_t from) const;

    ContextPtr ctx_;
    bool is_derivation_ = false;
    Element delta_;
    Derivation d_;
    Parity gen_parity_ = Parity::odd;
};

struct JacobiCase {
    std::vector<std::string> inputs;
    std::string residual;  // printed nonzero residual
};

struct JacobiReport {
    std::string what;
    size_t trials = 0;
    uint64_t seed = 0;
    std::vector<JacobiCase> failures;
    std::string note;
    bool ok() const { return failures.empty(); }
};

// Theorem: J^n_Delta = {...}_{Delta^2}, random odd Delta per trial, n <= n_max.
JacobiReport verify_theorem1(const ContextPtr& ctx, int n_max, size_t trials, uint64_t seed);

// Derivation variant: J^n_d = {...}_{d^2} for n >= 1, for derivations with
// PdP = Pd. The factory supplies the derivation under test per trial.
JacobiReport verify_theorem2(const ContextPtr& ctx,
                             const std::function<Derivation(Rng&)>& factory, int n_max,
                             size_t trials, uint64_t seed);

// ord_V(Delta^2) <= r implies the Jacobi identities of orders n > r.
JacobiReport check_order_corollary(const DerivedEngine& engine, int r, int n_max,
                                   size_t trials, uint64_t seed);

// hbar-rescaled bracket: value together with its homogeneous power of the
// formal even parameter t = -i*hbar. The n-ary bracket carries t^{-n}.
struct ScaledV {
    Element value;
    int t_power = 0;
};

class HbarEngine {
  public:
    explicit HbarEngine(DerivedEngine engine) : engine_(std::move(engine)) {}
    const DerivedEngine& base() const { return engine_; }
    ScaledV bracket(const std::vector<Element>& args) const {
        return {engine_.derived_bracket(args), -static_cast<int>(args.size())};
    }

  private:
    DerivedEngine engine_;
};

// Formal polynomial in t with Element coefficients; exact comparison support
// for the deformed Leibniz identity.
using TSeries = std::map<int, Element>;
void tseries_add(const ContextPtr& ctx, TSeries& s, const ScaledV& v, const Rational& c = 1);
bool tseries_zero(const ContextPtr& ctx, const TSeries& s);

// Brackets of Delta and Delta' = Delta - P(Delta) coincide for n >= 1, and
// the Phi-dropped Jacobiators equal the full ones for s <= n <= 2s-1 where
// s = ord(Delta).
JacobiReport drop_phi_invariance(const DerivedEngine& engine, size_t trials, uint64_t seed);

}  // namespace hdb

#endif
