#ifndef HDB_CONTEXT_HPP
#define HDB_CONTEXT_HPP

#include <climits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hdb/operators.hpp"
#include "hdb/rng.hpp"
#include "hdb/superpoly.hpp"
#include "hdb/vectorfield.hpp"

namespace hdb {

enum class ContextKind { vect, ops, ham, multivec };
const char* kind_name(ContextKind k);
std::optional<ContextKind> kind_from_name(const std::string& name);

// The universal element type; each context uses one alternative.
using Element = std::variant<SuperPoly, VectorField, DiffOperator>;

struct DegreeCaps {
    int max_base_degree = 2;
    int max_operator_order = 3;
    int arity_cap = 4;
    bool operator==(const DegreeCaps&) const = default;
};

// order() of the zero element; never fed to corollary logic.
constexpr int kOrderUndefined = INT_MIN;

// A Lie superalgebra L with a projector P onto an Abelian subalgebra V whose
// kernel is a subalgebra. bracket/project/parity/order are the four
// realization-specific maps; everything downstream is generic over them.
class LieContext {
  public:
    LieContext(ContextKind kind, SignaturePtr sig, DegreeCaps caps)
        : kind_(kind), sig_(std::move(sig)), caps_(caps) {}
    virtual ~LieContext() = default;

    ContextKind kind() const { return kind_; }
    const SignaturePtr& signature() const { return sig_; }
    const DegreeCaps& caps() const { return caps_; }

    virtual Element bracket(const Element& a, const Element& b) const = 0;
    virtual Element project(const Element& a) const = 0;
    // Parity as an element of the Lie superalgebra (the multivector context
    // reads the shifted parity here); nullopt if inhomogeneous.
    virtual std::optional<Parity> parity(const Element& a) const = 0;
    virtual int order(const Element& a) const = 0;
    virtual Element zero() const = 0;

    // V as a value space. Where V is a function algebra (ops/ham/multivec),
    // embed/v_value convert between polynomials in the base variables and
    // the context's canonical V form.
    virtual bool v_is_function_algebra() const { return true; }
    virtual Element embed(const SuperPoly& f) const;
    virtual SuperPoly v_value(const Element& a) const;

    virtual Element random_element(Rng& rng, Parity parity) const = 0;
    virtual Element random_v(Rng& rng, std::optional<Parity> parity = {}) const = 0;
    // All V-monomials of total degree <= max_degree (the bounded probe set).
    virtual std::vector<Element> v_monomials(int max_degree) const = 0;

    bool is_zero(const Element& a) const;
    bool in_v(const Element& a) const;
    Parity parity_or_throw(const Element& a) const;

  private:
    ContextKind kind_;
    SignaturePtr sig_;
    DegreeCaps caps_;
};

using ContextPtr = std::shared_ptr<const LieContext>;

// Pointwise element arithmetic (same context, same alternative).
Element add(const Element& a, const Element& b);
Element sub(const Element& a, const Element& b);
Element negate(const Element& a);
Element scale(const Element& a, const Rational& r);

ContextPtr make_context(ContextKind kind, SignaturePtr sig, DegreeCaps caps = {});
// Deliberately broken vect projector (evaluation away from the origin);
// violates the distributive law and serves as a negative fixture.
ContextPtr make_vect_context_with_offset(SignaturePtr sig, DegreeCaps caps,
                                         const Rational& offset);

struct ProjectorViolation {
    std::string law;  // "abelian-image" | "distributive" | "idempotent"
    std::string witness_a;
    std::string witness_b;
};

struct ProjectorReport {
    size_t trials = 0;
    std::vector<ProjectorViolation> violations;
    bool ok() const { return violations.empty(); }
};

// Random check of [Pa,Pb]=0, P[a,b]=P[Pa,b]+P[a,Pb], P^2=P.
ProjectorReport check_projector_axioms(const LieContext& ctx, size_t trials, uint64_t seed);

// Bounded check that ord_V(a) <= r: all (r+1)-fold nested brackets against
// V-monomials of degree <= probe_degree vanish. A sound bounded check, not a
// proof over all of V.
bool order_bruteforce_leq(const LieContext& ctx, const Element& a, int r, int probe_degree);

// Top-order derivative part with d_a |-> p_a; lives in the same signature
// (momenta are pre-declared for every coordinate).
SuperPoly principal_symbol(const DiffOperator& op);

// Random polynomial helpers shared by the contexts and the test suites.
std::vector<Monomial> enumerate_monomials(const Signature& sig, const std::vector<VarId>& vars,
                                          int max_degree);
SuperPoly random_poly(Rng& rng, const SignaturePtr& sig, const std::vector<VarId>& vars,
                      Parity parity, int max_degree, int max_terms);

}  // namespace hdb

#endif
