#ifndef HDB_FIBER_HPP
#define HDB_FIBER_HPP

#include <optional>
#include <vector>

#include "hdb/derived.hpp"

namespace hdb {

// An element of the cocylinder. The parity shift is implicit in which diagram
// the pair lives in: (l, v) reads as (x, Pi a) in L + Pi V and as (Pi x, a)
// in the shifted Pi L + V, where x in L and a in V. The components are stored
// unshifted; all signs route through the parity bookkeeping.
struct CocylPair {
    Element l;
    Element v;
};

// Cocylinder of the inclusion Ker P -> L for a differential Lie superalgebra
// (L, d). Construction requires the compatibility PdP = Pd; d^2 = 0 is probed
// and only downgrades the L-infinity claim when it fails.
class FiberEngine {
  public:
    FiberEngine(ContextPtr ctx, Derivation d, size_t certify_trials = 25,
                uint64_t certify_seed = 1);

    const ContextPtr& context() const { return ctx_; }
    const Derivation& derivation() const { return d_; }
    bool d_squared_probe_zero() const { return d2_zero_; }

    CocylPair zero_pair() const;
    bool pair_is_zero(const CocylPair& p) const;
    // common parity of (Pi x, a) in the shifted diagram; nullopt if mixed
    std::optional<Parity> pair_parity(const CocylPair& p) const;

    // D(x, Pi a) = (dx, -Pi P(x + da)) on L + Pi V
    CocylPair D(const CocylPair& p) const;
    // D(Pi x, a) = (-Pi dx, P(x + da)) on Pi L + V
    CocylPair D_shifted(const CocylPair& p) const;

    CocylPair j(const Element& x) const;  // x in Ker P; throws otherwise
    Element p_map(const CocylPair& p) const { return p.l; }
    Element q_map(const CocylPair& p) const;  // (1-P)(x + da)

    // The extended symmetric brackets on Pi L + V
    // (eqextbracket..eqextbracketlast); the 0-ary bracket is zero.
    CocylPair extended_bracket(const std::vector<CocylPair>& args) const;

    // strict Jacobiator (no 0-ary term) of the extended brackets
    CocylPair jacobiator(const std::vector<CocylPair>& args) const;

    CocylPair random_pair(Rng& rng, std::optional<Parity> parity = std::nullopt) const;

  private:
    ContextPtr ctx_;
    Derivation d_;
    bool d2_zero_ = true;
};

CocylPair add_pair(const ContextPtr& ctx, const CocylPair& a, const CocylPair& b);
CocylPair sub_pair(const ContextPtr& ctx, const CocylPair& a, const CocylPair& b);
CocylPair scale_pair(const CocylPair& a, const Rational& c);

// Generalized Jacobi identities of the extended brackets for n = 1..n_max on
// random homogeneous pairs. With d^2 = 0 (probed) any nonzero residual is a
// failure; otherwise residuals are reported without a strictness claim.
JacobiReport verify_fiber_linfty(const FiberEngine& engine, int n_max, size_t trials,
                                 uint64_t seed);

std::string print_pair(const ContextPtr& ctx, const CocylPair& p);

}  // namespace hdb

#endif
