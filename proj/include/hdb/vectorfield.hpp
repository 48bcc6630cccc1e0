#ifndef HDB_VECTORFIELD_HPP
#define HDB_VECTORFIELD_HPP

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hdb/superpoly.hpp"

namespace hdb {

// A polynomial vector field X = X^k(xi) d/dxi^k with a declared parity.
// Components are indexed by position in Signature::base_ids(); component k
// must have parity = field parity + parity of the k-th coordinate.
class VectorField {
  public:
    VectorField() = default;
    VectorField(SignaturePtr sig, Parity parity)
        : sig_(std::move(sig)), parity_(parity) {
        comps_.assign(sig_->base_ids().size(), SuperPoly(sig_));
    }
    VectorField(SignaturePtr sig, Parity parity, std::vector<SuperPoly> comps)
        : sig_(std::move(sig)), parity_(parity), comps_(std::move(comps)) {}

    static VectorField zero(SignaturePtr sig, Parity parity = Parity::even) {
        return VectorField(std::move(sig), parity);
    }
    // The constant coordinate field d/dxi^k.
    static VectorField basis(SignaturePtr sig, size_t k) {
        Parity p = sig->parity(sig->base_ids().at(k));
        VectorField x(sig, p);
        x.comps_[k] = SuperPoly::constant(sig, 1);
        return x;
    }

    const SignaturePtr& signature() const { return sig_; }
    Parity declared_parity() const { return parity_; }
    const std::vector<SuperPoly>& components() const { return comps_; }
    SuperPoly& component(size_t k) { return comps_.at(k); }
    const SuperPoly& component(size_t k) const { return comps_.at(k); }

    bool is_zero() const {
        for (const auto& c : comps_)
            if (!c.is_zero()) return false;
        return true;
    }
    bool operator==(const VectorField& o) const { return comps_ == o.comps_; }

    bool is_homogeneous() const {
        auto base = sig_->base_ids();
        for (size_t k = 0; k < comps_.size(); ++k) {
            if (comps_[k].is_zero()) continue;
            auto p = comps_[k].parity();
            if (!p || *p != parity_ + sig_->parity(base[k])) return false;
        }
        return true;
    }

    SuperPoly apply(const SuperPoly& f) const {
        SuperPoly out(sig_);
        auto base = sig_->base_ids();
        for (size_t k = 0; k < comps_.size(); ++k)
            out += comps_[k] * f.partial(base[k]);
        return out;
    }

    // Lie bracket: [X,Y]^k = X(Y^k) - (-1)^{~X~Y} Y(X^k).
    friend VectorField lie_bracket(const VectorField& x, const VectorField& y) {
        VectorField out(x.sig_, x.parity_ + y.parity_);
        int sign = (is_odd(x.parity_) && is_odd(y.parity_)) ? -1 : 1;
        for (size_t k = 0; k < out.comps_.size(); ++k) {
            out.comps_[k] = x.apply(y.comps_[k]);
            SuperPoly t = y.apply(x.comps_[k]);
            if (sign < 0)
                out.comps_[k] += t;
            else
                out.comps_[k] -= t;
        }
        return out;
    }

    // Value at the origin as a constant vector field: coordinates set to
    // zero, auxiliary constants kept.
    VectorField at_origin() const {
        VectorField out(sig_, parity_);
        for (size_t k = 0; k < comps_.size(); ++k)
            out.comps_[k] = comps_[k].filter_vars(
                [&](VarId v) { return sig_->role(v) == VarRole::aux; });
        return out;
    }

    // Degree in the coordinates (the order filtration); -1 for zero.
    int coordinate_degree() const {
        int d = -1;
        for (const auto& c : comps_)
            d = std::max(d, c.degree_in([&](VarId v) {
                return sig_->role(v) == VarRole::base;
            }));
        return d;
    }

    VectorField& operator+=(const VectorField& o) {
        for (size_t k = 0; k < comps_.size(); ++k) comps_[k] += o.comps_[k];
        return *this;
    }
    VectorField& operator-=(const VectorField& o) {
        for (size_t k = 0; k < comps_.size(); ++k) comps_[k] -= o.comps_[k];
        return *this;
    }
    VectorField& operator*=(const Rational& r) {
        for (auto& c : comps_) c *= r;
        return *this;
    }
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(VectorField a, const Rational& r) { return a *= r; }
    friend VectorField operator*(const Rational& r, VectorField a) { return a *= r; }

  private:
    SignaturePtr sig_;
    Parity parity_ = Parity::even;
    std::vector<SuperPoly> comps_;
};

}  // namespace hdb

#endif
