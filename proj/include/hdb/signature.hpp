#ifndef HDB_SIGNATURE_HPP
#define HDB_SIGNATURE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdb {

// Z2 grading. Tilde of a product adds mod 2.
enum class Parity : uint8_t { even = 0, odd = 1 };

inline Parity operator+(Parity a, Parity b) {
    return static_cast<Parity>((static_cast<uint8_t>(a) ^ static_cast<uint8_t>(b)));
}
inline bool is_odd(Parity p) { return p == Parity::odd; }
inline Parity flip(Parity p) { return p + Parity::odd; }
inline const char* parity_name(Parity p) { return p == Parity::even ? "even" : "odd"; }

enum class VarRole : uint8_t {
    base,       // coordinate x^a (or xi^i in the vector-field realization)
    momentum,   // p_a, same parity as its base variable
    antimomentum,  // x*_a, opposite parity to its base variable
    aux,        // auxiliary constant parameter (odd constants for scalar extension)
};

using VarId = uint32_t;

struct VarDecl {
    std::string name;
    Parity parity;
    VarRole role;
    // For momentum/antimomentum: id of the base variable they are conjugate to.
    std::optional<VarId> base;
};

// A fixed, immutable list of variable declarations. Declaration order is the
// canonical monomial order; odd factors are always stored ascending by id with
// reordering signs absorbed into coefficients.
class Signature {
  public:
    VarId declare(std::string name, Parity parity, VarRole role,
                  std::optional<VarId> base = std::nullopt) {
        for (const auto& v : vars_)
            if (v.name == name) throw std::invalid_argument("duplicate variable: " + name);
        if (role == VarRole::momentum && (!base || vars_.at(*base).parity != parity))
            throw std::invalid_argument("momentum must share parity with its base variable");
        if (role == VarRole::antimomentum && (!base || flip(vars_.at(*base).parity) != parity))
            throw std::invalid_argument("antimomentum must have parity opposite to its base");
        vars_.push_back(VarDecl{std::move(name), parity, role, base});
        return static_cast<VarId>(vars_.size() - 1);
    }

    // Declares a base variable together with its momentum p_<name> and
    // antimomentum xs_<name>.
    VarId declare_coordinate(const std::string& name, Parity parity) {
        VarId b = declare(name, parity, VarRole::base);
        declare("p_" + name, parity, VarRole::momentum, b);
        declare("xs_" + name, flip(parity), VarRole::antimomentum, b);
        return b;
    }

    VarId declare_aux(const std::string& name, Parity parity) {
        return declare(name, parity, VarRole::aux);
    }

    size_t size() const { return vars_.size(); }
    const VarDecl& var(VarId id) const { return vars_.at(id); }
    Parity parity(VarId id) const { return vars_.at(id).parity; }
    VarRole role(VarId id) const { return vars_.at(id).role; }

    std::optional<VarId> find(const std::string& name) const {
        for (VarId i = 0; i < vars_.size(); ++i)
            if (vars_[i].name == name) return i;
        return std::nullopt;
    }

    std::optional<VarId> momentum_of(VarId base) const { return conjugate_of(base, VarRole::momentum); }
    std::optional<VarId> antimomentum_of(VarId base) const {
        return conjugate_of(base, VarRole::antimomentum);
    }

    std::vector<VarId> ids_with_role(VarRole role) const {
        std::vector<VarId> out;
        for (VarId i = 0; i < vars_.size(); ++i)
            if (vars_[i].role == role) out.push_back(i);
        return out;
    }

    std::vector<VarId> base_ids() const { return ids_with_role(VarRole::base); }

  private:
    std::optional<VarId> conjugate_of(VarId base, VarRole role) const {
        for (VarId i = 0; i < vars_.size(); ++i)
            if (vars_[i].role == role && vars_[i].base == base) return i;
        return std::nullopt;
    }

    std::vector<VarDecl> vars_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

}  // namespace hdb

#endif
