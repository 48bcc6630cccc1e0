#ifndef HDB_LINFTY_HPP
#define HDB_LINFTY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hdb/derived.hpp"
#include "hdb/vectorfield.hpp"

namespace hdb {

// Structure constants of a sequence of symmetric n-ary brackets on a
// finite-dimensional graded space with basis e_0,...,e_{dim-1}. Tables are
// stored on ascending index keys only; an odd index may not repeat inside a
// key (the bracket vanishes there by symmetry). The empty key holds the 0-ary
// bracket Phi.
struct LInftyStructure {
    std::vector<std::string> names;
    std::vector<Parity> parities;
    int arity_cap = 0;
    std::map<std::vector<size_t>, std::vector<Rational>> table;

    size_t dim() const { return parities.size(); }
    bool strict() const;
    Parity key_parity(const std::vector<size_t>& key) const;

    // key must be ascending; zero vectors are dropped
    void set_bracket(std::vector<size_t> key, std::vector<Rational> value);

    // symmetric lookup: sorts the tuple, picking up the Koszul sign; returns
    // the coefficient vector of {e_{i_1},...,e_{i_n}}
    std::vector<Rational> bracket(const std::vector<size_t>& indices) const;

    // antisymmetric lookup, for tables produced by antialgebra_convert: the
    // sorting sign is the permutation sign times the Koszul sign
    std::vector<Rational> bracket_anti(const std::vector<size_t>& indices) const;

    // n-th Jacobiator (eqjacn LHS) evaluated on basis indices
    std::vector<Rational> jacobiator(const std::vector<size_t>& indices,
                                     bool include_zeroary = true) const;

    // checks key shape, vector lengths, and that every bracket is odd
    std::optional<std::string> validate() const;

    bool operator==(const LInftyStructure&) const = default;
};

// coordinates xi_i, one per basis vector, with matching parities
SignaturePtr linfty_signature(const LInftyStructure& s);

// The generating vector field Q = sum 1/n! {xi,...,xi} of the brackets.
// Inverse of brackets_from_q on the nose (up to the arity cap).
VectorField q_from_brackets(const LInftyStructure& s);

// Derived brackets of Q on the constant basis fields, evaluated at 0; the
// structure constants of the Maclaurin expansion. Q must be odd.
LInftyStructure brackets_from_q(const VectorField& q, int arity_cap);

// All Jacobi identities of arity <= n_max, computed twice: from the bracket
// tables by the shuffle formula, and as the derived brackets of Q^2 = 1/2[Q,Q]
// where Q generates the structure. The two paths must agree; nonzero values
// are reported as failures.
JacobiReport check_jacobi_structure(const LInftyStructure& s, int n_max);

// Parity-shift dictionary Pi[x_1,...,x_n] = {Pi x_1,...,Pi x_n}(-1)^eps,
// eps = x~_1(n-1)+...+x~_{n-1}. antialgebra_convert maps a symmetric
// structure on V to the antisymmetric bracket tables on the shifted space;
// antialgebra_invert is its exact inverse. Applying the same direction twice
// returns the original scaled by (-1)^{n(n-1)/2} per arity.
LInftyStructure antialgebra_convert(const LInftyStructure& s);
LInftyStructure antialgebra_invert(const LInftyStructure& s);

// random parity-consistent structure (all brackets odd), for roundtrips
LInftyStructure random_structure(Rng& rng, size_t dim, int arity_cap, bool strict);

// every ascending key of size <= arity_cap with non-repeating odd indices
std::vector<std::vector<size_t>> enumerate_keys(const std::vector<Parity>& parities,
                                                int arity_cap);

std::string print_coeff_vector(const std::vector<Rational>& v);

}  // namespace hdb

#endif
