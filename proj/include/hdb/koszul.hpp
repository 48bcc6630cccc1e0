#ifndef HDB_KOSZUL_HPP
#define HDB_KOSZUL_HPP

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hdb/signature.hpp"

namespace hdb {

// A permutation of n slots together with the parities of the arguments in
// their original order. perm[k] is the (0-based) original index placed at
// slot k, i.e. (a_1,...,a_n) |-> (a_{perm[0]+1},...,a_{perm[n-1]+1}).
struct GradedPermutation {
    std::vector<size_t> perm;
    std::vector<Parity> parities;
};

// Koszul sign of reordering homogeneous arguments by the permutation:
// -1 for every inversion whose two arguments are both odd.
inline int koszul_sign(const GradedPermutation& gp) {
    if (gp.perm.size() != gp.parities.size())
        throw std::invalid_argument("koszul_sign: permutation/parity length mismatch");
    int inversions = 0;
    for (size_t i = 0; i < gp.perm.size(); ++i) {
        for (size_t j = i + 1; j < gp.perm.size(); ++j) {
            if (gp.perm[i] > gp.perm[j] && is_odd(gp.parities[gp.perm[i]]) &&
                is_odd(gp.parities[gp.perm[j]]))
                ++inversions;
        }
    }
    return (inversions & 1) ? -1 : 1;
}

// All (k,l)-shuffles of k+l arguments with the given parities, each paired
// with its Koszul sign. A (k,l)-shuffle keeps both blocks in increasing
// order: perm[0]<...<perm[k-1] and perm[k]<...<perm[k+l-1].
inline std::vector<std::pair<GradedPermutation, int>> shuffles(
    size_t k, size_t l, const std::vector<Parity>& parities) {
    const size_t n = k + l;
    if (parities.size() != n)
        throw std::invalid_argument("shuffles: parity list length must be k+l");
    std::vector<std::pair<GradedPermutation, int>> out;
    std::vector<size_t> pick(k);
    for (size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        GradedPermutation gp;
        gp.parities = parities;
        gp.perm = pick;
        size_t pi = 0;
        for (size_t i = 0; i < n; ++i) {
            if (pi < k && pick[pi] == i) {
                ++pi;
            } else {
                gp.perm.push_back(i);
            }
        }
        int sign = koszul_sign(gp);
        out.emplace_back(std::move(gp), sign);
        // advance to the next k-combination of {0..n-1}
        size_t i = k;
        while (i > 0 && pick[i - 1] == i - 1 + n - k) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

}  // namespace hdb

#endif
