#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "addcomb/intfn.hpp"

namespace addcomb {

// Exact T_k for subsets of a fixed ambient set A, addressed by bitmask over
// A's sorted element order, plus the pairwise cut-weight matrix
// W[i][j] = ((A *_{k-2} A) o (A *_{k-2} A))(a_i - a_j).
//
// The j-fold sum universes of A are precomputed once, so a subset energy is
// a few small array passes in 128-bit integers. Results are exact and are
// cross-checked against the sparse engine in the test suite.
class SubsetEnergyTable {
public:
    using u128 = unsigned __int128;

    static bool supported(std::size_t n, unsigned k) { return n >= 1 && n <= 64 && k >= 2 && k <= 8; }

    // Throws CapacityError if unsupported or the sum universes grow past an
    // internal bound; callers fall back to the sparse path.
    SubsetEnergyTable(const GroupSet& a, unsigned k);

    const GroupSet& ambient() const { return ambient_; }
    unsigned order() const { return k_; }

    Int energy_of_mask(std::uint64_t mask);
    Int full_energy(); // T_k(A)

    // e(E, F) = sum over i in E, j in F of W[i][j]; masks over A's order.
    Int cut_value(std::uint64_t mask_e, std::uint64_t mask_f) const;
    Int pair_weight(std::size_t i, std::size_t j) const;

private:
    GroupSet ambient_;
    unsigned k_;
    std::size_t n_;
    // universes_[j] holds the (j+1)-fold sums; transitions_[j][u * n_ + i]
    // maps (universes_[j][u] + a_i) to its index in universes_[j+1].
    std::vector<std::vector<Elem>> universes_;
    std::vector<std::vector<std::uint32_t>> transitions_;
    std::vector<std::vector<u128>> buffers_; // per-level work space
    std::vector<u128> weights_;              // n x n cut-weight matrix
};

Int int_from_u128(SubsetEnergyTable::u128 v);

} // namespace addcomb
