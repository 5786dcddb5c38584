#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "addcomb/group.hpp"

namespace addcomb {

// Deterministic set generators: identical (family, group, seed) always
// produces the identical set.
struct GeneratorSpec {
    enum class Family { Random, Ap, MultiAp, Subspace, Dissociated, CosetUnion };
    Family family = Family::Random;
    GroupSpec group = GroupSpec::integers();
    std::uint64_t seed = 0;

    // random / dissociated
    std::size_t size = 0;
    // random window for the integers group: values drawn from [0, window)
    Int window = Int(1) << 20;
    // ap
    Int start = 0, step = 1;
    std::size_t length = 0;
    // multi_ap: { base + sum n_i steps[i] : 0 <= n_i < lengths[i] }
    Int base = 0;
    std::vector<Int> steps;
    std::vector<std::size_t> lengths;
    // subspace / coset_union
    std::uint32_t subspace_dim = 0;
    std::size_t num_cosets = 0;
};

GroupSet generate(const GeneratorSpec& spec);

} // namespace addcomb
