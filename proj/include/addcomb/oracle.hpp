#pragma once

#include <map>

#include "addcomb/group.hpp"

namespace addcomb::oracle {

// Brute-force reference computations by direct tuple enumeration. These
// deliberately avoid the convolution engine so the two paths stay
// independent; they are the ground truth for differential tests and the
// verification suites. Costs are O(|A|^k) — desk scale only.

// Histogram of k-fold sums a_1 + ... + a_k over ordered tuples from A.
std::map<Elem, Int> sum_histogram(const GroupSet& a, unsigned k);

// T_k(A) as sum of squared histogram counts.
Int energy(const GroupSet& a, unsigned k);

// Same value computed over int64-coded elements with standalone modular
// arithmetic; fastest for the large acceptance sweeps. Requires scalar
// magnitudes below 2^40 and |A|^k tuple counts below ~2^32.
Int energy_fast(const GroupSet& a, unsigned k);

} // namespace addcomb::oracle
