#pragma once

#include <string>
#include <vector>

#include "addcomb/intfn.hpp"
#include "addcomb/report.hpp"

namespace addcomb {

// T_k(A): the number of 2k-tuples with a_1+...+a_k = a'_1+...+a'_k.
struct Energy {
    Int value;
    unsigned k = 2;
};

Energy energy(const GroupSet& a, unsigned k);
// T_k(f) = sum_x (f *_{k-1} f)^2 (x) for an arbitrary IntFn.
Int energy_of_fn(const IntFn& f, unsigned k);

// Exact carrier of the energy exponent log T_k / log |A|. The decimal
// rendering is presentation only; every comparison cross-powers integers.
struct ZetaValue {
    Int tk;
    Int set_size;
    unsigned k = 2;
    std::string decimal;
    IneqRecord lower_check; // |A|^k <= T_k
    IneqRecord upper_check; // T_k <= |A|^(2k-1)
};

ZetaValue zeta(const GroupSet& a, unsigned k);

struct HolderReport {
    Int sigma;
    Int lhs_powered; // sigma^(4 k1 k2)
    Int rhs_powered; // prod T_k1(f_i)^(2 k2) * prod T_k2(g_j)^(2 k1)
    std::vector<Int> tk1_values;
    std::vector<Int> tk2_values;
    IneqRecord check;
    bool holds = false;
};

// Verifies sigma^(4 k1 k2) <= prod_i T_{k1}(f_i)^{2 k2} * prod_j T_{k2}(g_j)^{2 k1}
// where sigma = sum_x (f_1*...*f_{k1})(x) (g_1*...*g_{k2})(x).
// k1 = fs.size() and k2 = gs.size() must be powers of two.
HolderReport check_holder(const std::vector<IntFn>& fs, const std::vector<IntFn>& gs);

struct TkVsT2Report {
    Int tk;
    Int t2;
    IneqRecord check; // T_k * |A|^(k-2) >= T_2^(k-1)
    bool holds = false;
};

TkVsT2Report check_tk_vs_t2(const GroupSet& a, unsigned k);

struct DoublingReport {
    Int sumset_size;
    Int t2;
    Rat doubling_constant; // |A+A| / |A|
    IneqRecord check;      // |A|^4 <= T_2 * |A+A|
    bool holds = false;
};

DoublingReport doubling_energy_bound(const GroupSet& a);

} // namespace addcomb
