#include "addcomb/energy.hpp"

#include <cmath>
#include <cstdio>

namespace addcomb {

namespace {

double log2_of(const Int& v) {
    // Presentation-only logarithm, safe for values beyond double range.
    const auto bits = boost::multiprecision::msb(v);
    if (bits <= 900) return std::log2(v.convert_to<double>());
    Int top = v >> (bits - 52);
    return double(bits - 52) + std::log2(top.convert_to<double>());
}

std::string format_zeta(const Int& tk, const Int& size) {
    double z = log2_of(tk) / log2_of(size);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", z);
    return buf;
}

void require_order(unsigned k) {
    if (k < 2) throw UsageError("energy order k must be >= 2");
}

} // namespace

Energy energy(const GroupSet& a, unsigned k) {
    require_order(k);
    if (a.empty()) throw UsageError("energy: empty set");
    IntFn rep = iterated_self_conv(a, k - 1);
    return Energy{sum_of_squares(rep), k};
}

Int energy_of_fn(const IntFn& f, unsigned k) {
    require_order(k);
    if (f.values().empty()) return 0;
    IntFn acc = f;
    for (unsigned i = 1; i < k; ++i) acc = convolve(acc, f);
    return sum_of_squares(acc);
}

ZetaValue zeta(const GroupSet& a, unsigned k) {
    require_order(k);
    if (a.size() < 2) throw UsageError("zeta: set must have >= 2 elements");
    ZetaValue z;
    z.tk = energy(a, k).value;
    z.set_size = Int(a.size());
    z.k = k;
    z.decimal = format_zeta(z.tk, z.set_size);
    z.lower_check = IneqRecord::check("|A|^k <= T_k(A)", ipow(z.set_size, k), Rel::LE, z.tk);
    z.upper_check = IneqRecord::check("T_k(A) <= |A|^(2k-1)", z.tk, Rel::LE, ipow(z.set_size, 2 * k - 1));
    if (!z.lower_check.holds || !z.upper_check.holds)
        throw InternalError("zeta: energy outside [|A|^k, |A|^(2k-1)]");
    return z;
}

HolderReport check_holder(const std::vector<IntFn>& fs, const std::vector<IntFn>& gs) {
    const std::size_t k1 = fs.size(), k2 = gs.size();
    if (!is_power_of_two(k1) || !is_power_of_two(k2))
        throw UsageError("check_holder: k1 and k2 must be powers of two");
    const GroupSpec& spec = fs.front().spec();
    for (const auto& f : fs) require_same_spec(spec, f.spec(), "check_holder");
    for (const auto& g : gs) require_same_spec(spec, g.spec(), "check_holder");

    IntFn fprod = fs.front();
    for (std::size_t i = 1; i < k1; ++i) fprod = convolve(fprod, fs[i]);
    IntFn gprod = gs.front();
    for (std::size_t i = 1; i < k2; ++i) gprod = convolve(gprod, gs[i]);

    HolderReport rep;
    rep.sigma = dot(fprod, gprod);
    rep.lhs_powered = ipow(rep.sigma, 4 * k1 * k2);
    rep.rhs_powered = 1;
    for (const auto& f : fs) {
        rep.tk1_values.push_back(energy_of_fn(f, unsigned(k1)));
        rep.rhs_powered *= ipow(rep.tk1_values.back(), 2 * k2);
    }
    for (const auto& g : gs) {
        rep.tk2_values.push_back(energy_of_fn(g, unsigned(k2)));
        rep.rhs_powered *= ipow(rep.tk2_values.back(), 2 * k1);
    }
    rep.check = IneqRecord::check("sigma^(4k1k2) <= prod T_k1(f)^(2k2) * prod T_k2(g)^(2k1)",
                                  rep.lhs_powered, Rel::LE, rep.rhs_powered);
    rep.holds = rep.check.holds;
    return rep;
}

TkVsT2Report check_tk_vs_t2(const GroupSet& a, unsigned k) {
    require_order(k);
    if (a.empty()) throw UsageError("check_tk_vs_t2: empty set");
    TkVsT2Report rep;
    rep.tk = energy(a, k).value;
    rep.t2 = energy(a, 2).value;
    rep.check = IneqRecord::check("T_k(A) * |A|^(k-2) >= T_2(A)^(k-1)",
                                  rep.tk * ipow(Int(a.size()), k - 2), Rel::GE,
                                  ipow(rep.t2, k - 1));
    rep.holds = rep.check.holds;
    return rep;
}

DoublingReport doubling_energy_bound(const GroupSet& a) {
    if (a.empty()) throw UsageError("doubling_energy_bound: empty set");
    DoublingReport rep;
    GroupSet twoA = sumset(a, a);
    rep.sumset_size = Int(twoA.size());
    rep.t2 = energy(a, 2).value;
    rep.doubling_constant = Rat(rep.sumset_size, Int(a.size()));
    rep.check = IneqRecord::check("|A|^4 <= T_2(A) * |A+A|", ipow(Int(a.size()), 4), Rel::LE,
                                  rep.t2 * rep.sumset_size);
    rep.holds = rep.check.holds;
    return rep;
}

} // namespace addcomb
