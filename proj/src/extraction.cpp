#include <algorithm>

#include "addcomb/connectivity.hpp"
#include "addcomb/subset_energy.hpp"

namespace addcomb {

namespace {

bool theorem_preconditions_hold(const ConnectivityParams& p) {
    return p.c <= Rat(1, 32) && p.beta1 > 0 && p.beta2 < 1;
}

// Upper bound on the exponent U in |A'| >= m 2^-U, where
// U = log((2k-1)/zeta) / log(1+kappa) * log(1/(1-beta2)), evaluated with
// outward-rounded rational log bounds. Returns nullopt when a factor
// degenerates (kappa <= 0 within precision, beta2 = 1, ...).
std::optional<Rat> size_bound_exponent(const Int& tk, std::size_t m,
                                       const ConnectivityParams& params) {
    if (m < 2 || params.beta2 >= 1 || params.beta1 <= 0) return std::nullopt;
    const unsigned prec = 48;
    RatInterval log_t = log2_bounds(Rat(tk), prec);
    RatInterval log_m = log2_bounds(Rat(m), prec);
    if (log_t.lo <= 0) return std::nullopt; // T_k = 1: zeta = 0, ratio blows up
    RatInterval zeta_iv = interval_div_pos(log_t, log_m);

    Rat two_k_minus_1 = Rat(2 * params.k - 1);
    RatInterval ratio{two_k_minus_1 / zeta_iv.hi, two_k_minus_1 / zeta_iv.lo};
    if (ratio.lo < 1) ratio.lo = 1;
    RatInterval log_ratio{log2_bounds(ratio.lo, prec).lo, log2_bounds(ratio.hi, prec).hi};
    if (log_ratio.lo < 0) log_ratio.lo = 0;

    // kappa = log(1/(1-beta1)) / log m * (1 - 16 C)
    Rat one_minus_16c = 1 - 16 * params.c;
    if (one_minus_16c <= 0) return std::nullopt;
    RatInterval log_inv = log2_bounds(1 / (1 - params.beta1), prec);
    RatInterval kappa = interval_div_pos(log_inv, log_m);
    kappa = interval_mul_nonneg(kappa, RatInterval::exact(one_minus_16c));
    if (kappa.lo <= 0) return std::nullopt;
    RatInterval log_1pk{log2_bounds(1 + kappa.lo, prec).lo, log2_bounds(1 + kappa.hi, prec).hi};
    if (log_1pk.lo <= 0) return std::nullopt;

    RatInterval smax = interval_div_pos(log_ratio, log_1pk);
    Rat log_shrink_hi = log2_bounds(1 / (1 - params.beta2), prec).hi;
    return smax.hi * log_shrink_hi;
}

int safe_zeta_direction(const Int& t_after, std::size_t m_after, const Int& t_before,
                        std::size_t m_before) {
    if (m_after < 2 || m_before < 2) return 0;
    return compare_log_ratio(t_after, Int(m_after), t_before, Int(m_before));
}

} // namespace

ExtractionResult extract_connected_subset(const GroupSet& a, const ConnectivityParams& params,
                                          SearchMode mode, std::uint64_t seed,
                                          const ConnectivityCaps& caps) {
    params.validate();
    if (a.size() < 2) throw UsageError("extract_connected_subset: need |A| >= 2");
    if (!is_power_of_two(params.k))
        throw UsageError("extract_connected_subset: k must be a power of two");

    ExtractionResult res;
    res.theorem_preconditions = theorem_preconditions_hold(params);
    res.tk_initial = energy(a, params.k).value;

    const unsigned k = params.k;
    const Int p = rat_num(params.c), q = rat_den(params.c);
    GroupSet current = a;
    const std::size_t guard = 4 * a.size();

    while (true) {
        if (res.steps.size() > guard)
            throw InternalError("extract_connected_subset: iteration guard tripped");
        ConnectedVerdict verdict = check_connected(current, params, mode, seed, caps);
        if (verdict.holds()) {
            res.certified_connected = verdict.certified;
            res.tk_final = verdict.tk_a;
            break;
        }

        const GroupSet& b = verdict.worst->set;
        GroupSet next = current.set_difference(b);
        if (next.empty())
            throw InternalError("extract_connected_subset: violating B swallowed the whole set");

        ExtractionStep step;
        step.removed = b;
        step.size_before = current.size();
        step.size_after = next.size();
        step.tk_before = verdict.tk_a;
        step.tk_after = energy(next, k).value;
        step.checks.push_back(verdict.worst->check); // the failed window inequality

        // sigma_1 + sigma_2 = T_k(A): the B / complement split of the energy.
        IntFn u = iterated_self_conv(current, k - 2);
        IntFn rep = convolve(u, IntFn::characteristic(current)); // A *_{k-1} A
        step.sigma1 = dot(convolve(IntFn::characteristic(b), u), rep);
        step.sigma2 = dot(convolve(IntFn::characteristic(next), u), rep);
        step.checks.push_back(IneqRecord::check("sigma1 + sigma2 == T_k(A)",
                                                step.sigma1 + step.sigma2, Rel::EQ,
                                                step.tk_before));
        step.checks.push_back(IneqRecord::check(
            "sigma1^(2k) <= T_k(B) T_k(A)^(2k-1)", ipow(step.sigma1, 2 * k), Rel::LE,
            verdict.worst->tk * ipow(step.tk_before, 2 * k - 1)));

        // T_k(A \ B) (q m)^{2k} > T_k(A) (q m - p b)^{2k}: the energy kept
        // by the complement when B violates.
        const Int qm = q * current.size();
        Int kept = qm - p * Int(b.size());
        if (kept < 0) kept = 0;
        step.checks.push_back(IneqRecord::check(
            "T_k(A\\B) (q m)^(2k) > T_k(A) (q m - p |B|)^(2k)",
            step.tk_after * ipow(qm, 2 * k), Rel::GT, step.tk_before * ipow(kept, 2 * k)));

        step.zeta_direction =
            safe_zeta_direction(step.tk_after, next.size(), step.tk_before, current.size());
        res.steps.push_back(std::move(step));
        current = std::move(next);
    }

    res.result = current;
    res.zeta_direction_total =
        safe_zeta_direction(res.tk_final, current.size(), res.tk_initial, a.size());
    if (res.theorem_preconditions) {
        res.final_checks.push_back(IneqRecord::check("zeta_k(A') >= zeta_k(A) (direction sign)",
                                                     Int(res.zeta_direction_total), Rel::GE,
                                                     Int(0)));
        if (auto u_exp = size_bound_exponent(res.tk_initial, a.size(), params)) {
            // |A'| >= m 2^-U via |A'|^64 2^ceil(64 U) >= m^64.
            Rat scaled = *u_exp * 64;
            Int e64 = rat_num(scaled) / rat_den(scaled);
            if (Rat(e64) < scaled) e64 += 1;
            if (e64 >= 0 && e64 < 100000) {
                res.final_checks.push_back(IneqRecord::check(
                    "|A'|^64 2^ceil(64 U) >= |A|^64 (size lower bound)",
                    ipow(Int(current.size()), 64) << e64.convert_to<unsigned>(), Rel::GE,
                    ipow(Int(a.size()), 64)));
            }
        }
    }
    return res;
}

AlmostBasisResult extract_almost_basis(const GroupSet& a, const ConnectivityParams& params,
                                       std::uint64_t seed, const ConnectivityCaps& caps,
                                       std::optional<Int> l_override) {
    params.validate();
    if (a.empty()) throw UsageError("extract_almost_basis: empty set");
    const unsigned k = params.k;
    const std::size_t m = a.size();
    const Int p = rat_num(params.c), q = rat_den(params.c);
    const Int p1 = rat_num(params.beta1), q1 = rat_den(params.beta1);

    // Precondition beta2 >= beta1 + 1/|A|.
    if ((params.beta2 - params.beta1) * Int(m) < 1)
        throw UsageError("extract_almost_basis: need beta2 >= beta1 + 1/|A|");

    AlmostBasisResult res{false, GroupSet(a.spec())};
    const Int tk = energy(a, k).value;

    // l = 2^13 C^-2 k |A|^2 / T_k(A)^{1/k}, floored exactly:
    // l^k p^{2k} T <= 2^{13k} q^{2k} k^k m^{2k}.
    Int numer = (Int(1) << (13 * k)) * ipow(q, 2 * k) * ipow(Int(k), k) * ipow(Int(m), 2 * k);
    Int denom = ipow(p, 2 * k) * tk;
    res.l_threshold = iroot_floor(numer / denom, k);
    if (l_override) {
        res.l_threshold = *l_override;
        res.l_overridden = true;
    }
    if (res.l_threshold < 1) res.l_threshold = 1; // a zero slice cannot shrink anything

    // Proposition hypotheses, recorded whether or not they hold.
    res.hypothesis_checks.push_back(IneqRecord::check(
        "T_k(A) p^(2k) >= 2^(14k) q^(2k) k^k |A|^k", tk * ipow(p, 2 * k), Rel::GE,
        (Int(1) << (14 * k)) * ipow(q, 2 * k) * ipow(Int(k), k) * ipow(Int(m), k)));
    res.hypothesis_checks.push_back(
        IneqRecord::check("|A| beta1_num >= beta1_den", Int(m) * p1, Rel::GE, q1));
    res.hypothesis_checks.push_back(IneqRecord::check(
        "(beta2 - beta1) |A| >= 1",
        (rat_num(params.beta2) * rat_den(params.beta1) -
         rat_num(params.beta1) * rat_den(params.beta2)) *
            Int(m),
        Rel::GE, rat_den(params.beta1) * rat_den(params.beta2)));

    GroupSet current = a;
    const std::size_t guard = m + 2;
    while (true) {
        if (res.peeled.size() > guard)
            throw InternalError("extract_almost_basis: iteration guard tripped");
        DissociatedSet lam = maximal_dissociated_subset(
            current, seed == 0 ? GreedyOrder::Canonical : GreedyOrder::SeededShuffle, seed,
            caps.dissociation);
        if (Int(lam.base().size()) <= res.l_threshold) {
            res.success = true;
            res.lambda = lam.base();
            res.coverage = span_intersection_count(res.lambda, a, caps.dissociation);
            res.coverage_check =
                IneqRecord::check("|Span Lambda  cap  A| den >= (den - num) |A|",
                                  res.coverage * q1, Rel::GE, (q1 - p1) * Int(m));
            return res;
        }
        // Peel a slice of exactly l elements (canonical prefix of Lambda).
        std::vector<Elem> slice_elems(
            lam.base().elems().begin(),
            lam.base().elems().begin() + std::size_t(res.l_threshold.convert_to<std::uint64_t>()));
        GroupSet slice = GroupSet::of(a.spec(), std::move(slice_elems));
        res.peeled.push_back(slice);
        current = current.set_difference(slice);

        // Stop when fewer than (1 - beta1)|A| elements remain.
        if (Int(current.size()) * q1 < (q1 - p1) * Int(m)) {
            // Assemble B from the peeled slices, trimmed to floor(beta1 m)+1.
            const auto want = std::size_t(((p1 * Int(m)) / q1 + 1).convert_to<std::uint64_t>());
            std::vector<Elem> b_elems;
            for (const auto& s : res.peeled)
                b_elems.insert(b_elems.end(), s.elems().begin(), s.elems().end());
            if (b_elems.size() > want) b_elems.resize(want);
            GroupSet b = GroupSet::of(a.spec(), std::move(b_elems));
            AlmostBasisCertificate cert{b, energy(b, k).value};
            cert.connectivity_lower = IneqRecord::check(
                "T_k(B) q^(2k) beta1_den^(2k) >= p^(2k) beta1_num^(2k) T_k(A)",
                cert.tk_b * ipow(q, 2 * k) * ipow(q1, 2 * k), Rel::GE,
                ipow(p, 2 * k) * ipow(p1, 2 * k) * tk);
            res.certificate = std::move(cert);
            res.success = false;
            return res;
        }
    }
}

} // namespace addcomb
