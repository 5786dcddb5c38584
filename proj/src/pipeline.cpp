#include "addcomb/pipeline.hpp"

namespace addcomb {

namespace {

Int rat_floor(const Rat& r) {
    Int p = rat_num(r), q = rat_den(r);
    if (p >= 0) return p / q;
    return -((-p + q - 1) / q);
}

// Certified bounds on ln m through log2 bounds and rational ln 2 brackets.
RatInterval ln_bounds(std::size_t m, unsigned prec) {
    static const Rat kLn2Lo("693147180559945309/1000000000000000000");
    static const Rat kLn2Hi("693147180559945310/1000000000000000000");
    RatInterval l2 = log2_bounds(Rat(m), prec);
    return {l2.lo * kLn2Lo, l2.hi * kLn2Hi};
}

// p = [log2(ln m)] + 1, resolved exactly through interval refinement.
long derive_p(std::size_t m) {
    for (unsigned prec : {48u, 96u}) {
        RatInterval lnm = ln_bounds(m, prec);
        if (lnm.lo <= 0) return 0; // m = 2: ln m < 1, floor(log2) <= -1
        RatInterval lg{log2_bounds(lnm.lo, prec).lo, log2_bounds(lnm.hi, prec).hi};
        Int flo = rat_floor(lg.lo), fhi = rat_floor(lg.hi);
        if (flo == fhi) return flo.convert_to<long>() + 1;
    }
    throw InternalError("derive_p: log ln m sits on a dyadic boundary beyond precision");
}

} // namespace

Json run_main_pipeline(const GroupSet& a, const PipelineOptions& opts) {
    if (a.empty()) throw UsageError("pipeline: empty set");
    if (opts.epsilon <= 0 || opts.epsilon > 1)
        throw UsageError("pipeline: epsilon must be in (0,1]");
    const std::size_t m = a.size();
    const Int pe = rat_num(opts.epsilon), qe = rat_den(opts.epsilon);

    Json report;
    report["command"] = "pipeline";
    report["input"] = set_to_json(a);
    report["input_digest"] = input_digest(a);

    // Parameter schedule.
    const Rat beta1(1, 2);
    Rat beta2 = 1;
    bool beta2_clamped = true;
    if (m >= 2) {
        Rat inv_log = 1 / log2_bounds(Rat(m), 48).lo; // upper bound on 1/log m
        beta2 = beta1 + inv_log;
        beta2_clamped = beta2 > 1;
        if (beta2_clamped) beta2 = 1;
    }
    const Rat c = opts.epsilon / 128; // epsilon 2^-7
    long p_raw = m >= 2 ? derive_p(m) : 1;
    if (p_raw < 1) p_raw = 1;
    unsigned k = 1;
    for (long i = 0; i < p_raw && k < opts.max_order; ++i) k *= 2;
    bool k_clamped = (std::uint64_t(1) << p_raw) != k;
    if (k < 2) k = 2;

    std::string mode = opts.mode;
    if (mode == "auto") mode = m <= opts.caps.subset_cap ? "exact" : "heuristic";
    if (mode != "exact" && mode != "heuristic")
        throw UsageError("pipeline: mode must be exact, heuristic, or auto");
    const SearchMode search_mode = mode == "exact" ? SearchMode::Exact : SearchMode::Heuristic;

    report["params"] = Json{{"epsilon", rational_to_json(opts.epsilon)},
                            {"beta1", rational_to_json(beta1)},
                            {"beta2", rational_to_json(beta2)},
                            {"beta2_clamped", beta2_clamped},
                            {"C", rational_to_json(c)},
                            {"p_raw", p_raw},
                            {"k", k},
                            {"k_clamped", k_clamped},
                            {"max_order", opts.max_order},
                            {"mode", mode},
                            {"seed", opts.seed}};

    // Hypothesis ledger. K is the observed doubling constant |A+A| / |A|.
    DoublingReport doubling = doubling_energy_bound(a);
    const Int ku = rat_num(doubling.doubling_constant), kv = rat_den(doubling.doubling_constant);
    Json hyp;
    hyp["eps_in_range"] = opts.epsilon <= Rat(1, 2);
    hyp["size_lower"] =
        ineq_to_json(IneqRecord::check("|A|^eps_num >= 2^(32 eps_den)", ipow(Int(m), pe.convert_to<unsigned>()),
                                       Rel::GE, ipow(Int(2), (32 * qe).convert_to<unsigned>())));
    hyp["k_at_least_one"] = ineq_to_json(
        IneqRecord::check("K_num >= K_den (K >= 1)", ku, Rel::GE, kv));
    hyp["k_upper_eps"] = ineq_to_json(IneqRecord::check(
        "K^eps_den <= |A|^eps_num (K <= |A|^eps)", ipow(ku, qe.convert_to<unsigned>()),
        Rel::LE, ipow(kv, qe.convert_to<unsigned>()) * ipow(Int(m), pe.convert_to<unsigned>())));
    {
        // K^(3q+2p) <= (2^-58 eps^-4 m / log m)^(2q), log m outward (upper).
        Rat log_hi = log2_bounds(Rat(std::max<std::size_t>(m, 2)), 32).hi;
        const Int ln = rat_num(log_hi), ld = rat_den(log_hi);
        const auto e1 = (3 * qe + 2 * pe).convert_to<unsigned>();
        const auto e2 = (2 * qe).convert_to<unsigned>();
        hyp["k_upper_window"] = ineq_to_json(IneqRecord::check(
            "K^(3q+2p) (2^58 eps_num^4 logA_num)^(2q) <= (|A| eps_den^4 logA_den)^(2q)",
            ipow(ku, e1) * ipow((Int(1) << 58) * ipow(pe, 4) * ln, e2), Rel::LE,
            ipow(kv, e1) * ipow(Int(m) * ipow(qe, 4) * ld, e2)));
    }
    hyp["quadruples"] = ineq_to_json(IneqRecord::check(
        "T_2(A) K_num >= |A|^3 K_den (T_2 >= |A|^3/K)", doubling.t2 * ku, Rel::GE,
        ipow(Int(m), 3) * kv));
    const bool all_hold = hyp["eps_in_range"].get<bool>() &&
                          hyp["size_lower"]["holds"].get<bool>() &&
                          hyp["k_at_least_one"]["holds"].get<bool>() &&
                          hyp["k_upper_eps"]["holds"].get<bool>() &&
                          hyp["k_upper_window"]["holds"].get<bool>() &&
                          hyp["quadruples"]["holds"].get<bool>();
    hyp["all_hold"] = all_hold;
    report["hypotheses"] = hyp;
    report["doubling"] = Json{{"sumset_size", int_to_json(doubling.sumset_size)},
                              {"K", rational_to_json(doubling.doubling_constant)},
                              {"cauchy_schwarz", ineq_to_json(doubling.check)}};

    // Stage 1: connected-subset extraction (degenerate for |A| < 2).
    ConnectivityParams params{k, c, beta1, beta2};
    GroupSet a_prime = a;
    bool extraction_certified = false;
    if (m >= 2) {
        try {
            ExtractionResult ext =
                extract_connected_subset(a, params, search_mode, opts.seed, opts.caps);
            a_prime = ext.result;
            extraction_certified = ext.certified_connected;
            report["stages"]["extraction"] = to_json(ext);
        } catch (const CapacityError& e) {
            throw CapacityError(std::string("stage extraction: ") + e.what());
        }
    } else {
        report["stages"]["extraction"] = Json{{"skipped", "degenerate input (|A| < 2)"}};
    }

    // Stage 2: almost-basis on A'.
    AlmostBasisResult ab;
    try {
        ab = extract_almost_basis(a_prime, params, opts.seed, opts.caps);
    } catch (const CapacityError& e) {
        throw CapacityError(std::string("stage almost-basis: ") + e.what());
    }
    report["stages"]["almost_basis"] = to_json(ab);

    // Span coverage against the original A.
    Int coverage = 0;
    try {
        coverage = span_intersection_count(ab.lambda, a, opts.caps.dissociation);
    } catch (const CapacityError& e) {
        throw CapacityError(std::string("stage coverage: ") + e.what());
    }
    report["lambda"] = set_to_json(ab.lambda);
    report["coverage"] = Json{{"count", int_to_json(coverage)}, {"of", m}};

    // Conclusions of the main theorem; asserted only when the ledger holds.
    Json conclusions;
    {
        // |Lambda| <= 2^30 eps^-2 K log|A|, log|A| rounded down.
        Rat log_lo = log2_bounds(Rat(std::max<std::size_t>(m, 2)), 32).lo;
        IneqRecord lam_bound = IneqRecord::check(
            "|Lambda| eps_num^2 K_den logA_den <= 2^30 eps_den^2 K_num logA_num",
            Int(ab.lambda.size()) * pe * pe * kv * rat_den(log_lo), Rel::LE,
            (Int(1) << 30) * qe * qe * ku * rat_num(log_lo));
        const auto e1 = (qe + 2 * pe).convert_to<unsigned>();
        const auto e2 = (2 * qe).convert_to<unsigned>();
        IneqRecord cov_bound = IneqRecord::check(
            "(2 cov)^(2q) K_num^(q+2p) >= |A|^(2q) K_den^(q+2p)",
            ipow(2 * coverage, e2) * ipow(ku, e1), Rel::GE,
            ipow(Int(m), e2) * ipow(kv, e1));
        conclusions["lambda_bound"] = ineq_to_json(lam_bound);
        conclusions["span_coverage"] = ineq_to_json(cov_bound);
        conclusions["asserted"] = all_hold;
        if (all_hold && (!lam_bound.holds || !cov_bound.holds))
            throw InternalError("pipeline: hypotheses hold but a conclusion fails");
    }
    report["conclusions"] = conclusions;
    report["certified"] = extraction_certified && ab.success;
    return report;
}

} // namespace addcomb
