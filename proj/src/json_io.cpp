#include "addcomb/json_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <set>

namespace addcomb {

namespace {

const Int kInt64Max("9223372036854775807");
const Int kInt64Min("-9223372036854775808");

std::string search_status_name(SearchStatus s) {
    switch (s) {
    case SearchStatus::CertifiedOk: return "certified-ok";
    case SearchStatus::ViolationFound: return "violation-found";
    case SearchStatus::NoCounterexampleFound: return "no-counterexample-found";
    }
    return "?";
}

Json elems_to_json(const GroupSet& s) {
    Json arr = Json::array();
    for (const auto& e : s.elems()) arr.push_back(elem_to_json(s.spec(), e));
    return arr;
}

} // namespace

Json int_to_json(const Int& v) {
    if (v >= kInt64Min && v <= kInt64Max) return v.convert_to<std::int64_t>();
    return v.str();
}

Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw UsageError("expected integer or decimal string, got: " + j.dump());
}

Json group_to_json(const GroupSpec& spec) {
    switch (spec.kind()) {
    case GroupKind::Cyclic: return Json{{"type", "cyclic"}, {"n", int_to_json(spec.modulus())}};
    case GroupKind::Vector:
        return Json{{"type", "vector"}, {"q", spec.prime()}, {"dim", spec.dim()}};
    case GroupKind::Integers: return Json{{"type", "integers"}};
    }
    throw InternalError("unreachable");
}

GroupSpec group_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type")) throw UsageError("group: expected {type: ...}");
    const auto type = j.at("type").get<std::string>();
    if (type == "cyclic") return GroupSpec::cyclic(int_from_json(j.at("n")));
    if (type == "vector")
        return GroupSpec::vectors(j.at("q").get<std::uint32_t>(), j.at("dim").get<std::uint32_t>());
    if (type == "integers") return GroupSpec::integers();
    throw UsageError("unknown group type: " + type);
}

Json elem_to_json(const GroupSpec& spec, const Elem& e) {
    if (spec.kind() == GroupKind::Vector) {
        Json arr = Json::array();
        for (auto c : e.coords()) arr.push_back(c);
        return arr;
    }
    return int_to_json(e.scalar_value());
}

Elem elem_from_json(const GroupSpec& spec, const Json& j) {
    if (spec.kind() == GroupKind::Vector) {
        if (!j.is_array()) throw UsageError("vector element must be an array of residues");
        std::vector<std::uint32_t> coords;
        for (const auto& c : j) {
            Int v = int_from_json(c);
            if (v < 0 || v >= spec.prime())
                throw UsageError("vector residue out of range [0, q): " + c.dump());
            coords.push_back(v.convert_to<std::uint32_t>());
        }
        return spec.make_vector(std::move(coords));
    }
    Int v = int_from_json(j);
    if (spec.kind() == GroupKind::Cyclic && (v < 0 || v >= spec.modulus()))
        throw UsageError("cyclic residue out of range [0, N): " + j.dump());
    return spec.make_scalar(v);
}

Json set_to_json(const GroupSet& s) {
    return Json{{"group", group_to_json(s.spec())}, {"elements", elems_to_json(s)}};
}

GroupSet set_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("group") || !j.contains("elements"))
        throw UsageError("set file needs {group, elements}");
    GroupSpec spec = group_from_json(j.at("group"));
    std::vector<Elem> elems;
    std::set<Elem> seen;
    for (const auto& ej : j.at("elements")) {
        Elem e = elem_from_json(spec, ej);
        if (!seen.insert(e).second) throw UsageError("duplicate element: " + e.to_string());
        elems.push_back(std::move(e));
    }
    return GroupSet::of(std::move(spec), std::move(elems));
}

Json intfn_to_json(const IntFn& f) {
    Json values = Json::array();
    for (const auto& [e, v] : f.values())
        values.push_back(Json::array({elem_to_json(f.spec(), e), int_to_json(v)}));
    return Json{{"group", group_to_json(f.spec())}, {"values", values}};
}

IntFn intfn_from_json(const Json& j) {
    GroupSpec spec = group_from_json(j.at("group"));
    IntFn f(spec);
    for (const auto& pair : j.at("values")) {
        if (!pair.is_array() || pair.size() != 2) throw UsageError("IntFn values: [elem, count]");
        Int v = int_from_json(pair.at(1));
        if (v <= 0) throw UsageError("IntFn counts must be positive");
        f.add_at(elem_from_json(spec, pair.at(0)), v);
    }
    return f;
}

Json ineq_to_json(const IneqRecord& r) {
    return Json{{"label", r.label},
                {"lhs", int_to_json(r.lhs)},
                {"rel", rel_symbol(r.rel)},
                {"rhs", int_to_json(r.rhs)},
                {"holds", r.holds}};
}

IneqRecord ineq_from_json(const Json& j) {
    IneqRecord r;
    r.label = j.value("label", "");
    r.lhs = int_from_json(j.at("lhs"));
    r.rel = rel_from_symbol(j.at("rel").get<std::string>());
    r.rhs = int_from_json(j.at("rhs"));
    r.holds = j.at("holds").get<bool>();
    return r;
}

std::string canonical_dump(const Json& j) { return j.dump(2); }

std::string input_digest(const GroupSet& s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016" PRIx64, fnv1a64(canonical_dump(set_to_json(s))));
    return buf;
}

Json rational_to_json(const Rat& r) { return rational_to_string(r); }

Json to_json(const Energy& e) {
    return Json{{"k", e.k}, {"value", int_to_json(e.value)}};
}

Json to_json(const ZetaValue& z) {
    return Json{{"k", z.k},
                {"tk", int_to_json(z.tk)},
                {"set_size", int_to_json(z.set_size)},
                {"decimal", z.decimal},
                {"lower_check", ineq_to_json(z.lower_check)},
                {"upper_check", ineq_to_json(z.upper_check)}};
}

Json to_json(const HolderReport& r) {
    Json t1 = Json::array(), t2 = Json::array();
    for (const auto& v : r.tk1_values) t1.push_back(int_to_json(v));
    for (const auto& v : r.tk2_values) t2.push_back(int_to_json(v));
    return Json{{"sigma", int_to_json(r.sigma)}, {"tk1", t1},           {"tk2", t2},
                {"check", ineq_to_json(r.check)}, {"holds", r.holds}};
}

Json to_json(const TkVsT2Report& r) {
    return Json{{"tk", int_to_json(r.tk)},
                {"t2", int_to_json(r.t2)},
                {"check", ineq_to_json(r.check)},
                {"holds", r.holds}};
}

Json to_json(const DoublingReport& r) {
    return Json{{"sumset_size", int_to_json(r.sumset_size)},
                {"t2", int_to_json(r.t2)},
                {"doubling_constant", rational_to_json(r.doubling_constant)},
                {"check", ineq_to_json(r.check)},
                {"holds", r.holds}};
}

Json to_json(const DissociationVerdict& v, const GroupSet& l) {
    Json j{{"dissociated", v.dissociated},
           {"mode", v.mode == DissociationMode::Exhaustive ? "exhaustive" : "meet-in-the-middle"}};
    if (v.witness) {
        Json w = Json::array();
        for (std::size_t i = 0; i < v.witness->size(); ++i)
            if ((*v.witness)[i] != 0)
                w.push_back(Json::array(
                    {elem_to_json(l.spec(), l.elems()[i]), int((*v.witness)[i])}));
        j["witness"] = w;
    }
    return j;
}

Json to_json(const SpanResult& r) {
    Json j{{"lambda", set_to_json(r.lambda)}, {"span_size", int_to_json(r.size)}};
    if (r.enumeration) j["enumeration"] = elems_to_json(*r.enumeration);
    return j;
}

Json to_json(const RudinReport& r) {
    return Json{{"tk", int_to_json(r.tk)},
                {"bound", int_to_json(r.bound)},
                {"check", ineq_to_json(r.check)},
                {"holds", r.holds}};
}

Json to_json(const SmallBasisReport& r) {
    return Json{{"lambda", set_to_json(r.lambda)},
                {"certificate",
                 r.certificate == DissociationMode::Exhaustive ? "exhaustive" : "meet-in-the-middle"},
                {"tk", int_to_json(r.tk)},
                {"bound_check", ineq_to_json(r.bound_check)},
                {"within_bound", r.within_bound},
                {"covers_a", r.covers_a}};
}

Json to_json(const ConnectedVerdict& v) {
    Json j{{"status", search_status_name(v.status)},
           {"certified", v.certified},
           {"holds", v.holds()},
           {"tk_a", int_to_json(v.tk_a)}};
    if (v.worst)
        j["worst"] = Json{{"set", set_to_json(v.worst->set)},
                          {"tk", int_to_json(v.worst->tk)},
                          {"check", ineq_to_json(v.worst->check)}};
    return j;
}

Json to_json(const StrongVerdict& v) {
    Json j{{"status", search_status_name(v.status)},
           {"certified", v.certified},
           {"holds", v.holds()},
           {"tk_a", int_to_json(v.tk_a)}};
    if (v.worst)
        j["worst"] = Json{{"e_side", elems_to_json(v.worst->e_side)},
                          {"f_side", elems_to_json(v.worst->f_side)},
                          {"value", int_to_json(v.worst->value)},
                          {"check", ineq_to_json(v.worst->check)}};
    return j;
}

Json to_json(const StrongWeakReport& r) {
    Json j{{"strong", to_json(r.strong)}, {"implication_ok", r.implication_ok}};
    if (r.weak) j["weak_at_c_over_8"] = to_json(*r.weak);
    return j;
}

Json to_json(const ExtractionResult& r) {
    Json steps = Json::array();
    for (const auto& s : r.steps) {
        Json checks = Json::array();
        for (const auto& c : s.checks) checks.push_back(ineq_to_json(c));
        steps.push_back(Json{{"removed", elems_to_json(s.removed)},
                             {"size_before", s.size_before},
                             {"size_after", s.size_after},
                             {"tk_before", int_to_json(s.tk_before)},
                             {"tk_after", int_to_json(s.tk_after)},
                             {"sigma1", int_to_json(s.sigma1)},
                             {"sigma2", int_to_json(s.sigma2)},
                             {"zeta_direction", s.zeta_direction},
                             {"checks", checks}});
    }
    Json final_checks = Json::array();
    for (const auto& c : r.final_checks) final_checks.push_back(ineq_to_json(c));
    return Json{{"result", set_to_json(r.result)},
                {"steps", steps},
                {"tk_initial", int_to_json(r.tk_initial)},
                {"tk_final", int_to_json(r.tk_final)},
                {"certified_connected", r.certified_connected},
                {"theorem_preconditions", r.theorem_preconditions},
                {"zeta_direction_total", r.zeta_direction_total},
                {"final_checks", final_checks}};
}

Json to_json(const AlmostBasisResult& r) {
    Json peeled = Json::array();
    for (const auto& s : r.peeled) peeled.push_back(elems_to_json(s));
    Json hyp = Json::array();
    for (const auto& c : r.hypothesis_checks) hyp.push_back(ineq_to_json(c));
    Json j{{"success", r.success},
           {"lambda", set_to_json(r.lambda)},
           {"coverage", int_to_json(r.coverage)},
           {"l_threshold", int_to_json(r.l_threshold)},
           {"l_overridden", r.l_overridden},
           {"peeled", peeled},
           {"hypothesis_checks", hyp}};
    if (r.success) j["coverage_check"] = ineq_to_json(r.coverage_check);
    if (r.certificate)
        j["certificate"] = Json{{"b", set_to_json(r.certificate->assembled_b)},
                                {"tk_b", int_to_json(r.certificate->tk_b)},
                                {"connectivity_lower",
                                 ineq_to_json(r.certificate->connectivity_lower)}};
    return j;
}

Json to_json(const PartitionState& st) {
    Json parts = Json::array();
    for (const auto& p : st.parts) parts.push_back(elems_to_json(p));
    Json p1 = Json::array(), p2 = Json::array();
    for (const auto& c : st.property1_checks) p1.push_back(ineq_to_json(c));
    for (const auto& c : st.property2_checks) p2.push_back(ineq_to_json(c));
    return Json{{"parts", parts},
                {"sigma", rational_to_json(st.sigma)},
                {"tk_a", int_to_json(st.tk_a)},
                {"moves", st.moves},
                {"property1_certified", st.property1_certified},
                {"property1_checks", p1},
                {"property2_checks", p2},
                {"uncertified_parts", st.uncertified_parts},
                {"property3_check", ineq_to_json(st.property3_check)},
                {"floor_check", ineq_to_json(st.floor_check)}};
}

Json to_json(const StrongPartitionResult& r) {
    Json parts = Json::array(), witnesses = Json::array(), rounds = Json::array();
    for (const auto& p : r.parts) parts.push_back(elems_to_json(p));
    for (const auto& w : r.witnesses) witnesses.push_back(elems_to_json(w));
    for (const auto& t : r.trace)
        rounds.push_back(Json{{"round", t.round},
                              {"classified_good", t.classified_good},
                              {"still_pending", t.still_pending}});
    return Json{{"parts", parts},
                {"witnesses", witnesses},
                {"omega", elems_to_json(r.omega)},
                {"certified_c", rational_to_json(r.certified_c)},
                {"rounds_used", r.rounds_used},
                {"rounds_max", r.rounds_max},
                {"success", r.success},
                {"t2_a", int_to_json(r.t2_a)},
                {"t2_omega", int_to_json(r.t2_omega)},
                {"accounting", ineq_to_json(r.accounting)},
                {"omega_bound", ineq_to_json(r.omega_bound)},
                {"uncertified_parts", r.uncertified_parts},
                {"trace", rounds}};
}

Json to_json(const KonyaginReport& r) {
    return Json{{"s_set", set_to_json(r.s_set)},
                {"subgroup_order", int_to_json(r.subgroup_order)},
                {"anchor", elem_to_json(r.s_set.spec(), r.anchor)},
                {"contained", r.contained},
                {"strong", to_json(r.strong)},
                {"theorem_applicable", r.theorem_applicable}};
}

namespace {

bool looks_like_ineq(const Json& j) {
    return j.is_object() && j.contains("lhs") && j.contains("rel") && j.contains("rhs") &&
           j.contains("holds");
}

void recheck_walk(const Json& node, std::size_t& checked, std::vector<std::string>& failures) {
    if (node.is_object()) {
        if (looks_like_ineq(node)) {
            ++checked;
            IneqRecord r = ineq_from_json(node);
            bool actual = rel_eval(r.lhs, r.rel, r.rhs);
            if (actual != r.holds)
                failures.push_back("inequality '" + r.label + "' recorded holds=" +
                                   (r.holds ? "true" : "false") + " but evaluates to " +
                                   (actual ? "true" : "false"));
        }
        for (const auto& [key, value] : node.items()) recheck_walk(value, checked, failures);
    } else if (node.is_array()) {
        for (const auto& value : node) recheck_walk(value, checked, failures);
    }
}

} // namespace

std::size_t recheck_inequalities(const Json& doc, std::vector<std::string>& failures) {
    std::size_t checked = 0;
    recheck_walk(doc, checked, failures);
    return checked;
}

} // namespace addcomb
