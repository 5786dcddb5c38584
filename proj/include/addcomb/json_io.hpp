#pragma once

#include <json.hpp>

#include "addcomb/connectivity.hpp"
#include "addcomb/dissociation.hpp"
#include "addcomb/energy.hpp"
#include "addcomb/group.hpp"
#include "addcomb/intfn.hpp"

namespace addcomb {

using Json = nlohmann::json;

// Integers are emitted as JSON numbers when they fit int64, decimal strings
// beyond; parsing accepts both.
Json int_to_json(const Int& v);
Int int_from_json(const Json& j);

Json group_to_json(const GroupSpec& spec);
GroupSpec group_from_json(const Json& j);

Json elem_to_json(const GroupSpec& spec, const Elem& e);
// Rejects out-of-range residues (no silent reduction).
Elem elem_from_json(const GroupSpec& spec, const Json& j);

// {"group": ..., "elements": [...]}; rejects duplicates and out-of-range.
Json set_to_json(const GroupSet& s);
GroupSet set_from_json(const Json& j);

// {"group": ..., "values": [[elem, count], ...]} in canonical order.
Json intfn_to_json(const IntFn& f);
IntFn intfn_from_json(const Json& j);

Json ineq_to_json(const IneqRecord& r);
IneqRecord ineq_from_json(const Json& j);

std::string canonical_dump(const Json& j);
// "fnv1a:<hex>" over the canonical set serialization.
std::string input_digest(const GroupSet& s);

Json rational_to_json(const Rat& r);

// Report serializers.
Json to_json(const Energy& e);
Json to_json(const ZetaValue& z);
Json to_json(const HolderReport& r);
Json to_json(const TkVsT2Report& r);
Json to_json(const DoublingReport& r);
Json to_json(const DissociationVerdict& v, const GroupSet& l);
Json to_json(const SpanResult& r);
Json to_json(const RudinReport& r);
Json to_json(const SmallBasisReport& r);
Json to_json(const ConnectedVerdict& v);
Json to_json(const StrongVerdict& v);
Json to_json(const StrongWeakReport& r);
Json to_json(const ExtractionResult& r);
Json to_json(const AlmostBasisResult& r);
Json to_json(const PartitionState& st);
Json to_json(const StrongPartitionResult& r);
Json to_json(const KonyaginReport& r);

// Re-validates every embedded {lhs, rel, rhs, holds} object anywhere in the
// document; returns the number checked, throws nothing, failures reported
// through the out-parameter.
std::size_t recheck_inequalities(const Json& doc, std::vector<std::string>& failures);

} // namespace addcomb
