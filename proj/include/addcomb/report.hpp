#pragma once

#include <string>
#include <vector>

#include "addcomb/numbers.hpp"

namespace addcomb {

enum class Rel { LE, GE, LT, GT, EQ };

const char* rel_symbol(Rel r);
Rel rel_from_symbol(const std::string& s);
bool rel_eval(const Int& lhs, Rel rel, const Int& rhs);

// One exact inequality instance: both sides are fully evaluated integers,
// so a report can be re-validated without recomputing anything.
struct IneqRecord {
    std::string label;
    Int lhs;
    Rel rel = Rel::LE;
    Int rhs;
    bool holds = false;

    static IneqRecord check(std::string label, Int lhs, Rel rel, Int rhs) {
        IneqRecord r;
        r.label = std::move(label);
        r.lhs = std::move(lhs);
        r.rel = rel;
        r.rhs = std::move(rhs);
        r.holds = rel_eval(r.lhs, r.rel, r.rhs);
        return r;
    }
};

} // namespace addcomb
