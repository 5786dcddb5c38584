#include "addcomb/report.hpp"

namespace addcomb {

const char* rel_symbol(Rel r) {
    switch (r) {
    case Rel::LE: return "<=";
    case Rel::GE: return ">=";
    case Rel::LT: return "<";
    case Rel::GT: return ">";
    case Rel::EQ: return "==";
    }
    return "?";
}

Rel rel_from_symbol(const std::string& s) {
    if (s == "<=") return Rel::LE;
    if (s == ">=") return Rel::GE;
    if (s == "<") return Rel::LT;
    if (s == ">") return Rel::GT;
    if (s == "==") return Rel::EQ;
    throw UsageError("unknown relation symbol: " + s);
}

bool rel_eval(const Int& lhs, Rel rel, const Int& rhs) {
    switch (rel) {
    case Rel::LE: return lhs <= rhs;
    case Rel::GE: return lhs >= rhs;
    case Rel::LT: return lhs < rhs;
    case Rel::GT: return lhs > rhs;
    case Rel::EQ: return lhs == rhs;
    }
    return false;
}

} // namespace addcomb
