#pragma once

#include <map>

#include "addcomb/group.hpp"

namespace addcomb {

// Finitely supported function G -> Z>=0 with arbitrary-precision values.
// Zero values are never stored; keys are canonical elements.
class IntFn {
public:
    explicit IntFn(GroupSpec spec) : spec_(std::move(spec)) {}

    static IntFn characteristic(const GroupSet& a);
    static IntFn delta(const GroupSpec& spec, const Elem& at, Int value = 1);

    const GroupSpec& spec() const { return spec_; }
    const std::map<Elem, Int>& values() const { return vals_; }

    Int at(const Elem& e) const;
    void add_at(const Elem& e, const Int& delta);
    // Total mass sum_x f(x).
    Int mass() const;
    GroupSet support() const;
    bool operator==(const IntFn& other) const {
        return spec_ == other.spec_ && vals_ == other.vals_;
    }

private:
    GroupSpec spec_;
    std::map<Elem, Int> vals_;
};

// (f*g)(x) = sum_s f(s) g(x-s).
IntFn convolve(const IntFn& f, const IntFn& g);
// (f o g)(x) = sum_s f(s) g(s-x).
IntFn correlate(const IntFn& f, const IntFn& g);
// A *_j A: the (j+1)-fold sum representation function; j = 0 is the
// characteristic function of A itself.
IntFn iterated_self_conv(const GroupSet& a, unsigned j);

// sum_x f(x) g(x).
Int dot(const IntFn& f, const IntFn& g);
// sum_x f(x)^2.
Int sum_of_squares(const IntFn& f);

} // namespace addcomb
