#pragma once

#include <string>

#include "numeric.hpp"

namespace midlayer {

// Uniform return shape for inequality checkers. slack = lhs - rhs exactly;
// which side carries the bound is documented per operation. hypothesis_met
// records the lemma's size/shape hypothesis, never the inequality itself.
struct IsoReport {
    Rational lhs = 0;
    Rational rhs = 0;
    Rational slack = 0;
    bool hypothesis_met = true;
    std::string variant;

    static IsoReport make(std::string tag, Rational lhs_v, Rational rhs_v, bool hyp = true) {
        IsoReport r;
        r.variant = std::move(tag);
        r.lhs = std::move(lhs_v);
        r.rhs = std::move(rhs_v);
        r.slack = r.lhs - r.rhs;
        r.hypothesis_met = hyp;
        return r;
    }
};

}  // namespace midlayer
