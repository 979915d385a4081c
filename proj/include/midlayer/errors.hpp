#pragma once

#include <stdexcept>
#include <string>

namespace midlayer {

enum class errc {
    invalid_layer,
    budget_exceeded,
    direction_out_of_range,
    not_self_complementary,
    uniformity_zero,
    shift_index_out_of_range,
    no_bracket,
    wrong_layer,
    not_induced_matching,
    hypothesis_violated,
    not_independent,
    not_maximal,
    not_triangle_free,
    not_an_edge,
    sink_aborted,
    inconsistent_xi,
    psi_equals_d,
    uncoverable,
    not_subset,
    not_regular,
    invalid_defects,
    choice_on_blocked_edge,
    directions_not_distinct,
    alpha_out_of_range,
    precondition_failed,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::invalid_layer: return "InvalidLayer";
        case errc::budget_exceeded: return "BudgetExceeded";
        case errc::direction_out_of_range: return "DirectionOutOfRange";
        case errc::not_self_complementary: return "NotSelfComplementary";
        case errc::uniformity_zero: return "UniformityZero";
        case errc::shift_index_out_of_range: return "ShiftIndexOutOfRange";
        case errc::no_bracket: return "NoBracket";
        case errc::wrong_layer: return "WrongLayer";
        case errc::not_induced_matching: return "NotInducedMatching";
        case errc::hypothesis_violated: return "HypothesisViolated";
        case errc::not_independent: return "NotIndependent";
        case errc::not_maximal: return "NotMaximal";
        case errc::not_triangle_free: return "NotTriangleFree";
        case errc::not_an_edge: return "NotAnEdge";
        case errc::sink_aborted: return "SinkAborted";
        case errc::inconsistent_xi: return "InconsistentXi";
        case errc::psi_equals_d: return "PsiEqualsD";
        case errc::uncoverable: return "Uncoverable";
        case errc::not_subset: return "NotSubset";
        case errc::not_regular: return "NotRegular";
        case errc::invalid_defects: return "InvalidDefects";
        case errc::choice_on_blocked_edge: return "ChoiceOnBlockedEdge";
        case errc::directions_not_distinct: return "DirectionsNotDistinct";
        case errc::alpha_out_of_range: return "AlphaOutOfRange";
        case errc::precondition_failed: return "PreconditionFailed";
    }
    return "UnknownError";
}

// All library failures surface as this exception; `code` selects the error
// class and `witness` (when ≥ 0) names the offending vertex.
class error : public std::runtime_error {
public:
    errc code;
    long long witness;

    explicit error(errc c, const std::string& detail = {}, long long witness_vertex = -1)
        : std::runtime_error(std::string(errc_name(c)) + (detail.empty() ? "" : ": " + detail)),
          code(c),
          witness(witness_vertex) {}
};

[[noreturn]] inline void fail(errc c, const std::string& detail = {}, long long witness = -1) {
    throw error(c, detail, witness);
}

inline void require(bool ok, errc c, const std::string& detail = {}, long long witness = -1) {
    if (!ok) fail(c, detail, witness);
}

}  // namespace midlayer
