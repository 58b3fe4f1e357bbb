#ifndef HEXACURVE_ERRORS_HPP
#define HEXACURVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hexacurve {

enum class errc {
    zero_inverse,
    field_mismatch,
    degree_overflow,
    arity_mismatch,
    grading_mismatch,
    not_skew,
    invalid_isometry,
    center_of_projection,
    missing_anchors,
    zero_vector,
    out_of_range,
    unknown_name,
    degenerate_draw,
    insufficient_points,
    uncertified_curve,
    non_linear_fit,
    out_of_range_genus,
    singular_boundary_point,
    not_on_variety,
    no_solution,
    degenerate_image,
    unexpected_bond_type,
    extension_field_needed,
    config_error,
    internal,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::zero_inverse: return "ZeroInverse";
        case errc::field_mismatch: return "FieldMismatch";
        case errc::degree_overflow: return "DegreeOverflow";
        case errc::arity_mismatch: return "ArityMismatch";
        case errc::grading_mismatch: return "GradingMismatch";
        case errc::not_skew: return "NotSkew";
        case errc::invalid_isometry: return "InvalidIsometry";
        case errc::center_of_projection: return "CenterOfProjection";
        case errc::missing_anchors: return "MissingAnchors";
        case errc::zero_vector: return "ZeroVector";
        case errc::out_of_range: return "OutOfRange";
        case errc::unknown_name: return "UnknownName";
        case errc::degenerate_draw: return "DegenerateDraw";
        case errc::insufficient_points: return "InsufficientPoints";
        case errc::uncertified_curve: return "UncertifiedCurve";
        case errc::non_linear_fit: return "NonLinearFit";
        case errc::out_of_range_genus: return "OutOfRangeGenus";
        case errc::singular_boundary_point: return "SingularBoundaryPoint";
        case errc::not_on_variety: return "NotOnVariety";
        case errc::no_solution: return "NoSolution";
        case errc::degenerate_image: return "DegenerateImage";
        case errc::unexpected_bond_type: return "UnexpectedBondType";
        case errc::extension_field_needed: return "ExtensionFieldNeeded";
        case errc::config_error: return "ConfigError";
        case errc::internal: return "Internal";
    }
    return "Unknown";
}

class hx_error : public std::runtime_error {
public:
    hx_error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw hx_error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace hexacurve

#endif
