#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qjm/core.hpp"
#include "qjm/joint.hpp"

namespace qjm {

enum class RelationId {
    robertson,
    hak,
    ozawa_joint,
    ozawa_ed,
    branciard,
    branciard_dimless,
    same_spectrum,
    b_only_spectrum,
};

std::string_view relation_name(RelationId id);
RelationId parse_relation(std::string_view name);
// hak is evaluated but not universally valid; everything else must hold on
// physically realized error pairs (within its regime).
bool relation_is_universal(RelationId id);

struct RelationReport {
    RelationId id = RelationId::robertson;
    double lhs = 0;
    double rhs = 0;
    double slack = 0;  // lhs - rhs
    bool satisfied = false;
    bool saturated = false;
    bool universal = true;
    bool regime_ok = true;  // caller-verified regime flags, recorded verbatim
};

enum class OzawaMode { joint, error_disturbance };

RelationReport eval_robertson(const StateStatistics& stats);
RelationReport eval_hak(const ErrorPair& errors, const StateStatistics& stats);
RelationReport eval_ozawa(const ErrorPair& errors, const StateStatistics& stats, OzawaMode mode);
RelationReport eval_branciard(const ErrorPair& errors, const StateStatistics& stats,
                              bool dimensionless);
RelationReport eval_same_spectrum(const ErrorPair& errors, const StateStatistics& stats,
                                  bool regime_ok = true);
RelationReport eval_b_only(const ErrorPair& errors, const StateStatistics& stats,
                           bool regime_ok = true);
RelationReport eval_relation(RelationId id, const ErrorPair& errors,
                             const StateStatistics& stats, bool regime_ok = true);

// Numeric verification of the derivation chain
//   (eps eps' + dB eps + dA eps')^2 >= (dB eps + dA eps')^2
//     >= dB^2 eps^2 + dA^2 eps'^2 + 2 sqrt(dA^2 dB^2 - C^2) eps eps' >= C^2,
// each link within the numerical margin.
bool ozawa_implied_check(const ErrorPair& errors, const StateStatistics& stats);
// The two-term variant with the product term dropped: dB eps + dA eps' >= |C|.
bool ozawa_dropped_product_holds(const ErrorPair& errors, const StateStatistics& stats);

// Regime validators for the same-spectrum relations.
bool dichotomic_regime(const HermitianOperator& a, const HermitianOperator& b, const Ket& psi);
bool b_only_regime(const HermitianOperator& b, const Ket& psi);

enum class Branch { lower, upper };

struct TradeoffCurve {
    RelationId relation = RelationId::branciard_dimless;
    double c_tilde = 0;
    Branch branch = Branch::lower;

    struct Point {
        double parameter;
        double eps_a_tilde;
        double eps_b_tilde;
        double slack;
    };
    std::vector<Point> points;
};

// Saturating boundary in the normalized-error plane. For the dimensionless
// trade-off bound: (sin u, sin(phi-u)) with sin phi = |c_tilde|, u in [0,phi].
// For the same-spectrum bound, lower branch (2 sin(u/2), 2 sin((phi-u)/2));
// the upper branch is the sign-flipped arc (2 cos(u/2), 2 cos((phi-u)/2)).
TradeoffCurve boundary_curve(RelationId id, double c_tilde, int n_points, Branch branch);

// Full saturating contour for file export: single arc for relations bounded
// only from below; the four sign-flip arcs in traversal order for the
// same-spectrum bound (a closed contour when |c_tilde| = 1); lower then upper
// arc for the B-only bound. n_points applies per arc.
TradeoffCurve boundary_contour(RelationId id, double c_tilde, int n_points);

}  // namespace qjm
