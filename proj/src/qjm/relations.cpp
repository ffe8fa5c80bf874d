#include "qjm/relations.hpp"

#include <algorithm>
#include <cmath>

namespace qjm {

namespace {

RelationReport finish(RelationReport r) {
    r.slack = r.lhs - r.rhs;
    r.satisfied = r.slack >= -tol().num;
    r.saturated = r.satisfied && std::abs(r.slack) <= tol().sat;
    return r;
}

double sqrt_clamped(double x) { return std::sqrt(std::max(x, 0.0)); }

// eps sqrt(1 - eps^2/4), the chord-to-projection map of the dichotomic case
double folded(double eps) { return eps * sqrt_clamped(1.0 - eps * eps / 4.0); }

void require_dichotomic_range(double value, const char* name) {
    if (value < -tol().num || value > 2.0 + tol().num) {
        fail(Errc::regime, std::string(name) + " = " + std::to_string(value) +
                               " outside [0,2]: not a dichotomic-regime error");
    }
}

double half_angle(double c_tilde) {
    if (std::abs(c_tilde) > 1.0 + tol().num) {
        fail(Errc::invalid_argument, "|c_tilde| must not exceed 1");
    }
    return std::asin(std::min(std::abs(c_tilde), 1.0));
}

}  // namespace

std::string_view relation_name(RelationId id) {
    switch (id) {
        case RelationId::robertson: return "robertson";
        case RelationId::hak: return "hak";
        case RelationId::ozawa_joint: return "ozawa_joint";
        case RelationId::ozawa_ed: return "ozawa_ed";
        case RelationId::branciard: return "branciard";
        case RelationId::branciard_dimless: return "branciard_dimless";
        case RelationId::same_spectrum: return "same_spectrum";
        case RelationId::b_only_spectrum: return "b_only_spectrum";
    }
    fail(Errc::invalid_argument, "unknown relation id");
}

RelationId parse_relation(std::string_view name) {
    for (RelationId id :
         {RelationId::robertson, RelationId::hak, RelationId::ozawa_joint, RelationId::ozawa_ed,
          RelationId::branciard, RelationId::branciard_dimless, RelationId::same_spectrum,
          RelationId::b_only_spectrum}) {
        if (relation_name(id) == name) {
            return id;
        }
    }
    fail(Errc::config, "unknown relation '" + std::string(name) + "'");
}

bool relation_is_universal(RelationId id) { return id != RelationId::hak; }

RelationReport eval_robertson(const StateStatistics& stats) {
    RelationReport r;
    r.id = RelationId::robertson;
    r.lhs = stats.delta_a * stats.delta_b;
    r.rhs = std::abs(stats.c_ab);
    return finish(r);
}

RelationReport eval_hak(const ErrorPair& errors, const StateStatistics& stats) {
    RelationReport r;
    r.id = RelationId::hak;
    r.lhs = errors.eps_a * errors.eps_b;
    r.rhs = std::abs(stats.c_ab);
    r.universal = false;
    return finish(r);
}

RelationReport eval_ozawa(const ErrorPair& errors, const StateStatistics& stats, OzawaMode mode) {
    RelationReport r;
    r.id = mode == OzawaMode::joint ? RelationId::ozawa_joint : RelationId::ozawa_ed;
    r.lhs = errors.eps_a * errors.eps_b + stats.delta_b * errors.eps_a +
            stats.delta_a * errors.eps_b;
    r.rhs = std::abs(stats.c_ab);
    return finish(r);
}

RelationReport eval_branciard(const ErrorPair& errors, const StateStatistics& stats,
                              bool dimensionless) {
    RelationReport r;
    if (dimensionless) {
        if (stats.degenerate()) {
            fail(Errc::degenerate, "dimensionless form needs dA, dB > 0");
        }
        const double ct = stats.c_tilde();
        const double ea = errors.eps_a_tilde;
        const double eb = errors.eps_b_tilde;
        r.id = RelationId::branciard_dimless;
        r.lhs = ea * ea + eb * eb + 2.0 * sqrt_clamped(1.0 - ct * ct) * ea * eb;
        r.rhs = ct * ct;
    } else {
        const double da2 = stats.delta_a * stats.delta_a;
        const double db2 = stats.delta_b * stats.delta_b;
        const double c2 = stats.c_ab * stats.c_ab;
        r.id = RelationId::branciard;
        r.lhs = db2 * errors.eps_a * errors.eps_a + da2 * errors.eps_b * errors.eps_b +
                2.0 * sqrt_clamped(da2 * db2 - c2) * errors.eps_a * errors.eps_b;
        r.rhs = c2;
    }
    return finish(r);
}

RelationReport eval_same_spectrum(const ErrorPair& errors, const StateStatistics& stats,
                                  bool regime_ok) {
    require_dichotomic_range(errors.eps_a, "eps_a");
    require_dichotomic_range(errors.eps_b, "eta_b");
    RelationReport r;
    r.id = RelationId::same_spectrum;
    r.regime_ok = regime_ok;
    const double c = stats.c_ab;  // dA = dB = 1 in the intended regime
    const double fa = folded(errors.eps_a);
    const double fb = folded(errors.eps_b);
    r.lhs = fa * fa + fb * fb + 2.0 * sqrt_clamped(1.0 - c * c) * fa * fb;
    r.rhs = c * c;
    return finish(r);
}

RelationReport eval_b_only(const ErrorPair& errors, const StateStatistics& stats,
                           bool regime_ok) {
    require_dichotomic_range(errors.eps_b, "eta_b");
    RelationReport r;
    r.id = RelationId::b_only_spectrum;
    r.regime_ok = regime_ok;
    const double ct = stats.c_tilde();
    const double ea = errors.eps_a_tilde;
    const double fb = folded(errors.eps_b);
    r.lhs = ea * ea + fb * fb + 2.0 * sqrt_clamped(1.0 - ct * ct) * ea * fb;
    r.rhs = ct * ct;
    return finish(r);
}

RelationReport eval_relation(RelationId id, const ErrorPair& errors,
                             const StateStatistics& stats, bool regime_ok) {
    switch (id) {
        case RelationId::robertson: return eval_robertson(stats);
        case RelationId::hak: return eval_hak(errors, stats);
        case RelationId::ozawa_joint: return eval_ozawa(errors, stats, OzawaMode::joint);
        case RelationId::ozawa_ed: return eval_ozawa(errors, stats, OzawaMode::error_disturbance);
        case RelationId::branciard: return eval_branciard(errors, stats, false);
        case RelationId::branciard_dimless: return eval_branciard(errors, stats, true);
        case RelationId::same_spectrum: return eval_same_spectrum(errors, stats, regime_ok);
        case RelationId::b_only_spectrum: return eval_b_only(errors, stats, regime_ok);
    }
    fail(Errc::invalid_argument, "unknown relation id");
}

bool ozawa_implied_check(const ErrorPair& errors, const StateStatistics& stats) {
    const double ea = errors.eps_a;
    const double eb = errors.eps_b;
    const double da = stats.delta_a;
    const double db = stats.delta_b;
    const double c2 = stats.c_ab * stats.c_ab;

    const double ozawa = ea * eb + db * ea + da * eb;
    const double two_term = db * ea + da * eb;
    const double link1 = ozawa * ozawa;
    const double link2 = two_term * two_term;
    const double link3 = db * db * ea * ea + da * da * eb * eb +
                         2.0 * sqrt_clamped(da * da * db * db - c2) * ea * eb;

    return link1 >= link2 - tol().num && link2 >= link3 - tol().num && link3 >= c2 - tol().num;
}

bool ozawa_dropped_product_holds(const ErrorPair& errors, const StateStatistics& stats) {
    return stats.delta_b * errors.eps_a + stats.delta_a * errors.eps_b >=
           std::abs(stats.c_ab) - tol().num;
}

bool dichotomic_regime(const HermitianOperator& a, const HermitianOperator& b, const Ket& psi) {
    const Mat id = Mat::Identity(a.dim(), a.dim());
    return (a.matrix() * a.matrix() - id).cwiseAbs().maxCoeff() <= tol().num &&
           (b.matrix() * b.matrix() - id).cwiseAbs().maxCoeff() <= tol().num &&
           std::abs(expectation(a, psi)) <= tol().num && std::abs(expectation(b, psi)) <= tol().num;
}

bool b_only_regime(const HermitianOperator& b, const Ket& psi) {
    const Mat id = Mat::Identity(b.dim(), b.dim());
    return (b.matrix() * b.matrix() - id).cwiseAbs().maxCoeff() <= tol().num &&
           std::abs(expectation(b, psi)) <= tol().num;
}

namespace {

// One saturating arc. `flip_a`/`flip_b` select the sign-reversed branches of
// the dichotomic construction (2 sin -> 2 cos).
void append_arc(TradeoffCurve& curve, RelationId id, double phi, int n_points, bool ascending,
                bool flip_a, bool flip_b) {
    const double c = std::sin(phi) * (curve.c_tilde < 0 ? -1.0 : 1.0);
    const StateStatistics stats{0, 0, 1, 1, c, Complex(std::cos(phi), c)};
    for (int i = 0; i < n_points; ++i) {
        const double frac =
            n_points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n_points - 1);
        const double u = phi * (ascending ? frac : 1.0 - frac);
        TradeoffCurve::Point p{};
        p.parameter = u;
        RelationReport report;
        switch (id) {
            case RelationId::branciard:
            case RelationId::branciard_dimless: {
                p.eps_a_tilde = std::sin(u);
                p.eps_b_tilde = std::sin(phi - u);
                report = eval_branciard(
                    make_error_pair(p.eps_a_tilde, p.eps_b_tilde, stats), stats, true);
                break;
            }
            case RelationId::same_spectrum: {
                p.eps_a_tilde = flip_a ? 2.0 * std::cos(u / 2.0) : 2.0 * std::sin(u / 2.0);
                p.eps_b_tilde =
                    flip_b ? 2.0 * std::cos((phi - u) / 2.0) : 2.0 * std::sin((phi - u) / 2.0);
                report = eval_same_spectrum(
                    make_error_pair(p.eps_a_tilde, p.eps_b_tilde, stats), stats);
                break;
            }
            case RelationId::b_only_spectrum: {
                p.eps_a_tilde = std::sin(u);
                p.eps_b_tilde =
                    flip_b ? 2.0 * std::cos((phi - u) / 2.0) : 2.0 * std::sin((phi - u) / 2.0);
                report =
                    eval_b_only(make_error_pair(p.eps_a_tilde, p.eps_b_tilde, stats), stats);
                break;
            }
            default:
                fail(Errc::config, "no boundary curve for relation '" +
                                       std::string(relation_name(id)) + "'");
        }
        p.slack = report.slack;
        if (std::abs(p.slack) > tol().sat) {
            fail(Errc::numeric, "boundary point does not saturate, slack " +
                                    std::to_string(p.slack));
        }
        curve.points.push_back(p);
    }
}

}  // namespace

TradeoffCurve boundary_curve(RelationId id, double c_tilde, int n_points, Branch branch) {
    if (n_points < 2) {
        fail(Errc::config, "curve needs at least 2 points");
    }
    const double phi = half_angle(c_tilde);
    TradeoffCurve curve;
    curve.relation = id;
    curve.c_tilde = c_tilde;
    curve.branch = branch;
    if (phi == 0.0) {
        // degenerate bound: the single point (0, 0)
        curve.points.push_back({0.0, 0.0, 0.0, 0.0});
        return curve;
    }
    switch (id) {
        case RelationId::branciard:
        case RelationId::branciard_dimless:
            if (branch == Branch::upper) {
                fail(Errc::config, "the trade-off bound has no upper branch");
            }
            append_arc(curve, id, phi, n_points, true, false, false);
            break;
        case RelationId::same_spectrum:
            append_arc(curve, id, phi, n_points, true, branch == Branch::upper,
                       branch == Branch::upper);
            break;
        case RelationId::b_only_spectrum:
            append_arc(curve, id, phi, n_points, true, false, branch == Branch::upper);
            break;
        default:
            fail(Errc::config,
                 "no boundary curve for relation '" + std::string(relation_name(id)) + "'");
    }
    return curve;
}

TradeoffCurve boundary_contour(RelationId id, double c_tilde, int n_points) {
    if (n_points < 2) {
        fail(Errc::config, "curve needs at least 2 points");
    }
    const double phi = half_angle(c_tilde);
    TradeoffCurve curve;
    curve.relation = id;
    curve.c_tilde = c_tilde;
    if (phi == 0.0) {
        curve.points.push_back({0.0, 0.0, 0.0, 0.0});
        return curve;
    }
    switch (id) {
        case RelationId::branciard:
        case RelationId::branciard_dimless:
            append_arc(curve, id, phi, n_points, true, false, false);
            break;
        case RelationId::same_spectrum:
            // traversal closes exactly at |c_tilde| = 1
            append_arc(curve, id, phi, n_points, true, false, false);
            append_arc(curve, id, phi, n_points, false, true, false);
            append_arc(curve, id, phi, n_points, true, true, true);
            append_arc(curve, id, phi, n_points, false, false, true);
            break;
        case RelationId::b_only_spectrum:
            append_arc(curve, id, phi, n_points, true, false, false);
            append_arc(curve, id, phi, n_points, false, false, true);
            break;
        default:
            fail(Errc::config,
                 "no boundary curve for relation '" + std::string(relation_name(id)) + "'");
    }
    return curve;
}

}  // namespace qjm
