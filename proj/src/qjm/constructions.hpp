#pragma once

#include "qjm/core.hpp"
#include "qjm/joint.hpp"
#include "qjm/relations.hpp"

namespace qjm {

// A pair of +-1-valued qubit observables, specified by Bloch directions, with
// the state fixed to the north pole |+z>. For this family dA = sin(theta_a),
// dB = sin(theta_b) and C_AB = sin(theta_a) sin(theta_b) sin(phi_b - phi_a).
struct QubitPair {
    double theta_a;
    double phi_a;
    double theta_b;
    double phi_b;

    HermitianOperator observable_a() const { return direction_observable(theta_a, phi_a); }
    HermitianOperator observable_b() const { return direction_observable(theta_b, phi_b); }
    double azimuth_gap() const { return phi_b - phi_a; }
    StateStatistics statistics() const;

    static Ket north_pole();
};

QubitPair make_qubit_pair(double theta_a, double phi_a, double theta_b, double phi_b);

// An error-disturbance realization: probe measurement M_A after the
// interaction U, with approx_a = U^dag (1 (x) M_A) U and
// approx_b = U^dag (B (x) 1) U (the two always commute).
struct EDRealization {
    Mat interaction;
    HermitianOperator probe_obs;
    Ket probe_state;
    HermitianOperator approx_a;
    HermitianOperator approx_b;
};

EDRealization make_ed_realization(Mat interaction, HermitianOperator probe_obs, Ket probe_state,
                                  const HermitianOperator& system_b);

// Angular frame of the explicit saturating constructions: phi is the
// correlation phase (arg <A0 B0> when |<A0 B0>| = 1, arcsin Im <A0 B0>
// otherwise), split symmetrically into phi_a = -phi/2 and phi_b = +phi/2.
struct SaturatingFrame {
    double phi;
    double phi_a;
    double phi_b;
};

SaturatingFrame corr1_frame(const StateStatistics& stats);
SaturatingFrame corr_lt1_frame(const StateStatistics& stats);

// Saturation requires cos(phi) sin(varphi - phi_a) sin(phi_b - varphi) >= 0;
// constructions accept out-of-branch angles but then land strictly inside
// the allowed region.
bool saturating_branch(const SaturatingFrame& frame, double varphi);

// Projective measurement along the Bloch direction (theta, varphi) whose
// output values make both approximations diagonal in that eigenbasis. Yields
// normalized errors (sin(varphi - phi_a), sin(phi_b - varphi)), independent
// of theta, saturating the dimensionless trade-off bound for
// varphi in [phi_a, phi_b].
ApproxJointMeasurement qubit_joint_saturating(const QubitPair& pair, double theta, double varphi);

// Copy-and-rotate realization for equatorial qubit pairs
// (theta_a = theta_b = pi/2): measure sigma_varphi on a probe copied in its
// eigenbasis, then rotate the system so the later B measurement aligns.
// Yields eps_a = 2 sin((varphi-phi_a)/2), eta_b = 2 sin((phi_b-varphi)/2),
// saturating the same-spectrum bound.
EDRealization qubit_ed_saturating(const QubitPair& pair, double varphi);

// Explicit saturating basis for |<A0 B0>| = 1 built from
// (1 + q e^{i(varphi-phi_a)} A0)|psi> and (1 - q^{-1} e^{-i(phi_b-varphi)} B0)|psi>,
// completed orthogonally to span{psi, A psi, B psi}; optimal outputs.
// Errors dA |sin(varphi-phi_a)|, dB |sin(phi_b-varphi)|, independent of q.
ApproxJointMeasurement general_saturating_corr1(const HermitianOperator& a,
                                                const HermitianOperator& b, const Ket& psi,
                                                double q, double varphi);

struct CorrLt1Params {
    double q = 1;
    double r = 0;
    double s = 1;
    double t = 1;
};

// Required value of the product s*t for the given nuisance parameters.
double corr_lt1_st_product(const HermitianOperator& a, const HermitianOperator& b, const Ket& psi,
                           double q, double r, double varphi);
// Simplest parameter choice: q = 1, r = 0, s = t = sqrt(required product).
CorrLt1Params corr_lt1_defaults(const HermitianOperator& a, const HermitianOperator& b,
                                const Ket& psi, double varphi);

// Three-vector saturating basis for |<A0 B0>| < 1; requires dimension >= 3
// and varphi in [-|phi'|/2, |phi'|/2]. Errors dA |sin(varphi-phi_a')|,
// dB |sin(phi_b'-varphi)|, independent of q, r, s, t.
ApproxJointMeasurement general_saturating_corr_lt1(const HermitianOperator& a,
                                                   const HermitianOperator& b, const Ket& psi,
                                                   const CorrLt1Params& params, double varphi);

// Same eigenvectors as the |<A0 B0>| = 1 construction (q = +-1) but with
// sign outputs, for the dichotomic regime A^2 = B^2 = 1, <A> = <B> = 0,
// |<AB>| = 1. Errors sqrt(2 - 2|cos(varphi - phi_a)|) and
// sqrt(2 - 2|cos(phi_b - varphi)|); flipping output signs reaches the upper
// contour of the same-spectrum bound.
ApproxJointMeasurement dichotomic_saturating(const HermitianOperator& a,
                                             const HermitianOperator& b, const Ket& psi, double q,
                                             double varphi, bool flip_f, bool flip_g);

// Turn a system-space joint measurement into an error-disturbance
// realization: U = (U_R (x) 1) U_copy with U_copy|m, xi> = |m, m> and
// U_R^dag B U_R = sum_m g(m)|m><m|. Requires the multiset of g outputs to
// match B's spectrum.
EDRealization ed_realize(const ApproxJointMeasurement& measurement, const HermitianOperator& b);

// The trivial strategy when dA = 0 (or dB = 0): output the constant <A> and
// measure B exactly (or vice versa), reaching eps_a = eps_b = 0.
ApproxJointMeasurement degenerate_strategy(const HermitianOperator& a, const HermitianOperator& b,
                                           const Ket& psi);

}  // namespace qjm
