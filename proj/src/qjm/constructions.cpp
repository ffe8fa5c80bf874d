#include "qjm/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qjm {

namespace {

constexpr double pi = std::numbers::pi;

Mat projector(const Vec& v) { return v * v.adjoint(); }

void require_unimodular(const Complex& corr) {
    if (std::abs(std::abs(corr) - 1.0) > tol().num) {
        fail(Errc::regime, "correlation <A0 B0> is not unimodular (|corr| = " +
                               std::to_string(std::abs(corr)) + ")");
    }
}

// Common eigenbasis columns and per-column outputs for the corr1 vectors.
Mat corr1_basis(const HermitianOperator& a0, const HermitianOperator& b0, const Ket& psi,
                double q, double varphi, const SaturatingFrame& frame) {
    if (q == 0.0) {
        fail(Errc::invalid_argument, "q must be nonzero");
    }
    const Vec& psi_v = psi.amplitudes();
    const Complex phase_a = std::polar(1.0, varphi - frame.phi_a);
    const Complex phase_b = std::polar(1.0, -(frame.phi_b - varphi));
    Vec m1 = psi_v + q * phase_a * (a0.matrix() * psi_v);
    Vec m2 = psi_v - (1.0 / q) * phase_b * (b0.matrix() * psi_v);
    const double residual = std::abs(m1.dot(m2)) / (m1.norm() * m2.norm());
    if (residual > tol().num) {
        fail(Errc::numeric,
             "saturating vectors not orthogonal, residual " + std::to_string(residual));
    }
    Mat seed(psi.dim(), 2);
    seed.col(0) = m1;
    seed.col(1) = m2;
    return complete_basis(seed, psi.dim());
}

std::vector<double> flipped(std::vector<double> values, bool flip) {
    if (flip) {
        for (double& v : values) {
            v = -v;
        }
    }
    return values;
}

}  // namespace

Ket QubitPair::north_pole() {
    Vec v(2);
    v << 1.0, 0.0;
    return Ket(std::move(v));
}

StateStatistics QubitPair::statistics() const {
    return state_statistics(observable_a(), observable_b(), north_pole());
}

QubitPair make_qubit_pair(double theta_a, double phi_a, double theta_b, double phi_b) {
    if (theta_a < 0 || theta_a > pi || theta_b < 0 || theta_b > pi) {
        fail(Errc::invalid_argument, "polar angles must lie in [0, pi]");
    }
    const double gap = phi_b - phi_a;
    if (gap < 0 || gap > pi / 2 + tol().num) {
        fail(Errc::invalid_argument, "azimuth gap phi_b - phi_a must lie in [0, pi/2]");
    }
    return QubitPair{theta_a, phi_a, theta_b, phi_b};
}

EDRealization make_ed_realization(Mat interaction, HermitianOperator probe_obs, Ket probe_state,
                                  const HermitianOperator& system_b) {
    const Eigen::Index total = interaction.rows();
    if (interaction.cols() != total || total != system_b.dim() * probe_state.dim() ||
        probe_obs.dim() != probe_state.dim()) {
        fail(Errc::dim_mismatch, "inconsistent error-disturbance realization dimensions");
    }
    const double unitarity =
        (interaction.adjoint() * interaction - Mat::Identity(total, total)).cwiseAbs().maxCoeff();
    if (unitarity > tol().num) {
        fail(Errc::numeric, "interaction is not unitary, residual " + std::to_string(unitarity));
    }
    const Eigen::Index d = system_b.dim();
    const Eigen::Index k = probe_state.dim();
    Mat approx_a = interaction.adjoint() *
                   kron(Mat::Identity(d, d), probe_obs.matrix()) * interaction;
    Mat approx_b = interaction.adjoint() *
                   kron(system_b.matrix(), Mat::Identity(k, k)) * interaction;
    const double commutation = (approx_a * approx_b - approx_b * approx_a).cwiseAbs().maxCoeff();
    if (commutation > tol().num) {
        fail(Errc::numeric,
             "approximations fail to commute, residual " + std::to_string(commutation));
    }
    // the disturbed observable is similar to B (x) 1, so its spectrum must be
    // B's, each eigenvalue k-fold
    Eigen::SelfAdjointEigenSolver<Mat> spec_b(system_b.matrix(), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Mat> spec_approx(approx_b, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < total; ++i) {
        const double expected = spec_b.eigenvalues()(i / k);
        if (std::abs(spec_approx.eigenvalues()(i) - expected) > tol().num) {
            fail(Errc::numeric, "disturbed observable does not keep the spectrum of B");
        }
    }
    return EDRealization{std::move(interaction), std::move(probe_obs), std::move(probe_state),
                         HermitianOperator(std::move(approx_a)),
                         HermitianOperator(std::move(approx_b))};
}

SaturatingFrame corr1_frame(const StateStatistics& stats) {
    require_unimodular(stats.corr_a0b0);
    const double phi = std::arg(stats.corr_a0b0);
    return SaturatingFrame{phi, -phi / 2, phi / 2};
}

SaturatingFrame corr_lt1_frame(const StateStatistics& stats) {
    const double chi = std::clamp(stats.corr_a0b0.imag(), -1.0, 1.0);
    const double phi = std::asin(chi);
    return SaturatingFrame{phi, -phi / 2, phi / 2};
}

bool saturating_branch(const SaturatingFrame& frame, double varphi) {
    return std::cos(frame.phi) * std::sin(varphi - frame.phi_a) *
               std::sin(frame.phi_b - varphi) >=
           -tol().num;
}

ApproxJointMeasurement qubit_joint_saturating(const QubitPair& pair, double theta,
                                              double varphi) {
    if (std::sin(pair.theta_a) * std::sin(pair.theta_b) <= tol().deg) {
        fail(Errc::degenerate, "saturating construction needs sin(theta_a) sin(theta_b) != 0");
    }
    const double s2 = std::sin(theta) * std::sin(theta);
    if (s2 <= tol().deg) {
        fail(Errc::degenerate, "measurement direction must not be polar");
    }

    const RealVec m_hat = bloch_vector(theta, varphi);
    const RealVec a_hat = bloch_vector(pair.theta_a, pair.phi_a);
    const RealVec b_hat = bloch_vector(pair.theta_b, pair.phi_b);
    const double ma = m_hat.dot(a_hat);
    const double mb = m_hat.dot(b_hat);
    const double ct = std::cos(theta);
    const double ca = std::cos(pair.theta_a);
    const double cb = std::cos(pair.theta_b);

    // calA = [ (cos th_a - cos th m.a) 1 + (m.a - cos th_a cos th) m.sigma ] / sin^2 th,
    // diagonal in the m-basis with eigenvalues c0 +- c1; same for calB.
    const double f0 = (ca - ct * ma) / s2;
    const double f1 = (ma - ca * ct) / s2;
    const double g0 = (cb - ct * mb) / s2;
    const double g1 = (mb - cb * ct) / s2;

    const double half = theta / 2;
    const Complex phase = std::polar(1.0, varphi);
    Mat basis(2, 2);
    basis(0, 0) = std::cos(half);
    basis(1, 0) = phase * std::sin(half);
    basis(0, 1) = -std::sin(half);
    basis(1, 1) = phase * std::cos(half);

    return make_joint_measurement(std::move(basis), {f0 + f1, f0 - f1}, {g0 + g1, g0 - g1});
}

EDRealization qubit_ed_saturating(const QubitPair& pair, double varphi) {
    if (std::abs(pair.theta_a - pi / 2) > tol().num || std::abs(pair.theta_b - pi / 2) > tol().num) {
        fail(Errc::regime, "error-disturbance construction needs equatorial Bloch vectors");
    }

    const HermitianOperator probe_obs = direction_observable(pi / 2, varphi);
    Eigen::SelfAdjointEigenSolver<Mat> es(probe_obs.matrix());
    const Vec minus = es.eigenvectors().col(0);  // eigenvalue -1
    const Vec plus = es.eigenvectors().col(1);   // eigenvalue +1

    // CNOT in the {|m+>, |m->} basis, probe prepared in |m+>
    const Mat flip = plus * minus.adjoint() + minus * plus.adjoint();
    const Mat u_copy =
        kron(projector(plus), Mat::Identity(2, 2)) + kron(projector(minus), flip);
    const double angle = (pair.phi_b - varphi) / 2;
    Mat u_r = Mat::Zero(2, 2);
    u_r(0, 0) = std::polar(1.0, -angle);
    u_r(1, 1) = std::polar(1.0, angle);
    Mat interaction = kron(u_r, Mat::Identity(2, 2)) * u_copy;

    return make_ed_realization(std::move(interaction), probe_obs, Ket(plus),
                               pair.observable_b());
}

ApproxJointMeasurement general_saturating_corr1(const HermitianOperator& a,
                                                const HermitianOperator& b, const Ket& psi,
                                                double q, double varphi) {
    const StateStatistics stats = state_statistics(a, b, psi);
    if (stats.degenerate()) {
        fail(Errc::degenerate, "construction needs dA dB > 0");
    }
    const SaturatingFrame frame = corr1_frame(stats);
    const HermitianOperator a0 = normalized_observable(a, psi);
    const HermitianOperator b0 = normalized_observable(b, psi);
    Mat basis = corr1_basis(a0, b0, psi, q, varphi, frame);
    std::vector<double> f = optimal_outputs(basis, a, psi);
    std::vector<double> g = optimal_outputs(basis, b, psi);
    return make_joint_measurement(std::move(basis), std::move(f), std::move(g));
}

namespace {

struct CorrLt1Seed {
    Vec m1;
    Vec a0_psi;
    Vec b0_psi;
    double n1;
    double one_minus_corr2;
};

CorrLt1Seed corr_lt1_seed(const HermitianOperator& a, const HermitianOperator& b, const Ket& psi,
                          double q, double r, double varphi) {
    const StateStatistics stats = state_statistics(a, b, psi);
    if (stats.degenerate()) {
        fail(Errc::degenerate, "construction needs dA dB > 0");
    }
    const double corr_abs = std::abs(stats.corr_a0b0);
    if (corr_abs >= 1.0 - tol().num) {
        fail(Errc::regime, "|<A0 B0>| = 1: use the two-vector construction");
    }
    if (q == 0.0 && r == 0.0) {
        fail(Errc::invalid_argument, "q and r must not both vanish");
    }
    const SaturatingFrame frame = corr_lt1_frame(stats);
    const double span = std::abs(frame.phi) / 2;
    if (varphi < -span - tol().num || varphi > span + tol().num) {
        fail(Errc::invalid_argument, "varphi outside [-|phi'|/2, |phi'|/2]");
    }
    if (psi.dim() < 3) {
        fail(Errc::dim_mismatch, "three-vector construction needs dimension >= 3");
    }

    const HermitianOperator a0 = normalized_observable(a, psi);
    const HermitianOperator b0 = normalized_observable(b, psi);

    const Complex alpha(q * std::cos(varphi - frame.phi_a), r * std::sin(varphi - frame.phi_a));
    const Complex beta(r * std::cos(frame.phi_b - varphi), -q * std::sin(frame.phi_b - varphi));

    CorrLt1Seed seed;
    seed.a0_psi = a0.matrix() * psi.amplitudes();
    seed.b0_psi = b0.matrix() * psi.amplitudes();
    seed.m1 = psi.amplitudes() + beta * seed.a0_psi + alpha * seed.b0_psi;
    seed.n1 = seed.m1.squaredNorm();
    seed.one_minus_corr2 = 1.0 - corr_abs * corr_abs;
    return seed;
}

}  // namespace

double corr_lt1_st_product(const HermitianOperator& a, const HermitianOperator& b, const Ket& psi,
                           double q, double r, double varphi) {
    const CorrLt1Seed seed = corr_lt1_seed(a, b, psi, q, r, varphi);
    return seed.n1 / seed.one_minus_corr2;
}

CorrLt1Params corr_lt1_defaults(const HermitianOperator& a, const HermitianOperator& b,
                                const Ket& psi, double varphi) {
    CorrLt1Params p;
    const double st = corr_lt1_st_product(a, b, psi, p.q, p.r, varphi);
    p.s = p.t = std::sqrt(st);
    return p;
}

ApproxJointMeasurement general_saturating_corr_lt1(const HermitianOperator& a,
                                                   const HermitianOperator& b, const Ket& psi,
                                                   const CorrLt1Params& params, double varphi) {
    const CorrLt1Seed v = corr_lt1_seed(a, b, psi, params.q, params.r, varphi);

    const double required = v.n1 / v.one_minus_corr2;
    if (std::abs(params.s * params.t - required) > tol().num * std::max(1.0, required)) {
        fail(Errc::invalid_argument, "s*t constraint violated: need s*t = " +
                                         std::to_string(required) + ", got " +
                                         std::to_string(params.s * params.t));
    }

    const Vec d_psi = v.m1.dot(v.b0_psi) * v.a0_psi - v.m1.dot(v.a0_psi) * v.b0_psi;
    const Vec m2 = v.n1 * psi.amplitudes() + params.s * d_psi - v.m1;
    const Vec m3 = v.n1 * psi.amplitudes() - params.t * d_psi - v.m1;

    const double r12 = std::abs(v.m1.dot(m2)) / (v.m1.norm() * m2.norm());
    const double r13 = std::abs(v.m1.dot(m3)) / (v.m1.norm() * m3.norm());
    const double r23 = std::abs(m2.dot(m3)) / (m2.norm() * m3.norm());
    const double worst = std::max({r12, r13, r23});
    if (worst > tol().num) {
        fail(Errc::numeric,
             "constructed vectors not orthogonal, residual " + std::to_string(worst));
    }

    Mat seed(psi.dim(), 3);
    seed.col(0) = v.m1;
    seed.col(1) = m2;
    seed.col(2) = m3;
    Mat basis = complete_basis(seed, psi.dim());
    std::vector<double> f = optimal_outputs(basis, a, psi);
    std::vector<double> g = optimal_outputs(basis, b, psi);
    return make_joint_measurement(std::move(basis), std::move(f), std::move(g));
}

ApproxJointMeasurement dichotomic_saturating(const HermitianOperator& a,
                                             const HermitianOperator& b, const Ket& psi, double q,
                                             double varphi, bool flip_f, bool flip_g) {
    if (!dichotomic_regime(a, b, psi)) {
        fail(Errc::regime, "dichotomic construction needs A^2 = B^2 = 1 and <A> = <B> = 0");
    }
    if (std::abs(std::abs(q) - 1.0) > tol().num) {
        fail(Errc::invalid_argument, "q must be +-1");
    }
    const StateStatistics stats = state_statistics(a, b, psi);
    const SaturatingFrame frame = corr1_frame(stats);  // also checks |<AB>| = 1
    // A0 = A and B0 = B in this regime
    Mat basis = corr1_basis(a, b, psi, q, varphi, frame);
    std::vector<double> f = flipped(dichotomic_outputs(basis, a, psi), flip_f);
    std::vector<double> g = flipped(dichotomic_outputs(basis, b, psi), flip_g);
    return make_joint_measurement(std::move(basis), std::move(f), std::move(g));
}

EDRealization ed_realize(const ApproxJointMeasurement& measurement, const HermitianOperator& b) {
    const Eigen::Index d = measurement.dim();
    require_same_dim(d, b.dim(), "error-disturbance realization");

    // spectra must match as multisets for the aligning rotation to exist
    Eigen::SelfAdjointEigenSolver<Mat> es(b.matrix());
    std::vector<std::size_t> order(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
        return measurement.g_out[lhs] < measurement.g_out[rhs];
    });
    for (Eigen::Index i = 0; i < d; ++i) {
        const double g_sorted = measurement.g_out[order[static_cast<std::size_t>(i)]];
        if (std::abs(g_sorted - es.eigenvalues()(i)) > tol().num) {
            fail(Errc::unsatisfiable,
                 "output multiset does not match the spectrum of B: no aligning rotation");
        }
    }

    // U_R: rotate the g-sorted measurement basis onto B's eigenbasis
    Mat w(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        w.col(i) = measurement.basis.col(static_cast<Eigen::Index>(order[static_cast<std::size_t>(i)]));
    }
    const Mat u_r = es.eigenvectors() * w.adjoint();

    // U_copy|m_j, xi> = |m_j, m_j> with xi = first basis vector, via
    // per-branch transpositions in the measurement basis
    const Vec xi = measurement.basis.col(0);
    Mat u_copy = Mat::Zero(d * d, d * d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const Vec mj = measurement.basis.col(j);
        Mat t_j = Mat::Identity(d, d);
        if (j != 0) {
            t_j += mj * xi.adjoint() + xi * mj.adjoint() - projector(mj) - projector(xi);
        }
        u_copy += kron(projector(mj), t_j);
    }

    Mat interaction = kron(u_r, Mat::Identity(d, d)) * u_copy;
    Mat probe_obs = measurement.observable_a();
    return make_ed_realization(std::move(interaction), HermitianOperator(std::move(probe_obs)),
                               Ket(xi), b);
}

ApproxJointMeasurement degenerate_strategy(const HermitianOperator& a, const HermitianOperator& b,
                                           const Ket& psi) {
    const StateStatistics stats = state_statistics(a, b, psi);
    const bool a_degenerate = stats.delta_a <= tol().deg;
    const bool b_degenerate = stats.delta_b <= tol().deg;
    if (!a_degenerate && !b_degenerate) {
        fail(Errc::degenerate, "neither standard deviation is degenerate");
    }
    // measure the non-degenerate observable exactly, output the other's mean
    const HermitianOperator& exact = a_degenerate ? b : a;
    Eigen::SelfAdjointEigenSolver<Mat> es(exact.matrix());
    const Eigen::Index d = psi.dim();
    std::vector<double> eigen_outputs(static_cast<std::size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i) {
        eigen_outputs[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    }
    std::vector<double> constant_outputs(
        static_cast<std::size_t>(d), a_degenerate ? stats.mean_a : stats.mean_b);
    Mat basis = es.eigenvectors();
    if (a_degenerate) {
        return make_joint_measurement(std::move(basis), std::move(constant_outputs),
                                      std::move(eigen_outputs));
    }
    return make_joint_measurement(std::move(basis), std::move(eigen_outputs),
                                  std::move(constant_outputs));
}

}  // namespace qjm
