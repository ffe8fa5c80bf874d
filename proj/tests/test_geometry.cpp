#include <doctest.h>

#include <cmath>

#include "qjm/core.hpp"
#include "qjm/geometry.hpp"
#include "qjm/joint.hpp"
#include "qjm/random.hpp"

using namespace qjm;

namespace {

RealVec planar(double angle) {
    RealVec v(2);
    v << std::cos(angle), std::sin(angle);
    return v;
}

// Planar configuration saturating the orthogonal-axes inequality: x along
// direction phi_m, y orthogonal to it, both vectors the orthogonal
// projections of the respective unit vectors.
LemmaInstance figure_instance(double phi_a, double phi_b, double phi_m) {
    LemmaInstance inst;
    inst.a_hat = planar(phi_a);
    inst.b_hat = planar(phi_b + M_PI / 2);
    const RealVec x_hat = planar(phi_m);
    const RealVec y_hat = planar(phi_m + M_PI / 2);
    inst.x_vec = inst.a_hat.dot(x_hat) * x_hat;
    inst.y_vec = inst.b_hat.dot(y_hat) * y_hat;
    return inst;
}

}  // namespace

TEST_CASE("embedding conventions") {
    Vec zero_ket(2);
    zero_ket << 1, 0;
    const RealVec embedded = embed(zero_ket, EmbedConvention::a_type);
    CHECK(embedded.size() == 4);
    CHECK(embedded(0) == 1.0);
    CHECK(embedded(1) == 0.0);
    CHECK(embedded(2) == 0.0);
    CHECK(embedded(3) == 0.0);
}

TEST_CASE("embedding is an isometry and mixed products give Im<a|b>") {
    Rng rng(301);
    for (int trial = 0; trial < 20; ++trial) {
        Vec a(4), b(4);
        for (int i = 0; i < 4; ++i) {
            a(i) = rng.complex_normal();
            b(i) = rng.complex_normal();
        }
        CHECK(embed(a, EmbedConvention::a_type).norm() == doctest::Approx(a.norm()).epsilon(1e-12));
        CHECK(embed(b, EmbedConvention::b_type).norm() == doctest::Approx(b.norm()).epsilon(1e-12));
        CHECK(embed(Vec(a - b), EmbedConvention::a_type).norm() ==
              doctest::Approx((a - b).norm()).epsilon(1e-12));
        const double mixed =
            embed(a, EmbedConvention::a_type).dot(embed(b, EmbedConvention::b_type));
        CHECK(mixed == doctest::Approx(a.dot(b).imag()).epsilon(1e-12));
    }
}

TEST_CASE("proof vectors: norms, distances, and products") {
    Rng rng(302);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index dim = 3 + static_cast<Eigen::Index>(rng.index(3));
        const HermitianOperator a = rng.hermitian(dim);
        const HermitianOperator b = rng.hermitian(dim);
        const Ket psi = rng.haar_ket(dim);
        const StateStatistics stats = state_statistics(a, b, psi);

        // commuting approximations from a random basis with optimal outputs
        const Mat basis = rng.unitary(dim);
        const std::vector<double> f = optimal_outputs(basis, a, psi);
        const std::vector<double> g = optimal_outputs(basis, b, psi);
        const ApproxJointMeasurement m = make_joint_measurement(basis, f, g);

        const Vec psi_v = psi.amplitudes();
        const Vec ket_a =
            (a.matrix() * psi_v - stats.mean_a * psi_v) / stats.delta_a;
        const Vec ket_b =
            (b.matrix() * psi_v - stats.mean_b * psi_v) / stats.delta_b;
        const Vec ket_x = (m.observable_a() * psi_v - stats.mean_a * psi_v) / stats.delta_a;
        const Vec ket_y = (m.observable_b() * psi_v - stats.mean_b * psi_v) / stats.delta_b;

        const RealVec a_hat = embed(ket_a, EmbedConvention::a_type);
        const RealVec b_hat = embed(ket_b, EmbedConvention::b_type);
        const RealVec x_vec = embed(ket_x, EmbedConvention::a_type);
        const RealVec y_vec = embed(ket_y, EmbedConvention::b_type);

        CHECK(a_hat.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(b_hat.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(a_hat.dot(b_hat) == doctest::Approx(stats.c_tilde()).epsilon(1e-11));
        // commuting approximations embed to orthogonal vectors
        CHECK(std::abs(x_vec.dot(y_vec)) < 1e-11);

        const ErrorPair errors = measurement_errors(m, a, b, psi, stats);
        CHECK((a_hat - x_vec).norm() == doctest::Approx(errors.eps_a_tilde).epsilon(1e-10));
        CHECK((b_hat - y_vec).norm() == doctest::Approx(errors.eps_b_tilde).epsilon(1e-10));

        // feeding the proof vectors into the vector inequality reproduces the
        // dimensionless relation, so the slack must be nonnegative
        LemmaInstance inst{a_hat, b_hat, x_vec, y_vec};
        CHECK(lemma1_slack(inst) >= -1e-9);
    }
}

TEST_CASE("planar saturating instances") {
    const double phi_a = 0.3, phi_b = 1.2;
    SUBCASE("orthogonal-axes inequality, projections version") {
        for (double phi_m : {0.3, 0.55, 0.9, 1.2}) {
            const LemmaInstance inst = figure_instance(phi_a, phi_b, phi_m);
            CHECK(std::abs(inst.chi()) == doctest::Approx(std::sin(phi_b - phi_a)).epsilon(1e-12));
            CHECK((inst.a_hat - inst.x_vec).norm() ==
                  doctest::Approx(std::abs(std::sin(phi_m - phi_a))).epsilon(1e-12));
            CHECK(lemma1_slack(inst) == doctest::Approx(0.0).epsilon(1e-12));

            const SaturationWitness w = saturation_witness(inst, LemmaId::lemma1);
            CHECK(w.coplanar);
            CHECK(w.x_is_projection);
            CHECK(w.y_is_projection);
        }
    }
    SUBCASE("unit-vectors inequality") {
        for (double phi_m : {0.3, 0.55, 0.9, 1.2}) {
            LemmaInstance inst;
            inst.a_hat = planar(phi_a);
            inst.b_hat = planar(phi_b + M_PI / 2);
            inst.x_vec = planar(phi_m);
            inst.y_vec = planar(phi_m + M_PI / 2);
            // chord distance between unit vectors at angle delta is 2 sin(delta/2)
            CHECK((inst.a_hat - inst.x_vec).norm() ==
                  doctest::Approx(2 * std::abs(std::sin((phi_m - phi_a) / 2))).epsilon(1e-12));
            CHECK(lemma2_slack(inst) == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(saturation_witness(inst, LemmaId::lemma2).coplanar);
        }
    }
    SUBCASE("mixed inequality saturates on the same configuration") {
        for (double phi_m : {0.4, 0.8, 1.1}) {
            LemmaInstance inst = figure_instance(phi_a, phi_b, phi_m);
            inst.y_vec = planar(phi_m + M_PI / 2);  // unit y, free x
            CHECK(lemma3_slack(inst) == doctest::Approx(0.0).epsilon(1e-12));
            const SaturationWitness w = saturation_witness(inst, LemmaId::lemma3);
            CHECK(w.coplanar);
            CHECK(w.x_is_projection);
        }
    }
}

TEST_CASE("trivial saturating instances") {
    SUBCASE("x = a, y = b with orthogonal a, b") {
        LemmaInstance inst;
        inst.a_hat = planar(0.0);
        inst.b_hat = planar(M_PI / 2);
        inst.x_vec = inst.a_hat;
        inst.y_vec = inst.b_hat;
        CHECK(inst.chi() == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(lemma1_slack(inst) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(lemma2_slack(inst) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(saturation_witness(inst, LemmaId::lemma1).holds());
    }
}

TEST_CASE("precondition violations are rejected") {
    LemmaInstance inst;
    inst.a_hat = planar(0.2);
    inst.b_hat = planar(1.0);
    inst.x_vec = planar(0.5);
    inst.y_vec = planar(0.7);  // not orthogonal to x
    CHECK_THROWS_AS((void)lemma1_slack(inst), Error);

    inst.y_vec = 0.5 * planar(0.5 + M_PI / 2);  // orthogonal but not unit
    CHECK_THROWS_AS((void)lemma2_slack(inst), Error);
    CHECK_NOTHROW((void)lemma3_slack(LemmaInstance{inst.a_hat, inst.b_hat, inst.x_vec,
                                                   planar(0.5 + M_PI / 2)}));
}

TEST_CASE("randomized falsification in R^3..R^8") {
    Rng rng(303);
    for (LemmaId id : {LemmaId::lemma1, LemmaId::lemma2, LemmaId::lemma3}) {
        double min_slack = 1e300;
        for (int trial = 0; trial < 20000; ++trial) {
            const Eigen::Index dim = 3 + static_cast<Eigen::Index>(rng.index(6));
            const LemmaInstance inst = random_lemma_instance(rng, dim, id);
            min_slack = std::min(min_slack, lemma_slack(inst, id));
        }
        CHECK(min_slack >= -1e-9);
    }
}

TEST_CASE("projection chain: free vectors dominate their projections") {
    Rng rng(304);
    for (int trial = 0; trial < 2000; ++trial) {
        const Eigen::Index dim = 3 + static_cast<Eigen::Index>(rng.index(4));
        const LemmaInstance inst = random_lemma_instance(rng, dim, LemmaId::lemma1);
        if (inst.x_vec.norm() < 1e-6 || inst.y_vec.norm() < 1e-6) {
            continue;
        }
        LemmaInstance unit;
        unit.a_hat = inst.a_hat;
        unit.b_hat = inst.b_hat;
        unit.x_vec = inst.x_vec.normalized();
        unit.y_vec = inst.y_vec.normalized();
        CHECK(lemma1_slack(inst) >= lemma2_slack(unit) - 1e-12);
    }
}

TEST_CASE("slack depends on x only through the distance to a") {
    Rng rng(305);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index dim = 3 + static_cast<Eigen::Index>(rng.index(4));
        LemmaInstance inst = random_lemma_instance(rng, dim, LemmaId::lemma1);
        if (inst.x_vec.norm() < 1e-6) {
            continue;
        }
        const RealVec x_hat = inst.x_vec.normalized();
        const double center = inst.a_hat.dot(x_hat);
        const double delta = rng.uniform(0.0, 1.0);
        LemmaInstance lo = inst;
        LemmaInstance hi = inst;
        lo.x_vec = (center - delta) * x_hat;
        hi.x_vec = (center + delta) * x_hat;
        CHECK(lemma1_slack(lo) == doctest::Approx(lemma1_slack(hi)).epsilon(1e-10));
    }
}

TEST_CASE("witness handles the a = x corner") {
    LemmaInstance inst;
    inst.a_hat = planar(0.4);
    inst.b_hat = planar(0.4 + M_PI / 2);
    inst.x_vec = inst.a_hat;
    inst.y_vec = planar(0.4 + M_PI / 2);
    // chi = 0 and b perpendicular aligned: the mixed inequality closes exactly
    CHECK(lemma3_slack(inst) == doctest::Approx(0.0).epsilon(1e-15));
    const SaturationWitness w = saturation_witness(inst, LemmaId::lemma3);
    CHECK(w.x_is_projection);
}

TEST_CASE("zero-vector conventions") {
    // x = 0 keeps the slack finite and the witness well-defined
    LemmaInstance inst;
    inst.a_hat = planar(0.8);
    inst.b_hat = planar(1.1);
    inst.x_vec = RealVec::Zero(2);
    inst.y_vec = planar(0.3);
    CHECK_NOTHROW((void)lemma3_slack(inst));
    CHECK_NOTHROW((void)saturation_witness(inst, LemmaId::lemma3));
}

TEST_CASE("random instance generators satisfy their preconditions") {
    Rng rng(306);
    for (int trial = 0; trial < 500; ++trial) {
        const Eigen::Index dim = 2 + static_cast<Eigen::Index>(rng.index(7));
        const LemmaInstance one = random_lemma_instance(rng, dim, LemmaId::lemma1);
        CHECK(std::abs(one.x_vec.dot(one.y_vec)) < 1e-10);
        const LemmaInstance two = random_lemma_instance(rng, dim, LemmaId::lemma2);
        CHECK(two.x_vec.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(two.y_vec.norm() == doctest::Approx(1.0).epsilon(1e-12));
        const LemmaInstance three = random_lemma_instance(rng, dim, LemmaId::lemma3);
        CHECK(three.y_vec.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)random_lemma_instance(rng, 1, LemmaId::lemma1), Error);
}
