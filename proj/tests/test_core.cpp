#include <doctest.h>

#include <cmath>

#include "qjm/core.hpp"
#include "qjm/random.hpp"

using namespace qjm;

namespace {

Ket plus_z() {
    Vec v(2);
    v << 1, 0;
    return Ket(v);
}

Ket plus_x() {
    Vec v(2);
    v << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    return Ket(v);
}

}  // namespace

TEST_CASE("state validation") {
    Vec bad(2);
    bad << 1.0, 1.0;
    CHECK_THROWS_AS((void)Ket(bad), Error);
    CHECK_THROWS_AS((void)Ket(Vec::Zero(3)), Error);
    CHECK(plus_z().dim() == 2);
}

TEST_CASE("hermiticity is rejected, not repaired") {
    Mat m(2, 2);
    m << 1, Complex(0, 1), Complex(0, 1), 1;  // symmetric but not Hermitian
    CHECK_THROWS_AS((void)HermitianOperator(m), Error);
    CHECK_NOTHROW((void)HermitianOperator(pauli_y()));
}

TEST_CASE("expectation on eigenstates and symmetry axes") {
    CHECK(expectation(HermitianOperator(pauli_z()), plus_z()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(expectation(HermitianOperator(pauli_x()), plus_z()) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("expectation matches the eigendecomposition oracle") {
    Rng rng(101);
    for (int trial = 0; trial < 25; ++trial) {
        const HermitianOperator h = rng.hermitian(4);
        const Ket psi = rng.haar_ket(4);
        // oracle: sum_k lambda_k |<v_k|psi>|^2
        Eigen::SelfAdjointEigenSolver<Mat> es(h.matrix());
        double oracle = 0;
        for (Eigen::Index k = 0; k < 4; ++k) {
            oracle += es.eigenvalues()(k) *
                      std::norm(es.eigenvectors().col(k).dot(psi.amplitudes()));
        }
        CHECK(expectation(h, psi) == doctest::Approx(oracle).epsilon(1e-10));
    }
}

TEST_CASE("expectation dimension mismatch") {
    CHECK_THROWS_AS(expectation(HermitianOperator(Mat::Identity(3, 3)), plus_z()), Error);
}

TEST_CASE("std_dev basics") {
    CHECK(std_dev(HermitianOperator(pauli_x()), plus_z()) == doctest::Approx(1.0).epsilon(1e-12));
    // eigenstate has zero deviation
    CHECK(std_dev(HermitianOperator(pauli_z()), plus_z()) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("std_dev of a Bloch direction on the north pole is sin(theta)") {
    for (double theta : {0.3, 1.1, 2.5}) {
        const HermitianOperator a = direction_observable(theta, 0.7);
        CHECK(std_dev(a, plus_z()) == doctest::Approx(std::sin(theta)).epsilon(1e-12));
    }
}

TEST_CASE("std_dev matches the moment oracle") {
    Rng rng(102);
    for (int trial = 0; trial < 25; ++trial) {
        const HermitianOperator h = rng.hermitian(5);
        const Ket psi = rng.haar_ket(5);
        const HermitianOperator h2(Mat(h.matrix() * h.matrix()));
        const double second = expectation(h2, psi);
        const double first = expectation(h, psi);
        CHECK(std_dev(h, psi) ==
              doctest::Approx(std::sqrt(second - first * first)).epsilon(1e-9));
    }
}

TEST_CASE("commutator value") {
    const HermitianOperator x(pauli_x());
    const HermitianOperator y(pauli_y());
    CHECK(commutator_value(x, y, plus_z()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(commutator_value(x, x, plus_z()) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("commutator value for Bloch pairs: sin(ta) sin(tb) sin(phi)") {
    const double ta = 0.9, tb = 2.1, pa = 0.4, pb = 1.3;
    const HermitianOperator a = direction_observable(ta, pa);
    const HermitianOperator b = direction_observable(tb, pb);
    CHECK(commutator_value(a, b, plus_z()) ==
          doctest::Approx(std::sin(ta) * std::sin(tb) * std::sin(pb - pa)).epsilon(1e-12));
}

TEST_CASE("commutator antisymmetry") {
    Rng rng(103);
    for (int trial = 0; trial < 10; ++trial) {
        const HermitianOperator a = rng.hermitian(3);
        const HermitianOperator b = rng.hermitian(3);
        const Ket psi = rng.haar_ket(3);
        CHECK(commutator_value(a, b, psi) ==
              doctest::Approx(-commutator_value(b, a, psi)).epsilon(1e-12));
    }
}

TEST_CASE("normalized observable") {
    SUBCASE("already normalized") {
        const HermitianOperator x(pauli_x());
        const HermitianOperator x0 = normalized_observable(x, plus_z());
        CHECK((x0.matrix() - pauli_x()).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("shift and scale removal") {
        const HermitianOperator shifted(Mat(pauli_z() + 2.0 * Mat::Identity(2, 2)));
        const HermitianOperator z0 = normalized_observable(shifted, plus_x());
        CHECK((z0.matrix() - pauli_z()).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("random operators have moments (0, 1)") {
        Rng rng(104);
        for (int trial = 0; trial < 20; ++trial) {
            const HermitianOperator h = rng.hermitian(4);
            const Ket psi = rng.haar_ket(4);
            const HermitianOperator h0 = normalized_observable(h, psi);
            CHECK(expectation(h0, psi) == doctest::Approx(0.0).epsilon(1e-9));
            CHECK(std_dev(h0, psi) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("degenerate deviation is reported") {
        CHECK_THROWS_AS(normalized_observable(HermitianOperator(pauli_z()), plus_z()), Error);
    }
}

TEST_CASE("tensor_extend") {
    const HermitianOperator z(pauli_z());
    const HermitianOperator extended = tensor_extend(z, 2);
    Mat expected = Mat::Zero(4, 4);
    expected.diagonal() << 1, 1, -1, -1;
    CHECK((extended.matrix() - expected).cwiseAbs().maxCoeff() == 0.0);

    const HermitianOperator unchanged = tensor_extend(z, 1);
    CHECK((unchanged.matrix() - pauli_z()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tensor_extend factorizes on product states") {
    Rng rng(105);
    for (int trial = 0; trial < 10; ++trial) {
        const HermitianOperator h = rng.hermitian(3);
        const Ket psi = rng.haar_ket(3);
        const Ket xi = rng.haar_ket(2);
        const Ket joint = psi.tensor(xi);
        CHECK(expectation(tensor_extend(h, 2), joint) ==
              doctest::Approx(expectation(h, psi)).epsilon(1e-10));
    }
}

TEST_CASE("state statistics: Robertson and Schroedinger bounds on random draws") {
    Rng rng(106);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index d = 2 + static_cast<Eigen::Index>(rng.index(4));
        const HermitianOperator a = rng.hermitian(d);
        const HermitianOperator b = rng.hermitian(d);
        const Ket psi = rng.haar_ket(d);
        const StateStatistics s = state_statistics(a, b, psi);
        CHECK(s.delta_a * s.delta_b - std::abs(s.c_ab) >= -1e-9);
        if (!s.degenerate()) {
            CHECK(std::abs(s.corr_a0b0) <= 1.0 + 1e-9);
            // C_AB is the imaginary part of the normalized correlation
            CHECK(s.corr_a0b0.imag() ==
                  doctest::Approx(s.c_ab / (s.delta_a * s.delta_b)).epsilon(1e-9));
        }
    }
}

TEST_CASE("expectation is linear; std_dev shift/scale covariance") {
    Rng rng(107);
    const HermitianOperator a = rng.hermitian(4);
    const HermitianOperator b = rng.hermitian(4);
    const Ket psi = rng.haar_ket(4);
    const double alpha = 0.8, beta = -1.7;
    const HermitianOperator combo(Mat(alpha * a.matrix() + beta * b.matrix()));
    CHECK(expectation(combo, psi) ==
          doctest::Approx(alpha * expectation(a, psi) + beta * expectation(b, psi))
              .epsilon(1e-10));

    const double c = 2.4, s = -3.0;
    const HermitianOperator moved(Mat(s * a.matrix() + c * Mat::Identity(4, 4)));
    CHECK(std_dev(moved, psi) == doctest::Approx(std::abs(s) * std_dev(a, psi)).epsilon(1e-10));
}
