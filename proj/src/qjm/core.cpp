#include "qjm/core.hpp"

#include <cmath>

namespace qjm {

Ket::Ket(Vec amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 1) {
        fail(Errc::invalid_argument, "state must have dimension >= 1");
    }
    const double n = amplitudes_.norm();
    if (std::abs(n - 1.0) > tol().norm) {
        fail(Errc::not_normalized,
             "state norm deviates from 1 by " + std::to_string(std::abs(n - 1.0)));
    }
}

Complex Ket::overlap(const Ket& other) const {
    require_same_dim(dim(), other.dim(), "overlap");
    return amplitudes_.dot(other.amplitudes_);
}

Ket Ket::tensor(const Ket& ancilla) const {
    Vec out(dim() * ancilla.dim());
    for (Eigen::Index i = 0; i < dim(); ++i) {
        out.segment(i * ancilla.dim(), ancilla.dim()) = amplitudes_(i) * ancilla.amplitudes();
    }
    return Ket(std::move(out));
}

HermitianOperator::HermitianOperator(Mat entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
        fail(Errc::invalid_argument, "operator must be a square matrix");
    }
    const double residual = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (residual > tol().herm) {
        fail(Errc::not_hermitian,
             "matrix deviates from Hermiticity by " + std::to_string(residual));
    }
}

Vec HermitianOperator::apply(const Ket& state) const {
    require_same_dim(dim(), state.dim(), "operator application");
    return entries_ * state.amplitudes();
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double expectation(const HermitianOperator& op, const Ket& state) {
    require_same_dim(op.dim(), state.dim(), "expectation");
    const Complex value = state.amplitudes().dot(op.matrix() * state.amplitudes());
    if (std::abs(value.imag()) > tol().num) {
        fail(Errc::numeric, "expectation has imaginary residue " + std::to_string(value.imag()));
    }
    return value.real();
}

double std_dev(const HermitianOperator& op, const Ket& state) {
    const double mean = expectation(op, state);
    Vec centered = op.matrix() * state.amplitudes() - mean * state.amplitudes();
    return centered.norm();
}

double commutator_value(const HermitianOperator& a, const HermitianOperator& b, const Ket& state) {
    require_same_dim(a.dim(), b.dim(), "commutator");
    require_same_dim(a.dim(), state.dim(), "commutator");
    // <psi|[A,B]|psi> = 2i Im <A psi | B psi> for Hermitian A, B
    const Complex cross = (a.matrix() * state.amplitudes()).dot(b.matrix() * state.amplitudes());
    return cross.imag();
}

HermitianOperator normalized_observable(const HermitianOperator& op, const Ket& state) {
    const double mean = expectation(op, state);
    const double dev = std_dev(op, state);
    if (dev <= tol().deg) {
        fail(Errc::degenerate, "standard deviation below degeneracy cutoff");
    }
    Mat shifted = (op.matrix() - mean * Mat::Identity(op.dim(), op.dim())) / dev;
    return HermitianOperator(std::move(shifted));
}

HermitianOperator tensor_extend(const HermitianOperator& op, Eigen::Index ancilla_dim) {
    if (ancilla_dim < 1) {
        fail(Errc::invalid_argument, "ancilla dimension must be >= 1");
    }
    const Eigen::Index d = op.dim();
    Mat out = Mat::Zero(d * ancilla_dim, d * ancilla_dim);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            out.block(i * ancilla_dim, j * ancilla_dim, ancilla_dim, ancilla_dim) =
                op.matrix()(i, j) * Mat::Identity(ancilla_dim, ancilla_dim);
        }
    }
    return HermitianOperator(std::move(out));
}

StateStatistics state_statistics(const HermitianOperator& a, const HermitianOperator& b,
                                 const Ket& psi) {
    StateStatistics s;
    s.mean_a = expectation(a, psi);
    s.mean_b = expectation(b, psi);
    s.delta_a = std_dev(a, psi);
    s.delta_b = std_dev(b, psi);
    s.c_ab = commutator_value(a, b, psi);
    if (s.delta_a > tol().deg && s.delta_b > tol().deg) {
        const Vec a0_psi =
            (a.matrix() * psi.amplitudes() - s.mean_a * psi.amplitudes()) / s.delta_a;
        const Vec b0_psi =
            (b.matrix() * psi.amplitudes() - s.mean_b * psi.amplitudes()) / s.delta_b;
        s.corr_a0b0 = a0_psi.dot(b0_psi);
    }
    return s;
}

Mat pauli_x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Mat pauli_y() {
    Mat m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Mat pauli_z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

RealVec bloch_vector(double theta, double phi) {
    RealVec v(3);
    v << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta);
    return v;
}

HermitianOperator direction_observable(double theta, double phi) {
    const RealVec n = bloch_vector(theta, phi);
    return HermitianOperator(n(0) * pauli_x() + n(1) * pauli_y() + n(2) * pauli_z());
}

}  // namespace qjm
