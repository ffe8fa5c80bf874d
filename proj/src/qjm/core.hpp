#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

#include "qjm/tolerances.hpp"

namespace qjm {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;

enum class Errc {
    invalid_argument,
    dim_mismatch,
    not_hermitian,
    not_normalized,
    not_psd,
    incomplete_povm,
    degenerate,
    regime,
    unsatisfiable,
    numeric,
    io,
    config,
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& message) : std::runtime_error(message), code_(code) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) { throw Error(code, message); }

inline void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
    if (a != b) {
        fail(Errc::dim_mismatch,
             std::string(what) + ": dimensions " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

// A pure state: complex amplitude vector of unit Euclidean norm. Dimension 1
// is allowed so that trivial ancillas (no extension) are representable.
class Ket {
  public:
    explicit Ket(Vec amplitudes);

    Eigen::Index dim() const { return amplitudes_.size(); }
    const Vec& amplitudes() const { return amplitudes_; }

    Complex overlap(const Ket& other) const;  // <this|other>
    Ket tensor(const Ket& ancilla) const;     // |this> (x) |ancilla>, system index major

  private:
    Vec amplitudes_;
};

// An observable: complex square matrix equal to its conjugate transpose.
// Non-Hermitian input is rejected, not symmetrized.
class HermitianOperator {
  public:
    explicit HermitianOperator(Mat entries);

    Eigen::Index dim() const { return entries_.rows(); }
    const Mat& matrix() const { return entries_; }

    Vec apply(const Ket& state) const;

  private:
    Mat entries_;
};

// State-dependent statistics of a pair of observables. corr_a0b0 is
// <A0 B0> with A0 = (A - <A>)/dA; it is meaningful (and bounded by 1 in
// modulus) only when both standard deviations exceed the degeneracy cutoff.
struct StateStatistics {
    double mean_a = 0;
    double mean_b = 0;
    double delta_a = 0;
    double delta_b = 0;
    double c_ab = 0;
    Complex corr_a0b0{0, 0};

    bool degenerate() const { return delta_a <= tol().deg || delta_b <= tol().deg; }
    double c_tilde() const { return degenerate() ? 0.0 : c_ab / (delta_a * delta_b); }
};

Mat kron(const Mat& a, const Mat& b);

double expectation(const HermitianOperator& op, const Ket& state);
double std_dev(const HermitianOperator& op, const Ket& state);
double commutator_value(const HermitianOperator& a, const HermitianOperator& b, const Ket& state);
HermitianOperator normalized_observable(const HermitianOperator& op, const Ket& state);
HermitianOperator tensor_extend(const HermitianOperator& op, Eigen::Index ancilla_dim);

StateStatistics state_statistics(const HermitianOperator& a, const HermitianOperator& b,
                                 const Ket& psi);

// Pauli matrices and Bloch-sphere helpers.
Mat pauli_x();
Mat pauli_y();
Mat pauli_z();
RealVec bloch_vector(double theta, double phi);
// n . sigma for the Bloch direction with the given polar/azimuthal angles.
HermitianOperator direction_observable(double theta, double phi);

}  // namespace qjm
