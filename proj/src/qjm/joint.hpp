#pragma once

#include <limits>
#include <vector>

#include "qjm/core.hpp"

namespace qjm {

// A perfect joint measurement of two commuting observables: an orthonormal
// eigenbasis (columns of `basis`) on the joint space together with the two
// real output sequences. calA = sum_m f(m)|m><m| and calB = sum_m g(m)|m><m|
// commute by construction.
struct ApproxJointMeasurement {
    Mat basis;                  // D x D, columns orthonormal and complete
    std::vector<double> f_out;  // estimates for A, one per basis column
    std::vector<double> g_out;  // estimates for B

    Eigen::Index dim() const { return basis.rows(); }
    Mat observable_a() const;  // sum_m f(m)|m><m|
    Mat observable_b() const;
};

// Validating factory: checks orthonormality/completeness and output lengths.
ApproxJointMeasurement make_joint_measurement(Mat basis, std::vector<double> f_out,
                                              std::vector<double> g_out);

struct Povm {
    std::vector<HermitianOperator> elements;
    std::vector<double> outcome_labels;

    Eigen::Index dim() const { return elements.empty() ? 0 : elements.front().dim(); }
    std::size_t n_outcomes() const { return elements.size(); }
};

// Validating factory: every element positive semidefinite (within tolerance)
// and the set complete (sums to the identity).
Povm make_povm(std::vector<HermitianOperator> elements, std::vector<double> outcome_labels);

// rms error <psi,xi|(approx - ideal (x) 1)^2|psi,xi>^{1/2}. `approx` acts on
// the joint space, `ideal` on the system space; the ancilla dimension is
// inferred from the ratio.
double rms_error(const HermitianOperator& approx, const HermitianOperator& ideal,
                 const Ket& joint_state);

// Same error evaluated from a basis plus explicit outputs, via the exact
// expansion eps^2 = sum_m |f(m)<m|psi> - <m|ideal (x) 1|psi>|^2.
double rms_error(const Mat& basis, const std::vector<double>& outputs,
                 const HermitianOperator& ideal, const Ket& joint_state);

// POVM picture of the same quantity:
// eps^2 = sum_m <psi|(ideal - f(m)) M_m (ideal - f(m))|psi>.
double povm_rms_error(const Povm& povm, const std::vector<double>& outputs,
                      const HermitianOperator& ideal, const Ket& state);

// A projective dilation of a POVM: orthonormal basis on system (x) ancilla
// and an ancilla state such that M_m = (1 (x) <xi|) |m><m| (1 (x) |xi>).
// Rank-1 elements map to single basis columns; higher ranks are split into
// rank-1 pieces sharing the outcome. Basis columns past the pieces are
// completion vectors with zero outcome probability.
struct NeumarkExtension {
    static constexpr std::size_t padding = std::numeric_limits<std::size_t>::max();

    Mat basis;                              // (d*k) x (d*k)
    std::vector<std::size_t> piece_outcome; // POVM element index per column; `padding` past pieces
    Ket ancilla{Vec::Ones(1)};
    Eigen::Index ancilla_dim = 1;
    double residual = 0;  // max reconstruction residual over elements

    // Outputs per basis column from outputs per POVM outcome (0 on padding).
    std::vector<double> expand_outputs(const std::vector<double>& per_outcome) const;
};

NeumarkExtension neumark_extend(const Povm& povm);

// Optimal output values: real parts of the weak values
// <m|ideal (x) 1|psi,xi>/<m|psi,xi> wherever p(m) > tau_p, 0 elsewhere
// (the value on zero-probability outcomes does not affect the error).
// `zero_probability`, when given, records which outcomes took the 0
// convention rather than a weak value.
std::vector<double> optimal_outputs(const Mat& basis, const HermitianOperator& ideal,
                                    const Ket& joint_state,
                                    std::vector<bool>* zero_probability = nullptr);

// Minimal rms error for the basis: p-weighted imaginary parts of the weak
// values plus the exact contribution of zero-probability outcomes.
double optimal_rms_error(const Mat& basis, const HermitianOperator& ideal, const Ket& joint_state);

// Best +-1 outputs for an involutory ideal (ideal^2 = 1): the sign of the
// real part of the weak value, ties resolved to +1.
std::vector<double> dichotomic_outputs(const Mat& basis, const HermitianOperator& ideal,
                                       const Ket& joint_state);

struct ErrorPair {
    double eps_a = 0;
    double eps_b = 0;
    double eps_a_tilde = 0;  // eps_a / dA where defined
    double eps_b_tilde = 0;
};

ErrorPair make_error_pair(double eps_a, double eps_b, const StateStatistics& stats);

// Both errors of a joint measurement against ideals A and B (embedded over
// the ancilla inferred from the basis dimension).
ErrorPair measurement_errors(const ApproxJointMeasurement& m, const HermitianOperator& a,
                             const HermitianOperator& b, const Ket& joint_state,
                             const StateStatistics& stats);

// Deterministic completion of a partial orthonormal set to a full basis,
// Gram-Schmidt over canonical basis vectors in index order.
Mat complete_basis(const Mat& columns, Eigen::Index dim);

}  // namespace qjm
