#include "qjm/joint.hpp"

#include <cmath>
#include <string>

namespace qjm {

namespace {

Mat diagonal_observable(const Mat& basis, const std::vector<double>& outputs) {
    Mat out = Mat::Zero(basis.rows(), basis.rows());
    for (Eigen::Index m = 0; m < basis.cols(); ++m) {
        out += outputs[static_cast<std::size_t>(m)] * basis.col(m) * basis.col(m).adjoint();
    }
    return out;
}

Eigen::Index infer_ancilla_dim(Eigen::Index joint_dim, Eigen::Index system_dim,
                               const char* what) {
    if (system_dim < 1 || joint_dim % system_dim != 0) {
        fail(Errc::dim_mismatch, std::string(what) + ": joint dimension " +
                                     std::to_string(joint_dim) +
                                     " is not a multiple of system dimension " +
                                     std::to_string(system_dim));
    }
    return joint_dim / system_dim;
}

// ideal (x) 1 |joint_state> without forming the extended matrix.
Vec apply_extended(const HermitianOperator& ideal, const Ket& joint_state) {
    const Eigen::Index d = ideal.dim();
    const Eigen::Index k = infer_ancilla_dim(joint_state.dim(), d, "extended application");
    Vec out = Vec::Zero(joint_state.dim());
    const Vec& v = joint_state.amplitudes();
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            out.segment(i * k, k) += ideal.matrix()(i, j) * v.segment(j * k, k);
        }
    }
    return out;
}

}  // namespace

Mat ApproxJointMeasurement::observable_a() const { return diagonal_observable(basis, f_out); }
Mat ApproxJointMeasurement::observable_b() const { return diagonal_observable(basis, g_out); }

ApproxJointMeasurement make_joint_measurement(Mat basis, std::vector<double> f_out,
                                              std::vector<double> g_out) {
    const Eigen::Index d = basis.rows();
    if (basis.cols() != d || d < 1) {
        fail(Errc::invalid_argument, "basis must be square (complete orthonormal set)");
    }
    if (f_out.size() != static_cast<std::size_t>(d) || g_out.size() != static_cast<std::size_t>(d)) {
        fail(Errc::invalid_argument, "output sequences must match the basis size");
    }
    const double residual = (basis.adjoint() * basis - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
    if (residual > tol().num) {
        fail(Errc::numeric, "basis orthonormality residual " + std::to_string(residual));
    }
    return ApproxJointMeasurement{std::move(basis), std::move(f_out), std::move(g_out)};
}

Povm make_povm(std::vector<HermitianOperator> elements, std::vector<double> outcome_labels) {
    if (elements.empty()) {
        fail(Errc::invalid_argument, "POVM needs at least one element");
    }
    if (outcome_labels.size() != elements.size()) {
        fail(Errc::invalid_argument, "one outcome label per POVM element required");
    }
    const Eigen::Index d = elements.front().dim();
    Mat sum = Mat::Zero(d, d);
    for (const auto& element : elements) {
        require_same_dim(element.dim(), d, "POVM element");
        Eigen::SelfAdjointEigenSolver<Mat> es(element.matrix(), Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -tol().num) {
            fail(Errc::not_psd, "POVM element has eigenvalue " +
                                    std::to_string(es.eigenvalues().minCoeff()));
        }
        sum += element.matrix();
    }
    const double completeness = (sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
    if (completeness > tol().num) {
        fail(Errc::incomplete_povm,
             "POVM elements sum deviates from identity by " + std::to_string(completeness));
    }
    return Povm{std::move(elements), std::move(outcome_labels)};
}

double rms_error(const HermitianOperator& approx, const HermitianOperator& ideal,
                 const Ket& joint_state) {
    require_same_dim(approx.dim(), joint_state.dim(), "rms error");
    Vec diff = approx.matrix() * joint_state.amplitudes() - apply_extended(ideal, joint_state);
    return diff.norm();
}

double rms_error(const Mat& basis, const std::vector<double>& outputs,
                 const HermitianOperator& ideal, const Ket& joint_state) {
    require_same_dim(basis.rows(), joint_state.dim(), "rms error");
    if (outputs.size() != static_cast<std::size_t>(basis.cols())) {
        fail(Errc::invalid_argument, "one output per basis vector required");
    }
    const Vec ideal_psi = apply_extended(ideal, joint_state);
    double total = 0;
    for (Eigen::Index m = 0; m < basis.cols(); ++m) {
        const Complex term = outputs[static_cast<std::size_t>(m)] *
                                 basis.col(m).dot(joint_state.amplitudes()) -
                             basis.col(m).dot(ideal_psi);
        total += std::norm(term);
    }
    return std::sqrt(total);
}

double povm_rms_error(const Povm& povm, const std::vector<double>& outputs,
                      const HermitianOperator& ideal, const Ket& state) {
    require_same_dim(povm.dim(), state.dim(), "POVM rms error");
    require_same_dim(povm.dim(), ideal.dim(), "POVM rms error");
    if (outputs.size() != povm.n_outcomes()) {
        fail(Errc::invalid_argument, "one output per POVM outcome required");
    }
    double total = 0;
    for (std::size_t m = 0; m < povm.n_outcomes(); ++m) {
        const Vec shifted = ideal.matrix() * state.amplitudes() - outputs[m] * state.amplitudes();
        total += shifted.dot(povm.elements[m].matrix() * shifted).real();
    }
    return std::sqrt(std::max(total, 0.0));
}

Mat complete_basis(const Mat& columns, Eigen::Index dim) {
    Mat out(dim, dim);
    Eigen::Index filled = 0;
    for (Eigen::Index j = 0; j < columns.cols(); ++j) {
        out.col(filled++) = columns.col(j) / columns.col(j).norm();
    }
    const double keep_threshold = 0.5 / std::sqrt(static_cast<double>(dim));
    for (Eigen::Index i = 0; i < dim && filled < dim; ++i) {
        Vec e = Vec::Zero(dim);
        e(i) = 1.0;
        // two Gram-Schmidt passes for numerical stability
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index j = 0; j < filled; ++j) {
                e -= out.col(j).dot(e) * out.col(j);
            }
        }
        const double n = e.norm();
        if (n > keep_threshold) {
            out.col(filled++) = e / n;
        }
    }
    if (filled != dim) {
        fail(Errc::numeric, "basis completion failed (kept " + std::to_string(filled) + " of " +
                                std::to_string(dim) + ")");
    }
    return out;
}

NeumarkExtension neumark_extend(const Povm& povm) {
    const Eigen::Index d = povm.dim();
    const std::size_t n = povm.n_outcomes();

    // split elements into rank-1 pieces
    std::vector<Vec> pieces;
    std::vector<std::size_t> outcome_of_piece;
    for (std::size_t m = 0; m < n; ++m) {
        Eigen::SelfAdjointEigenSolver<Mat> es(povm.elements[m].matrix());
        for (Eigen::Index j = 0; j < d; ++j) {
            const double lambda = es.eigenvalues()(j);
            if (lambda > tol().p) {
                pieces.push_back(std::sqrt(lambda) * es.eigenvectors().col(j));
                outcome_of_piece.push_back(m);
            }
        }
    }
    const std::size_t n_pieces = pieces.size();
    if (n_pieces < static_cast<std::size_t>(d)) {
        fail(Errc::incomplete_povm, "POVM pieces do not span the system space");
    }

    Mat piece_matrix(d, static_cast<Eigen::Index>(n_pieces));
    for (std::size_t i = 0; i < n_pieces; ++i) {
        piece_matrix.col(static_cast<Eigen::Index>(i)) = pieces[i];
    }

    NeumarkExtension ext;

    // Already a complete projective measurement: no extension needed.
    const Mat gram =
        piece_matrix.adjoint() * piece_matrix;  // n_pieces x n_pieces, <v_i|v_j>
    if (n_pieces == static_cast<std::size_t>(d) &&
        (gram - Mat::Identity(d, d)).cwiseAbs().maxCoeff() < tol().num) {
        ext.basis = piece_matrix;
        ext.piece_outcome = outcome_of_piece;
        ext.ancilla = Ket(Vec::Ones(1));
        ext.ancilla_dim = 1;
    } else {
        const Eigen::Index k = static_cast<Eigen::Index>(n);  // ancilla dimension
        const Eigen::Index joint_dim = d * k;
        if (static_cast<Eigen::Index>(n_pieces) > joint_dim) {
            fail(Errc::numeric, "piece count exceeds joint dimension");
        }

        // Factor I - Gram = F^dag F; F columns complete each piece vector.
        Eigen::SelfAdjointEigenSolver<Mat> es(
            Mat::Identity(static_cast<Eigen::Index>(n_pieces), static_cast<Eigen::Index>(n_pieces)) -
            gram);
        std::vector<Eigen::Index> keep;
        for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
            if (es.eigenvalues()(j) > tol().p) {
                keep.push_back(j);
            }
        }

        Mat columns = Mat::Zero(joint_dim, static_cast<Eigen::Index>(n_pieces));
        for (std::size_t i = 0; i < n_pieces; ++i) {
            const auto col = static_cast<Eigen::Index>(i);
            for (Eigen::Index a = 0; a < d; ++a) {
                columns(a * k, col) = pieces[i](a);  // ancilla slot 0 carries the piece
            }
            // remaining (d, k-1) slots carry the orthogonal completion
            Eigen::Index slot = 0;
            for (const Eigen::Index j : keep) {
                const double lambda = es.eigenvalues()(j);
                const Complex value = std::sqrt(lambda) * std::conj(es.eigenvectors()(col, j));
                const Eigen::Index a = slot / (k - 1);
                const Eigen::Index c = slot % (k - 1);
                columns(a * k + c + 1, col) = value;
                ++slot;
            }
        }

        ext.basis = complete_basis(columns, joint_dim);
        ext.piece_outcome = outcome_of_piece;
        ext.piece_outcome.resize(static_cast<std::size_t>(joint_dim), NeumarkExtension::padding);
        Vec xi = Vec::Zero(k);
        xi(0) = 1.0;
        ext.ancilla = Ket(std::move(xi));
        ext.ancilla_dim = k;
    }

    // reconstruction residual: M_m vs sum of its pieces read back off the basis
    std::vector<Mat> recon(n, Mat::Zero(d, d));
    const Eigen::Index k = ext.ancilla_dim;
    for (std::size_t i = 0; i < ext.piece_outcome.size(); ++i) {
        if (ext.piece_outcome[i] == NeumarkExtension::padding) {
            continue;
        }
        Vec w(d);
        for (Eigen::Index a = 0; a < d; ++a) {
            w(a) = ext.basis.col(static_cast<Eigen::Index>(i))
                       .segment(a * k, k)
                       .dot(ext.ancilla.amplitudes());
        }
        w = w.conjugate();  // w = (1 (x) <xi|) |m>
        recon[ext.piece_outcome[i]] += w * w.adjoint();
    }
    double residual = 0;
    for (std::size_t m = 0; m < n; ++m) {
        residual = std::max(residual,
                            (recon[m] - povm.elements[m].matrix()).cwiseAbs().maxCoeff());
    }
    ext.residual = residual;
    if (residual > tol().num) {
        fail(Errc::numeric,
             "defective Neumark completion, residual " + std::to_string(residual));
    }
    return ext;
}

std::vector<double> NeumarkExtension::expand_outputs(
    const std::vector<double>& per_outcome) const {
    std::vector<double> out(piece_outcome.size(), 0.0);
    for (std::size_t i = 0; i < piece_outcome.size(); ++i) {
        if (piece_outcome[i] != padding) {
            out[i] = per_outcome.at(piece_outcome[i]);
        }
    }
    return out;
}

std::vector<double> optimal_outputs(const Mat& basis, const HermitianOperator& ideal,
                                    const Ket& joint_state,
                                    std::vector<bool>* zero_probability) {
    require_same_dim(basis.rows(), joint_state.dim(), "optimal outputs");
    const Vec ideal_psi = apply_extended(ideal, joint_state);
    std::vector<double> out(static_cast<std::size_t>(basis.cols()), 0.0);
    if (zero_probability) {
        zero_probability->assign(out.size(), true);
    }
    for (Eigen::Index m = 0; m < basis.cols(); ++m) {
        const Complex overlap = basis.col(m).dot(joint_state.amplitudes());
        if (std::norm(overlap) > tol().p) {
            out[static_cast<std::size_t>(m)] = (basis.col(m).dot(ideal_psi) / overlap).real();
            if (zero_probability) {
                (*zero_probability)[static_cast<std::size_t>(m)] = false;
            }
        }
    }
    return out;
}

double optimal_rms_error(const Mat& basis, const HermitianOperator& ideal,
                         const Ket& joint_state) {
    require_same_dim(basis.rows(), joint_state.dim(), "optimal rms error");
    const Vec ideal_psi = apply_extended(ideal, joint_state);
    double total = 0;
    for (Eigen::Index m = 0; m < basis.cols(); ++m) {
        const Complex overlap = basis.col(m).dot(joint_state.amplitudes());
        const Complex amplitude = basis.col(m).dot(ideal_psi);
        const double p = std::norm(overlap);
        if (p > tol().p) {
            const double im = (amplitude / overlap).imag();
            total += p * im * im;
        } else {
            total += std::norm(amplitude);
        }
    }
    return std::sqrt(total);
}

std::vector<double> dichotomic_outputs(const Mat& basis, const HermitianOperator& ideal,
                                       const Ket& joint_state) {
    const Mat square = ideal.matrix() * ideal.matrix();
    const double involution_residual =
        (square - Mat::Identity(ideal.dim(), ideal.dim())).cwiseAbs().maxCoeff();
    if (involution_residual > tol().num) {
        fail(Errc::regime, "ideal observable is not involutory (residual " +
                               std::to_string(involution_residual) + ")");
    }
    require_same_dim(basis.rows(), joint_state.dim(), "dichotomic outputs");
    const Vec ideal_psi = apply_extended(ideal, joint_state);
    std::vector<double> out(static_cast<std::size_t>(basis.cols()), 1.0);
    for (Eigen::Index m = 0; m < basis.cols(); ++m) {
        const Complex overlap = basis.col(m).dot(joint_state.amplitudes());
        if (std::norm(overlap) > tol().p) {
            const double re = (basis.col(m).dot(ideal_psi) / overlap).real();
            if (re < -tol().num) {
                out[static_cast<std::size_t>(m)] = -1.0;
            }
        }
        // ties (|Re| <= tol) and zero-probability outcomes resolve to +1
    }
    return out;
}

ErrorPair make_error_pair(double eps_a, double eps_b, const StateStatistics& stats) {
    ErrorPair e;
    e.eps_a = eps_a;
    e.eps_b = eps_b;
    e.eps_a_tilde = stats.delta_a > tol().deg ? eps_a / stats.delta_a : 0.0;
    e.eps_b_tilde = stats.delta_b > tol().deg ? eps_b / stats.delta_b : 0.0;
    return e;
}

ErrorPair measurement_errors(const ApproxJointMeasurement& m, const HermitianOperator& a,
                             const HermitianOperator& b, const Ket& joint_state,
                             const StateStatistics& stats) {
    const double eps_a = rms_error(m.basis, m.f_out, a, joint_state);
    const double eps_b = rms_error(m.basis, m.g_out, b, joint_state);
    return make_error_pair(eps_a, eps_b, stats);
}

}  // namespace qjm
