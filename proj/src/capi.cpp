#include "qjm.h"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "qjm/constructions.hpp"
#include "qjm/core.hpp"
#include "qjm/joint.hpp"
#include "qjm/relations.hpp"
#include "qjm/sweep.hpp"
#include "qjm/tolerances.hpp"

struct qjm_state {
    qjm::Ket value;
};
struct qjm_operator {
    qjm::HermitianOperator value;
};
struct qjm_measurement {
    qjm::ApproxJointMeasurement value;
};

namespace {

thread_local std::string g_last_error;

qjm_status status_of(qjm::Errc code) {
    using qjm::Errc;
    switch (code) {
        case Errc::invalid_argument: return QJM_ERR_INVALID_ARG;
        case Errc::dim_mismatch: return QJM_ERR_DIM_MISMATCH;
        case Errc::not_hermitian: return QJM_ERR_NOT_HERMITIAN;
        case Errc::not_normalized: return QJM_ERR_NOT_NORMALIZED;
        case Errc::not_psd: return QJM_ERR_NOT_PSD;
        case Errc::incomplete_povm: return QJM_ERR_INCOMPLETE_POVM;
        case Errc::degenerate: return QJM_ERR_DEGENERATE;
        case Errc::regime: return QJM_ERR_REGIME;
        case Errc::unsatisfiable: return QJM_ERR_UNSATISFIABLE;
        case Errc::numeric: return QJM_ERR_NUMERIC;
        case Errc::io: return QJM_ERR_IO;
        case Errc::config: return QJM_ERR_CONFIG;
    }
    return QJM_ERR_INVALID_ARG;
}

template <typename Fn>
qjm_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return QJM_OK;
    } catch (const qjm::Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QJM_ERR_NUMERIC;
    }
}

qjm_status require(bool condition, const char* message) {
    if (condition) {
        return QJM_OK;
    }
    g_last_error = message;
    return QJM_ERR_INVALID_ARG;
}

qjm::Vec to_vec(const double* interleaved, size_t dim) {
    qjm::Vec v(static_cast<Eigen::Index>(dim));
    for (size_t i = 0; i < dim; ++i) {
        v(static_cast<Eigen::Index>(i)) = qjm::Complex(interleaved[2 * i], interleaved[2 * i + 1]);
    }
    return v;
}

qjm::Mat to_mat_row_major(const double* interleaved, size_t dim) {
    qjm::Mat m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (size_t i = 0; i < dim; ++i) {
        for (size_t j = 0; j < dim; ++j) {
            const size_t k = 2 * (i * dim + j);
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                qjm::Complex(interleaved[k], interleaved[k + 1]);
        }
    }
    return m;
}

qjm::Mat to_mat_col_major(const double* interleaved, size_t dim) {
    qjm::Mat m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (size_t col = 0; col < dim; ++col) {
        for (size_t row = 0; row < dim; ++row) {
            const size_t k = 2 * (col * dim + row);
            m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
                qjm::Complex(interleaved[k], interleaved[k + 1]);
        }
    }
    return m;
}

qjm::StateStatistics to_stats(const qjm_statistics& s) {
    qjm::StateStatistics stats;
    stats.mean_a = s.mean_a;
    stats.mean_b = s.mean_b;
    stats.delta_a = s.delta_a;
    stats.delta_b = s.delta_b;
    stats.c_ab = s.c_ab;
    stats.corr_a0b0 = qjm::Complex(s.corr_re, s.corr_im);
    return stats;
}

double* tolerance_field(const char* name) {
    qjm::Tolerances& t = qjm::tol();
    if (std::strcmp(name, "norm") == 0) return &t.norm;
    if (std::strcmp(name, "herm") == 0) return &t.herm;
    if (std::strcmp(name, "num") == 0) return &t.num;
    if (std::strcmp(name, "deg") == 0) return &t.deg;
    if (std::strcmp(name, "sat") == 0) return &t.sat;
    if (std::strcmp(name, "p") == 0) return &t.p;
    if (std::strcmp(name, "rank") == 0) return &t.rank;
    return nullptr;
}

void fill_summary(qjm_run_summary* summary, const qjm::RunRecord& record) {
    summary->universal_violations = record.universal_violations();
    summary->flagged_violations = record.flagged_violations();
    summary->min_slack = record.min_slack;
    summary->wall_ms = record.wall_ms;
    std::snprintf(summary->config_hash, sizeof summary->config_hash, "%s",
                  record.config_hash.c_str());
}

}  // namespace

extern "C" {

const char* qjm_status_name(qjm_status status) {
    switch (status) {
        case QJM_OK: return "ok";
        case QJM_ERR_INVALID_ARG: return "invalid_argument";
        case QJM_ERR_DIM_MISMATCH: return "dim_mismatch";
        case QJM_ERR_NOT_HERMITIAN: return "not_hermitian";
        case QJM_ERR_NOT_NORMALIZED: return "not_normalized";
        case QJM_ERR_NOT_PSD: return "not_psd";
        case QJM_ERR_INCOMPLETE_POVM: return "incomplete_povm";
        case QJM_ERR_DEGENERATE: return "degenerate";
        case QJM_ERR_REGIME: return "regime";
        case QJM_ERR_UNSATISFIABLE: return "unsatisfiable";
        case QJM_ERR_NUMERIC: return "numeric";
        case QJM_ERR_IO: return "io";
        case QJM_ERR_CONFIG: return "config";
    }
    return "unknown";
}

const char* qjm_last_error(void) { return g_last_error.c_str(); }

qjm_status qjm_set_tolerance(const char* name, double value) {
    if (qjm_status s = require(name != nullptr, "tolerance name required")) {
        return s;
    }
    double* field = tolerance_field(name);
    if (!field) {
        g_last_error = "unknown tolerance '" + std::string(name) + "'";
        return QJM_ERR_INVALID_ARG;
    }
    if (value <= 0) {
        g_last_error = "tolerance must be positive";
        return QJM_ERR_INVALID_ARG;
    }
    *field = value;
    return QJM_OK;
}

qjm_status qjm_get_tolerance(const char* name, double* value) {
    if (qjm_status s = require(name && value, "tolerance name and out pointer required")) {
        return s;
    }
    const double* field = tolerance_field(name);
    if (!field) {
        g_last_error = "unknown tolerance '" + std::string(name) + "'";
        return QJM_ERR_INVALID_ARG;
    }
    *value = *field;
    return QJM_OK;
}

qjm_status qjm_state_create(const double* interleaved, size_t dim, qjm_state** out) {
    if (qjm_status s = require(interleaved && out && dim >= 1, "amplitudes and out required")) {
        return s;
    }
    return guarded([&] { *out = new qjm_state{qjm::Ket(to_vec(interleaved, dim))}; });
}

void qjm_state_destroy(qjm_state* state) { delete state; }

size_t qjm_state_dim(const qjm_state* state) {
    return state ? static_cast<size_t>(state->value.dim()) : 0;
}

qjm_status qjm_operator_create(const double* interleaved, size_t dim, qjm_operator** out) {
    if (qjm_status s = require(interleaved && out && dim >= 1, "entries and out required")) {
        return s;
    }
    return guarded(
        [&] { *out = new qjm_operator{qjm::HermitianOperator(to_mat_row_major(interleaved, dim))}; });
}

void qjm_operator_destroy(qjm_operator* op) { delete op; }

size_t qjm_operator_dim(const qjm_operator* op) {
    return op ? static_cast<size_t>(op->value.dim()) : 0;
}

qjm_status qjm_expectation(const qjm_operator* op, const qjm_state* state, double* out) {
    if (qjm_status s = require(op && state && out, "operator, state and out required")) {
        return s;
    }
    return guarded([&] { *out = qjm::expectation(op->value, state->value); });
}

qjm_status qjm_std_dev(const qjm_operator* op, const qjm_state* state, double* out) {
    if (qjm_status s = require(op && state && out, "operator, state and out required")) {
        return s;
    }
    return guarded([&] { *out = qjm::std_dev(op->value, state->value); });
}

qjm_status qjm_commutator_value(const qjm_operator* a, const qjm_operator* b,
                                const qjm_state* state, double* out) {
    if (qjm_status s = require(a && b && state && out, "operators, state and out required")) {
        return s;
    }
    return guarded([&] { *out = qjm::commutator_value(a->value, b->value, state->value); });
}

qjm_status qjm_state_statistics(const qjm_operator* a, const qjm_operator* b,
                                const qjm_state* psi, qjm_statistics* out) {
    if (qjm_status s = require(a && b && psi && out, "operators, state and out required")) {
        return s;
    }
    return guarded([&] {
        const qjm::StateStatistics stats = qjm::state_statistics(a->value, b->value, psi->value);
        out->mean_a = stats.mean_a;
        out->mean_b = stats.mean_b;
        out->delta_a = stats.delta_a;
        out->delta_b = stats.delta_b;
        out->c_ab = stats.c_ab;
        out->corr_re = stats.corr_a0b0.real();
        out->corr_im = stats.corr_a0b0.imag();
    });
}

qjm_status qjm_measurement_create(const double* basis, const double* f_out, const double* g_out,
                                  size_t dim, qjm_measurement** out) {
    if (qjm_status s =
            require(basis && f_out && g_out && out && dim >= 1, "basis and outputs required")) {
        return s;
    }
    return guarded([&] {
        std::vector<double> f(f_out, f_out + dim);
        std::vector<double> g(g_out, g_out + dim);
        *out = new qjm_measurement{
            qjm::make_joint_measurement(to_mat_col_major(basis, dim), std::move(f), std::move(g))};
    });
}

void qjm_measurement_destroy(qjm_measurement* m) { delete m; }

qjm_status qjm_measurement_errors(const qjm_measurement* m, const qjm_operator* a,
                                  const qjm_operator* b, const qjm_state* joint_state,
                                  double* eps_a, double* eps_b) {
    if (qjm_status s = require(m && a && b && joint_state && eps_a && eps_b,
                               "measurement, operators, state and outs required")) {
        return s;
    }
    return guarded([&] {
        *eps_a = qjm::rms_error(m->value.basis, m->value.f_out, a->value, joint_state->value);
        *eps_b = qjm::rms_error(m->value.basis, m->value.g_out, b->value, joint_state->value);
    });
}

qjm_status qjm_rms_error(const qjm_operator* approx, const qjm_operator* ideal,
                         const qjm_state* joint_state, double* out) {
    if (qjm_status s =
            require(approx && ideal && joint_state && out, "operators, state and out required")) {
        return s;
    }
    return guarded([&] { *out = qjm::rms_error(approx->value, ideal->value, joint_state->value); });
}

qjm_status qjm_optimal_outputs(const double* basis, size_t dim, const qjm_operator* ideal,
                               const qjm_state* joint_state, double* outputs) {
    if (qjm_status s = require(basis && ideal && joint_state && outputs && dim >= 1,
                               "basis, operator, state and outputs required")) {
        return s;
    }
    return guarded([&] {
        const std::vector<double> values =
            qjm::optimal_outputs(to_mat_col_major(basis, dim), ideal->value, joint_state->value);
        std::copy(values.begin(), values.end(), outputs);
    });
}

qjm_status qjm_optimal_rms_error(const double* basis, size_t dim, const qjm_operator* ideal,
                                 const qjm_state* joint_state, double* out) {
    if (qjm_status s = require(basis && ideal && joint_state && out && dim >= 1,
                               "basis, operator, state and out required")) {
        return s;
    }
    return guarded([&] {
        *out = qjm::optimal_rms_error(to_mat_col_major(basis, dim), ideal->value,
                                      joint_state->value);
    });
}

qjm_status qjm_eval_relation(const char* relation_id, double eps_a, double eps_b,
                             const qjm_statistics* stats, qjm_report* out) {
    if (qjm_status s =
            require(relation_id && stats && out, "relation id, statistics and out required")) {
        return s;
    }
    return guarded([&] {
        const qjm::RelationId id = qjm::parse_relation(relation_id);
        const qjm::StateStatistics st = to_stats(*stats);
        const qjm::ErrorPair errors = qjm::make_error_pair(eps_a, eps_b, st);
        const qjm::RelationReport report = qjm::eval_relation(id, errors, st);
        out->lhs = report.lhs;
        out->rhs = report.rhs;
        out->slack = report.slack;
        out->satisfied = report.satisfied ? 1 : 0;
        out->saturated = report.saturated ? 1 : 0;
        out->universal = report.universal ? 1 : 0;
        out->regime_ok = report.regime_ok ? 1 : 0;
    });
}

qjm_status qjm_ozawa_implied_check(double eps_a, double eps_b, const qjm_statistics* stats,
                                   int* holds) {
    if (qjm_status s = require(stats && holds, "statistics and out required")) {
        return s;
    }
    return guarded([&] {
        const qjm::StateStatistics st = to_stats(*stats);
        const qjm::ErrorPair errors = qjm::make_error_pair(eps_a, eps_b, st);
        *holds = qjm::ozawa_implied_check(errors, st) ? 1 : 0;
    });
}

qjm_status qjm_run_verify(const qjm_sweep_config* config, const char* out_path,
                          qjm_run_summary* summary) {
    if (qjm_status s = require(config && summary, "config and summary required")) {
        return s;
    }
    if (qjm_status s = require(config->dims && config->n_dims > 0, "dims required")) {
        return s;
    }
    if (qjm_status s =
            require(config->relations && config->n_relations > 0, "relations required")) {
        return s;
    }
    return guarded([&] {
        qjm::SweepConfig cfg;
        cfg.seed = config->seed;
        cfg.dims.assign(config->dims, config->dims + config->n_dims);
        cfg.n_instances = config->n_instances;
        cfg.relations.clear();
        for (size_t i = 0; i < config->n_relations; ++i) {
            cfg.relations.push_back(qjm::parse_relation(config->relations[i]));
        }
        cfg.strategy = config->strategy ? qjm::parse_strategy(config->strategy)
                                        : qjm::Strategy::optimal_outputs;
        const qjm::RunRecord record = qjm::run_verify(cfg);
        if (out_path) {
            qjm::write_run_record_file(record, out_path);
        }
        fill_summary(summary, record);
    });
}

qjm_status qjm_run_lemmas(uint64_t seed, uint64_t n_instances, const size_t* dims, size_t n_dims,
                          const char* out_path, qjm_run_summary* summary) {
    if (qjm_status s = require(dims && n_dims > 0 && summary, "dims and summary required")) {
        return s;
    }
    return guarded([&] {
        qjm::LemmaConfig cfg;
        cfg.seed = seed;
        cfg.n_instances = n_instances;
        cfg.dims.assign(dims, dims + n_dims);
        const qjm::LemmaRunRecord record = qjm::run_lemmas(cfg);
        if (out_path) {
            qjm::write_run_record_file(record, out_path);
        }
        summary->universal_violations = 0;
        summary->flagged_violations = 0;
        for (const auto& tally : record.tallies) {
            summary->universal_violations += tally.violations;
            summary->flagged_violations += tally.witness_failures;
        }
        summary->min_slack = record.min_slack;
        summary->wall_ms = record.wall_ms;
        std::snprintf(summary->config_hash, sizeof summary->config_hash, "%s",
                      record.config_hash.c_str());
    });
}

qjm_status qjm_write_curve(const char* relation_id, double c_tilde, uint64_t n_points,
                           const char* format, const char* out_path) {
    if (qjm_status s =
            require(relation_id && format && out_path, "relation, format and path required")) {
        return s;
    }
    return guarded([&] {
        const qjm::TradeoffCurve curve = qjm::boundary_contour(
            qjm::parse_relation(relation_id), c_tilde, static_cast<int>(n_points));
        qjm::write_curve_file(curve, qjm::parse_format(format), out_path);
    });
}

qjm_status qjm_write_experiment(const char* which, uint64_t n_points, const char* format,
                                const char* out_path) {
    if (qjm_status s = require(which && format && out_path, "experiment, format and path required")) {
        return s;
    }
    return guarded([&] {
        const qjm::TradeoffCurve curve =
            qjm::experiment_curve(qjm::parse_experiment(which), static_cast<int>(n_points));
        qjm::write_curve_file(curve, qjm::parse_format(format), out_path);
    });
}

}  // extern "C"
