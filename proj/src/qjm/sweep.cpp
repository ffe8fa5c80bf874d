#include "qjm/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

namespace qjm {

namespace {

constexpr double pi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Orthonormal basis columns sampled uniformly, optionally forcing the given
// seed columns into the set first.
Mat random_basis_with(Rng& rng, Eigen::Index dim, const Mat& seed_cols) {
    Mat out(dim, dim);
    Eigen::Index filled = 0;
    for (Eigen::Index j = 0; j < seed_cols.cols(); ++j) {
        out.col(filled++) = seed_cols.col(j) / seed_cols.col(j).norm();
    }
    while (filled < dim) {
        Vec v(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            v(i) = rng.complex_normal();
        }
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index j = 0; j < filled; ++j) {
                v -= out.col(j).dot(v) * out.col(j);
            }
        }
        const double n = v.norm();
        if (n > 1e-6) {
            out.col(filled++) = v / n;
        }
    }
    return out;
}

// Involution (+-1 observable) with <psi|A|psi> = 0 exactly: eigenvectors are
// paired and rotated within each pair so the state weights cancel; in odd
// dimensions one eigenvector is made orthogonal to the state.
HermitianOperator balanced_involution(Rng& rng, const Ket& psi) {
    const Eigen::Index d = psi.dim();
    Mat seed(d, 0);
    if (d % 2 == 1) {
        Vec v(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            v(i) = rng.complex_normal();
        }
        v -= psi.amplitudes().dot(v) * psi.amplitudes();
        v.normalize();
        seed = v;
    }
    Mat basis = random_basis_with(rng, d, seed);
    const Eigen::Index odd = d % 2;

    Mat a = Mat::Zero(d, d);
    if (odd) {
        a += basis.col(0) * basis.col(0).adjoint();  // zero-weight vector, sign +1
    }
    for (Eigen::Index p = odd; p + 1 < d + odd; p += 2) {
        Vec u = basis.col(p);
        Vec w = basis.col(p + 1);
        const Complex c1 = u.dot(psi.amplitudes());
        const Complex c2 = w.dot(psi.amplitudes());
        const double off = 2.0 * (std::conj(c1) * c2).real();
        const double diag = std::norm(c1) - std::norm(c2);
        const double t = (std::atan2(off, diag) + pi / 2) / 2.0;
        const Vec u2 = std::cos(t) * u + std::sin(t) * w;
        const Vec w2 = -std::sin(t) * u + std::cos(t) * w;
        a += u2 * u2.adjoint() - w2 * w2.adjoint();
    }
    return HermitianOperator(std::move(a));
}

// Involution B with <B> = 0 and <A0 B> = e^{i phase} for the given unit
// vector u = A0|psi> orthogonal to |psi>: acts as a phase-twisted swap on
// span{psi, u} and as an arbitrary involution on the complement.
HermitianOperator unimodular_partner(Rng& rng, const Vec& u, const Ket& psi, double phase) {
    const Eigen::Index d = psi.dim();
    const Complex z = std::polar(1.0, phase);
    Mat b = z * u * psi.amplitudes().adjoint() + std::conj(z) * psi.amplitudes() * u.adjoint();
    Mat seed(d, 2);
    seed.col(0) = psi.amplitudes();
    seed.col(1) = u;
    Mat basis = random_basis_with(rng, d, seed);
    double sign = 1.0;
    for (Eigen::Index j = 2; j < d; ++j) {
        b += sign * basis.col(j) * basis.col(j).adjoint();
        sign = -sign;
    }
    return HermitianOperator(std::move(b));
}

enum class RegimeNeed { none, b_only, dichotomic };

RegimeNeed regime_need(const SweepConfig& config) {
    RegimeNeed need = RegimeNeed::none;
    for (RelationId id : config.relations) {
        if (id == RelationId::same_spectrum) {
            return RegimeNeed::dichotomic;
        }
        if (id == RelationId::b_only_spectrum) {
            need = RegimeNeed::b_only;
        }
    }
    return need;
}

std::vector<double> random_outputs(Rng& rng, Eigen::Index count, double center, double scale,
                                   bool dichotomic) {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (double& v : out) {
        v = dichotomic ? (rng.uniform() < 0.5 ? 1.0 : -1.0) : center + scale * rng.normal();
    }
    return out;
}

ErrorPair basis_strategy_errors(Rng& rng, const SweepInstance& inst, Strategy strategy) {
    const Eigen::Index d = inst.psi.dim();
    const Mat basis = random_basis_with(rng, d, Mat(d, 0));
    std::vector<double> f;
    std::vector<double> g;
    if (strategy == Strategy::random_basis) {
        f = random_outputs(rng, d, inst.stats.mean_a, std::max(inst.stats.delta_a, 0.5),
                           inst.dichotomic);
        g = random_outputs(rng, d, inst.stats.mean_b, std::max(inst.stats.delta_b, 0.5),
                           inst.dichotomic || inst.b_only);
    } else {
        f = inst.dichotomic ? dichotomic_outputs(basis, inst.a, inst.psi)
                            : optimal_outputs(basis, inst.a, inst.psi);
        g = (inst.dichotomic || inst.b_only) ? dichotomic_outputs(basis, inst.b, inst.psi)
                                             : optimal_outputs(basis, inst.b, inst.psi);
    }
    const double eps_a = rms_error(basis, f, inst.a, inst.psi);
    const double eps_b = rms_error(basis, g, inst.b, inst.psi);
    return make_error_pair(eps_a, eps_b, inst.stats);
}

ErrorPair saturating_strategy_errors(Rng& rng, const SweepInstance& inst) {
    if (inst.stats.degenerate()) {
        const ApproxJointMeasurement m = degenerate_strategy(inst.a, inst.b, inst.psi);
        return measurement_errors(m, inst.a, inst.b, inst.psi, inst.stats);
    }
    if (inst.dichotomic) {
        const SaturatingFrame frame = corr1_frame(inst.stats);
        const double lo = std::min(frame.phi_a, frame.phi_b);
        const double hi = std::max(frame.phi_a, frame.phi_b);
        const double varphi = rng.uniform(lo, hi);
        const double q = rng.uniform() < 0.5 ? 1.0 : -1.0;
        const ApproxJointMeasurement m =
            dichotomic_saturating(inst.a, inst.b, inst.psi, q, varphi, false, false);
        return measurement_errors(m, inst.a, inst.b, inst.psi, inst.stats);
    }
    if (std::abs(std::abs(inst.stats.corr_a0b0) - 1.0) <= tol().num) {
        const SaturatingFrame frame = corr1_frame(inst.stats);
        const double lo = std::min(frame.phi_a, frame.phi_b);
        const double hi = std::max(frame.phi_a, frame.phi_b);
        const double varphi = rng.uniform(lo, hi);
        const double q = rng.uniform(0.5, 2.0) * (rng.uniform() < 0.5 ? 1.0 : -1.0);
        ApproxJointMeasurement m = general_saturating_corr1(inst.a, inst.b, inst.psi, q, varphi);
        if (inst.b_only) {
            m.g_out = dichotomic_outputs(m.basis, inst.b, inst.psi);
        }
        return measurement_errors(m, inst.a, inst.b, inst.psi, inst.stats);
    }
    const SaturatingFrame frame = corr_lt1_frame(inst.stats);
    const double span = std::abs(frame.phi) / 2;
    const double varphi = rng.uniform(-span, span);
    CorrLt1Params params;
    params.q = rng.uniform(0.5, 2.0);
    params.r = rng.uniform(-1.0, 1.0);
    const double st = corr_lt1_st_product(inst.a, inst.b, inst.psi, params.q, params.r, varphi);
    params.s = std::sqrt(st) * rng.uniform(0.5, 2.0);
    params.t = st / params.s;
    const ApproxJointMeasurement m =
        general_saturating_corr_lt1(inst.a, inst.b, inst.psi, params, varphi);
    return measurement_errors(m, inst.a, inst.b, inst.psi, inst.stats);
}

bool relation_applicable(RelationId id, const SweepInstance& inst) {
    switch (id) {
        case RelationId::branciard_dimless: return !inst.stats.degenerate();
        case RelationId::same_spectrum: return inst.dichotomic;
        case RelationId::b_only_spectrum: return inst.dichotomic || inst.b_only;
        default: return true;
    }
}

std::string json_matrix(const Mat& m) {
    std::string out = "[";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out += i == 0 ? "[" : ",[";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j != 0) {
                out += ",";
            }
            out += "[\"" + render_g17(m(i, j).real()) + "\",\"" + render_g17(m(i, j).imag()) +
                   "\"]";
        }
        out += "]";
    }
    return out + "]";
}

std::string json_state(const Vec& v) {
    std::string out = "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i != 0) {
            out += ",";
        }
        out += "[\"" + render_g17(v(i).real()) + "\",\"" + render_g17(v(i).imag()) + "\"]";
    }
    return out + "]";
}

std::string serialize_instance(const SweepInstance& inst, std::uint64_t index) {
    std::ostringstream out;
    out << "{\"index\":" << index << ",\"dim\":" << inst.psi.dim();
    out << ",\"a\":" << json_matrix(inst.a.matrix());
    out << ",\"b\":" << json_matrix(inst.b.matrix());
    out << ",\"psi\":" << json_state(inst.psi.amplitudes());
    out << ",\"eps_a\":\"" << render_g17(inst.errors.eps_a) << "\"";
    out << ",\"eps_b\":\"" << render_g17(inst.errors.eps_b) << "\"}";
    return out.str();
}

std::ofstream open_file(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(Errc::io, "cannot open '" + path + "' for writing");
    }
    return out;
}

}  // namespace

Strategy parse_strategy(std::string_view name) {
    if (name == "random_basis") {
        return Strategy::random_basis;
    }
    if (name == "optimal_outputs") {
        return Strategy::optimal_outputs;
    }
    if (name == "saturating") {
        return Strategy::saturating;
    }
    fail(Errc::config, "unknown strategy '" + std::string(name) + "'");
}

std::string_view strategy_name(Strategy s) {
    switch (s) {
        case Strategy::random_basis: return "random_basis";
        case Strategy::optimal_outputs: return "optimal_outputs";
        case Strategy::saturating: return "saturating";
    }
    fail(Errc::config, "unknown strategy");
}

void validate_config(const SweepConfig& config) {
    if (config.n_instances < 1) {
        fail(Errc::config, "n_instances must be >= 1");
    }
    if (config.dims.empty()) {
        fail(Errc::config, "at least one dimension required");
    }
    for (int d : config.dims) {
        if (d < 2) {
            fail(Errc::config, "dimensions must be >= 2");
        }
    }
    if (config.relations.empty()) {
        fail(Errc::config, "at least one relation required");
    }
}

std::string config_line(const SweepConfig& config) {
    std::ostringstream out;
    out << "verify seed=" << config.seed << " dims=";
    for (std::size_t i = 0; i < config.dims.size(); ++i) {
        out << (i ? "," : "") << config.dims[i];
    }
    out << " n=" << config.n_instances << " relations=";
    for (std::size_t i = 0; i < config.relations.size(); ++i) {
        out << (i ? "," : "") << relation_name(config.relations[i]);
    }
    out << " strategy=" << strategy_name(config.strategy);
    return out.str();
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

SweepInstance make_instance(const SweepConfig& config, std::uint64_t index) {
    Rng rng(mix_seed(config.seed, index));
    const int dim = config.dims[static_cast<std::size_t>(index % config.dims.size())];
    const RegimeNeed need = regime_need(config);

    Ket psi = rng.haar_ket(dim);
    SweepInstance inst{HermitianOperator(Mat::Identity(dim, dim)),
                       HermitianOperator(Mat::Identity(dim, dim)),
                       psi,
                       StateStatistics{},
                       ErrorPair{},
                       false,
                       false};

    switch (need) {
        case RegimeNeed::none:
            inst.a = rng.hermitian(dim);
            inst.b = rng.hermitian(dim);
            break;
        case RegimeNeed::b_only: {
            inst.a = rng.hermitian(dim);
            inst.b_only = true;
            if (config.strategy == Strategy::saturating) {
                const double mean = expectation(inst.a, psi);
                const double dev = std_dev(inst.a, psi);
                if (dev > tol().deg) {
                    const Vec u =
                        (inst.a.matrix() * psi.amplitudes() - mean * psi.amplitudes()) / dev;
                    inst.b = unimodular_partner(rng, u, psi, rng.uniform(0.1, pi / 2));
                } else {
                    inst.b = balanced_involution(rng, psi);
                }
            } else {
                inst.b = balanced_involution(rng, psi);
            }
            break;
        }
        case RegimeNeed::dichotomic: {
            inst.a = balanced_involution(rng, psi);
            inst.dichotomic = true;
            inst.b_only = true;
            if (config.strategy == Strategy::saturating) {
                const Vec u = inst.a.matrix() * psi.amplitudes();
                inst.b = unimodular_partner(rng, u, psi, rng.uniform(0.1, pi / 2));
            } else {
                inst.b = balanced_involution(rng, psi);
            }
            break;
        }
    }

    inst.stats = state_statistics(inst.a, inst.b, inst.psi);
    inst.errors = config.strategy == Strategy::saturating
                      ? saturating_strategy_errors(rng, inst)
                      : basis_strategy_errors(rng, inst, config.strategy);
    return inst;
}

std::uint64_t RunRecord::universal_violations() const {
    std::uint64_t total = 0;
    for (const auto& tally : tallies) {
        if (relation_is_universal(tally.id)) {
            total += tally.violations;
        }
    }
    return total;
}

std::uint64_t RunRecord::flagged_violations() const {
    std::uint64_t total = 0;
    for (const auto& tally : tallies) {
        if (!relation_is_universal(tally.id)) {
            total += tally.violations;
        }
    }
    return total;
}

RunRecord run_verify(const SweepConfig& config) {
    validate_config(config);
    const auto start = Clock::now();

    RunRecord record;
    record.config = config_line(config);
    record.config_hash = fnv1a_hex(record.config);
    record.generator = Rng::generator_name();
    record.n_instances = config.n_instances;
    for (RelationId id : config.relations) {
        RelationTally tally;
        tally.id = id;
        tally.min_slack = std::numeric_limits<double>::infinity();
        record.tallies.push_back(tally);
    }
    record.min_slack = std::numeric_limits<double>::infinity();

    for (std::uint64_t i = 0; i < config.n_instances; ++i) {
        const SweepInstance inst = make_instance(config, i);
        for (auto& tally : record.tallies) {
            if (!relation_applicable(tally.id, inst)) {
                continue;
            }
            const RelationReport report = eval_relation(tally.id, inst.errors, inst.stats);
            ++tally.evaluated;
            if (!report.satisfied) {
                ++tally.violations;
            }
            if (report.slack < tally.min_slack) {
                tally.min_slack = report.slack;
                tally.worst_instance = i;
            }
            if (report.slack < record.min_slack) {
                record.min_slack = report.slack;
                record.worst_instance = i;
            }
        }
    }

    if (std::isfinite(record.min_slack)) {
        record.worst_instance_json =
            serialize_instance(make_instance(config, record.worst_instance),
                               record.worst_instance);
    }
    record.wall_ms = elapsed_ms(start);
    return record;
}

void validate_config(const LemmaConfig& config) {
    if (config.n_instances < 1) {
        fail(Errc::config, "n_instances must be >= 1");
    }
    if (config.dims.empty()) {
        fail(Errc::config, "at least one dimension required");
    }
    for (int d : config.dims) {
        if (d < 2) {
            fail(Errc::config, "lemma instances need dimension >= 2 for orthogonal pairs");
        }
    }
}

bool LemmaRunRecord::passed() const {
    for (const auto& tally : tallies) {
        if (tally.violations != 0 || tally.witness_failures != 0) {
            return false;
        }
    }
    return true;
}

LemmaRunRecord run_lemmas(const LemmaConfig& config) {
    validate_config(config);
    const auto start = Clock::now();

    LemmaRunRecord record;
    std::ostringstream line;
    line << "lemmas seed=" << config.seed << " dims=";
    for (std::size_t i = 0; i < config.dims.size(); ++i) {
        line << (i ? "," : "") << config.dims[i];
    }
    line << " n=" << config.n_instances;
    record.config = line.str();
    record.config_hash = fnv1a_hex(record.config);
    record.generator = Rng::generator_name();
    record.min_slack = std::numeric_limits<double>::infinity();

    const LemmaId lemmas[] = {LemmaId::lemma1, LemmaId::lemma2, LemmaId::lemma3};
    for (std::size_t l = 0; l < 3; ++l) {
        LemmaTally tally;
        tally.id = lemmas[l];
        tally.min_slack = std::numeric_limits<double>::infinity();
        for (std::uint64_t i = 0; i < config.n_instances; ++i) {
            Rng rng(mix_seed(mix_seed(config.seed, 0xabcd0000 + l), i));
            const int dim = config.dims[static_cast<std::size_t>(i % config.dims.size())];
            const LemmaInstance inst = random_lemma_instance(rng, dim, lemmas[l]);
            const double slack = lemma_slack(inst, lemmas[l]);
            ++tally.evaluated;
            if (slack < -tol().num) {
                ++tally.violations;
            }
            if (slack <= tol().sat) {
                ++tally.saturating;
                if (!saturation_witness(inst, lemmas[l]).holds()) {
                    ++tally.witness_failures;
                }
            }
            if (slack < tally.min_slack) {
                tally.min_slack = slack;
                tally.worst_instance = i;
            }
        }
        record.min_slack = std::min(record.min_slack, tally.min_slack);
        record.tallies.push_back(tally);
    }
    record.wall_ms = elapsed_ms(start);
    return record;
}

FileFormat parse_format(std::string_view name) {
    if (name == "csv") {
        return FileFormat::csv;
    }
    if (name == "json") {
        return FileFormat::json;
    }
    fail(Errc::config, "unknown format '" + std::string(name) + "'");
}

Experiment parse_experiment(std::string_view name) {
    if (name == "erhart") {
        return Experiment::erhart;
    }
    if (name == "rozema") {
        return Experiment::rozema;
    }
    fail(Errc::config, "unknown experiment '" + std::string(name) + "'");
}

TradeoffCurve experiment_curve(Experiment which, int n_points) {
    if (n_points < 2) {
        fail(Errc::config, "experiment sweep needs at least 2 points");
    }
    if (which == Experiment::rozema) {
        // ideal implementation saturates the bound along the lower branch
        return boundary_curve(RelationId::same_spectrum, 1.0, n_points, Branch::lower);
    }
    TradeoffCurve curve;
    curve.relation = RelationId::same_spectrum;
    curve.c_tilde = 1.0;
    const StateStatistics stats{0, 0, 1, 1, 1.0, Complex(0, 1)};
    for (int i = 0; i < n_points; ++i) {
        const double u = pi / 2 * static_cast<double>(i) / static_cast<double>(n_points - 1);
        TradeoffCurve::Point p{};
        p.parameter = u;
        p.eps_a_tilde = 2.0 * std::sin(u / 2);
        p.eps_b_tilde = std::sqrt(2.0) * std::cos(u);
        p.slack =
            eval_same_spectrum(make_error_pair(p.eps_a_tilde, p.eps_b_tilde, stats), stats).slack;
        curve.points.push_back(p);
    }
    return curve;
}

std::string render_g17(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_curve(const TradeoffCurve& curve, FileFormat format, std::ostream& out) {
    if (format == FileFormat::csv) {
        out << "parameter,eps_a_tilde,eps_b_tilde,slack\n";
        for (const auto& p : curve.points) {
            out << render_g17(p.parameter) << ',' << render_g17(p.eps_a_tilde) << ','
                << render_g17(p.eps_b_tilde) << ',' << render_g17(p.slack) << '\n';
        }
        return;
    }
    out << "{\n  \"relation\": \"" << relation_name(curve.relation) << "\",\n";
    out << "  \"c_tilde\": \"" << render_g17(curve.c_tilde) << "\",\n";
    out << "  \"points\": [\n";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const auto& p = curve.points[i];
        out << "    {\"parameter\": \"" << render_g17(p.parameter) << "\", \"eps_a_tilde\": \""
            << render_g17(p.eps_a_tilde) << "\", \"eps_b_tilde\": \"" << render_g17(p.eps_b_tilde)
            << "\", \"slack\": \"" << render_g17(p.slack) << "\"}"
            << (i + 1 < curve.points.size() ? "," : "") << '\n';
    }
    out << "  ]\n}\n";
}

void write_run_record(const RunRecord& record, std::ostream& out) {
    out << "{\n  \"config\": \"" << record.config << "\",\n";
    out << "  \"config_hash\": \"" << record.config_hash << "\",\n";
    out << "  \"generator\": \"" << record.generator << "\",\n";
    out << "  \"n_instances\": " << record.n_instances << ",\n";
    out << "  \"relations\": [\n";
    for (std::size_t i = 0; i < record.tallies.size(); ++i) {
        const auto& t = record.tallies[i];
        out << "    {\"relation\": \"" << relation_name(t.id) << "\", \"universal\": "
            << (relation_is_universal(t.id) ? "true" : "false")
            << ", \"evaluated\": " << t.evaluated << ", \"violations\": " << t.violations
            << ", \"min_slack\": \"" << render_g17(t.min_slack) << "\", \"worst_instance\": "
            << t.worst_instance << "}" << (i + 1 < record.tallies.size() ? "," : "") << '\n';
    }
    out << "  ],\n";
    out << "  \"min_slack\": \"" << render_g17(record.min_slack) << "\",\n";
    out << "  \"worst_instance\": " << record.worst_instance << ",\n";
    out << "  \"worst\": " << (record.worst_instance_json.empty() ? "null"
                                                                  : record.worst_instance_json)
        << "\n}\n";
}

void write_run_record(const LemmaRunRecord& record, std::ostream& out) {
    out << "{\n  \"config\": \"" << record.config << "\",\n";
    out << "  \"config_hash\": \"" << record.config_hash << "\",\n";
    out << "  \"generator\": \"" << record.generator << "\",\n";
    out << "  \"lemmas\": [\n";
    const char* names[] = {"lemma1", "lemma2", "lemma3"};
    for (std::size_t i = 0; i < record.tallies.size(); ++i) {
        const auto& t = record.tallies[i];
        out << "    {\"lemma\": \"" << names[static_cast<int>(t.id)] << "\", \"evaluated\": "
            << t.evaluated << ", \"violations\": " << t.violations
            << ", \"saturating\": " << t.saturating
            << ", \"witness_failures\": " << t.witness_failures << ", \"min_slack\": \""
            << render_g17(t.min_slack) << "\", \"worst_instance\": " << t.worst_instance << "}"
            << (i + 1 < record.tallies.size() ? "," : "") << '\n';
    }
    out << "  ],\n";
    out << "  \"min_slack\": \"" << render_g17(record.min_slack) << "\"\n}\n";
}

void write_curve_file(const TradeoffCurve& curve, FileFormat format, const std::string& path) {
    if (path == "-") {
        write_curve(curve, format, std::cout);
        return;
    }
    auto out = open_file(path);
    write_curve(curve, format, out);
}

void write_run_record_file(const RunRecord& record, const std::string& path) {
    if (path == "-") {
        write_run_record(record, std::cout);
        return;
    }
    auto out = open_file(path);
    write_run_record(record, out);
}

void write_run_record_file(const LemmaRunRecord& record, const std::string& path) {
    if (path == "-") {
        write_run_record(record, std::cout);
        return;
    }
    auto out = open_file(path);
    write_run_record(record, out);
}

}  // namespace qjm
