#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qjm/constructions.hpp"
#include "qjm/geometry.hpp"
#include "qjm/random.hpp"
#include "qjm/relations.hpp"

namespace qjm {

enum class Strategy { random_basis, optimal_outputs, saturating };

Strategy parse_strategy(std::string_view name);
std::string_view strategy_name(Strategy s);

struct SweepConfig {
    std::uint64_t seed = 1;
    std::vector<int> dims = {2};
    std::uint64_t n_instances = 1000;
    std::vector<RelationId> relations = {RelationId::branciard};
    Strategy strategy = Strategy::optimal_outputs;
};

void validate_config(const SweepConfig& config);
std::string config_line(const SweepConfig& config);  // canonical one-line form
std::string fnv1a_hex(const std::string& bytes);

// One fully sampled verification instance. Regenerated deterministically
// from (config, index), so sweeps can run in any order or in parallel and
// reduce by index.
struct SweepInstance {
    HermitianOperator a;
    HermitianOperator b;
    Ket psi;
    StateStatistics stats;
    ErrorPair errors;
    bool dichotomic = false;  // A^2 = B^2 = 1, <A> = <B> = 0 by construction
    bool b_only = false;      // B^2 = 1, <B> = 0 by construction
};

SweepInstance make_instance(const SweepConfig& config, std::uint64_t index);

struct RelationTally {
    RelationId id = RelationId::branciard;
    std::uint64_t evaluated = 0;
    std::uint64_t violations = 0;
    double min_slack = 0;
    std::uint64_t worst_instance = 0;
};

struct RunRecord {
    std::string config;
    std::string config_hash;
    std::string generator;
    std::uint64_t n_instances = 0;
    std::vector<RelationTally> tallies;
    double min_slack = 0;
    std::uint64_t worst_instance = 0;
    std::string worst_instance_json;
    double wall_ms = 0;  // console diagnostics only, never serialized

    std::uint64_t universal_violations() const;
    std::uint64_t flagged_violations() const;  // non-universal relations (hak)
    bool passed() const { return universal_violations() == 0; }
};

RunRecord run_verify(const SweepConfig& config);

struct LemmaConfig {
    std::uint64_t seed = 1;
    std::uint64_t n_instances = 1000;
    std::vector<int> dims = {4};
};

void validate_config(const LemmaConfig& config);

struct LemmaTally {
    LemmaId id = LemmaId::lemma1;
    std::uint64_t evaluated = 0;
    std::uint64_t violations = 0;      // slack < -tau_num
    std::uint64_t saturating = 0;      // slack <= tau_sat
    std::uint64_t witness_failures = 0;
    double min_slack = 0;
    std::uint64_t worst_instance = 0;
};

struct LemmaRunRecord {
    std::string config;
    std::string config_hash;
    std::string generator;
    std::vector<LemmaTally> tallies;
    double min_slack = 0;
    double wall_ms = 0;

    bool passed() const;
};

LemmaRunRecord run_lemmas(const LemmaConfig& config);

enum class FileFormat { csv, json };
FileFormat parse_format(std::string_view name);

enum class Experiment { erhart, rozema };
Experiment parse_experiment(std::string_view name);

// Theoretical prediction sweeps of the two qubit experiments
// (A = sigma_x, B = sigma_y, psi = |+z>, C_AB = 1). The first traces
// (2 sin(u/2), sqrt(2) cos u), which leaves the same-spectrum bound
// unsaturated except at the endpoints; the second traces the saturating
// (2 sin(u/2), 2 sin((pi/2-u)/2)).
TradeoffCurve experiment_curve(Experiment which, int n_points);

// 17-significant-digit decimal rendering used for all emitted numbers.
std::string render_g17(double value);

void write_curve(const TradeoffCurve& curve, FileFormat format, std::ostream& out);
void write_run_record(const RunRecord& record, std::ostream& out);      // json
void write_run_record(const LemmaRunRecord& record, std::ostream& out); // json

// Convenience file sinks ("-" writes to stdout).
void write_curve_file(const TradeoffCurve& curve, FileFormat format, const std::string& path);
void write_run_record_file(const RunRecord& record, const std::string& path);
void write_run_record_file(const LemmaRunRecord& record, const std::string& path);

}  // namespace qjm
