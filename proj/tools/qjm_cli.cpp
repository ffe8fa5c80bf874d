// Command-line front end for the qjm shared library. Talks to the C API
// only. Exit codes: 0 pass, 1 universal-relation violation, 2 config error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qjm.h"

namespace {

constexpr int exit_pass = 0;
constexpr int exit_violation = 1;
constexpr int exit_config = 2;

int fail_with(qjm_status status) {
    std::cerr << "error (" << qjm_status_name(status) << "): " << qjm_last_error() << "\n";
    return status == QJM_ERR_CONFIG || status == QJM_ERR_INVALID_ARG ? exit_config
                                                                     : exit_violation;
}

// Declarative config file: one `key = value` pair per line, '#' comments.
// Values act as defaults; explicit command-line flags win.
bool load_config_kv(const std::string& path, std::map<std::string, std::string>& kv) {
    std::ifstream in(path);
    if (!in) {
        return false;
    }
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) {
            kv[key] = value;
        }
    }
    return true;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

struct VerifyOptions {
    std::uint64_t seed = 1;
    std::vector<std::size_t> dims = {2};
    std::uint64_t n = 1000;
    std::vector<std::string> relations = {"branciard"};
    std::string strategy = "optimal_outputs";
    std::string out;
};

int run_verify(const VerifyOptions& opt) {
    std::vector<const char*> relation_ptrs;
    for (const auto& r : opt.relations) {
        relation_ptrs.push_back(r.c_str());
    }
    qjm_sweep_config config{};
    config.seed = opt.seed;
    config.dims = opt.dims.data();
    config.n_dims = opt.dims.size();
    config.n_instances = opt.n;
    config.relations = relation_ptrs.data();
    config.n_relations = relation_ptrs.size();
    config.strategy = opt.strategy.c_str();

    qjm_run_summary summary{};
    const qjm_status status =
        qjm_run_verify(&config, opt.out.empty() ? nullptr : opt.out.c_str(), &summary);
    if (status != QJM_OK) {
        return fail_with(status);
    }
    std::cout << "verify: hash=" << summary.config_hash
              << " universal_violations=" << summary.universal_violations
              << " flagged_violations=" << summary.flagged_violations
              << " min_slack=" << summary.min_slack << " wall_ms=" << summary.wall_ms << "\n";
    return summary.universal_violations == 0 ? exit_pass : exit_violation;
}

int run_lemmas(std::uint64_t seed, const std::vector<std::size_t>& dims, std::uint64_t n,
               const std::string& out) {
    qjm_run_summary summary{};
    const qjm_status status = qjm_run_lemmas(seed, n, dims.data(), dims.size(),
                                             out.empty() ? nullptr : out.c_str(), &summary);
    if (status != QJM_OK) {
        return fail_with(status);
    }
    std::cout << "lemmas: hash=" << summary.config_hash
              << " violations=" << summary.universal_violations
              << " witness_failures=" << summary.flagged_violations
              << " min_slack=" << summary.min_slack << " wall_ms=" << summary.wall_ms << "\n";
    return summary.universal_violations == 0 && summary.flagged_violations == 0 ? exit_pass
                                                                                : exit_violation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"error trade-offs for approximate joint quantum measurements"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "key=value config file with flag defaults");

    VerifyOptions verify_opt;
    auto* verify = app.add_subcommand("verify", "randomized falsification sweep of the relations");
    auto* v_seed = verify->add_option("--seed", verify_opt.seed, "PRNG seed");
    auto* v_dims = verify->add_option("--dims", verify_opt.dims, "system dimensions (>= 2)")
                       ->delimiter(',');
    auto* v_n = verify->add_option("--n", verify_opt.n, "number of instances");
    auto* v_rel = verify
                      ->add_option("--relation", verify_opt.relations,
                                   "relation ids (robertson, hak, ozawa_joint, ozawa_ed, "
                                   "branciard, branciard_dimless, same_spectrum, "
                                   "b_only_spectrum)")
                      ->delimiter(',');
    auto* v_strategy = verify->add_option("--strategy", verify_opt.strategy,
                                          "random_basis | optimal_outputs | saturating");
    auto* v_out = verify->add_option("--out", verify_opt.out, "write the run record (JSON)");

    std::string curve_relation = "branciard";
    double c_tilde = 1.0;
    std::uint64_t curve_points = 101;
    std::string format = "csv";
    std::string curve_out = "-";
    auto* curve = app.add_subcommand("curve", "export a saturating boundary curve");
    auto* c_rel = curve->add_option("--relation", curve_relation, "relation id");
    auto* c_ct = curve->add_option("--c-tilde", c_tilde, "normalized commutator value in [-1,1]");
    auto* c_n = curve->add_option("--n", curve_points, "points per arc");
    auto* c_fmt = curve->add_option("--format", format, "csv | json");
    auto* c_out = curve->add_option("--out", curve_out, "output path ('-' for stdout)");

    std::string which = "erhart";
    std::uint64_t exp_points = 101;
    std::string exp_format = "csv";
    std::string exp_out = "-";
    auto* experiments =
        app.add_subcommand("experiments", "theoretical prediction sweeps of the qubit experiments");
    auto* e_which = experiments->add_option("--which", which, "erhart | rozema");
    auto* e_n = experiments->add_option("--n", exp_points, "number of points");
    auto* e_fmt = experiments->add_option("--format", exp_format, "csv | json");
    auto* e_out = experiments->add_option("--out", exp_out, "output path ('-' for stdout)");

    std::uint64_t lemma_seed = 1;
    std::vector<std::size_t> lemma_dims = {4};
    std::uint64_t lemma_n = 100000;
    std::string lemma_out;
    auto* lemmas = app.add_subcommand("lemmas", "fuzz the geometric vector inequalities");
    auto* l_seed = lemmas->add_option("--seed", lemma_seed, "PRNG seed");
    auto* l_dims = lemmas->add_option("--dims", lemma_dims, "real-space dimensions (>= 2)")
                       ->delimiter(',');
    auto* l_n = lemmas->add_option("--n", lemma_n, "instances per lemma");
    auto* l_out = lemmas->add_option("--out", lemma_out, "write the run record (JSON)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    if (!config_path.empty()) {
        std::map<std::string, std::string> kv;
        if (!load_config_kv(config_path, kv)) {
            std::cerr << "error (config): cannot read '" << config_path << "'\n";
            return exit_config;
        }
        auto apply_u64 = [&](const char* key, const CLI::Option* flag, std::uint64_t& field) {
            if (!flag->count() && kv.count(key)) {
                field = std::stoull(kv.at(key));
            }
        };
        auto apply_str = [&](const char* key, const CLI::Option* flag, std::string& field) {
            if (!flag->count() && kv.count(key)) {
                field = kv.at(key);
            }
        };
        auto apply_dims = [&](const char* key, const CLI::Option* flag,
                              std::vector<std::size_t>& field) {
            if (!flag->count() && kv.count(key)) {
                field.clear();
                for (const auto& item : split_list(kv.at(key))) {
                    field.push_back(std::stoull(item));
                }
            }
        };
        try {
            apply_u64("seed", v_seed, verify_opt.seed);
            apply_dims("dims", v_dims, verify_opt.dims);
            apply_u64("n", v_n, verify_opt.n);
            if (!v_rel->count() && kv.count("relation")) {
                verify_opt.relations = split_list(kv.at("relation"));
            }
            apply_str("strategy", v_strategy, verify_opt.strategy);
            apply_str("out", v_out, verify_opt.out);

            apply_str("relation", c_rel, curve_relation);
            if (!c_ct->count() && kv.count("c_tilde")) {
                c_tilde = std::stod(kv.at("c_tilde"));
            }
            apply_u64("n", c_n, curve_points);
            apply_str("format", c_fmt, format);
            apply_str("out", c_out, curve_out);

            apply_str("which", e_which, which);
            apply_u64("n", e_n, exp_points);
            apply_str("format", e_fmt, exp_format);
            apply_str("out", e_out, exp_out);

            apply_u64("seed", l_seed, lemma_seed);
            apply_dims("dims", l_dims, lemma_dims);
            apply_u64("n", l_n, lemma_n);
            apply_str("out", l_out, lemma_out);
        } catch (const std::exception& e) {
            std::cerr << "error (config): bad value in '" << config_path << "': " << e.what()
                      << "\n";
            return exit_config;
        }
    }

    if (verify->parsed()) {
        return run_verify(verify_opt);
    }
    if (curve->parsed()) {
        const qjm_status status = qjm_write_curve(curve_relation.c_str(), c_tilde, curve_points,
                                                  format.c_str(), curve_out.c_str());
        return status == QJM_OK ? exit_pass : fail_with(status);
    }
    if (experiments->parsed()) {
        const qjm_status status =
            qjm_write_experiment(which.c_str(), exp_points, exp_format.c_str(), exp_out.c_str());
        return status == QJM_OK ? exit_pass : fail_with(status);
    }
    if (lemmas->parsed()) {
        return run_lemmas(lemma_seed, lemma_dims, lemma_n, lemma_out);
    }
    return exit_config;
}
