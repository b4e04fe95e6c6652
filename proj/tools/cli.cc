// Copyright 2026 The qosd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.h"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qosd/code_io.h"
#include "qosd/code_library.h"
#include "qosd/run_config.h"
#include "qosd/testing/selftest.h"
#include "qosd/threshold.h"
#include "qosd/timing.h"

namespace qosd {

namespace {

/// Column names of the decode-curve CSV. Changing them breaks downstream
/// scripts and the golden-file test.
constexpr const char *kCurveCsvHeader =
    "code,n,k,eps,trials,logical_errors,ler,ler_ci_low,ler_ci_high,bp_failures,bp_failure_rate,"
    "post_processed,osd0_only_fraction,dims_le_30_fraction,mean_iterations_on_success";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flag name and the config key it overrides.
const std::vector<std::pair<std::string, std::string>> &value_flags() {
    static const std::vector<std::pair<std::string, std::string>> flags = {
        {"--code", "code.spec"},
        {"--d", "code.d"},
        {"--eps", "channel.eps"},
        {"--pipeline", "decoder.pipeline"},
        {"--alpha", "decoder.alpha"},
        {"--alpha-seq", "decoder.alpha_seq"},
        {"--T", "decoder.T"},
        {"--schedule", "decoder.schedule"},
        {"--theta", "decoder.theta"},
        {"--gamma", "decoder.gamma"},
        {"--order", "decoder.order"},
        {"--w-backup", "decoder.w_backup"},
        {"--metric", "decoder.metric"},
        {"--trials", "run.trials"},
        {"--target-logical-errors", "run.target_logical_errors"},
        {"--seed", "run.seed"},
        {"--workers", "run.workers"},
        {"--batch-size", "run.batch_size"},
        {"--out", "output.out"},
        {"--trial-log", "output.trial_log"},
    };
    return flags;
}

/// Flag values captured by CLI11 before they are applied to a RunConfig.
struct FlagValues {
    std::string config_path;
    std::map<std::string, std::string> values;
    bool trust_distance = false;
};

void add_run_flags(CLI::App &cmd, FlagValues &flags) {
    cmd.add_option("--config", flags.config_path, "Config file; flags override its values");
    for (const auto &[flag, key] : value_flags()) {
        std::string *slot = &flags.values[key];
        cmd.add_option(flag, *slot, "Overrides " + key);
    }
    cmd.add_flag("--trust-d", flags.trust_distance, "Trust the distance declared by an imported code");
}

RunConfig resolve_config(const FlagValues &flags) {
    RunConfig config;
    if (!flags.config_path.empty()) {
        config = load_run_config(flags.config_path);
    }
    for (const auto &[key, value] : flags.values) {
        if (!value.empty()) {
            set_config_value(config, key, value);
        }
    }
    if (flags.trust_distance) {
        config.trust_distance = true;
    }
    if (const char *threads = std::getenv("QOSD_THREADS"); threads != nullptr && *threads != '\0') {
        set_config_value(config, "run.workers", threads);
    }
    config.validate();
    return config;
}

/// Opens `path` for writing, or returns `fallback` when the path is empty.
class OutputTarget {
   public:
    OutputTarget(const std::string &path, std::ostream &fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw std::runtime_error("cannot open '" + path + "' for writing");
            }
            stream_ = file_.get();
        }
    }
    std::ostream &stream() {
        return *stream_;
    }

   private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream *stream_;
};

void write_json_file(const std::string &path, const nlohmann::json &j) {
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    f << j.dump(2) << "\n";
}

nlohmann::json provenance(const RunConfig &config, std::string_view command) {
    nlohmann::json j;
    j["command"] = command;
    j["seed"] = config.seed;
    j["config_hash"] = config_hash(config);
    j["config"] = serialize_run_config(config);
    return j;
}

std::vector<StabilizerCode> build_codes(const RunConfig &config) {
    std::vector<StabilizerCode> codes;
    for (const CodeSpec &spec : config.code_specs()) {
        codes.push_back(build_code(spec));
    }
    return codes;
}

std::string format_double(double v) {
    std::ostringstream s;
    s << std::setprecision(10) << v;
    return s.str();
}

void write_curve_row(std::ostream &out, const StabilizerCode &code, const AggregateStats &s) {
    out << code.name() << "," << code.n() << "," << code.k() << "," << format_double(s.epsilon) << "," << s.trials
        << "," << s.logical_errors << "," << format_double(s.ler) << "," << format_double(s.ler_ci_low) << ","
        << format_double(s.ler_ci_high) << "," << s.bp_failures << "," << format_double(s.bp_failure_rate) << ","
        << s.post_processed << "," << format_double(s.osd0_only_fraction) << ","
        << format_double(s.dims_le_30_fraction) << "," << format_double(s.mean_iterations_on_success) << "\n";
}

int cmd_decode_curve(const RunConfig &config, std::ostream &out) {
    std::vector<StabilizerCode> codes = build_codes(config);
    PipelineConfig pipeline = config.pipeline_config();
    RunOptions options = config.run_options();
    options.keep_records = !config.trial_log.empty();

    OutputTarget csv(config.out, out);
    std::unique_ptr<std::ofstream> trial_log;
    if (!config.trial_log.empty()) {
        trial_log = std::make_unique<std::ofstream>(config.trial_log);
        if (!*trial_log) {
            throw std::runtime_error("cannot open '" + config.trial_log + "' for writing");
        }
        *trial_log << "# seed=" << config.seed << " config_hash=" << config_hash(config) << "\n";
    }
    csv.stream() << "# seed=" << config.seed << " config_hash=" << config_hash(config) << "\n";
    csv.stream() << kCurveCsvHeader << "\n";

    nlohmann::json report = provenance(config, "decode-curve");
    report["points"] = nlohmann::json::array();
    for (const StabilizerCode &code : codes) {
        for (double eps : config.eps) {
            RunResult result = run_trials(code, ChannelModel{eps}, pipeline, options);
            write_curve_row(csv.stream(), code, result.stats);
            csv.stream().flush();
            nlohmann::json point = to_json(result.stats);
            point["code"] = code.name();
            point["n"] = code.n();
            point["k"] = code.k();
            report["points"].push_back(point);
            if (trial_log) {
                *trial_log << "# code=" << code.name() << " eps=" << format_double(eps) << "\n";
                write_trial_csv_header(*trial_log);
                for (const TrialRecord &r : result.records) {
                    write_trial_csv_row(*trial_log, r);
                }
            }
        }
    }
    if (!config.out.empty()) {
        write_json_file(config.out + ".json", report);
    }
    return 0;
}

int cmd_threshold(const RunConfig &config, std::ostream &out) {
    std::vector<StabilizerCode> codes = build_codes(config);
    if (codes.size() < 2) {
        throw ConfigError("threshold needs at least two codes (use --d with a list of distances)");
    }
    ThresholdReport report = threshold_scan(codes, config.eps, config.pipeline_config(), config.run_options());
    nlohmann::json j = provenance(config, "threshold");
    j["report"] = to_json(report);
    OutputTarget target(config.out, out);
    target.stream() << j.dump(2) << "\n";
    for (const CrossingInterval &c : report.crossings) {
        out << c.smaller << " vs " << c.larger << ": " << crossing_kind_name(c.kind) << " [" << c.low << ", "
            << c.high << "] estimate " << c.estimate << "\n";
    }
    return 0;
}

int cmd_timing_probe(const RunConfig &config, std::ostream &out) {
    std::vector<StabilizerCode> codes = build_codes(config);
    TimingOptions options;
    options.trials = config.trials;
    options.seed = config.seed;
    options.pipeline = config.pipeline_config();
    nlohmann::json j = provenance(config, "timing-probe");
    j["probes"] = nlohmann::json::array();
    for (const StabilizerCode &code : codes) {
        for (double eps : config.eps) {
            nlohmann::json probe = to_json(timing_probe(code, eps, options));
            probe["code"] = code.name();
            j["probes"].push_back(probe);
        }
    }
    OutputTarget target(config.out, out);
    target.stream() << j.dump(2) << "\n";
    return 0;
}

int cmd_selftest(uint64_t seed, std::ostream &out) {
    bool all = true;
    for (const auto &r : testing::run_selftest(seed)) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks)";
        if (!r.passed) {
            out << ": " << r.detail;
        }
        out << "\n";
        all = all && r.passed;
    }
    out << (all ? "selftest: all suites passed" : "selftest: FAILED") << "\n";
    return all ? 0 : 1;
}

StabilizerCode single_code(const RunConfig &config) {
    auto specs = config.code_specs();
    if (specs.size() != 1) {
        throw ConfigError("code commands take exactly one code");
    }
    return build_code(specs[0]);
}

nlohmann::json code_to_json(const StabilizerCode &code) {
    auto rows = [](const GF2Matrix &m) {
        nlohmann::json a = nlohmann::json::array();
        for (size_t r = 0; r < m.rows(); r++) {
            a.push_back(m.row_support(r));
        }
        return a;
    };
    nlohmann::json j;
    j["name"] = code.name();
    j["n"] = code.n();
    j["k"] = code.k();
    j["d"] = code.d();
    j["check"] = rows(code.check());
    j["logicals"] = rows(code.logicals());
    return j;
}

int cmd_code_verify(const std::string &path, std::ostream &out) {
    ParsedCode parsed = parse_code_file(path);
    CodeCheckReport report = check_code(parsed.n, parsed.k, parsed.check, parsed.logicals);
    out << "code: " << path << "\n";
    out << "n=" << parsed.n << " k=" << parsed.k << " d=" << parsed.d << " m=" << parsed.check.rows() << "\n";
    out << "rank: " << report.rank << "\n";
    out << "logical pairing rank: " << report.logical_pairing_rank << "\n";
    out << "check weights:";
    for (const auto &[weight, count] : report.check_weight_histogram) {
        out << " " << weight << ":" << count;
    }
    out << "\n";
    for (const std::string &f : report.failures) {
        out << "FAIL: " << f << "\n";
    }
    if (report.ok()) {
        out << "result: OK\n";
        return 0;
    }
    out << "result: FAIL (" << report.failures.size() << " failure" << (report.failures.size() == 1 ? "" : "s")
        << ")\n";
    return 1;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Belief propagation with ordered-statistics post-processing for stabilizer codes", "qosd"};
    app.require_subcommand(1);

    FlagValues curve_flags, threshold_flags, timing_flags, code_flags;
    auto *curve = app.add_subcommand("decode-curve", "Logical error rate per error rate (CSV, plus JSON with --out)");
    add_run_flags(*curve, curve_flags);
    auto *threshold = app.add_subcommand("threshold", "Crossing intervals between codes of increasing distance");
    add_run_flags(*threshold, threshold_flags);
    auto *timing = app.add_subcommand("timing-probe", "Single-threaded BP, ADOSD, and OSD-2 timings");
    add_run_flags(*timing, timing_flags);

    auto *code = app.add_subcommand("code", "Build, export, or verify codes");
    code->require_subcommand(1);
    auto *build = code->add_subcommand("build", "Write a code in QCODE v1 format");
    add_run_flags(*build, code_flags);
    auto *exportc = code->add_subcommand("export", "Write a code as JSON");
    add_run_flags(*exportc, code_flags);
    std::string verify_path;
    auto *verify = code->add_subcommand("verify", "Check every invariant of a QCODE v1 file");
    verify->add_option("path", verify_path, "QCODE v1 file")->required();

    uint64_t selftest_seed = 20260101;
    auto *selftest = app.add_subcommand("selftest", "Run the invariant suites");
    selftest->add_option("--seed", selftest_seed, "Seed for the randomized suites");

    std::vector<std::string> argv_storage;
    argv_storage.push_back("qosd");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &a : argv_storage) {
        argv.push_back(a.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err);
    }

    try {
        if (curve->parsed()) {
            return cmd_decode_curve(resolve_config(curve_flags), out);
        }
        if (threshold->parsed()) {
            return cmd_threshold(resolve_config(threshold_flags), out);
        }
        if (timing->parsed()) {
            return cmd_timing_probe(resolve_config(timing_flags), out);
        }
        if (selftest->parsed()) {
            return cmd_selftest(selftest_seed, out);
        }
        if (verify->parsed()) {
            return cmd_code_verify(verify_path, out);
        }
        if (build->parsed() || exportc->parsed()) {
            RunConfig config = resolve_config(code_flags);
            StabilizerCode c = single_code(config);
            OutputTarget target(config.out, out);
            if (build->parsed()) {
                write_code(target.stream(), c);
            } else {
                target.stream() << code_to_json(c).dump() << "\n";
            }
            return 0;
        }
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace qosd
