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

#include "qosd/run_config.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace qosd {

namespace {

std::string_view trim(std::string_view s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string_view::npos) {
        return {};
    }
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        size_t end = s.find(sep, start);
        out.push_back(trim(s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start)));
        if (end == std::string_view::npos) {
            return out;
        }
        start = end + 1;
    }
}

double to_double(std::string_view s) {
    s = trim(s);
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw ConfigError("expected a number, got '" + std::string(s) + "'");
    }
    return v;
}

uint64_t to_uint(std::string_view s) {
    s = trim(s);
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw ConfigError("expected a nonnegative integer, got '" + std::string(s) + "'");
    }
    return v;
}

bool to_bool(std::string_view s) {
    s = trim(s);
    if (s == "true" || s == "1" || s == "yes") {
        return true;
    }
    if (s == "false" || s == "0" || s == "no") {
        return false;
    }
    throw ConfigError("expected true or false, got '" + std::string(s) + "'");
}

std::string fmt(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

template <typename T, typename F>
std::string join(const std::vector<T> &values, F &&f) {
    std::string out;
    for (size_t k = 0; k < values.size(); k++) {
        out += (k ? "," : "") + f(values[k]);
    }
    return out;
}

// Section of every key, used to accept both "decoder.T" and "T".
const std::map<std::string, std::string, std::less<>> &key_sections() {
    static const std::map<std::string, std::string, std::less<>> sections = {
        {"spec", "code"},
        {"d", "code"},
        {"trust_distance", "code"},
        {"eps", "channel"},
        {"pipeline", "decoder"},
        {"T", "decoder"},
        {"alpha", "decoder"},
        {"alpha_seq", "decoder"},
        {"schedule", "decoder"},
        {"theta", "decoder"},
        {"gamma", "decoder"},
        {"order", "decoder"},
        {"w_backup", "decoder"},
        {"metric", "decoder"},
        {"trials", "run"},
        {"target_logical_errors", "run"},
        {"seed", "run"},
        {"workers", "run"},
        {"batch_size", "run"},
        {"out", "output"},
        {"trial_log", "output"},
    };
    return sections;
}

}  // namespace

std::vector<double> parse_eps_list(std::string_view text) {
    text = trim(text);
    if (text.empty()) {
        throw ConfigError("empty error-rate list");
    }
    if (text.find(':') != std::string_view::npos) {
        auto parts = split(text, ':');
        if (parts.size() != 3) {
            throw ConfigError("error-rate range must be start:step:stop, got '" + std::string(text) + "'");
        }
        double start = to_double(parts[0]), step = to_double(parts[1]), stop = to_double(parts[2]);
        if (!(step > 0) || stop < start) {
            throw ConfigError("error-rate range needs step > 0 and stop >= start");
        }
        std::vector<double> out;
        long count = std::lround(std::floor((stop - start) / step + 1e-9)) + 1;
        for (long t = 0; t < count; t++) {
            out.push_back(std::round((start + step * static_cast<double>(t)) * 1e12) / 1e12);
        }
        return out;
    }
    std::vector<double> out;
    for (auto p : split(text, ',')) {
        out.push_back(to_double(p));
    }
    return out;
}

std::vector<size_t> parse_size_list(std::string_view text) {
    std::vector<size_t> out;
    if (trim(text).empty()) {
        return out;
    }
    for (auto p : split(text, ',')) {
        out.push_back(static_cast<size_t>(to_uint(p)));
    }
    return out;
}

void set_config_value(RunConfig &c, std::string_view key, std::string_view value) {
    size_t dot = key.find('.');
    std::string_view section;
    if (dot != std::string_view::npos) {
        section = key.substr(0, dot);
        key = key.substr(dot + 1);
    }
    auto it = key_sections().find(key);
    if (it == key_sections().end() || (!section.empty() && it->second != section)) {
        throw ConfigError("unknown config key '" + std::string(key) + "'");
    }
    value = trim(value);
    try {
        if (key == "spec") {
            c.code = std::string(value);
        } else if (key == "d") {
            c.distances = parse_size_list(value);
        } else if (key == "trust_distance") {
            c.trust_distance = to_bool(value);
        } else if (key == "eps") {
            c.eps = parse_eps_list(value);
        } else if (key == "pipeline") {
            c.pipeline = parse_pipeline(value);
        } else if (key == "T") {
            c.max_iterations = static_cast<size_t>(to_uint(value));
        } else if (key == "alpha") {
            c.alpha = value == "auto" ? std::nullopt : std::optional<double>(to_double(value));
        } else if (key == "alpha_seq") {
            auto parts = split(value, ',');
            if (parts.size() != 3) {
                throw ConfigError("alpha_seq must be start,step,stop");
            }
            c.alpha_seq = {to_double(parts[0]), to_double(parts[1]), to_double(parts[2])};
        } else if (key == "schedule") {
            c.schedule = parse_schedule(value);
        } else if (key == "theta") {
            c.theta = to_double(value);
        } else if (key == "gamma") {
            c.gamma = to_uint(value);
        } else if (key == "order") {
            c.order = value.empty() ? std::nullopt : std::optional<size_t>(to_uint(value));
        } else if (key == "w_backup") {
            c.w_backup = static_cast<size_t>(to_uint(value));
        } else if (key == "metric") {
            c.metric = parse_metric(value);
        } else if (key == "trials") {
            c.trials = to_uint(value);
        } else if (key == "target_logical_errors") {
            c.target_logical_errors = to_uint(value);
        } else if (key == "seed") {
            c.seed = to_uint(value);
        } else if (key == "workers") {
            c.workers = static_cast<size_t>(to_uint(value));
        } else if (key == "batch_size") {
            c.batch_size = static_cast<size_t>(to_uint(value));
        } else if (key == "out") {
            c.out = std::string(value);
        } else if (key == "trial_log") {
            c.trial_log = std::string(value);
        }
    } catch (const ConfigError &ex) {
        throw ConfigError(std::string(key) + ": " + ex.what());
    } catch (const std::invalid_argument &ex) {
        throw ConfigError(std::string(key) + ": " + ex.what());
    }
}

RunConfig parse_run_config(std::string_view text, const std::string &source_name) {
    RunConfig config;
    std::string section;
    size_t line_number = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        line_number++;
        std::string_view line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') {
            continue;
        }
        std::string where = source_name + ":" + std::to_string(line_number) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(where + "unterminated section header");
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            static const std::vector<std::string> known = {"code", "channel", "decoder", "run", "output"};
            if (std::find(known.begin(), known.end(), section) == known.end()) {
                throw ConfigError(where + "unknown section [" + section + "]");
            }
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(where + "expected 'key = value'");
        }
        std::string key(trim(line.substr(0, eq)));
        if (!section.empty()) {
            key = section + "." + key;
        }
        try {
            set_config_value(config, key, line.substr(eq + 1));
        } catch (const ConfigError &ex) {
            throw ConfigError(where + ex.what());
        }
    }
    return config;
}

RunConfig load_run_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str(), path);
}

std::string serialize_run_config(const RunConfig &c) {
    std::ostringstream out;
    out << "[code]\n";
    out << "spec = " << c.code << "\n";
    out << "d = " << join(c.distances, [](size_t v) { return std::to_string(v); }) << "\n";
    out << "trust_distance = " << (c.trust_distance ? "true" : "false") << "\n";
    out << "\n[channel]\n";
    out << "eps = " << join(c.eps, fmt) << "\n";
    out << "\n[decoder]\n";
    out << "pipeline = " << pipeline_name(c.pipeline) << "\n";
    out << "T = " << c.max_iterations << "\n";
    out << "alpha = " << (c.alpha ? fmt(*c.alpha) : "auto") << "\n";
    out << "alpha_seq = " << join(c.alpha_seq, fmt) << "\n";
    out << "schedule = " << schedule_name(c.schedule) << "\n";
    out << "theta = " << fmt(c.theta) << "\n";
    out << "gamma = " << c.gamma << "\n";
    out << "order = " << (c.order ? std::to_string(*c.order) : "") << "\n";
    out << "w_backup = " << c.w_backup << "\n";
    out << "metric = " << metric_name(c.metric) << "\n";
    out << "\n[run]\n";
    out << "trials = " << c.trials << "\n";
    out << "target_logical_errors = " << c.target_logical_errors << "\n";
    out << "seed = " << c.seed << "\n";
    out << "workers = " << c.workers << "\n";
    out << "batch_size = " << c.batch_size << "\n";
    out << "\n[output]\n";
    out << "out = " << c.out << "\n";
    out << "trial_log = " << c.trial_log << "\n";
    return out.str();
}

std::string config_hash(const RunConfig &config) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : serialize_run_config(config)) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void RunConfig::validate() const {
    for (double e : eps) {
        if (!(e >= 0 && e < 0.75)) {
            throw ConfigError("eps: " + fmt(e) + " is outside [0, 3/4)");
        }
    }
    if (eps.empty()) {
        throw ConfigError("eps: at least one error rate is required");
    }
    if (max_iterations < 1) {
        throw ConfigError("T: must be at least 1");
    }
    if (alpha && !(*alpha > 0)) {
        throw ConfigError("alpha: must be positive");
    }
    if (alpha_seq.size() != 3) {
        throw ConfigError("alpha_seq: must be start,step,stop");
    }
    try {
        alpha_sequence(alpha_seq[0], alpha_seq[1], alpha_seq[2]);
    } catch (const std::invalid_argument &ex) {
        throw ConfigError(std::string("alpha_seq: ") + ex.what());
    }
    if (!(theta > 0.5 && theta <= 1.0 + 1e-12)) {
        // theta slightly above 1 is allowed and disables the reduction.
        if (!(theta > 0.5)) {
            throw ConfigError("theta: must exceed 0.5");
        }
    }
    if (trials < 1) {
        throw ConfigError("trials: must be at least 1");
    }
    if (batch_size < 1) {
        throw ConfigError("batch_size: must be at least 1");
    }
    try {
        code_specs();
    } catch (const std::invalid_argument &ex) {
        throw ConfigError(std::string("spec: ") + ex.what());
    }
}

std::vector<CodeSpec> RunConfig::code_specs() const {
    CodeSpec base = CodeSpec::parse(code);
    base.trust_distance = trust_distance;
    if (distances.empty()) {
        return {base};
    }
    if (base.family != CodeFamily::kRotatedSurface && base.family != CodeFamily::kRotatedToric) {
        throw std::invalid_argument("a distance list only applies to surface and toric codes");
    }
    std::vector<CodeSpec> out;
    for (size_t d : distances) {
        CodeSpec s = base;
        s.distance = d;
        out.push_back(s);
    }
    return out;
}

PipelineConfig RunConfig::pipeline_config() const {
    PipelineConfig p;
    p.pipeline = pipeline;
    p.bp.max_iterations = max_iterations;
    p.bp.schedule = schedule;
    p.bp.alpha = alpha.value_or(1.0);
    p.alpha_from_epsilon = !alpha.has_value();
    p.alphas = alpha_sequence(alpha_seq[0], alpha_seq[1], alpha_seq[2]);
    p.theta = theta;
    p.budget = gamma;
    p.order = order;
    p.w_backup = w_backup;
    p.metric = metric;
    return p;
}

RunOptions RunConfig::run_options() const {
    RunOptions o;
    o.max_trials = trials;
    o.target_logical_errors = target_logical_errors;
    o.seed = seed;
    o.workers = std::max<size_t>(1, workers);
    o.batch_size = batch_size;
    return o;
}

}  // namespace qosd
