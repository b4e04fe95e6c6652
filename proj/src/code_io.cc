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

#include "qosd/code_io.h"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace qosd {

namespace {

size_t header_field(const std::string &token, const std::string &key, const std::string &where) {
    if (token.rfind(key + "=", 0) != 0) {
        throw CodeParseError(where + ": expected '" + key + "=<value>' in header, got '" + token + "'");
    }
    try {
        size_t used = 0;
        std::string digits = token.substr(key.size() + 1);
        unsigned long long v = std::stoull(digits, &used);
        if (used != digits.size()) {
            throw std::invalid_argument(digits);
        }
        return static_cast<size_t>(v);
    } catch (const std::logic_error &) {
        throw CodeParseError(where + ": bad value in header field '" + token + "'");
    }
}

}  // namespace

ParsedCode parse_code_text(std::istream &in, const std::string &source_name) {
    ParsedCode out;
    std::string line;
    size_t line_number = 0;
    auto where = [&]() {
        return source_name + ":" + std::to_string(line_number);
    };
    auto next_line = [&](std::string &dst) {
        while (std::getline(in, dst)) {
            line_number++;
            size_t start = dst.find_first_not_of(" \t\r");
            if (start == std::string::npos || dst[start] == '#') {
                continue;
            }
            size_t end = dst.find_last_not_of(" \t\r");
            dst = dst.substr(start, end - start + 1);
            return true;
        }
        return false;
    };

    if (!next_line(line)) {
        throw CodeParseError(source_name + ": empty code file");
    }
    std::istringstream header(line);
    std::string magic, version, tn, tk, td, tm;
    if (!(header >> magic >> version >> tn >> tk >> td >> tm) || magic != "QCODE" || version != "v1") {
        throw CodeParseError(where() + ": expected header 'QCODE v1 n=<n> k=<k> d=<d> m=<m>'");
    }
    out.n = header_field(tn, "n", where());
    out.k = header_field(tk, "k", where());
    out.d = header_field(td, "d", where());
    size_t m = header_field(tm, "m", where());
    if (out.n == 0 || out.k > out.n) {
        throw CodeParseError(where() + ": need n >= 1 and k <= n");
    }
    const size_t cols = 2 * out.n;

    auto read_section = [&](const char *name, size_t count) {
        if (!next_line(line) || line != name) {
            throw CodeParseError(where() + ": expected section '" + name + "'");
        }
        GF2Matrix mat(count, cols);
        for (size_t r = 0; r < count; r++) {
            if (!next_line(line)) {
                throw CodeParseError(
                    where() + ": section " + name + " ended after " + std::to_string(r) + " of " +
                    std::to_string(count) + " rows");
            }
            if (line == "-") {
                continue;
            }
            std::istringstream row(line);
            std::string tok;
            while (row >> tok) {
                size_t used = 0;
                unsigned long long c = 0;
                try {
                    c = std::stoull(tok, &used);
                } catch (const std::logic_error &) {
                    used = 0;
                }
                if (used != tok.size() || tok.empty() || tok[0] == '-' || tok[0] == '+') {
                    throw CodeParseError(where() + ": bad column index '" + tok + "'");
                }
                if (c >= cols) {
                    throw CodeParseError(
                        where() + ": column index " + tok + " out of range for 2n = " + std::to_string(cols));
                }
                if (mat.get(r, c)) {
                    throw CodeParseError(where() + ": repeated column index " + tok);
                }
                mat.set(r, c, true);
            }
        }
        return mat;
    };
    out.check = read_section("H", m);
    out.logicals = read_section("L", 2 * out.k);
    if (next_line(line)) {
        throw CodeParseError(where() + ": unexpected trailing content '" + line + "'");
    }
    return out;
}

ParsedCode parse_code_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw CodeParseError("cannot open code file '" + path + "'");
    }
    return parse_code_text(in, path);
}

void write_code(std::ostream &out, const StabilizerCode &code) {
    out << "QCODE v1 n=" << code.n() << " k=" << code.k() << " d=" << code.d() << " m=" << code.m() << "\n";
    auto write_rows = [&](const GF2Matrix &mat) {
        for (size_t r = 0; r < mat.rows(); r++) {
            auto support = mat.row_support(r);
            if (support.empty()) {
                out << "-\n";
                continue;
            }
            for (size_t t = 0; t < support.size(); t++) {
                out << (t ? " " : "") << support[t];
            }
            out << "\n";
        }
    };
    out << "H\n";
    write_rows(code.check());
    out << "L\n";
    write_rows(code.logicals());
}

void write_code_file(const std::string &path, const StabilizerCode &code) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write code file '" + path + "'");
    }
    write_code(out, code);
}

StabilizerCode load_code(const CodeFileBundle &bundle) {
    ParsedCode parsed = parse_code_file(bundle.path);
    CodeCheckReport report = check_code(parsed.n, parsed.k, parsed.check, parsed.logicals);
    if (!report.ok()) {
        std::string msg = bundle.path + " violates code invariants:";
        for (const auto &f : report.failures) {
            msg += "\n  " + f;
        }
        throw CodeError(msg);
    }
    std::string name = std::filesystem::path(bundle.path).stem().string();
    return StabilizerCode(
        name, parsed.n, parsed.k, parsed.d, std::move(parsed.check), std::move(parsed.logicals), false);
}

}  // namespace qosd
