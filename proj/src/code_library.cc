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

#include "qosd/code_library.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <list>
#include <sstream>

#include "qosd/code_io.h"

namespace qosd {

extern const char *const kBundledBbPresets;

namespace {

uint32_t parse_uint(std::string_view text, std::string_view context) {
    uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("bad integer '" + std::string(text) + "' in " + std::string(context));
    }
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

std::vector<Monomial> parse_bb_polynomial(std::string_view text) {
    std::vector<Monomial> out;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('+', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view term = trim(text.substr(start, end - start));
        if (term.empty()) {
            throw std::invalid_argument("empty term in polynomial '" + std::string(text) + "'");
        }
        Monomial mono;
        if (term != "1") {
            // Factors like x, x^3, y^2, or xy^2 / x^2y.
            size_t k = 0;
            while (k < term.size()) {
                char var = term[k++];
                if (var != 'x' && var != 'y') {
                    throw std::invalid_argument("bad term '" + std::string(term) + "' in polynomial");
                }
                uint32_t exp = 1;
                if (k < term.size() && term[k] == '^') {
                    size_t digits = ++k;
                    while (k < term.size() && std::isdigit(static_cast<unsigned char>(term[k]))) {
                        k++;
                    }
                    exp = parse_uint(term.substr(digits, k - digits), "polynomial exponent");
                }
                (var == 'x' ? mono.x_exp : mono.y_exp) += exp;
            }
        }
        out.push_back(mono);
        start = end + 1;
    }
    return out;
}

std::string format_bb_polynomial(const std::vector<Monomial> &poly) {
    std::string out;
    for (const auto &mono : poly) {
        if (!out.empty()) {
            out += '+';
        }
        if (mono.x_exp == 0 && mono.y_exp == 0) {
            out += '1';
            continue;
        }
        auto factor = [&](char var, uint32_t exp) {
            if (exp == 0) {
                return;
            }
            out += var;
            if (exp != 1) {
                out += '^' + std::to_string(exp);
            }
        };
        factor('x', mono.x_exp);
        factor('y', mono.y_exp);
    }
    return out;
}

std::vector<BivariateBicycleParams> parse_bb_presets(std::string_view text) {
    std::vector<BivariateBicycleParams> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream fields(line);
        BivariateBicycleParams p;
        std::string a, b;
        if (!(fields >> p.name)) {
            continue;
        }
        if (!(fields >> p.l >> p.m >> p.d >> a >> b)) {
            throw std::invalid_argument("malformed bivariate bicycle preset line: " + line);
        }
        p.a = parse_bb_polynomial(a);
        p.b = parse_bb_polynomial(b);
        out.push_back(std::move(p));
    }
    return out;
}

const std::vector<BivariateBicycleParams> &bivariate_bicycle_presets() {
    static const std::vector<BivariateBicycleParams> presets = parse_bb_presets(kBundledBbPresets);
    return presets;
}

const BivariateBicycleParams &bivariate_bicycle_preset(std::string_view name) {
    for (const auto &p : bivariate_bicycle_presets()) {
        if (p.name == name) {
            return p;
        }
    }
    std::string known;
    for (const auto &p : bivariate_bicycle_presets()) {
        known += " " + p.name;
    }
    throw std::invalid_argument("unknown bivariate bicycle preset '" + std::string(name) + "'; known:" + known);
}

CodeSpec CodeSpec::parse(std::string_view text) {
    CodeSpec spec;
    auto colon = text.find(':');
    std::string_view family = text.substr(0, colon);
    std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    if (family == "surface" || family == "toric") {
        spec.family = family == "surface" ? CodeFamily::kRotatedSurface : CodeFamily::kRotatedToric;
        if (!arg.empty()) {
            spec.distance = parse_uint(arg, "code distance");
        }
    } else if (family == "bb") {
        spec.family = CodeFamily::kBivariateBicycle;
        spec.preset = std::string(arg);
        bivariate_bicycle_preset(spec.preset);
    } else if (family == "file") {
        spec.family = CodeFamily::kFromFile;
        spec.path = std::string(arg);
        if (spec.path.empty()) {
            throw std::invalid_argument("file code spec needs a path: file:<path>");
        }
    } else {
        throw std::invalid_argument(
            "unknown code family '" + std::string(family) + "' (expected surface, toric, bb, or file)");
    }
    return spec;
}

std::string CodeSpec::str() const {
    switch (family) {
        case CodeFamily::kRotatedSurface:
            return "surface:" + std::to_string(distance);
        case CodeFamily::kRotatedToric:
            return "toric:" + std::to_string(distance);
        case CodeFamily::kBivariateBicycle:
            return "bb:" + preset;
        case CodeFamily::kFromFile:
            return "file:" + path;
    }
    return "?";
}

StabilizerCode build_rotated_surface(size_t d) {
    if (d < 3 || d % 2 == 0) {
        throw std::invalid_argument("rotated surface code needs odd d >= 3, got " + std::to_string(d));
    }
    const size_t n = d * d;
    auto qubit = [d](long r, long c) {
        return static_cast<uint32_t>(r * static_cast<long>(d) + c);
    };
    const long D = static_cast<long>(d);
    std::vector<BitVec> rows;
    // Plaquette anchored at (r, c) touches (r..r+1, c..c+1), clipped to the lattice.
    for (long r = -1; r < D; r++) {
        for (long c = -1; c < D; c++) {
            bool is_x = ((r + c) % 2 + 2) % 2 == 0;
            bool top_or_bottom = r == -1 || r == D - 1;
            bool left_or_right = c == -1 || c == D - 1;
            if (top_or_bottom && left_or_right) {
                continue;
            }
            if (top_or_bottom && !is_x) {
                continue;
            }
            if (left_or_right && is_x) {
                continue;
            }
            BitVec row(2 * n);
            for (long dr = 0; dr <= 1; dr++) {
                for (long dc = 0; dc <= 1; dc++) {
                    long rr = r + dr, cc = c + dc;
                    if (rr < 0 || rr >= D || cc < 0 || cc >= D) {
                        continue;
                    }
                    row.set(qubit(rr, cc) + (is_x ? 0 : n), true);
                }
            }
            rows.push_back(std::move(row));
        }
    }
    GF2Matrix logicals(2, 2 * n);
    for (long t = 0; t < D; t++) {
        logicals.set(0, qubit(t, 0), true);      // X along the left column
        logicals.set(1, n + qubit(0, t), true);  // Z along the top row
    }
    return StabilizerCode(
        "rotated_surface_d" + std::to_string(d), n, 1, d, GF2Matrix::from_rows(2 * n, rows), std::move(logicals));
}

StabilizerCode build_rotated_toric(size_t d) {
    if (d < 2 || d % 2 != 0) {
        throw std::invalid_argument("rotated toric code needs even d >= 2, got " + std::to_string(d));
    }
    const size_t n = d * d;
    std::vector<BitVec> rows;
    for (size_t r = 0; r < d; r++) {
        for (size_t c = 0; c < d; c++) {
            bool is_x = (r + c) % 2 == 0;
            BitVec row(2 * n);
            for (size_t dr = 0; dr <= 1; dr++) {
                for (size_t dc = 0; dc <= 1; dc++) {
                    size_t q = ((r + dr) % d) * d + (c + dc) % d;
                    row.flip(q + (is_x ? 0 : n));
                }
            }
            rows.push_back(std::move(row));
        }
    }
    // The last plaquette is a Z check and equals the sum of the other Z checks.
    rows.pop_back();
    GF2Matrix check = GF2Matrix::from_rows(2 * n, rows);
    GF2Matrix logicals = complete_logicals(n, check);
    return StabilizerCode("rotated_toric_d" + std::to_string(d), n, 2, d, std::move(check), std::move(logicals));
}

StabilizerCode build_bivariate_bicycle(const BivariateBicycleParams &params) {
    const size_t l = params.l;
    const size_t m = params.m;
    if (l == 0 || m == 0) {
        throw std::invalid_argument("bivariate bicycle cycle sizes must be positive");
    }
    if (params.a.size() != 3 || params.b.size() != 3) {
        throw std::invalid_argument("bivariate bicycle polynomials must have exactly 3 terms each");
    }
    const size_t half = l * m;
    const size_t n = 2 * half;
    // Entry (row, col) of x^a y^b: row = ((i + a) mod l, (j + b) mod m), col = (i, j).
    auto group_matrix = [&](const std::vector<Monomial> &poly) {
        GF2Matrix out(half, half);
        for (const auto &mono : poly) {
            for (size_t i = 0; i < l; i++) {
                for (size_t j = 0; j < m; j++) {
                    size_t row = ((i + mono.x_exp) % l) * m + (j + mono.y_exp) % m;
                    out.flip(row, i * m + j);
                }
            }
        }
        return out;
    };
    GF2Matrix a = group_matrix(params.a);
    GF2Matrix b = group_matrix(params.b);
    GF2Matrix at = a.transpose();
    GF2Matrix bt = b.transpose();

    GF2Matrix check(2 * half, 2 * n);
    for (size_t r = 0; r < half; r++) {
        for (size_t c = 0; c < half; c++) {
            // X checks: [A | B | 0 | 0]
            if (a.get(r, c)) check.set(r, c, true);
            if (b.get(r, c)) check.set(r, half + c, true);
            // Z checks: [0 | 0 | B^T | A^T]
            if (bt.get(r, c)) check.set(half + r, n + c, true);
            if (at.get(r, c)) check.set(half + r, n + half + c, true);
        }
    }
    size_t rank = check.rank();
    if (rank >= n) {
        throw CodeError("bivariate bicycle polynomials give k = 0");
    }
    size_t k = n - rank;
    GF2Matrix logicals = complete_logicals(n, check);
    std::string name = params.name.empty() ? "bb_l" + std::to_string(l) + "_m" + std::to_string(m) : "bb_" + params.name;
    return StabilizerCode(name, n, k, params.d, std::move(check), std::move(logicals), params.d > 0);
}

GF2Matrix complete_logicals(size_t n, const GF2Matrix &check) {
    GF2Matrix twisted(check.rows(), check.cols());
    for (size_t r = 0; r < check.rows(); r++) {
        for_each_set_bit(check.row(r), [&](size_t c) {
            twisted.set(r, c < n ? c + n : c - n, true);
        });
    }
    std::list<BitVec> remaining;
    for (auto &v : nullspace_basis(twisted)) {
        remaining.push_back(std::move(v));
    }
    auto sp = [](const BitVec &a, const BitVec &b) {
        return symplectic_product(a, b);
    };
    std::vector<BitVec> xs, zs;
    while (!remaining.empty()) {
        BitVec v = std::move(remaining.front());
        remaining.pop_front();
        auto partner = std::find_if(remaining.begin(), remaining.end(), [&](const BitVec &u) {
            return sp(v, u);
        });
        if (partner == remaining.end()) {
            continue;  // v commutes with the whole normalizer: it is a stabilizer
        }
        BitVec w = std::move(*partner);
        remaining.erase(partner);
        for (auto &u : remaining) {
            bool with_w = sp(u, w);
            bool with_v = sp(u, v);
            if (with_w) u ^= v;
            if (with_v) u ^= w;
        }
        xs.push_back(std::move(v));
        zs.push_back(std::move(w));
    }
    std::vector<BitVec> rows = xs;
    rows.insert(rows.end(), zs.begin(), zs.end());
    return GF2Matrix::from_rows(2 * n, rows);
}

StabilizerCode build_code(const CodeSpec &spec) {
    switch (spec.family) {
        case CodeFamily::kRotatedSurface:
            return build_rotated_surface(spec.distance);
        case CodeFamily::kRotatedToric:
            return build_rotated_toric(spec.distance);
        case CodeFamily::kBivariateBicycle:
            return build_bivariate_bicycle(bivariate_bicycle_preset(spec.preset));
        case CodeFamily::kFromFile:
            return load_code(CodeFileBundle{spec.path}).with_distance_trust(spec.trust_distance);
    }
    throw std::invalid_argument("unhandled code family");
}

}  // namespace qosd
