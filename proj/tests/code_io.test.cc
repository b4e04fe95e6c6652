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

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "qosd/code_library.h"

namespace qosd {

namespace {

std::string data_path(const std::string &name) {
    return std::string(QOSD_TEST_DATA_DIR) + "/" + name;
}

ParsedCode parse(const std::string &text) {
    std::istringstream in(text);
    return parse_code_text(in, "mem");
}

}  // namespace

TEST(code_io, round_trip_is_exact) {
    for (const StabilizerCode &code :
         {build_rotated_surface(3), build_rotated_toric(4), build_bivariate_bicycle(bivariate_bicycle_preset("72-12-6"))}) {
        std::ostringstream out;
        write_code(out, code);
        ParsedCode parsed = parse(out.str());
        EXPECT_EQ(parsed.n, code.n());
        EXPECT_EQ(parsed.k, code.k());
        EXPECT_EQ(parsed.d, code.d());
        EXPECT_EQ(parsed.check, code.check());
        EXPECT_EQ(parsed.logicals, code.logicals());
    }
}

TEST(code_io, load_from_file) {
    auto path = std::filesystem::temp_directory_path() / "qosd_code_io_test.qcode";
    StabilizerCode code = build_rotated_surface(3);
    write_code_file(path.string(), code);
    StabilizerCode loaded = load_code({path.string()});
    std::filesystem::remove(path);
    EXPECT_EQ(loaded.check(), code.check());
    EXPECT_EQ(loaded.logicals(), code.logicals());
    EXPECT_EQ(loaded.name(), "qosd_code_io_test");
    // Distances read from files are not trusted unless asked.
    EXPECT_FALSE(loaded.distance_trusted());
}

TEST(code_io, anticommuting_rows_are_rejected) {
    try {
        load_code({data_path("surface3_anticommuting.qcode")});
        FAIL() << "expected CodeError";
    } catch (const CodeError &e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("stabilizer rows 1 and 5 anticommute"), std::string::npos) << msg;
    }
}

TEST(code_io, parse_errors_name_the_line) {
    auto message = [](const std::string &text) {
        try {
            parse(text);
        } catch (const CodeParseError &e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_EQ(message(""), "mem: empty code file");
    EXPECT_NE(message("QCODE v2 n=1 k=0 d=1 m=0\n").find("mem:1"), std::string::npos);
    EXPECT_NE(message("QCODE v1 n=2 k=0 d=1 m=1\nH\n0 9\nL\n").find("out of range"), std::string::npos);
    EXPECT_NE(message("QCODE v1 n=2 k=0 d=1 m=1\nH\n0 0\nL\n").find("repeated"), std::string::npos);
    EXPECT_NE(message("QCODE v1 n=2 k=0 d=1 m=2\nH\n0\n").find("ended after 1 of 2"), std::string::npos);
    EXPECT_NE(message("QCODE v1 n=2 k=0 d=1 m=1\nH\n0 x\nL\n").find("mem:3"), std::string::npos);
    EXPECT_NE(message("QCODE v1 n=2 k=0 d=1 m=1\nH\n-\nL\nextra\n").find("trailing"), std::string::npos);
}

TEST(code_io, comments_and_empty_rows) {
    ParsedCode p = parse("# comment\nQCODE v1 n=2 k=0 d=1 m=2\n\nH\n-\n0 3\nL\n");
    EXPECT_EQ(p.check.row_weight(0), 0u);
    EXPECT_TRUE(p.check.get(1, 3));
}

}  // namespace qosd
