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

#ifndef QOSD_CODE_IO_H
#define QOSD_CODE_IO_H

#include <iosfwd>
#include <string>

#include "qosd/stabilizer_code.h"

namespace qosd {

/// Location of a QCODE v1 file. The check and logical matrices share one file.
struct CodeFileBundle {
    std::string path;
};

struct CodeParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raw contents of a QCODE v1 file before any structural checks.
struct ParsedCode {
    size_t n = 0;
    size_t k = 0;
    size_t d = 0;
    GF2Matrix check;
    GF2Matrix logicals;
};

/// Format:
///
///     QCODE v1 n=<n> k=<k> d=<d> m=<m>
///     H
///     <set column indices of row 0>
///     ...
///     L
///     <rows X_1..X_k, Z_1..Z_k>
///
/// Columns 0..n-1 are the X part and n..2n-1 the Z part. Blank lines and lines
/// starting with '#' are ignored; an empty row is written as '-'.
ParsedCode parse_code_text(std::istream &in, const std::string &source_name = "<input>");
ParsedCode parse_code_file(const std::string &path);

void write_code(std::ostream &out, const StabilizerCode &code);
void write_code_file(const std::string &path, const StabilizerCode &code);

/// Parses and verifies every code invariant. Throws CodeParseError or
/// CodeError (listing all failures). Distances read from files are not trusted.
StabilizerCode load_code(const CodeFileBundle &bundle);

}  // namespace qosd

#endif
