/*
   Copyright 2026 The qdesign Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef QDESIGN_IO_HPP
#define QDESIGN_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "qdesign/design.hpp"

namespace qdesign {

/*
 * Text formats. '#' starts a comment; blank lines are ignored.
 *
 *   design q=5 v=6 k=3 t=2 lambda=78
 *   3221 728 155
 *   ...
 *
 *   largeset q=5 v=6 k=3 t=2 N=2
 *   1 3221 728 155
 *   2 ...
 *
 * Each block is its canonical matrix, one q-adic row code per row, leftmost entry most
 * significant; large-set lines start with the part index 1..N. lambda is optional for designs.
 */

class ParseError : public Error {
   public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

   private:
    int line_;
};

enum class FileKind { Design, LargeSet };

struct DesignFile {
    FileKind kind = FileKind::Design;
    /// Set for designs; lambda is deduced from the block count when the header omits it.
    SubspaceDesign design;
    bool lambda_given = false;
    /// Set for large sets.
    LargeSet large_set;
};

void write_design(std::ostream& out, const SubspaceDesign& d);
void write_large_set(std::ostream& out, const LargeSet& ls);
DesignFile read_design_file(std::istream& in);

void save_design(const std::string& path, const SubspaceDesign& d);
void save_large_set(const std::string& path, const LargeSet& ls);
DesignFile load_design_file(const std::string& path);

/// |B| [k, t]_q / [v, t]_q when integral.
std::optional<BigCount> implied_lambda(const BlockSet& blocks, int t);

/// One JSON object describing a verification result.
nlohmann::json report_json(const VerifyReport& r);

}  // namespace qdesign

#endif  // QDESIGN_IO_HPP
