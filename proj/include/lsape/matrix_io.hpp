#ifndef LSAPE_MATRIX_IO_HPP_
#define LSAPE_MATRIX_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "lsape/core.hpp"

namespace lsape {

// Matrix text format:
//   n m
//   <n+1 lines of m+1 numbers separated by single spaces>
// Numbers use '.' as decimal point; scientific notation is accepted on input.
// Output uses 17 significant digits so values round-trip exactly.
//
// Assignment text format:
//   n m
//   t_1 ... t_n      (t_i in 1..m, or 0 for a deleted source)
// Insertions are implied by the targets not listed.
//
// Readers throw Error(kParse) on malformed input.

EpsMatrix read_matrix(std::istream& in, Role role = Role::kSimilarity);
void write_matrix(std::ostream& out, const EpsMatrix& s);
std::string format_matrix(const EpsMatrix& s);

EpsAssignment read_assignment(std::istream& in);
void write_assignment(std::ostream& out, const EpsAssignment& a);
std::string format_assignment(const EpsAssignment& a);

EpsMatrix load_matrix(const std::filesystem::path& path,
                      Role role = Role::kSimilarity);
EpsAssignment load_assignment(const std::filesystem::path& path);

// Writes the whole file or throws; the target is only created once the
// content has been fully formatted.
void save_text(const std::filesystem::path& path, const std::string& content);

}  // namespace lsape

#endif  // LSAPE_MATRIX_IO_HPP_
