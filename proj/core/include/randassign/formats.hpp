#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "randassign/types.hpp"

namespace randassign::io {

/// Instance text format ('#' starts a comment, blank lines ignored):
///
///     n 3
///     objects: a b c
///     agent 1: a b c
///     agent 2: b a c
///     agent 3: c a b
///
/// The objects header is optional; without it, objects are indexed in order
/// of first appearance. Throws ParseError with a 1-based line and column.
Instance parse_instance(std::string_view text);
std::string format_instance(const Instance& instance);

/// n lines of n rational tokens ("1/3", "0.4", "1").
Matrix parse_matrix(std::string_view text);
std::string format_matrix(const Matrix& m);

/// Lines "weight : o_sigma(1) ... o_sigma(n)", naming the object each agent
/// receives, in agent order.
Lottery parse_lottery(std::string_view text, const Instance& instance);
std::string format_lottery(const Lottery& lottery, const Instance& instance);

/// One assignment as object names in agent order, e.g. "b a c".
DeterministicAssignment parse_assignment(std::string_view text, const Instance& instance);
std::string format_assignment(const DeterministicAssignment& a, const Instance& instance);

/// Lottery files are recognised by the ':' separating weight and assignment.
bool looks_like_lottery(std::string_view text);

/// Whole-file read; throws ArgumentError when the file cannot be opened.
std::string read_file(const std::string& path);

}  // namespace randassign::io
