#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "urysohn/concentration.hpp"
#include "urysohn/embedding.hpp"
#include "urysohn/metric_space.hpp"
#include "urysohn/ramsey.hpp"

namespace urysohn {

/// Syntax error in an input file; line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  std::size_t line, column;
};

/// Contents of a ".ums" file before validation.
///
///     # comment
///     squared          (optional: entries are squared distances)
///     3
///     labels: a b c    (optional)
///     1 2              d(0,1) d(0,2)
///     1                d(1,2)
struct UmsData {
  bool squared = false;
  DistanceMatrix<Rational> matrix;
  std::vector<std::string> labels;
};

UmsData parse_ums_data(std::string_view text);
/// Validates unless `validate` is false (the space is then trusted as is).
/// A squared file is refused: its entries are not distances.
MetricSpace parse_ums(std::string_view text, bool validate = true);
/// Writes labels only when they differ from 0..n-1.
std::string format_ums(const MetricSpace& X);
std::string format_ums(const UmsData& data);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);
MetricSpace read_space(const std::filesystem::path& path, bool validate = true);

/// One permutation per line, space-separated images.
std::vector<PermutationIsometry> parse_permutations(std::string_view text);
std::string format_permutations(const std::vector<PermutationIsometry>& perms);

/// Partial isometry lines `k: i→j, i→j, ...` (also `->`); generators without a
/// line stay empty. Returns the pairs of generators 0..max k.
std::vector<std::vector<std::pair<std::size_t, std::size_t>>> parse_partial_isometries(std::string_view text);
std::string format_partial_isometries(const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& gens);

/// Lines `t_i t_{i+1} value_label`, contiguous from 0 to 1. Labels are looked
/// up in `labels`; a plain index is accepted when no label matches.
StepFunction parse_step_function(std::string_view text, const std::vector<std::string>& labels);
std::string format_step_function(const StepFunction& f, const std::vector<std::string>& labels);

/// Ramsey property tuple, `key = value` lines with keys F, G, X (paths
/// relative to the tuple file), m, epsilon and mode.
struct PropertyTuple {
  std::filesystem::path F, G, X;
  std::size_t m = 2;
  Rational epsilon;
  RamseyMode mode = RamseyMode::embeddings;
};
PropertyTuple parse_property_tuple(std::string_view text, const std::filesystem::path& base = {});

/// "embeddings" or "subspaces".
RamseyMode parse_ramsey_mode(std::string_view s);
std::string to_string(RamseyMode mode);

/// Comma- or space-separated point indices.
std::vector<std::size_t> parse_index_list(std::string_view s);

}  // namespace urysohn
