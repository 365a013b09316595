#include "urysohn/metric_space.hpp"

namespace urysohn {

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::not_square: return "not_square";
    case Violation::Kind::negative: return "negative";
    case Violation::Kind::asymmetric: return "asymmetric";
    case Violation::Kind::nonzero_diagonal: return "nonzero_diagonal";
    case Violation::Kind::zero_distance: return "zero_distance";
    case Violation::Kind::triangle: return "triangle";
  }
  return "unknown";
}

namespace {

std::string summarize(const std::vector<Violation>& violations) {
  std::string msg = "not a metric: " + std::to_string(violations.size()) + " violation(s)";
  if (!violations.empty()) msg += "; first: " + violations.front().message;
  return msg;
}

}  // namespace

MetricError::MetricError(std::vector<Violation> violations)
    : std::invalid_argument(summarize(violations)), violations_(std::move(violations)) {}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

}  // namespace urysohn
