#include "urysohn/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace urysohn {
namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

// A line with its comment stripped, split on whitespace.
struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      if (j > i) line.tokens.push_back({std::string(raw.substr(i, j - i)), i + 1});
      i = j;
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

Rational rational_at(const Line& line, const Token& t) {
  try {
    return Rational::parse(t.text);
  } catch (const std::exception& e) {
    throw ParseError(line.number, t.column, "expected a rational, got '" + t.text + "'");
  }
}

std::size_t index_at(const Line& line, const Token& t) {
  if (t.text.empty() || t.text.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(line.number, t.column, "expected a non-negative integer, got '" + t.text + "'");
  try {
    return std::stoull(t.text);
  } catch (const std::exception&) {
    throw ParseError(line.number, t.column, "integer out of range: '" + t.text + "'");
  }
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

bool default_labelled(const std::vector<std::string>& labels) { return labels == default_labels(labels.size()); }

}  // namespace

UmsData parse_ums_data(std::string_view text) {
  auto lines = tokenize(text);
  UmsData d;
  std::size_t at = 0;
  if (at < lines.size() && lines[at].tokens.size() == 1 && lines[at].tokens[0].text == "squared") {
    d.squared = true;
    ++at;
  }
  if (at == lines.size()) throw ParseError(lines.empty() ? 1 : lines.back().number + 1, 1, "missing point count");
  const Line& head = lines[at++];
  if (head.tokens.size() != 1) throw ParseError(head.number, head.tokens[1].column, "expected the point count alone");
  const std::size_t n = index_at(head, head.tokens[0]);
  if (n == 0) throw ParseError(head.number, head.tokens[0].column, "a space needs at least one point");

  if (at < lines.size() && lines[at].tokens[0].text == "labels:") {
    const Line& l = lines[at++];
    if (l.tokens.size() != n + 1)
      throw ParseError(l.number, l.tokens.back().column,
                       "expected " + std::to_string(n) + " labels, got " + std::to_string(l.tokens.size() - 1));
    for (std::size_t i = 1; i < l.tokens.size(); ++i) d.labels.push_back(l.tokens[i].text);
  }

  d.matrix = DistanceMatrix<Rational>::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (at == lines.size())
      throw ParseError(lines.back().number + 1, 1, "missing row " + std::to_string(i) + " of the distance matrix");
    const Line& row = lines[at++];
    const std::size_t want = n - 1 - i;
    if (row.tokens.size() != want)
      throw ParseError(row.number, row.tokens.size() > want ? row.tokens[want].column : row.tokens.back().column,
                       "row " + std::to_string(i) + " needs " + std::to_string(want) + " entries, got " +
                           std::to_string(row.tokens.size()));
    for (std::size_t k = 0; k < want; ++k) {
      auto v = rational_at(row, row.tokens[k]);
      const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(i + 1 + k);
      d.matrix(a, b) = d.matrix(b, a) = v;
    }
  }
  if (at < lines.size()) throw ParseError(lines[at].number, lines[at].tokens[0].column, "unexpected trailing data");
  return d;
}

MetricSpace parse_ums(std::string_view text, bool validate) {
  auto d = parse_ums_data(text);
  if (d.squared) throw std::invalid_argument("squared-distance file where a metric space was expected");
  if (!validate) return MetricSpace::trusted(std::move(d.matrix), std::move(d.labels));
  return MetricSpace(std::move(d.matrix), std::move(d.labels));
}

std::string format_ums(const UmsData& data) {
  std::ostringstream os;
  const auto n = static_cast<std::size_t>(data.matrix.rows());
  if (data.squared) os << "squared\n";
  os << n << "\n";
  if (!data.labels.empty() && !default_labelled(data.labels)) {
    os << "labels:";
    for (const auto& l : data.labels) os << ' ' << l;
    os << "\n";
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j)
      os << (j > i + 1 ? " " : "")
         << data.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).str();
    os << "\n";
  }
  return os.str();
}

std::string format_ums(const MetricSpace& X) { return format_ums(UmsData{false, X.distances(), X.labels()}); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

MetricSpace read_space(const std::filesystem::path& path, bool validate) {
  try {
    return parse_ums(read_file(path), validate);
  } catch (const ParseError& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

std::vector<PermutationIsometry> parse_permutations(std::string_view text) {
  std::vector<PermutationIsometry> out;
  for (const auto& line : tokenize(text)) {
    PermutationIsometry p;
    for (const auto& t : line.tokens) p.images.push_back(index_at(line, t));
    if (!is_permutation(p.images)) throw ParseError(line.number, 1, "line is not a permutation of 0..n-1");
    if (!out.empty() && out.front().size() != p.size())
      throw ParseError(line.number, 1, "permutations of different degree");
    out.push_back(std::move(p));
  }
  return out;
}

std::string format_permutations(const std::vector<PermutationIsometry>& perms) {
  std::ostringstream os;
  for (const auto& p : perms) {
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p.images[i];
    os << "\n";
  }
  return os.str();
}

std::vector<std::vector<std::pair<std::size_t, std::size_t>>> parse_partial_isometries(std::string_view text) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;
  std::size_t number = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::vector<bool> seen;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    if (trim(raw).empty()) continue;
    auto colon = raw.find(':');
    if (colon == std::string::npos) throw ParseError(number, 1, "expected 'k: i->j, ...'");
    std::string head = trim(std::string_view(raw).substr(0, colon));
    Line hl{number, {{head, 1}}};
    std::size_t k = index_at(hl, hl.tokens[0]);
    if (k >= out.size()) {
      out.resize(k + 1);
      seen.resize(k + 1, false);
    }
    if (seen[k]) throw ParseError(number, 1, "generator " + std::to_string(k) + " listed twice");
    seen[k] = true;
    std::string body = raw.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t comma = body.find(',', pos);
      if (comma == std::string::npos) comma = body.size();
      std::string pair = trim(std::string_view(body).substr(pos, comma - pos));
      const std::size_t column = colon + 2 + pos;
      if (!pair.empty()) {
        std::size_t arrow = pair.find("->"), width = 2;
        if (arrow == std::string::npos) {
          arrow = pair.find("→");
          width = std::string("→").size();
        }
        if (arrow == std::string::npos) throw ParseError(number, column, "expected 'i->j', got '" + pair + "'");
        Line pl{number, {{trim(pair.substr(0, arrow)), column}, {trim(pair.substr(arrow + width)), column}}};
        out[k].emplace_back(index_at(pl, pl.tokens[0]), index_at(pl, pl.tokens[1]));
      } else if (comma != body.size()) {
        throw ParseError(number, column, "empty pair");
      }
      pos = comma + 1;
    }
  }
  return out;
}

std::string format_partial_isometries(const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& gens) {
  std::ostringstream os;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    os << k << ":";
    for (std::size_t i = 0; i < gens[k].size(); ++i)
      os << (i ? ", " : " ") << gens[k][i].first << "→" << gens[k][i].second;
    os << "\n";
  }
  return os.str();
}

StepFunction parse_step_function(std::string_view text, const std::vector<std::string>& labels) {
  std::map<std::string, std::size_t> by_label;
  for (std::size_t i = 0; i < labels.size(); ++i) by_label.emplace(labels[i], i);
  std::vector<Rational> b;
  std::vector<std::size_t> v;
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, 1, "empty step function");
  for (const auto& line : lines) {
    if (line.tokens.size() != 3) throw ParseError(line.number, 1, "expected 't_i t_{i+1} value_label'");
    auto from = rational_at(line, line.tokens[0]), to = rational_at(line, line.tokens[1]);
    if (b.empty()) {
      if (from != Rational(0)) throw ParseError(line.number, line.tokens[0].column, "first interval must start at 0");
      b.push_back(from);
    } else if (from != b.back()) {
      throw ParseError(line.number, line.tokens[0].column, "interval does not start where the previous one ended");
    }
    if (!(from < to)) throw ParseError(line.number, line.tokens[1].column, "empty or reversed interval");
    b.push_back(to);
    const auto& label = line.tokens[2];
    if (auto it = by_label.find(label.text); it != by_label.end()) {
      v.push_back(it->second);
    } else {
      auto idx = index_at(line, label);
      if (idx >= labels.size()) throw ParseError(line.number, label.column, "unknown value '" + label.text + "'");
      v.push_back(idx);
    }
  }
  if (b.back() != Rational(1)) throw ParseError(lines.back().number, lines.back().tokens[1].column, "last interval must end at 1");
  return StepFunction(std::move(b), std::move(v));
}

std::string format_step_function(const StepFunction& f, const std::vector<std::string>& labels) {
  std::ostringstream os;
  for (std::size_t i = 0; i < f.pieces(); ++i)
    os << f.breakpoints[i].str() << ' ' << f.breakpoints[i + 1].str() << ' '
       << (f.values[i] < labels.size() ? labels[f.values[i]] : std::to_string(f.values[i])) << "\n";
  return os.str();
}

RamseyMode parse_ramsey_mode(std::string_view s) {
  if (s == "embeddings") return RamseyMode::embeddings;
  if (s == "subspaces") return RamseyMode::subspaces;
  throw std::invalid_argument("unknown mode '" + std::string(s) + "' (embeddings or subspaces)");
}

std::string to_string(RamseyMode mode) { return mode == RamseyMode::embeddings ? "embeddings" : "subspaces"; }

PropertyTuple parse_property_tuple(std::string_view text, const std::filesystem::path& base) {
  PropertyTuple t;
  std::map<std::string, bool> got;
  std::size_t number = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    if (trim(raw).empty()) continue;
    auto eq = raw.find('=');
    if (eq == std::string::npos) throw ParseError(number, 1, "expected 'key = value'");
    std::string key = trim(std::string_view(raw).substr(0, eq)), value = trim(std::string_view(raw).substr(eq + 1));
    if (got[key]) throw ParseError(number, 1, "duplicate key '" + key + "'");
    got[key] = true;
    try {
      if (key == "F") t.F = base / value;
      else if (key == "G") t.G = base / value;
      else if (key == "X") t.X = base / value;
      else if (key == "m") t.m = std::stoull(value);
      else if (key == "epsilon") t.epsilon = Rational::parse(value);
      else if (key == "mode") t.mode = parse_ramsey_mode(value);
      else throw ParseError(number, 1, "unknown key '" + key + "'");
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(number, eq + 2, "bad value for '" + key + "': " + e.what());
    }
  }
  for (const char* k : {"F", "G", "X"})
    if (!got[k]) throw ParseError(number + 1, 1, std::string("missing key '") + k + "'");
  return t;
}

std::vector<std::size_t> parse_index_list(std::string_view s) {
  std::string text(s);
  for (auto& c : text)
    if (c == ',') c = ' ';
  std::vector<std::size_t> out;
  for (const auto& line : tokenize(text))
    for (const auto& t : line.tokens) out.push_back(index_at(line, t));
  return out;
}

}  // namespace urysohn
