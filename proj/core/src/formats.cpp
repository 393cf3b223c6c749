#include "randassign/formats.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "randassign/errors.hpp"

namespace randassign::io {
namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::string_view text;
  std::size_t number;  // 1-based
};

// Non-blank lines with comments stripped.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty() || number == 0) {
    ++number;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") != std::string_view::npos) out.push_back({line, number});
    if (eol == std::string_view::npos) break;
  }
  return out;
}

std::vector<Token> tokenize(std::string_view line, std::size_t offset = 0) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && (line[k] == ' ' || line[k] == '\t')) ++k;
    const std::size_t start = k;
    while (k < line.size() && line[k] != ' ' && line[k] != '\t') ++k;
    if (k > start) out.push_back({line.substr(start, k - start), offset + start + 1});
  }
  return out;
}

[[noreturn]] void fail(const Line& line, std::size_t column, const std::string& what) {
  throw ParseError(line.number, column, what);
}

std::size_t parse_count(const Line& line, const Token& tok, const char* what) {
  std::size_t value = 0;
  if (tok.text.empty()) fail(line, tok.column, std::string("expected ") + what);
  for (char c : tok.text) {
    if (c < '0' || c > '9') fail(line, tok.column, std::string("expected ") + what);
    value = value * 10 + static_cast<std::size_t>(c - '0');
    if (value > 1000000) fail(line, tok.column, std::string(what) + " is too large");
  }
  return value;
}

Rational parse_rational_token(const Line& line, const Token& tok) {
  try {
    return parse_rational(tok.text);
  } catch (const ArgumentError& e) {
    fail(line, tok.column, e.what());
  }
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty instance file");

  const Line& header = lines.front();
  auto head = tokenize(header.text);
  if (head.size() != 2 || head[0].text != "n") {
    fail(header, head.empty() ? 1 : head[0].column, "expected 'n <count>' on the first line");
  }
  const std::size_t n = parse_count(header, head[1], "agent count");
  if (n < 2) fail(header, head[1].column, "an instance needs at least two agents");

  std::vector<std::string> names;
  std::map<std::string, Object, std::less<>> index;
  bool fixed_objects = false;
  std::vector<std::optional<std::vector<Object>>> prefs(n);

  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    const auto colon = line.text.find(':');
    if (colon == std::string_view::npos) fail(line, 1, "expected 'objects:' or 'agent <i>:'");
    const auto label = tokenize(line.text.substr(0, colon));
    const auto items = tokenize(line.text.substr(colon + 1), colon + 1);

    if (label.size() == 1 && label[0].text == "objects") {
      if (fixed_objects || !names.empty()) fail(line, label[0].column, "duplicate objects header");
      if (items.size() != n) {
        fail(line, items.empty() ? colon + 2 : items.front().column,
             "expected " + std::to_string(n) + " object names");
      }
      for (const auto& tok : items) {
        if (index.count(tok.text)) fail(line, tok.column, "duplicate object name");
        index.emplace(std::string(tok.text), names.size());
        names.emplace_back(tok.text);
      }
      fixed_objects = true;
      continue;
    }

    if (label.size() != 2 || label[0].text != "agent") {
      fail(line, label.empty() ? 1 : label[0].column, "expected 'agent <i>:'");
    }
    const std::size_t agent = parse_count(line, label[1], "agent number");
    if (agent < 1 || agent > n) fail(line, label[1].column, "agent number out of range");
    if (prefs[agent - 1]) fail(line, label[1].column, "agent listed twice");
    if (items.size() != n) {
      fail(line, items.empty() ? colon + 2 : items.front().column,
           "expected " + std::to_string(n) + " objects in the preference");
    }
    std::vector<Object> pref;
    std::vector<bool> seen(n, false);
    for (const auto& tok : items) {
      auto it = index.find(tok.text);
      if (it == index.end()) {
        if (fixed_objects || names.size() == n) fail(line, tok.column, "unknown object name");
        it = index.emplace(std::string(tok.text), names.size()).first;
        names.emplace_back(tok.text);
      }
      if (seen[it->second]) fail(line, tok.column, "object repeated in a preference");
      seen[it->second] = true;
      pref.push_back(it->second);
    }
    prefs[agent - 1] = std::move(pref);
  }

  std::vector<std::vector<Object>> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!prefs[i]) {
      throw ParseError(lines.back().number + 1, 1,
                       "missing preference for agent " + std::to_string(i + 1));
    }
    out.push_back(std::move(*prefs[i]));
  }
  return Instance(std::move(out), std::move(names));
}

std::string format_instance(const Instance& instance) {
  std::ostringstream os;
  os << "n " << instance.size() << "\nobjects:";
  for (const auto& name : instance.object_names()) os << ' ' << name;
  os << '\n';
  for (Agent i = 0; i < instance.size(); ++i) {
    os << "agent " << i + 1 << ':';
    for (Object o : instance.preference(i)) os << ' ' << instance.object_name(o);
    os << '\n';
  }
  return os.str();
}

Matrix parse_matrix(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty matrix file");
  std::vector<std::vector<Rational>> rows;
  const std::size_t n = tokenize(lines.front().text).size();
  if (lines.size() != n) {
    throw ParseError(lines.back().number, 1,
                     "expected " + std::to_string(n) + " rows for a " + std::to_string(n) +
                         "-column matrix, found " + std::to_string(lines.size()));
  }
  for (const auto& line : lines) {
    const auto toks = tokenize(line.text);
    if (toks.size() != n) {
      fail(line, toks.size() > n ? toks[n].column : line.text.size() + 1,
           "expected " + std::to_string(n) + " entries");
    }
    std::vector<Rational> row;
    for (const auto& tok : toks) row.push_back(parse_rational_token(line, tok));
    rows.push_back(std::move(row));
  }
  return Matrix(rows);
}

std::string format_matrix(const Matrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << to_string(m(i, j));
    os << '\n';
  }
  return os.str();
}

namespace {

DeterministicAssignment assignment_from(const Line& line, const std::vector<Token>& items,
                                        const Instance& instance) {
  const std::size_t n = instance.size();
  if (items.size() != n) {
    fail(line, items.empty() ? 1 : items.front().column,
         "expected " + std::to_string(n) + " object names");
  }
  std::vector<Object> objects;
  std::vector<bool> seen(n, false);
  for (const auto& tok : items) {
    const auto& names = instance.object_names();
    Object o = n;
    for (Object j = 0; j < n; ++j) {
      if (names[j] == tok.text) o = j;
    }
    if (o == n) fail(line, tok.column, "unknown object name");
    if (seen[o]) fail(line, tok.column, "object assigned twice");
    seen[o] = true;
    objects.push_back(o);
  }
  return DeterministicAssignment(std::move(objects));
}

}  // namespace

Lottery parse_lottery(std::string_view text, const Instance& instance) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty lottery file");
  std::vector<Lottery::Entry> entries;
  for (const auto& line : lines) {
    const auto colon = line.text.find(':');
    if (colon == std::string_view::npos) fail(line, 1, "expected 'weight : objects...'");
    const auto weight = tokenize(line.text.substr(0, colon));
    if (weight.size() != 1) fail(line, 1, "expected a single weight before ':'");
    Rational w = parse_rational_token(line, weight[0]);
    if (w < 0) fail(line, weight[0].column, "negative weight");
    entries.emplace_back(
        assignment_from(line, tokenize(line.text.substr(colon + 1), colon + 1), instance),
        std::move(w));
  }
  try {
    return Lottery(std::move(entries));
  } catch (const ArgumentError& e) {
    throw ParseError(lines.front().number, 1, e.what());
  }
}

std::string format_lottery(const Lottery& lottery, const Instance& instance) {
  std::ostringstream os;
  for (const auto& [a, w] : lottery) {
    os << to_string(w) << " : " << format_assignment(a, instance) << '\n';
  }
  return os.str();
}

DeterministicAssignment parse_assignment(std::string_view text, const Instance& instance) {
  const Line line{text, 1};
  return assignment_from(line, tokenize(text), instance);
}

std::string format_assignment(const DeterministicAssignment& a, const Instance& instance) {
  std::string out;
  for (Agent i = 0; i < a.size(); ++i) {
    if (i) out += ' ';
    out += instance.object_name(a[i]);
  }
  return out;
}

bool looks_like_lottery(std::string_view text) {
  for (const auto& line : content_lines(text)) {
    if (line.text.find(':') != std::string_view::npos) return true;
  }
  return false;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace randassign::io
