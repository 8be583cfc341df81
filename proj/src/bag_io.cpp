#include "gradual/bag_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <iomanip>
#include <istream>
#include <iterator>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace gradual {

std::string ParseDiagnostic::to_string() const {
  return std::to_string(line) + ":" + std::to_string(column) + ": " +
         (severity == Severity::Error ? "error" : "warning") + ": " + message;
}

namespace {

struct Position {
  int line = 1;
  int column = 1;
};

struct Token {
  std::string text;
  Position at;
};

struct EdgeStatement {
  Polarity polarity;
  Token from;
  Token to;
  Position at;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParseResult run() {
    for (;;) {
      skip_blank();
      if (eof()) break;
      if (!statement()) skip_line();
    }
    return finish();
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return eof() ? '\0' : text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++here_.line;
      here_.column = 1;
    } else {
      ++here_.column;
    }
    ++pos_;
  }

  void skip_line() {
    while (!eof() && peek() != '\n') advance();
  }

  void skip_blank() {
    for (;;) {
      while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
      if (peek() == '#' || text_.substr(pos_, 2) == "//") {
        skip_line();
        continue;
      }
      return;
    }
  }

  void error(Position at, std::string message) {
    diagnostics_.push_back({at.line, at.column, std::move(message),
                            ParseDiagnostic::Severity::Error});
  }

  void warning(Position at, std::string message) {
    diagnostics_.push_back({at.line, at.column, std::move(message),
                            ParseDiagnostic::Severity::Warning});
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::optional<Token> identifier(const char* what) {
    skip_blank();
    Token tok{{}, here_};
    if (!ident_start(peek())) {
      error(here_, std::string("expected ") + what + describe_found());
      return std::nullopt;
    }
    while (!eof() && ident_char(peek())) {
      tok.text.push_back(peek());
      advance();
    }
    return tok;
  }

  bool expect(char c) {
    skip_blank();
    if (peek() != c) {
      error(here_, std::string("expected '") + c + "'" + describe_found());
      return false;
    }
    advance();
    return true;
  }

  std::string describe_found() const {
    if (eof()) return " but reached end of input";
    return std::string(" but found '") + peek() + "'";
  }

  std::optional<double> weight() {
    skip_blank();
    const Position at = here_;
    std::string literal;
    while (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.' ||
                      peek() == 'e' || peek() == 'E' || peek() == '+' || peek() == '-')) {
      literal.push_back(peek());
      advance();
    }
    if (literal.empty()) {
      error(at, "expected weight" + describe_found());
      return std::nullopt;
    }
    double value = 0.0;
    const char* first = literal.data();
    const char* last = first + literal.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      error(at, "malformed weight literal '" + literal + "'");
      return std::nullopt;
    }
    if (!(value >= 0.0 && value <= 1.0)) {
      error(at, "weight " + literal + " is outside [0,1]");
      return std::nullopt;
    }
    return value;
  }

  bool statement() {
    const Position start = here_;
    auto keyword = identifier("'arg', 'att' or 'sup'");
    if (!keyword) return false;
    if (keyword->text == "arg") return argument(start);
    if (keyword->text == "att") return edge(start, Polarity::Attack);
    if (keyword->text == "sup") return edge(start, Polarity::Support);
    error(start, "unknown statement '" + keyword->text + "', expected 'arg', 'att' or 'sup'");
    return false;
  }

  bool argument(Position start) {
    if (!expect('(')) return false;
    auto name = identifier("argument name");
    if (!name || !expect(',')) return false;
    auto w = weight();
    if (!w || !expect(')') || !expect('.')) return false;

    if (auto it = declared_.find(name->text); it != declared_.end()) {
      error(name->at, "argument '" + name->text + "' already declared at line " +
                          std::to_string(it->second.line));
      return true;
    }
    declared_.emplace(name->text, start);
    names_.push_back(name->text);
    weights_.push_back(*w);
    return true;
  }

  bool edge(Position start, Polarity polarity) {
    if (!expect('(')) return false;
    auto from = identifier("argument name");
    if (!from || !expect(',')) return false;
    auto to = identifier("argument name");
    if (!to || !expect(')') || !expect('.')) return false;
    edges_.push_back({polarity, std::move(*from), std::move(*to), start});
    return true;
  }

  ParseResult finish() {
    std::unordered_map<std::string, Index> index;
    for (std::size_t i = 0; i < names_.size(); ++i) index.emplace(names_[i], static_cast<Index>(i));

    std::map<Edge, const EdgeStatement*> seen;
    std::vector<Edge> attacks, supports;
    for (const EdgeStatement& e : edges_) {
      const auto from = index.find(e.from.text);
      const auto to = index.find(e.to.text);
      if (from == index.end()) error(e.from.at, "unknown argument '" + e.from.text + "'");
      if (to == index.end()) error(e.to.at, "unknown argument '" + e.to.text + "'");
      if (from == index.end() || to == index.end()) continue;

      const Edge pair{from->second, to->second};
      const auto [it, fresh] = seen.emplace(pair, &e);
      if (!fresh) {
        const EdgeStatement& first = *it->second;
        const std::string link = "(" + e.from.text + "," + e.to.text + ")";
        if (first.polarity != e.polarity) {
          error(e.at, "pair " + link + " is both an attack and a support (first at line " +
                          std::to_string(first.at.line) + ")");
        } else {
          warning(e.at, "duplicate edge " + link + " ignored");
        }
        continue;
      }
      (e.polarity == Polarity::Attack ? attacks : supports).push_back(pair);
    }

    std::stable_sort(diagnostics_.begin(), diagnostics_.end(),
                     [](const ParseDiagnostic& a, const ParseDiagnostic& b) {
                       return std::tie(a.line, a.column) < std::tie(b.line, b.column);
                     });

    ParseResult result;
    const bool failed = std::any_of(diagnostics_.begin(), diagnostics_.end(), [](const auto& d) {
      return d.severity == ParseDiagnostic::Severity::Error;
    });
    if (!failed) {
      StrengthVector w = Eigen::Map<const StrengthVector>(weights_.data(),
                                                          static_cast<Index>(weights_.size()));
      result.bag.emplace(std::move(names_), std::move(w), std::move(attacks), std::move(supports));
    }
    result.diagnostics = std::move(diagnostics_);
    return result;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Position here_;
  std::vector<ParseDiagnostic> diagnostics_;
  std::unordered_map<std::string, Position> declared_;
  std::vector<std::string> names_;
  std::vector<double> weights_;
  std::vector<EdgeStatement> edges_;
};

}  // namespace

ParseResult parse_bag(std::string_view text) { return Parser(text).run(); }

ParseResult parse_bag(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_bag(text);
}

std::string format_weight(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::fixed);
  if (ec != std::errc()) throw std::runtime_error("cannot format weight");
  return std::string(buf.data(), ptr);
}

std::string serialize_bag(const Bag& bag) {
  std::string out;
  for (Index i = 0; i < bag.size(); ++i) {
    out += "arg(" + bag.name(i) + "," + format_weight(bag.weight(i)) + ").\n";
  }
  for (const auto& [from, to] : bag.attacks()) {
    out += "att(" + bag.name(from) + "," + bag.name(to) + ").\n";
  }
  for (const auto& [from, to] : bag.supports()) {
    out += "sup(" + bag.name(from) + "," + bag.name(to) + ").\n";
  }
  return out;
}

void write_trajectory_csv(const Trajectory& trajectory, const std::vector<std::string>& names,
                          std::ostream& sink) {
  if (trajectory.empty()) throw std::invalid_argument("trajectory is empty");
  if (trajectory.times.size() != trajectory.states.size()) {
    throw std::invalid_argument("trajectory times and states differ in length");
  }
  for (const auto& state : trajectory.states) {
    if (state.size() != static_cast<Index>(names.size())) {
      throw std::invalid_argument("trajectory row arity does not match argument count");
    }
  }

  const auto saved = sink.exceptions();
  sink.exceptions(std::ios::badbit | std::ios::failbit);
  std::ostringstream row;
  row << std::setprecision(12);
  sink << 't';
  for (const auto& name : names) sink << ',' << name;
  sink << '\n';
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    row.str({});
    row << trajectory.times[k];
    for (Index i = 0; i < trajectory.states[k].size(); ++i) row << ',' << trajectory.states[k](i);
    row << '\n';
    sink << row.str();
  }
  sink.flush();
  sink.exceptions(saved);
}

}  // namespace gradual
