// Text format for Monge patches:
//
//   # comment
//   name    D1_23
//   ambient euclidean | minkowski
//   graph   z | y
//   order   7
//   coeff   i j p/q          (one line per monomial x^i y^j, or x^i z^j)
//
// Keywords may appear in any order; ambient, graph and at least one coeff
// are required. Coefficients must be exact rationals.
#pragma once

#include "umbilic/surface.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>

namespace umbilic {

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_, column_;
};

namespace detail {

struct Token {
  std::string text;
  int column;  // 1-based
};

inline std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

inline int parse_int(const Token& t, int line, const char* what) {
  if (!is_integer_literal(t.text) || t.text.size() > 9) throw ParseError(line, t.column, std::string("expected ") + what);
  return std::stoi(t.text);
}

}  // namespace detail

inline MongePatch parse_surface_spec(std::istream& in) {
  std::optional<Ambient> ambient;
  std::optional<GraphAxis> axis;
  int order = kDefaultOrder;
  std::string name;
  JetPoly f(JetPoly::kExact);
  std::set<std::pair<int, int>> seen;
  struct Pending {
    int i, j, line, column;
  };
  std::vector<Pending> degrees;
  std::string text;
  int lineno = 0, last_line = 0;
  while (std::getline(in, text)) {
    ++lineno;
    auto toks = detail::tokenize(text);
    if (toks.empty()) continue;
    last_line = lineno;
    const std::string& kw = toks[0].text;
    auto arity = [&](std::size_t n) {
      if (toks.size() < n + 1) throw ParseError(lineno, static_cast<int>(text.size()) + 1, "'" + kw + "' needs " + std::to_string(n) + " value(s)");
      if (toks.size() > n + 1) throw ParseError(lineno, toks[n + 1].column, "unexpected '" + toks[n + 1].text + "'");
    };
    if (kw == "name") {
      arity(1);
      name = toks[1].text;
    } else if (kw == "ambient") {
      arity(1);
      if (toks[1].text == "euclidean") ambient = Ambient::Euclidean;
      else if (toks[1].text == "minkowski") ambient = Ambient::Minkowski;
      else throw ParseError(lineno, toks[1].column, "ambient must be 'euclidean' or 'minkowski'");
    } else if (kw == "graph") {
      arity(1);
      if (toks[1].text == "z") axis = GraphAxis::Z;
      else if (toks[1].text == "y") axis = GraphAxis::Y;
      else throw ParseError(lineno, toks[1].column, "graph must be 'z' or 'y'");
    } else if (kw == "order") {
      arity(1);
      order = detail::parse_int(toks[1], lineno, "an integer order");
      if (order < 2) throw ParseError(lineno, toks[1].column, "order must be at least 2");
    } else if (kw == "coeff") {
      arity(3);
      int i = detail::parse_int(toks[1], lineno, "a non-negative exponent");
      int j = detail::parse_int(toks[2], lineno, "a non-negative exponent");
      if (i < 0) throw ParseError(lineno, toks[1].column, "negative exponent");
      if (j < 0) throw ParseError(lineno, toks[2].column, "negative exponent");
      auto c = parse_rational(toks[3].text);
      if (!c)
        throw ParseError(lineno, toks[3].column,
                         "bad coefficient in (" + toks[1].text + ", " + toks[2].text + ", \"" + toks[3].text +
                             "\"): expected p or p/q with q != 0");
      if (i + j == 0) throw ParseError(lineno, toks[1].column, "constant term must be zero");
      if (!seen.insert({i, j}).second)
        throw ParseError(lineno, toks[1].column, "duplicate coefficient for (" + toks[1].text + ", " + toks[2].text + ")");
      degrees.push_back({i, j, lineno, toks[1].column});
      f.add_term(i, j, *c);
    } else {
      throw ParseError(lineno, toks[0].column, "unknown keyword '" + kw + "'");
    }
  }
  if (!ambient) throw ParseError(last_line + 1, 1, "missing 'ambient'");
  if (!axis) throw ParseError(last_line + 1, 1, "missing 'graph'");
  if (seen.empty()) throw ParseError(last_line + 1, 1, "no coefficients");
  for (const auto& d : degrees)
    if (d.i + d.j > order)
      throw ParseError(d.line, d.column,
                       "monomial of degree " + std::to_string(d.i + d.j) + " exceeds order " + std::to_string(order));
  return MongePatch(*ambient, *axis, f, order, name);
}

inline MongePatch parse_surface_spec(const std::string& text) {
  std::istringstream in(text);
  return parse_surface_spec(in);
}

inline MongePatch load_surface_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  return parse_surface_spec(in);
}

/// Canonical text: header lines, then coefficients in graded order. The
/// order is raised to the degree of f if needed so the output parses back.
inline std::string serialize_surface_spec(const MongePatch& p) {
  std::ostringstream out;
  if (!p.name.empty()) out << "name " << p.name << "\n";
  out << "ambient " << ambient_name(p.ambient) << "\n";
  out << "graph " << axis_name(p.axis) << "\n";
  out << "order " << std::max(p.order, p.f.degree()) << "\n";
  for (const auto& [m, c] : p.f.terms()) out << "coeff " << m.i << " " << m.j << " " << to_string(c) << "\n";
  return out.str();
}

}  // namespace umbilic
