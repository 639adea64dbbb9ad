#include "fdg.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <tuple>

namespace pclass2 {

const char* parse_error_kind_name(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::Syntax: return "syntax";
    case ParseErrorKind::DuplicateEdge: return "duplicate-edge";
    case ParseErrorKind::IndexOutOfRange: return "index-out-of-range";
    case ParseErrorKind::ZeroFlow: return "zero-flow";
    case ParseErrorKind::NotPrime: return "not-prime";
    case ParseErrorKind::EvenPrime: return "even-prime";
  }
  return "unknown";
}

ParseError::ParseError(ParseErrorKind kind, int line, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + message + " [" +
            parse_error_kind_name(kind) + "]"),
      kind_(kind),
      line_(line) {}

namespace {

void sort_edges(std::vector<FlowEdge>& edges) {
  std::sort(edges.begin(), edges.end(), [](const FlowEdge& a, const FlowEdge& b) {
    return std::tie(a.from, a.to) < std::tie(b.from, b.to);
  });
}

}  // namespace

FlowDigraph make_digraph(std::string name, int p, int r, int d,
                         const std::vector<std::tuple<int, int, std::vector<int>>>& edges) {
  require_odd_prime(p);
  if (r < 0 || d < 0) throw ValueError("negative rank or generator count");
  FlowDigraph g;
  g.name = std::move(name);
  g.p = p;
  g.r = r;
  g.d = d;
  std::set<std::pair<int, int>> seen;
  for (const auto& [i, j, raw] : edges) {
    if (i == j) throw ValueError("self-loop on generator " + std::to_string(i));
    if (i < 1 || i > d || j < 1 || j > d)
      throw ValueError("edge endpoint out of range 1.." + std::to_string(d));
    if (static_cast<int>(raw.size()) != r) throw ValueError("flow has wrong length");
    FlowEdge e;
    e.from = std::min(i, j);
    e.to = std::max(i, j);
    e.flow = reduce_vec(raw, p);
    if (i > j) e.flow = negate_vec(e.flow, p);
    if (is_zero_vec(e.flow)) throw ValueError("zero flow (omit the edge instead)");
    if (!seen.insert({e.from, e.to}).second)
      throw ValueError("duplicate edge " + std::to_string(e.from) + "-" + std::to_string(e.to));
    g.edges.push_back(std::move(e));
  }
  sort_edges(g.edges);
  return g;
}

namespace {

struct Tokenizer {
  std::istringstream in;
  int line_no = 0;
  std::string line;

  explicit Tokenizer(const std::string& text) : in(text) {}

  // next non-blank, comment-stripped line split into tokens
  bool next(std::vector<std::string>& tokens) {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      tokens.clear();
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }
};

long long parse_int(const std::string& tok, int line) {
  size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(ParseErrorKind::Syntax, line, "expected an integer, got '" + tok + "'");
  }
  if (pos != tok.size())
    throw ParseError(ParseErrorKind::Syntax, line, "expected an integer, got '" + tok + "'");
  return v;
}

}  // namespace

FlowDigraph parse_fdg(const std::string& text) {
  Tokenizer tz(text);
  std::vector<std::string> tok;

  auto expect_header = [&](const char* keyword) {
    if (!tz.next(tok))
      throw ParseError(ParseErrorKind::Syntax, tz.line_no + 1,
                       std::string("missing '") + keyword + "' line");
    if (tok[0] != keyword || tok.size() != 2)
      throw ParseError(ParseErrorKind::Syntax, tz.line_no,
                       std::string("expected '") + keyword + " <value>'");
    return tok[1];
  };

  FlowDigraph g;
  g.name = expect_header("group");

  std::string p_tok = expect_header("p");
  long long p = parse_int(p_tok, tz.line_no);
  int p_line = tz.line_no;
  if (p == 2) throw ParseError(ParseErrorKind::EvenPrime, p_line, "p = 2 is not supported");
  if (p < 2 || p > kMaxPrime || !is_odd_prime(static_cast<int>(p)))
    throw ParseError(ParseErrorKind::NotPrime, p_line,
                     "p must be an odd prime <= " + std::to_string(kMaxPrime));
  g.p = static_cast<int>(p);

  long long r = parse_int(expect_header("derived"), tz.line_no);
  if (r < 0 || r > 64)
    throw ParseError(ParseErrorKind::Syntax, tz.line_no, "derived rank out of range");
  g.r = static_cast<int>(r);

  long long d = parse_int(expect_header("gens"), tz.line_no);
  if (d < 0 || d > 1024)
    throw ParseError(ParseErrorKind::Syntax, tz.line_no, "generator count out of range");
  g.d = static_cast<int>(d);

  std::set<std::pair<int, int>> seen;
  while (tz.next(tok)) {
    int line = tz.line_no;
    if (tok[0] != "edge")
      throw ParseError(ParseErrorKind::Syntax, line, "expected 'edge', got '" + tok[0] + "'");
    if (static_cast<int>(tok.size()) != 3 + g.r)
      throw ParseError(ParseErrorKind::Syntax, line,
                       "edge needs 2 endpoints and " + std::to_string(g.r) + " exponents");
    long long i = parse_int(tok[1], line);
    long long j = parse_int(tok[2], line);
    if (i == j) throw ParseError(ParseErrorKind::Syntax, line, "self-loop not allowed");
    if (i < 1 || i > g.d || j < 1 || j > g.d)
      throw ParseError(ParseErrorKind::IndexOutOfRange, line,
                       "endpoint out of range 1.." + std::to_string(g.d));
    FlowEdge e;
    e.flow.resize(g.r);
    for (int k = 0; k < g.r; ++k)
      e.flow[k] = static_cast<Fp>(fp_reduce(parse_int(tok[3 + k], line), g.p));
    if (i > j) {
      std::swap(i, j);
      e.flow = negate_vec(e.flow, g.p);
    }
    e.from = static_cast<int>(i);
    e.to = static_cast<int>(j);
    if (is_zero_vec(e.flow))
      throw ParseError(ParseErrorKind::ZeroFlow, line, "flow is zero; omit the edge");
    if (!seen.insert({e.from, e.to}).second)
      throw ParseError(ParseErrorKind::DuplicateEdge, line,
                       "duplicate edge " + std::to_string(e.from) + "-" + std::to_string(e.to));
    g.edges.push_back(std::move(e));
  }
  sort_edges(g.edges);
  return g;
}

std::string emit_fdg(const FlowDigraph& g) {
  std::ostringstream os;
  os << "group " << g.name << "\n";
  os << "p " << g.p << "\n";
  os << "derived " << g.r << "\n";
  os << "gens " << g.d << "\n";
  for (const FlowEdge& e : g.edges) {
    os << "edge " << e.from << " " << e.to;
    for (Fp c : e.flow) os << " " << static_cast<int>(c);
    os << "\n";
  }
  return os.str();
}

namespace {

std::string flow_label(const Vec& flow) {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < flow.size(); ++k) {
    if (flow[k] == 0) continue;
    if (!first) os << " ";
    os << "z" << (k + 1);
    if (flow[k] != 1) os << "^" << static_cast<int>(flow[k]);
    first = false;
  }
  return os.str();
}

}  // namespace

std::string to_dot(const FlowDigraph& g) {
  std::ostringstream os;
  os << "digraph \"" << g.name << "\" {\n";
  for (int i = 1; i <= g.d; ++i) os << "  x" << i << ";\n";
  for (const FlowEdge& e : g.edges)
    os << "  x" << e.from << " -> x" << e.to << " [label=\"" << flow_label(e.flow) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace pclass2
