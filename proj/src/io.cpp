#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <set>
#include <sstream>
#include <string>

#include "betamodel/error.hpp"
#include "betamodel/graph.hpp"

namespace betamodel {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  return in;
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

// Parses a positive integer token; anything else is a parse error.
long long parse_id(const std::string& token, std::size_t line_no) {
  long long value = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorKind::Parse,
                "line " + std::to_string(line_no) + ": '" + token + "' is not an integer");
  }
  return value;
}

}  // namespace

Graph parse_edge_list(std::istream& in, std::size_t min_nodes) {
  std::set<std::pair<NodeId, NodeId>> edges;
  std::size_t n = min_nodes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(strip_comment(line));
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    if (!(fields >> b) || (fields >> extra)) {
      throw Error(ErrorKind::Parse,
                  "line " + std::to_string(line_no) + ": expected exactly two node ids");
    }
    const long long i = parse_id(a, line_no);
    const long long j = parse_id(b, line_no);
    if (i < 1 || j < 1) {
      throw Error(ErrorKind::Parse,
                  "line " + std::to_string(line_no) + ": node ids are 1-based");
    }
    if (i == j) {
      throw Error(ErrorKind::Validation,
                  "line " + std::to_string(line_no) + ": self-loop on node " + std::to_string(i));
    }
    const auto lo = static_cast<NodeId>(std::min(i, j));
    const auto hi = static_cast<NodeId>(std::max(i, j));
    edges.emplace(lo, hi);
    n = std::max(n, hi);
  }
  if (n == 0) throw Error(ErrorKind::Parse, "edge list contains no edges");
  Graph g(n);
  for (const auto& [i, j] : edges) g.add_edge(i, j);
  return g;
}

Graph read_graph(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_edge_list(in);
}

DegreeSequence parse_degrees(std::istream& in) {
  std::vector<int> d;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = strip_comment(line);
    for (char& c : body) {
      if (c == ',') c = ' ';
    }
    std::istringstream fields(body);
    std::string token;
    while (fields >> token) {
      const long long v = parse_id(token, line_no);
      if (v < 0 || v > std::numeric_limits<int>::max()) {
        throw Error(ErrorKind::Parse,
                    "line " + std::to_string(line_no) + ": degree " + token + " out of range");
      }
      d.push_back(static_cast<int>(v));
    }
  }
  if (d.empty()) throw Error(ErrorKind::Parse, "degree file contains no values");
  return DegreeSequence(std::move(d));
}

DegreeSequence read_degrees(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_degrees(in);
}

DegreeSequence load_degrees(const std::filesystem::path& path, InputFormat format) {
  return format == InputFormat::edge_list ? degrees(read_graph(path)) : read_degrees(path);
}

}  // namespace betamodel
