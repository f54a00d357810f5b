#include "betamodel/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "betamodel/error.hpp"

namespace betamodel::mc {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    auto piece = trim(std::string_view(s).substr(start, pos == std::string::npos ? pos : pos - start));
    if (!piece.empty()) parts.push_back(std::move(piece));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void bad(std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::Parse, "config line " + std::to_string(line) + ": " + msg);
}

template <class T>
T number(const std::string& text, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    bad(line, "'" + text + "' is not a valid number");
  }
  return value;
}

}  // namespace

SimulationConfig parse_simulation_config(std::istream& in) {
  SimulationConfig cfg;
  auto& spec = cfg.spec;
  std::string scale_rule = "0";
  std::size_t scale_line = 0;
  std::string r_text;
  std::size_t r_line = 0;

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) bad(line, "expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (value.empty()) bad(line, "empty value for '" + key + "'");

    if (key == "kind") {
      if (value == "rejection") {
        cfg.kind = SimulationKind::rejection;
      } else if (value == "distribution") {
        cfg.kind = SimulationKind::distribution;
      } else {
        bad(line, "kind must be rejection or distribution");
      }
    } else if (key == "n") {
      spec.n = number<std::size_t>(value, line);
    } else if (key == "r") {
      r_text = value;
      r_line = line;
    } else if (key == "beta_rule") {
      if (value == "linear") {
        spec.rule = BetaRule::linear;
      } else if (value == "homogeneous_tail") {
        spec.rule = BetaRule::homogeneous_tail;
      } else {
        bad(line, "beta_rule must be linear or homogeneous_tail");
      }
    } else if (key == "L_n") {
      scale_rule = value;
      scale_line = line;
    } else if (key == "pairs") {
      spec.pairs.clear();
      for (const auto& item : split(value, ',')) {
        const auto parts = split(item, '-');
        if (parts.size() != 2) bad(line, "pair '" + item + "' is not of the form i-j");
        spec.pairs.emplace_back(number<NodeId>(parts[0], line), number<NodeId>(parts[1], line));
      }
    } else if (key == "methods") {
      spec.methods.clear();
      for (const auto& item : split(value, ',')) {
        if (item == "pair") {
          spec.methods.push_back(Method::pair);
        } else if (item == "cauchy") {
          spec.methods.push_back(Method::cauchy);
        } else if (item == "lrt") {
          spec.methods.push_back(Method::lrt);
        } else {
          bad(line, "unknown method '" + item + "'");
        }
      }
    } else if (key == "pvalues") {
      const auto kind = parse_pvalue_kind(value);
      if (!kind) bad(line, "pvalues must be upper, two-sided or one-sided");
      spec.pvalues = *kind;
    } else if (key == "alpha") {
      spec.alpha = number<double>(value, line);
    } else if (key == "reps" || key == "replications") {
      spec.replications = number<std::size_t>(value, line);
    } else if (key == "seed") {
      spec.seed = number<std::uint64_t>(value, line);
    } else if (key == "threads") {
      spec.threads = number<int>(value, line);
    } else if (key == "tolerance") {
      spec.fit.tolerance = number<double>(value, line);
    } else if (key == "max_iterations") {
      spec.fit.max_iterations = number<int>(value, line);
    } else {
      bad(line, "unknown key '" + key + "'");
    }
  }

  try {
    spec.scale = resolve_scale(scale_rule, spec.n);
  } catch (const Error& e) {
    bad(scale_line, e.what());
  }
  if (!r_text.empty()) {
    if (r_text == "n") {
      spec.r = spec.n;
    } else if (r_text.starts_with("n-")) {
      const auto k = number<std::size_t>(r_text.substr(2), r_line);
      if (k >= spec.n) bad(r_line, "r = " + r_text + " is not positive");
      spec.r = spec.n - k;
    } else {
      spec.r = number<std::size_t>(r_text, r_line);
    }
  } else if (spec.rule == BetaRule::homogeneous_tail) {
    spec.r = spec.n;
  }
  if (spec.methods.empty()) {
    spec.methods = spec.pairs.empty() ? std::vector<Method>{Method::cauchy, Method::lrt}
                                      : std::vector<Method>{Method::pair};
  }
  if (cfg.kind == SimulationKind::distribution && spec.pairs.size() != 1) {
    throw Error(ErrorKind::Parse, "distribution runs need exactly one pair");
  }
  validate(spec);
  return cfg;
}

SimulationConfig read_simulation_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  return parse_simulation_config(in);
}

}  // namespace betamodel::mc
