#include "betamodel/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "betamodel/config.hpp"
#include "betamodel/datasets.hpp"
#include "betamodel/error.hpp"
#include "betamodel/hypothesis.hpp"
#include "betamodel/inference.hpp"
#include "betamodel/montecarlo.hpp"

namespace betamodel::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Default seeds for `reproduce`; cell k of a grid uses base * 1000 + k.
constexpr std::uint64_t kTable1Seed = 1001;
constexpr std::uint64_t kTable2Seed = 2002;
constexpr std::uint64_t kTable3Seed = 3003;
constexpr std::uint64_t kFiguresSeed = 4004;

struct InputOptions {
  std::string edges;
  std::string degrees;
  std::string dataset;
  double tolerance = FitConfig{}.tolerance;
  int max_iterations = FitConfig{}.max_iterations;

  void attach(CLI::App& cmd) {
    auto* e = cmd.add_option("--edges", edges, "edge-list file (1-based node ids)");
    auto* d = cmd.add_option("--degrees", degrees, "degree-sequence file");
    auto* s = cmd.add_option("--dataset", dataset, "embedded dataset name (chesapeake)");
    e->excludes(d)->excludes(s);
    d->excludes(s);
    cmd.add_option("--tolerance", tolerance, "max degree residual at convergence")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--max-iterations", max_iterations, "fixed-point iteration budget")
        ->check(CLI::PositiveNumber);
  }

  bool given() const { return !edges.empty() || !degrees.empty() || !dataset.empty(); }

  DegreeSequence load() const {
    if (!edges.empty()) return load_degrees(edges, InputFormat::edge_list);
    if (!degrees.empty()) return load_degrees(degrees, InputFormat::degrees);
    if (!dataset.empty()) {
      if (auto d = datasets::by_name(dataset)) return *d;
      throw Error(ErrorKind::InvalidArgument, "unknown dataset '" + dataset + "'");
    }
    throw CLI::ValidationError("input", "one of --edges, --degrees or --dataset is required");
  }

  FitConfig fit_config() const {
    FitConfig cfg;
    cfg.tolerance = tolerance;
    cfg.max_iterations = max_iterations;
    return cfg;
  }
};

json fit_to_json(const BetaFit& fit) {
  return json{{"n", fit.size()},
              {"beta_hat", std::vector<double>(fit.beta_hat.begin(), fit.beta_hat.end())},
              {"v_hat", fit.v_hat},
              {"iterations", fit.iterations},
              {"max_residual", fit.max_residual},
              {"converged", fit.converged}};
}

BetaFit fit_from_json(const json& j) {
  try {
    BetaFit fit;
    fit.beta_hat = BetaVector(j.at("beta_hat").get<std::vector<double>>());
    fit.v_hat = j.at("v_hat").get<std::vector<double>>();
    fit.iterations = j.at("iterations").get<int>();
    fit.max_residual = j.at("max_residual").get<double>();
    fit.converged = j.at("converged").get<bool>();
    if (fit.v_hat.size() != fit.beta_hat.size()) {
      throw Error(ErrorKind::Parse, "fit file: beta_hat and v_hat differ in length");
    }
    return fit;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("fit file: ") + e.what());
  }
}

BetaFit read_fit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
  return fit_from_json(j);
}

json homogeneity_to_json(const HomogeneityResult& r, double alpha) {
  json j{{"method", to_string(r.method)},
         {"statistic", r.statistic},
         {"p_value", r.p_value},
         {"reject", r.reject},
         {"alpha", alpha}};
  if (r.independence_only) j["independence_only"] = true;
  return j;
}

json report_to_json(const mc::ExperimentSpec& spec, const mc::ExperimentReport& report) {
  json cells = json::array();
  for (const auto& c : report.cells) {
    cells.push_back({{"cell", c.label},
                     {"proportion", c.proportion},
                     {"rejections", c.rejections},
                     {"valid", c.valid}});
  }
  json pairs = json::array();
  for (const auto& [i, j] : spec.pairs) pairs.push_back({i, j});
  json methods = json::array();
  for (auto m : spec.methods) methods.push_back(mc::to_string(m));
  return json{{"n", spec.n},
              {"beta_rule", mc::to_string(spec.rule)},
              {"L_n", spec.scale},
              {"r", spec.r},
              {"pairs", pairs},
              {"methods", methods},
              {"pvalues", to_string(spec.pvalues)},
              {"alpha", spec.alpha},
              {"replications", report.replications},
              {"seed", spec.seed},
              {"failed", report.failed},
              {"cells", cells},
              {"threads", report.threads},
              {"seconds", report.seconds}};
}

json distribution_to_json(const mc::EmpiricalDistribution& d) {
  return json{{"i", d.i},
              {"j", d.j},
              {"samples", d.samples.size()},
              {"failed", d.failed},
              {"mean", d.mean},
              {"sd", d.sd},
              {"reference_mean", d.reference_mean},
              {"ks_distance", d.ks_distance},
              {"ks_critical_1pct", d.ks_critical_1pct}};
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << text;
}

// Writes to `path` when given, else to `out`.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text(path, text);
  }
}

std::string fixed3(double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << x;
  return s.str();
}

// ---- reproduce ----------------------------------------------------------

struct ReproduceOptions {
  std::string target;
  std::string output_dir;
  std::size_t reps = 0;  // 0: the published count
  std::uint64_t seed = 0;  // 0: built-in per target
  std::vector<std::size_t> sizes;
  double alpha = 0.05;
};

std::string table4_csv() {
  const auto d = datasets::chesapeake();
  const auto fit = mle_fit(d);
  const auto& nodes = datasets::chesapeake_table_nodes;
  std::ostringstream csv;
  csv << "i\\j";
  for (auto j : nodes) csv << ',' << j;
  csv << '\n';
  for (auto i : nodes) {
    csv << i;
    for (auto j : nodes) {
      csv << ',';
      if (i == j) {
        csv << '-';
      } else {
        csv << fixed3(pair_test(fit, i, j).tail_p);
      }
    }
    csv << '\n';
  }
  return csv.str();
}

std::string real_data_json(double alpha) {
  const auto d = datasets::chesapeake();
  const auto fit = mle_fit(d);
  json results = json::array();
  results.push_back(homogeneity_to_json(homogeneity_cauchy(fit, alpha), alpha));
  results.push_back(homogeneity_to_json(homogeneity_lrt(d, fit, alpha), alpha));
  json variants = json::object();
  for (auto kind : {PairPValueKind::upper, PairPValueKind::two_sided, PairPValueKind::one_sided}) {
    variants[std::string(to_string(kind))] =
        homogeneity_to_json(homogeneity_cauchy(fit, alpha, kind), alpha);
  }
  return json{{"dataset", "chesapeake"},
              {"n", d.size()},
              {"degree_sum", d.sum()},
              {"fit", {{"iterations", fit.iterations}, {"max_residual", fit.max_residual}}},
              {"homogeneity", results},
              {"cauchy_by_pvalue_kind", variants}}
                 .dump(2) +
         "\n";
}

std::vector<std::size_t> sizes_or(const ReproduceOptions& opt, std::vector<std::size_t> fallback) {
  return opt.sizes.empty() ? fallback : opt.sizes;
}

std::string table1_csv(const ReproduceOptions& opt, json& summary) {
  const std::vector<std::pair<NodeId, NodeId>> pairs{{1, 50}, {1, 100}, {50, 100}, {50, 200}};
  const std::vector<std::string> rules{"0", "loglog", "sqrt_log"};
  const std::uint64_t base = (opt.seed ? opt.seed : kTable1Seed);
  std::ostringstream csv;
  csv << "n,L_n_rule,L_n,pair,proportion,valid,failed\n";
  std::uint64_t cell = 0;
  for (auto n : sizes_or(opt, {300, 500})) {
    for (const auto& rule : rules) {
      mc::ExperimentSpec spec;
      spec.n = n;
      spec.rule = mc::BetaRule::linear;
      spec.scale = mc::resolve_scale(rule, n);
      spec.pairs = pairs;
      std::erase_if(spec.pairs, [n](const auto& p) { return p.second > n; });
      spec.methods = {mc::Method::pair};
      spec.alpha = opt.alpha;
      spec.replications = opt.reps ? opt.reps : 200;
      spec.seed = base * 1000 + cell++;
      const auto report = mc::run_pair_experiment(spec);
      summary.push_back(report_to_json(spec, report));
      for (std::size_t k = 0; k < report.cells.size(); ++k) {
        const auto& c = report.cells[k];
        csv << n << ',' << rule << ',' << spec.scale << ",(" << spec.pairs[k].first << ' '
            << spec.pairs[k].second << ")," << fixed3(c.proportion) << ',' << c.valid << ','
            << report.failed << '\n';
      }
    }
  }
  return csv.str();
}

std::string homogeneity_table_csv(const ReproduceOptions& opt, const std::vector<std::string>& rules,
                                  std::uint64_t default_seed, json& summary) {
  const std::uint64_t base = (opt.seed ? opt.seed : default_seed);
  std::ostringstream csv;
  csv << "n,r,L_n_rule,L_n,cauchy,lrt,valid,failed\n";
  std::uint64_t cell = 0;
  for (auto n : sizes_or(opt, {100, 200, 500})) {
    for (std::size_t drop : {0, 1, 2, 5, 10}) {
      if (drop >= n) continue;
      for (const auto& rule : rules) {
        mc::ExperimentSpec spec;
        spec.n = n;
        spec.rule = mc::BetaRule::homogeneous_tail;
        spec.r = n - drop;
        spec.scale = mc::resolve_scale(rule, n);
        spec.methods = {mc::Method::cauchy, mc::Method::lrt};
        spec.alpha = opt.alpha;
        spec.replications = opt.reps ? opt.reps : 200;
        spec.seed = base * 1000 + cell++;
        const auto report = mc::run_homogeneity_experiment(spec);
        summary.push_back(report_to_json(spec, report));
        csv << n << ",n-" << drop << ',' << rule << ',' << spec.scale << ','
            << fixed3(report.cells[0].proportion) << ',' << fixed3(report.cells[1].proportion)
            << ',' << report.cells[0].valid << ',' << report.failed << '\n';
      }
    }
  }
  return csv.str();
}

std::string figures_csv(const ReproduceOptions& opt, json& summary) {
  const std::vector<std::pair<NodeId, NodeId>> pairs{{1, 50}, {1, 100}, {50, 100}, {50, 200}};
  const std::vector<std::string> rules{"0", "loglog", "sqrt_log"};
  const std::uint64_t base = (opt.seed ? opt.seed : kFiguresSeed);
  std::ostringstream csv;
  csv << "n,L_n_rule,pair,samples,mean,sd,reference_mean,ks_distance,ks_critical_1pct\n";
  std::uint64_t cell = 0;
  for (auto n : sizes_or(opt, {300, 500})) {
    for (const auto& rule : rules) {
      mc::ExperimentSpec spec;
      spec.n = n;
      spec.scale = mc::resolve_scale(rule, n);
      spec.pairs = pairs;
      std::erase_if(spec.pairs, [n](const auto& p) { return p.second > n; });
      spec.methods = {mc::Method::pair};
      spec.replications = opt.reps ? opt.reps : 1000;
      spec.seed = base * 1000 + cell++;
      spec.keep_statistics = true;
      const auto report = mc::run_pair_experiment(spec);
      const auto beta = mc::build_beta(spec);
      for (std::size_t k = 0; k < report.cells.size(); ++k) {
        const auto [i, j] = spec.pairs[k];
        std::vector<double> samples;
        for (const auto& d : report.cells[k].draws) samples.push_back(d.statistic);
        auto dist = mc::describe_sample(std::move(samples), beta[i - 1] == beta[j - 1]);
        dist.i = i;
        dist.j = j;
        dist.failed = report.failed;
        auto entry = distribution_to_json(dist);
        entry["n"] = n;
        entry["L_n_rule"] = rule;
        entry["L_n"] = spec.scale;
        summary.push_back(entry);
        csv << n << ',' << rule << ",(" << i << ' ' << j << ")," << dist.samples.size() << ','
            << dist.mean << ',' << dist.sd << ',' << dist.reference_mean << ','
            << dist.ks_distance << ',' << dist.ks_critical_1pct << '\n';
        if (!opt.output_dir.empty()) {
          std::ostringstream hist;
          mc::write_histogram_csv(dist.histogram, hist);
          write_text(fs::path(opt.output_dir) / ("figure_n" + std::to_string(n) + "_" + rule +
                                                 "_pair_" + std::to_string(i) + "_" +
                                                 std::to_string(j) + ".csv"),
                     hist.str());
        }
      }
    }
  }
  return csv.str();
}

int reproduce(const ReproduceOptions& opt, std::ostream& out) {
  std::string text;
  json summary = json::array();
  std::string extension = "csv";
  if (opt.target == "table4") {
    text = table4_csv();
  } else if (opt.target == "real") {
    text = real_data_json(opt.alpha);
    extension = "json";
  } else if (opt.target == "table1") {
    text = table1_csv(opt, summary);
  } else if (opt.target == "table2") {
    text = homogeneity_table_csv(opt, {"sqrt_loglog", "loglog", "sqrt_log"}, kTable2Seed, summary);
  } else if (opt.target == "table3") {
    text = homogeneity_table_csv(opt, {"clog:0.1", "clog:0.2", "clog:0.5"}, kTable3Seed, summary);
  } else if (opt.target == "figures") {
    text = figures_csv(opt, summary);
  } else {
    throw CLI::ValidationError("target", "unknown reproduce target '" + opt.target + "'");
  }
  out << text;
  if (!opt.output_dir.empty()) {
    write_text(fs::path(opt.output_dir) / (opt.target + "." + extension), text);
    if (!summary.empty()) {
      write_text(fs::path(opt.output_dir) / (opt.target + "_report.json"), summary.dump(2) + "\n");
    }
  }
  return kOk;
}

void print_error(std::ostream& err, std::string_view kind, const std::string& message) {
  err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fit the beta-model and test node-parameter equality and homogeneity",
               "betamodel"};
  app.require_subcommand(1);
  app.fallthrough();  // --threads may follow the subcommand
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: BETAMODEL_THREADS or OpenMP)")
      ->check(CLI::PositiveNumber);

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "maximum likelihood fit; writes JSON");
  InputOptions fit_in;
  std::string fit_output;
  fit_in.attach(*fit_cmd);
  fit_cmd->add_option("--output,-o", fit_output, "write JSON here instead of stdout");

  // test-pair
  auto* pair_cmd = app.add_subcommand("test-pair", "test beta_i = beta_j");
  InputOptions pair_in;
  pair_in.attach(*pair_cmd);
  std::string pair_fit;
  NodeId node_i = 0;
  NodeId node_j = 0;
  double pair_alpha = 0.05;
  pair_cmd->add_option("--fit", pair_fit, "JSON written by `fit`")->excludes("--edges")
      ->excludes("--degrees")->excludes("--dataset");
  pair_cmd->add_option("--i", node_i, "first node (1-based)")->required();
  pair_cmd->add_option("--j", node_j, "second node (1-based)")->required();
  pair_cmd->add_option("--alpha", pair_alpha, "level")->check(CLI::Range(0.0, 1.0));

  // test-homog
  auto* homog_cmd = app.add_subcommand("test-homog", "test beta_1 = ... = beta_n");
  InputOptions homog_in;
  homog_in.attach(*homog_cmd);
  std::string method_name = "cauchy";
  std::string pvalue_name = "upper";
  double homog_alpha = 0.05;
  homog_cmd
      ->add_option("--method", method_name,
                   "cauchy | lrt | fisher | pearson | george | edgington | stouffer | tippett");
  homog_cmd->add_option("--pvalues", pvalue_name,
                        "pair p-values fed to combiners: upper | two-sided | one-sided");
  homog_cmd->add_option("--alpha", homog_alpha, "level")->check(CLI::Range(0.0, 1.0));

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo experiment from a config file");
  std::string sim_config;
  std::string sim_output;
  std::string sim_csv;
  sim_cmd->add_option("--config", sim_config, "key = value experiment file")->required();
  sim_cmd->add_option("--output,-o", sim_output, "write JSON report here instead of stdout");
  sim_cmd->add_option("--csv", sim_csv,
                      "per-replication statistics (rejection) or histogram (distribution)");

  // reproduce
  auto* rep_cmd = app.add_subcommand("reproduce", "rerun the published tables and figures");
  ReproduceOptions rep;
  rep_cmd->add_option("target", rep.target, "table1 | table2 | table3 | table4 | figures | real")
      ->required();
  rep_cmd->add_option("--output-dir", rep.output_dir, "also write CSV/JSON files here");
  rep_cmd->add_option("--reps", rep.reps, "replications per cell (default: published count)");
  rep_cmd->add_option("--seed", rep.seed, "base seed (default: built-in per target)");
  rep_cmd->add_option("--n", rep.sizes, "restrict to these network sizes");
  rep_cmd->add_option("--alpha", rep.alpha, "level")->check(CLI::Range(0.0, 1.0));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    print_error(err, "Usage", e.what());
    return kUsage;
  }

  if (threads > 0) setenv("BETAMODEL_THREADS", std::to_string(threads).c_str(), 1);

  try {
    if (*fit_cmd) {
      const auto fit = mle_fit(fit_in.load(), fit_in.fit_config());
      emit(fit_output, fit_to_json(fit).dump(2) + "\n", out);
    } else if (*pair_cmd) {
      BetaFit fit;
      if (!pair_fit.empty()) {
        fit = read_fit(pair_fit);
      } else {
        fit = mle_fit(pair_in.load(), pair_in.fit_config());
      }
      const auto r = pair_test(fit, node_i, node_j, pair_alpha);
      out << json{{"method", "pair"},
                  {"i", r.i},
                  {"j", r.j},
                  {"statistic", r.u_hat},
                  {"p_value", r.p_value},
                  {"tail_p", r.tail_p},
                  {"reject", r.reject},
                  {"alpha", pair_alpha}}
                 .dump(2)
          << '\n';
    } else if (*homog_cmd) {
      const auto method = parse_combine_method(method_name);
      if (!method) throw CLI::ValidationError("--method", "unknown method '" + method_name + "'");
      const auto kind = parse_pvalue_kind(pvalue_name);
      if (!kind) throw CLI::ValidationError("--pvalues", "unknown kind '" + pvalue_name + "'");
      const auto d = homog_in.load();
      const auto fit = mle_fit(d, homog_in.fit_config());
      auto j = homogeneity_to_json(homogeneity_test(d, fit, *method, homog_alpha, *kind),
                                   homog_alpha);
      if (*method != CombineMethod::lrt) j["pvalues"] = to_string(*kind);
      out << j.dump(2) << '\n';
    } else if (*sim_cmd) {
      auto cfg = mc::read_simulation_config(sim_config);
      if (threads > 0) cfg.spec.threads = threads;
      if (cfg.kind == mc::SimulationKind::distribution) {
        const auto [i, j] = cfg.spec.pairs.front();
        const auto d = mc::empirical_distribution(cfg.spec, i, j);
        auto report = distribution_to_json(d);
        report["n"] = cfg.spec.n;
        report["L_n"] = cfg.spec.scale;
        report["seed"] = cfg.spec.seed;
        emit(sim_output, report.dump(2) + "\n", out);
        if (!sim_csv.empty()) {
          std::ostringstream hist;
          mc::write_histogram_csv(d.histogram, hist);
          write_text(sim_csv, hist.str());
        }
      } else {
        cfg.spec.keep_statistics = !sim_csv.empty();
        const auto report = mc::run_experiment(cfg.spec);
        emit(sim_output, report_to_json(cfg.spec, report).dump(2) + "\n", out);
        if (!sim_csv.empty()) {
          std::ostringstream rows;
          mc::write_draws_csv(report, rows);
          write_text(sim_csv, rows.str());
        }
      }
    } else if (*rep_cmd) {
      return reproduce(rep, out);
    }
  } catch (const CLI::ValidationError& e) {
    print_error(err, "Usage", e.what());
    return kUsage;
  } catch (const Error& e) {
    print_error(err, to_string(e.kind()), e.what());
    return kFailure;
  } catch (const std::exception& e) {
    print_error(err, "Internal", e.what());
    return kFailure;
  }
  return kOk;
}

}  // namespace betamodel::cli
