// netform: command-line front end for the network formation game library.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "netform/best_response.hpp"
#include "netform/experiment.hpp"
#include "netform/io.hpp"
#include "netform/reductions.hpp"
#include "netform/stability.hpp"
#include "netform/welfare.hpp"

using namespace netform;
using json = nlohmann::json;

namespace {

// Writes to the named file, or stdout for "" / "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw IoError("cannot open " + path + " for writing");
    path_ = path;
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw IoError("failed writing " + (path_.empty() ? std::string("stdout") : path_));
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::string path_;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

json degree_json(const DegreeTuple& d) { return json::array({d.c_f, d.c_e, d.a_e, d.a_p}); }

Configuration load_config(const InstanceFile& inst, const std::string& path) {
  if (!path.empty()) return read_configuration(path, inst.setting);
  if (inst.config) return *inst.config;
  throw DomainError("no configuration given (use --config or embed edge/arc lines)");
}

// ---- simulate ----------------------------------------------------------------

struct SimulateArgs {
  std::string instance, start = "empty", trace, summary;
  long max_rounds = 1'000'000;
  int trials = 1;
  std::uint64_t seed = 0;
  int threads = 0;
  bool weak = false;
  bool utilities = false;
};

void cmd_simulate(const SimulateArgs& a) {
  const InstanceFile inst = read_instance(a.instance);
  const GameSetting& setting = inst.setting;
  if (a.max_rounds <= 0) throw DomainError("--max-rounds must be positive");
  if (a.trials <= 0) throw DomainError("--trials must be positive");
  Configuration start = a.start == "empty" ? Configuration(setting.size()) : read_configuration(a.start, setting);
  start.validate();

  RunOptions options;
  options.max_rounds = a.max_rounds;
  options.record_trace = !a.trace.empty();
  options.record_utilities = a.utilities;
  options.dynamics.acceptance = a.weak ? Acceptance::Weak : Acceptance::Strict;
  Output trace_out(a.trace.empty() ? "" : a.trace);
  Output summary_out(a.summary);

  const auto results = run_trials(setting, start, a.trials, a.seed, options, a.threads);

  auto& csv = summary_out.stream();
  csv << "trial,converged,rounds,settle_round,final_sc,c_f,c_e,a_e,a_p\n";
  for (std::size_t t = 0; t < results.size(); ++t) {
    const RunResult& r = results[t];
    const DegreeTuple d = degree_of(r.final_config, setting);
    csv << fmt::format("{},{},{},{},{},{},{},{},{}\n", t, r.converged ? 1 : 0, r.rounds, r.settle_round,
                       format_real(social_cost(setting, r.final_config.topology())), d.c_f, d.c_e, d.a_e, d.a_p);
  }
  summary_out.finish();

  if (!a.trace.empty()) {
    auto& out = trace_out.stream();
    for (std::size_t t = 0; t < results.size(); ++t)
      for (const TraceRecord& rec : results[t].trace) {
        json line = {{"trial", t},
                     {"round", rec.round},
                     {"actor", rec.actor},
                     {"action", to_string(rec.action)},
                     {"degree", degree_json(rec.degree)},
                     {"social_cost", rec.social_cost}};
        if (a.utilities) line["utilities"] = rec.utilities;
        out << line.dump() << '\n';
      }
    trace_out.finish();
  }
}

// ---- check -------------------------------------------------------------------

void cmd_check(const std::string& instance, const std::string& topology, const std::string& config_path,
               const std::string& out_path) {
  const InstanceFile inst = read_instance(instance);
  const GameSetting& setting = inst.setting;
  const Configuration config = load_config(inst, !config_path.empty() ? config_path : topology);
  Output out_file(out_path);
  auto& out = out_file.stream();

  const PneReport pne = is_pne_topology(config.topology(), setting.traffic());
  out << "PNE topology: " << yes_no(pne.ok) << '\n';
  for (const auto& v : pne.violations) out << "  " << v << '\n';
  const PairwiseVerdict pw = is_pairwise_stable(config, setting);
  out << "pairwise stable: " << yes_no(pw.stable) << '\n';
  const NashVerdict nash = is_nash(config, setting);
  out << "Nash: " << yes_no(nash.stable);
  if (!nash.stable) out << fmt::format(" (node {} gains {})", nash.node, format_real(nash.gain));
  out << '\n';
  out << "pairwise Nash: " << yes_no(pw.stable && nash.stable) << '\n';
  out << "sink: " << yes_no(is_sink(config, setting)) << '\n';
  out << "degree: " << degree_of(config, setting).to_string() << '\n';
  out << "social cost: " << format_real(social_cost(setting, config.topology())) << '\n';
  out_file.finish();
}

// ---- analyze -----------------------------------------------------------------

struct AnalyzeArgs {
  std::string instance, topology, csv, out;
  bool poa = false;
  std::optional<double> lower_sc, lower_sce;
  int max_nodes = 7;
  int threads = 0;
};

std::string edge_list(const Topology& g) { return g.to_string(); }

void cmd_analyze(const AnalyzeArgs& a) {
  const InstanceFile inst = read_instance(a.instance);
  const GameSetting& setting = inst.setting;
  EnumerationLimits limits{a.max_nodes, a.threads};
  Output out_file(a.out);
  auto& out = out_file.stream();
  std::vector<std::pair<std::string, std::string>> fields;

  std::optional<Topology> query;
  if (!a.topology.empty()) query = read_configuration(a.topology, setting).topology();
  else if (inst.config) query = inst.config->topology();

  if (a.poa) {
    const WelfareReport r = pos_poa(setting, limits, query);
    fields = {{"sc_opt", format_real(r.sc_opt)},
              {"optimum", edge_list(r.optimum)},
              {"pne_topologies", std::to_string(r.pne_count)},
              {"pos", format_real(r.pos)},
              {"poa", format_real(r.poa)},
              {"best_pne", edge_list(r.best_pne)},
              {"worst_pne", edge_list(r.worst_pne)}};
    if (r.sc) {
      fields.emplace_back("sc", format_real(*r.sc));
      fields.emplace_back("price", format_real(*r.queried_price));
    }
    out << "pos=" << format_real(r.pos) << " poa=" << format_real(r.poa) << '\n';
  } else {
    const Optimum opt = optimal_topology(setting, limits);
    fields = {{"sc_opt", format_real(opt.social_cost)}, {"optimum", edge_list(opt.topology)}};
    if (query) {
      double sc = social_cost(setting, *query);
      fields.emplace_back("sc", format_real(sc));
      fields.emplace_back("price", format_real(price(sc, opt.social_cost)));
    }
  }
  if (a.lower_sc) fields.emplace_back("lower_sc", yes_no(decide_lower_sc(setting, *a.lower_sc, limits)));
  if (a.lower_sce)
    fields.emplace_back("lower_sce", yes_no(decide_lower_sc_equilibrium(setting, *a.lower_sce, limits)));
  for (const auto& [k, v] : fields) out << k << ": " << v << '\n';
  out_file.finish();

  if (!a.csv.empty()) {
    Output csv_file(a.csv);
    auto& csv = csv_file.stream();
    for (std::size_t i = 0; i < fields.size(); ++i) csv << (i ? "," : "") << fields[i].first;
    csv << '\n';
    for (std::size_t i = 0; i < fields.size(); ++i) csv << (i ? "," : "") << '"' << fields[i].second << '"';
    csv << '\n';
    csv_file.finish();
  }
}

// ---- best-response -----------------------------------------------------------

void cmd_best_response(const std::string& instance, const std::string& config_path, std::optional<int> node,
                       std::optional<double> threshold, const std::string& out_path) {
  const InstanceFile inst = read_instance(instance);
  const Configuration config = load_config(inst, config_path);
  config.validate();
  if (!node) node = inst.query;
  if (!node) throw DomainError("no node given (use --node or a 'query' line)");
  if (!threshold) threshold = inst.threshold;
  const BestResponse br = best_response_value(inst.setting, config, *node);
  Output out_file(out_path);
  auto& out = out_file.stream();
  out << "node: " << *node << '\n';
  out << "current utility: " << format_real(br.current) << '\n';
  out << "best utility: " << format_real(br.value) << '\n';
  out << "break:";
  for (const Arc& arc : br.broken) out << fmt::format(" ({},{})", arc.from, arc.to);
  out << '\n';
  if (threshold) out << "decision: " << yes_no(br.value >= *threshold - kTolerance) << '\n';
  out_file.finish();
}

// ---- reduce ------------------------------------------------------------------

void cmd_reduce(const std::string& kind, const std::string& in, const std::string& out_path) {
  Output out_file(out_path);
  auto& out = out_file.stream();
  if (kind == "is-to-br") {
    const Topology g = read_graph(in);
    // The largest threshold worth asking about; callers may edit the line.
    const BRInstance br = reduce_is_to_br(g, g.size());
    write_instance(out, br.setting);
    write_configuration(out, br.config);
    out << "query " << br.node << '\n';
    out << "threshold " << format_real(br.threshold) << '\n';
  } else if (kind == "x3c-to-rx3c") {
    write_x3c(out, reduce_x3c_to_rx3c(read_x3c(in)));
  } else if (kind == "rx3c-to-lsce" || kind == "rx3c-to-lsc") {
    const RX3CInstance rx(read_x3c(in));
    const WelfareInstance w = kind == "rx3c-to-lsce" ? reduce_rx3c_to_lsce(rx) : reduce_rx3c_to_lsc(rx);
    for (const auto& [name, value] : w.constants) out << "# " << name << " = " << value << '\n';
    write_instance(out, w.setting);
    out << "threshold " << w.threshold << '\n';
  } else {
    throw DomainError("unknown reduction '" + kind + "'");
  }
  out_file.finish();
}

// ---- convergence-study ---------------------------------------------------------

void cmd_study(const std::vector<int>& sizes, const std::vector<std::string>& pattern_names, int trials,
               std::uint64_t seed, long max_rounds, int threads, const std::string& out_path) {
  if (trials <= 0) throw DomainError("--trials must be positive");
  std::vector<TrafficPattern> patterns;
  for (const auto& p : pattern_names) patterns.push_back(parse_pattern(p));
  const auto rows = convergence_study(sizes, patterns, trials, seed, max_rounds, threads);
  Output out_file(out_path);
  auto& out = out_file.stream();
  out << "n,pattern,trial,rounds,total_rounds,converged,ratio\n";
  for (const StudyRow& r : rows)
    out << fmt::format("{},{},{},{},{},{},{:.6e}\n", r.n, to_string(r.pattern), r.trial, r.rounds, r.total_rounds,
                       r.converged ? 1 : 0, r.ratio);
  out_file.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network formation game toolkit"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run restricted myopic dynamics");
  simulate->add_option("--instance", sim.instance, "Instance file")->required();
  simulate->add_option("--start", sim.start, "'empty' or a configuration file");
  simulate->add_option("--max-rounds", sim.max_rounds, "Round cap per trial");
  simulate->add_option("--trials", sim.trials, "Number of trials");
  simulate->add_option("--seed", sim.seed, "Random seed");
  simulate->add_option("--trace", sim.trace, "Per-round JSON lines output");
  simulate->add_option("--summary", sim.summary, "CSV summary output (default stdout)");
  simulate->add_option("--threads", sim.threads, "Worker threads (default NETFORM_THREADS or all cores)");
  simulate->add_flag("--weak-acceptance", sim.weak, "Accept proposals with zero gain");
  simulate->add_flag("--utilities", sim.utilities, "Record utilities in the trace");

  std::string c_instance, c_topology, c_config, c_out;
  auto* check = app.add_subcommand("check", "Stability verdicts for a topology or configuration");
  check->add_option("--instance", c_instance)->required();
  auto* topo_opt = check->add_option("--topology", c_topology, "Topology file (edge lines)");
  check->add_option("--config", c_config, "Configuration file (edge/arc lines)")->excludes(topo_opt);
  check->add_option("--out", c_out);

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Welfare analysis by exhaustive enumeration");
  analyze->add_option("--instance", an.instance)->required();
  analyze->add_flag("--poa", an.poa, "Price of stability and anarchy");
  analyze->add_option("--lower-sc", an.lower_sc, "Decide: some topology has SC <= C");
  analyze->add_option("--lower-sce", an.lower_sce, "Decide: some PNE topology has SC <= C");
  analyze->add_option("--topology", an.topology, "Topology whose price to report");
  analyze->add_option("--max-nodes", an.max_nodes, "Enumeration cap")->check(CLI::Range(1, 11));
  analyze->add_option("--threads", an.threads);
  analyze->add_option("--csv", an.csv, "Also write the report as CSV");
  analyze->add_option("--out", an.out);

  std::string b_instance, b_config, b_out;
  std::optional<int> b_node;
  std::optional<double> b_threshold;
  auto* best = app.add_subcommand("best-response", "Exact best response of one node");
  best->add_option("--instance", b_instance)->required();
  best->add_option("--config", b_config);
  best->add_option("--node", b_node);
  best->add_option("--threshold", b_threshold);
  best->add_option("--out", b_out);

  std::string r_kind, r_in, r_out;
  auto* reduce = app.add_subcommand("reduce", "Generate reduced instances");
  reduce->add_option("kind", r_kind, "is-to-br | x3c-to-rx3c | rx3c-to-lsce | rx3c-to-lsc")
      ->required()
      ->check(CLI::IsMember({"is-to-br", "x3c-to-rx3c", "rx3c-to-lsce", "rx3c-to-lsc"}));
  reduce->add_option("--in", r_in)->required();
  reduce->add_option("--out", r_out);

  std::vector<int> s_sizes{4, 6, 8, 10, 12};
  std::vector<std::string> s_patterns{"all-to-all", "random-tree"};
  int s_trials = 50, s_threads = 0;
  std::uint64_t s_seed = 0;
  long s_max_rounds = 0;
  std::string s_out;
  auto* study = app.add_subcommand("convergence-study", "Rounds to convergence across sizes and patterns");
  study->add_option("--sizes", s_sizes)->delimiter(',');
  study->add_option("--patterns", s_patterns)->delimiter(',');
  study->add_option("--trials", s_trials);
  study->add_option("--seed", s_seed);
  study->add_option("--max-rounds", s_max_rounds, "Round cap (default 10 n^4 ln n)");
  study->add_option("--threads", s_threads);
  study->add_option("--out", s_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*simulate) cmd_simulate(sim);
    else if (*check) cmd_check(c_instance, c_topology, c_config, c_out);
    else if (*analyze) cmd_analyze(an);
    else if (*best) cmd_best_response(b_instance, b_config, b_node, b_threshold, b_out);
    else if (*reduce) cmd_reduce(r_kind, r_in, r_out);
    else if (*study) cmd_study(s_sizes, s_patterns, s_trials, s_seed, s_max_rounds, s_threads, s_out);
  } catch (const IoError& e) {
    std::cerr << "netform: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "netform: " << e.what() << '\n';
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "netform: internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
