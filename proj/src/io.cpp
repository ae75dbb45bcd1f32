#include "netform/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <fmt/format.h>

namespace netform {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> words;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    Line line{number, {}};
    for (std::string w; words >> w;) line.words.push_back(std::move(w));
    if (!line.words.empty()) lines.push_back(std::move(line));
  }
  if (in.bad()) throw IoError("read failure");
  return lines;
}

class Parser {
 public:
  Parser(const std::string& origin, const Line& line) : origin_(origin), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError(fmt::format("{}:{}: {}", origin_, line_.number, what));
  }

  void arity(std::size_t words) const {
    if (line_.words.size() != words)
      fail(fmt::format("'{}' takes {} argument(s)", line_.words[0], words - 1));
  }

  const std::string& word(std::size_t i) const { return line_.words.at(i); }

  int integer(std::size_t i) const {
    const std::string& w = word(i);
    int v = 0;
    auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || p != w.data() + w.size()) fail(fmt::format("expected an integer, got '{}'", w));
    return v;
  }

  double real(std::size_t i) const {
    const std::string& w = word(i);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(w, &used);
    } catch (const std::exception&) {
      fail(fmt::format("expected a number, got '{}'", w));
    }
    if (used != w.size() || !std::isfinite(v)) fail(fmt::format("expected a number, got '{}'", w));
    return v;
  }

  NodeId node(std::size_t i, int n) const {
    int v = integer(i);
    if (v < 0 || v >= n) fail(fmt::format("node {} out of range [0, {})", v, n));
    return v;
  }

 private:
  const std::string& origin_;
  const Line& line_;
};

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return in;
}

// Edge/arc lines shared by configuration files and embedded configurations.
Configuration build_configuration(const std::vector<Line>& lines, const GameSetting& setting,
                                  const std::string& origin) {
  const int n = setting.size();
  Topology plain(n);
  Configuration config(n);
  for (const Line& line : lines) {
    Parser p(origin, line);
    const std::string& key = line.words[0];
    if (key == "edge") {
      p.arity(3);
      NodeId u = p.node(1, n), v = p.node(2, n);
      if (u == v) p.fail("self-loop");
      if (plain.has_edge(u, v) || config.topology().has_edge(u, v)) p.fail("duplicate link");
      plain.add_edge(u, v);
    } else if (key == "arc") {
      p.arity(4);
      NodeId u = p.node(1, n), v = p.node(2, n);
      if (u == v) p.fail("self-loop");
      if (plain.has_edge(u, v) || config.topology().has_edge(u, v)) p.fail("duplicate link");
      config.add_contract(Arc{u, v}, p.real(3));
    }
  }
  // Plain edges pay Q on the final topology.
  Topology final_topology = config.topology();
  for (const Edge& e : plain.edges()) final_topology.add_edge(e.u, e.v);
  for (const Edge& e : plain.edges())
    config.add_contract(Arc{e.u, e.v}, setting.contract_value(e.u, e.v, final_topology));
  config.validate();
  return config;
}

}  // namespace

std::string format_real(double x) {
  std::string s = fmt::format("{}", x);
  if (s.find_first_of(".eEni") == std::string::npos) s += ".0";
  return s;
}

InstanceFile parse_instance(std::istream& in, const std::string& origin) {
  const auto lines = tokenize(in);
  int n = -1;
  double pi = 1.0;
  std::optional<double> beta;
  SettingOptions options;
  std::string rule_name = "default";
  std::map<std::string, double> rule_params;
  std::vector<std::pair<const Line*, bool>> deferred;  // cost/traffic lines need n
  std::vector<Line> config_lines;
  std::optional<NodeId> query;
  std::optional<double> threshold;
  bool seen_nodes = false;

  for (const Line& line : lines) {
    Parser p(origin, line);
    const std::string& key = line.words[0];
    if (key == "nodes") {
      p.arity(2);
      if (seen_nodes) p.fail("'nodes' given twice");
      n = p.integer(1);
      if (n <= 0) p.fail("node count must be positive");
      seen_nodes = true;
    } else if (key == "pi") {
      p.arity(2);
      pi = p.real(1);
    } else if (key == "beta") {
      if (line.words.size() < 2 || line.words.size() > 3) p.fail("'beta' takes a value and an optional 'weak'");
      if (p.word(1) == "auto") beta.reset();
      else beta = p.real(1);
      if (line.words.size() == 3) {
        if (p.word(2) != "weak") p.fail("unknown beta flag '" + p.word(2) + "'");
        options.allow_weak_beta = true;
      }
    } else if (key == "contracting") {
      if (line.words.size() < 2) p.fail("'contracting' needs a rule name");
      rule_name = p.word(1);
      rule_params.clear();
      for (std::size_t i = 2; i < line.words.size(); ++i) {
        auto eq = line.words[i].find('=');
        if (eq == std::string::npos) p.fail("rule parameters look like key=value");
        Line value_line{line.number, {"", line.words[i].substr(eq + 1)}};
        rule_params[line.words[i].substr(0, eq)] = Parser(origin, value_line).real(1);
      }
    } else if (key == "cost" || key == "traffic") {
      deferred.emplace_back(&line, key == "traffic");
    } else if (key == "edge" || key == "arc") {
      config_lines.push_back(line);
    } else if (key == "query") {
      p.arity(2);
      query = p.integer(1);
    } else if (key == "threshold") {
      p.arity(2);
      threshold = p.real(1);
    } else {
      p.fail("unknown keyword '" + key + "'");
    }
  }
  if (!seen_nodes) throw DomainError(origin + ": missing 'nodes' line");

  TrafficMatrix traffic(n);
  std::vector<double> costs(static_cast<std::size_t>(n), 1.0);
  for (const auto& [line, is_traffic] : deferred) {
    Parser p(origin, *line);
    if (is_traffic) {
      p.arity(4);
      NodeId i = p.node(1, n), j = p.node(2, n);
      if (i == j) p.fail("traffic from a node to itself");
      double t = p.real(3);
      if (t < 0) p.fail("negative traffic");
      traffic.set(i, j, t);
    } else {
      p.arity(3);
      double c = p.real(2);
      if (c < 0) p.fail("negative routing cost");
      costs[static_cast<std::size_t>(p.node(1, n))] = c;
    }
  }
  if (query && (*query < 0 || *query >= n)) throw DomainError(origin + ": query node out of range");

  RulePtr rule;
  try {
    rule = make_rule(rule_name, rule_params);
  } catch (const DomainError& e) {
    throw DomainError(origin + ": " + e.what());
  }
  InstanceFile file{GameSetting(std::move(traffic), pi, std::move(costs), rule, beta, options),
                    std::nullopt, query, threshold};
  if (!config_lines.empty()) file.config = build_configuration(config_lines, file.setting, origin);
  return file;
}

InstanceFile read_instance(const std::string& path) {
  auto in = open(path);
  return parse_instance(in, path);
}

Configuration parse_configuration(std::istream& in, const GameSetting& setting, const std::string& origin) {
  const auto lines = tokenize(in);
  for (const Line& line : lines) {
    const std::string& key = line.words[0];
    if (key == "nodes") {
      Parser p(origin, line);
      p.arity(2);
      if (p.integer(1) != setting.size()) p.fail("node count disagrees with the instance");
    } else if (key != "edge" && key != "arc") {
      Parser(origin, line).fail("unknown keyword '" + key + "'");
    }
  }
  return build_configuration(lines, setting, origin);
}

Configuration read_configuration(const std::string& path, const GameSetting& setting) {
  auto in = open(path);
  return parse_configuration(in, setting, path);
}

Topology parse_graph(std::istream& in, const std::string& origin) {
  const auto lines = tokenize(in);
  int n = -1;
  std::vector<const Line*> edges;
  for (const Line& line : lines) {
    Parser p(origin, line);
    if (line.words[0] == "nodes") {
      p.arity(2);
      n = p.integer(1);
      if (n < 0) p.fail("node count must be nonnegative");
    } else if (line.words[0] == "edge") {
      edges.push_back(&line);
    } else {
      p.fail("unknown keyword '" + line.words[0] + "'");
    }
  }
  if (n < 0) throw DomainError(origin + ": missing 'nodes' line");
  Topology g(n);
  for (const Line* line : edges) {
    Parser p(origin, *line);
    p.arity(3);
    NodeId u = p.node(1, n), v = p.node(2, n);
    if (u == v) p.fail("self-loop");
    if (g.has_edge(u, v)) p.fail("duplicate edge");
    g.add_edge(u, v);
  }
  return g;
}

Topology read_graph(const std::string& path) {
  auto in = open(path);
  return parse_graph(in, path);
}

X3CInstance parse_x3c(std::istream& in, const std::string& origin) {
  const auto lines = tokenize(in);
  X3CInstance inst;
  std::map<std::string, int> index;
  for (const Line& line : lines) {
    Parser p(origin, line);
    if (line.words[0] == "terminal") {
      p.arity(2);
      if (!index.emplace(p.word(1), static_cast<int>(inst.terminals.size())).second)
        p.fail("duplicate terminal '" + p.word(1) + "'");
      inst.terminals.push_back(p.word(1));
    } else if (line.words[0] != "triple") {
      p.fail("unknown keyword '" + line.words[0] + "'");
    }
  }
  for (const Line& line : lines) {
    if (line.words[0] != "triple") continue;
    Parser p(origin, line);
    p.arity(4);
    std::array<int, 3> t{};
    for (int k = 0; k < 3; ++k) {
      auto it = index.find(p.word(static_cast<std::size_t>(k + 1)));
      if (it == index.end()) p.fail("unknown terminal '" + p.word(static_cast<std::size_t>(k + 1)) + "'");
      t[static_cast<std::size_t>(k)] = it->second;
    }
    inst.triples.push_back(t);
  }
  try {
    inst.validate();
  } catch (const DomainError& e) {
    throw DomainError(origin + ": " + e.what());
  }
  return inst;
}

X3CInstance read_x3c(const std::string& path) {
  auto in = open(path);
  return parse_x3c(in, path);
}

void write_instance(std::ostream& out, const GameSetting& setting) {
  const int n = setting.size();
  out << "nodes " << n << '\n';
  out << "pi " << format_real(setting.pi()) << '\n';
  if (setting.beta_is_auto()) out << "beta auto\n";
  else out << "beta " << format_real(setting.beta()) << (setting.options().allow_weak_beta ? " weak" : "") << '\n';
  out << "contracting " << setting.rule().describe() << '\n';
  for (NodeId i = 0; i < n; ++i)
    if (setting.routing_cost(i) != 1.0) out << "cost " << i << ' ' << format_real(setting.routing_cost(i)) << '\n';
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = 0; j < n; ++j)
      if (setting.traffic()(i, j) > 0.0)
        out << "traffic " << i << ' ' << j << ' ' << format_real(setting.traffic()(i, j)) << '\n';
}

void write_configuration(std::ostream& out, const Configuration& config) {
  for (const Arc& a : config.contracts().arcs())
    out << "arc " << a.from << ' ' << a.to << ' ' << format_real(config.payment(a.from, a.to)) << '\n';
}

void write_x3c(std::ostream& out, const X3CInstance& instance) {
  for (const auto& name : instance.terminals) out << "terminal " << name << '\n';
  for (const auto& t : instance.triples)
    out << "triple " << instance.terminals[t[0]] << ' ' << instance.terminals[t[1]] << ' '
        << instance.terminals[t[2]] << '\n';
}

}  // namespace netform
