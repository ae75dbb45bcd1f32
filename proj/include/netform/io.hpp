#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "netform/game.hpp"
#include "netform/reductions.hpp"

namespace netform {

// Line-oriented text formats; '#' starts a comment.
//
// Instance:
//   nodes 4
//   pi 1
//   cost 2 0.5                  (default 1 for unlisted nodes)
//   traffic 0 3 4               (t_03 = 4)
//   beta auto | beta 40 [weak]
//   contracting default q_p=2 q_n=1
// An instance may also embed a configuration (edge/arc lines, see below), a
// query node (`query u`) and a threshold (`threshold C`).
//
// Configuration / topology:
//   edge 0 1                    (contract low -> high at payment Q)
//   arc 2 1 -1.5                (contract 2 -> 1 paying -1.5)
//
// Graph: `nodes n` and `edge i j`.  X3C: `terminal x` and `triple a b c`.

struct InstanceFile {
  GameSetting setting;
  std::optional<Configuration> config;
  std::optional<NodeId> query;
  std::optional<double> threshold;
};

InstanceFile parse_instance(std::istream& in, const std::string& origin = "<input>");
InstanceFile read_instance(const std::string& path);

/// Edge and arc lines for an n-node game; edges get Q on the final topology.
Configuration parse_configuration(std::istream& in, const GameSetting& setting,
                                  const std::string& origin = "<input>");
Configuration read_configuration(const std::string& path, const GameSetting& setting);

Topology parse_graph(std::istream& in, const std::string& origin = "<input>");
Topology read_graph(const std::string& path);

X3CInstance parse_x3c(std::istream& in, const std::string& origin = "<input>");
X3CInstance read_x3c(const std::string& path);

void write_instance(std::ostream& out, const GameSetting& setting);
void write_configuration(std::ostream& out, const Configuration& config);
void write_x3c(std::ostream& out, const X3CInstance& instance);

/// Writes through `fn` to `path`, throwing IoError when the file cannot be written.
template <typename Fn>
void write_file(const std::string& path, Fn&& fn);

std::string format_real(double x);

}  // namespace netform

#include <fstream>

namespace netform {

template <typename Fn>
void write_file(const std::string& path, Fn&& fn) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  fn(out);
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace netform
