#include "eaforage/trace.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace eaforage::trace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string assignment_label(const RobotRecord& r) {
  if (!r.assignment) return "-";
  return (r.assignment->kind == Target::Kind::Treasure ? "T" : "S") + std::to_string(r.assignment->id);
}

void TraceWriter::header(std::string_view config_hash, std::uint64_t seed, std::string_view strategy,
                         double initial_energy) {
  buf_ += "# config_hash=";
  buf_ += config_hash;
  buf_ += " seed=" + std::to_string(seed);
  buf_ += " strategy=";
  buf_ += strategy;
  buf_ += " initial_energy=" + exact(initial_energy) + "\n";
  buf_ += kColumns;
  buf_ += '\n';
}

void TraceWriter::row(Tick tick, RobotId robot, const Pose& pose, double energy, std::string_view state,
                      std::string_view assignment, std::string_view event) {
  buf_ += std::to_string(tick);
  buf_ += ',';
  buf_ += std::to_string(robot);
  buf_ += ',';
  buf_ += fixed6(pose.x);
  buf_ += ',';
  buf_ += fixed6(pose.y);
  buf_ += ',';
  buf_ += fixed6(pose.heading);
  buf_ += ',';
  buf_ += fixed6(energy);
  buf_ += ',';
  buf_ += state;
  buf_ += ',';
  buf_ += assignment;
  buf_ += ',';
  buf_ += event;
  buf_ += '\n';
}

void TraceWriter::robot_row(Tick tick, const RobotRecord& r, double moved, double drain, double gain) {
  const std::string ledger = "moved=" + exact(moved) + ";drain=" + exact(drain) + ";gain=" + exact(gain);
  row(tick, r.id, r.pose, r.energy, to_string(r.state), assignment_label(r), ledger);
}

void TraceWriter::event_row(Tick tick, const RobotRecord& r, std::string_view event) {
  row(tick, r.id, r.pose, r.energy, to_string(r.state), assignment_label(r), event);
}

void TraceWriter::end_row(Tick tick, std::string_view reason) {
  row(tick, -1, Pose{}, 0.0, "-", "-", std::string("end:") + std::string(reason));
}

std::map<std::string, double> TraceRow::ledger() const {
  std::map<std::string, double> out;
  std::istringstream in(event);
  std::string token;
  while (std::getline(in, token, ';')) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    out[token.substr(0, eq)] = std::strtod(token.c_str() + eq + 1, nullptr);
  }
  return out;
}

ParsedTrace parse(std::string_view text) {
  ParsedTrace out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string kv;
      while (hs >> kv) {
        const auto eq = kv.find('=');
        if (eq != std::string::npos) out.header[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      continue;
    }
    if (line == kColumns) continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    std::string field;
    for (int i = 0; i < 8 && std::getline(ls, field, ','); ++i) f.push_back(field);
    std::string rest;
    std::getline(ls, rest);
    if (f.size() != 8) throw std::runtime_error("malformed trace line: " + line);
    TraceRow r;
    r.tick = std::stoll(f[0]);
    r.robot = std::stoi(f[1]);
    r.x = std::stod(f[2]);
    r.y = std::stod(f[3]);
    r.heading = std::stod(f[4]);
    r.energy = std::stod(f[5]);
    r.state = f[6];
    r.assignment = f[7];
    r.event = rest;
    out.rows.push_back(std::move(r));
  }
  return out;
}

}  // namespace eaforage::trace
