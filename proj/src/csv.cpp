#include "overloadnet/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "overloadnet/errors.hpp"

namespace onet {

std::string format_number(double v) {
  if (v == 0.0) return "0";  // collapses -0 as well
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string summary_csv(const ExperimentConfig& cfg, const Metrics& m) {
  const int C = static_cast<int>(cfg.classes.size());
  std::ostringstream out;
  out << "class,destination,delivered,dropped,throughput";
  for (size_t w = 0; w < cfg.run.intervals.size(); ++w) {
    auto [lo, hi] = cfg.run.intervals[w];
    out << ",throughput[" << lo << ":" << hi << ")";
  }
  out << ",max_Q,max_D,min_D,max_Z,Q_bound\n";
  for (int c = 0; c < C; ++c) {
    double max_q = 0.0, max_d = 0.0, min_d = m.min_d.empty() ? 0.0 : m.min_d[c];
    for (int n = 0; n < cfg.topology.node_count(); ++n) {
      const size_t i = static_cast<size_t>(n) * C + c;
      if (m.max_q[i] > max_q) max_q = m.max_q[i];
      if (m.max_d[i] > max_d) max_d = m.max_d[i];
      if (n == 0 || m.min_d[i] < min_d) min_d = m.min_d[i];
    }
    out << cfg.classes[c].id << ','
        << cfg.topology.node_name(cfg.classes[c].destination) << ','
        << format_number(m.delivered[c]) << ',' << format_number(m.dropped[c]) << ','
        << format_number(m.throughput[c]);
    for (const auto& win : m.window_throughput) out << ',' << format_number(win[c]);
    out << ',' << format_number(max_q) << ',' << format_number(max_d) << ','
        << format_number(min_d) << ','
        << format_number(m.max_z.empty() ? 0.0 : m.max_z[c]) << ','
        << format_number(m.q_bound[c]) << '\n';
  }
  return out.str();
}

std::string timeseries_csv(const ExperimentConfig& cfg, const TimeSeries& ts) {
  const int C = static_cast<int>(cfg.classes.size());
  std::ostringstream out;
  out << "slot,node,class,Q,D,Z\n";
  for (size_t s = 0; s < ts.slots.size(); ++s) {
    for (int n = 0; n < cfg.topology.node_count(); ++n) {
      for (int c = 0; c < C; ++c) {
        const size_t i = static_cast<size_t>(n) * C + c;
        out << ts.slots[s] << ',' << cfg.topology.node_name(n) << ',' << cfg.classes[c].id
            << ',' << format_number(ts.q[s][i]) << ',' << format_number(ts.d[s][i]) << ',';
        if (n == cfg.classes[c].destination) out << format_number(ts.z[s][c]);
        out << '\n';
      }
    }
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) {
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw ConfigError("output", "cannot create directory " + p.parent_path().string());
  }
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  f << content;
  f.close();
  if (!f) throw ConfigError("output", "cannot write " + path);
}

}  // namespace onet
