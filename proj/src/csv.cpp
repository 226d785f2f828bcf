#include "mjp/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mjp/errors.hpp"

namespace mjp {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{})
    throw ConfigError("csv: cannot parse number '" + s + "'");
  return v;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open for reading: " + path);
  return in;
}

}  // namespace

double Trace::total_seconds() const {
  double total = 0.0;
  for (double s : seconds) total += s;
  return total;
}

std::vector<double> Trace::param_column(std::size_t j) const {
  std::vector<double> out;
  out.reserve(params.size());
  for (const auto& row : params) out.push_back(row[j]);
  return out;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out = open_out(path);
  const int d = traj.states.front().dim();
  out << "time";
  for (int c = 0; c < d; ++c) out << ",coord_" << c;
  out << "\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    out << format_double(traj.times[i]);
    for (int c = 0; c < d; ++c) out << ',' << traj.states[i][c];
    out << "\n";
  }
}

Trajectory read_trajectory_csv(const std::string& path, double horizon) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty trajectory csv");
  const std::size_t d = split_line(line).size() - 1;
  Trajectory traj;
  traj.horizon = horizon;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_line(line);
    if (fields.size() != d + 1)
      throw ConfigError("trajectory csv: ragged row");
    traj.times.push_back(parse_double(fields[0]));
    State x(static_cast<int>(d));
    for (std::size_t c = 0; c < d; ++c)
      x[static_cast<int>(c)] = static_cast<Coord>(parse_double(fields[c + 1]));
    traj.states.push_back(x);
  }
  traj.validate();
  return traj;
}

void write_observations_csv(const ObservationSet& obs,
                            const std::string& path) {
  std::ofstream out = open_out(path);
  std::size_t width = 0;
  for (const auto& v : obs.values) width = std::max(width, v.size());
  out << "time,kind";
  for (std::size_t c = 0; c < width; ++c) out << ",value_" << c;
  out << "\n";
  const char* kind = obs.kind == ObservationSet::Kind::NoisyState
                         ? "noisy_state"
                         : obs.kind == ObservationSet::Kind::ExactState
                               ? "exact_state"
                               : "jump";
  for (std::size_t r = 0; r < obs.times.size(); ++r) {
    out << format_double(obs.times[r]) << ',' << kind;
    if (r < obs.values.size())
      for (double v : obs.values[r]) out << ',' << format_double(v);
    out << "\n";
  }
}

ObservationSet read_observations_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty observation csv");
  ObservationSet obs;
  bool kind_set = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_line(line);
    if (fields.size() < 2) throw ConfigError("observation csv: ragged row");
    obs.times.push_back(parse_double(fields[0]));
    const std::string& kind = fields[1];
    ObservationSet::Kind k;
    if (kind == "noisy_state")
      k = ObservationSet::Kind::NoisyState;
    else if (kind == "exact_state")
      k = ObservationSet::Kind::ExactState;
    else if (kind == "jump")
      k = ObservationSet::Kind::JumpTimes;
    else
      throw ConfigError("observation csv: unknown kind '" + kind + "'");
    if (kind_set && k != obs.kind)
      throw ConfigError("observation csv: mixed kinds");
    obs.kind = k;
    kind_set = true;
    std::vector<double> value;
    for (std::size_t c = 2; c < fields.size(); ++c)
      value.push_back(parse_double(fields[c]));
    if (!value.empty()) obs.values.push_back(std::move(value));
  }
  return obs;
}

void write_trace_csv(const Trace& trace, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "sweep";
  for (std::size_t j = 0; j < trace.param_names.size(); ++j)
    out << ",param_" << j;
  out << ",log_density,n_jumps,seconds\n";
  out << "# params:";
  for (const auto& name : trace.param_names) out << ' ' << name;
  out << "\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << i;
    for (double p : trace.params[i]) out << ',' << format_double(p);
    out << ',' << format_double(trace.log_density[i]) << ','
        << trace.n_jumps[i] << ',' << format_double(trace.seconds[i]) << "\n";
  }
}

Trace read_trace_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty trace csv");
  const auto header = split_line(line);
  if (header.size() < 4) throw ConfigError("trace csv: bad header");
  const std::size_t n_params = header.size() - 4;
  Trace trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::stringstream ss(line.substr(1));
      std::string word;
      ss >> word;  // "params:"
      while (ss >> word) trace.param_names.push_back(word);
      continue;
    }
    const auto fields = split_line(line);
    if (fields.size() != header.size())
      throw ConfigError("trace csv: ragged row");
    std::vector<double> row;
    for (std::size_t j = 0; j < n_params; ++j)
      row.push_back(parse_double(fields[1 + j]));
    trace.params.push_back(std::move(row));
    trace.log_density.push_back(parse_double(fields[1 + n_params]));
    trace.n_jumps.push_back(
        static_cast<std::int64_t>(parse_double(fields[2 + n_params])));
    trace.seconds.push_back(parse_double(fields[3 + n_params]));
  }
  if (trace.param_names.size() != n_params)
    trace.param_names.resize(n_params, "param");
  return trace;
}

void write_mean_path_csv(const MeanPath& path, const std::string& file) {
  std::ofstream out = open_out(file);
  out << "time";
  for (int c = 0; c < path.dim(); ++c) out << ",xi_" << c;
  out << "\n";
  for (std::size_t i = 0; i < path.grid().size(); ++i) {
    out << format_double(path.grid()[i]);
    for (int c = 0; c < path.dim(); ++c)
      out << ',' << format_double(path.column(c)[i]);
    out << "\n";
  }
}

void write_band_csv(const PathBand& band, const std::string& file) {
  std::ofstream out = open_out(file);
  const std::size_t d = band.mean.size();
  out << "time";
  for (std::size_t c = 0; c < d; ++c)
    out << ",mean_" << c << ",lower_" << c << ",upper_" << c;
  out << "\n";
  for (std::size_t t = 0; t < band.grid.size(); ++t) {
    out << format_double(band.grid[t]);
    for (std::size_t c = 0; c < d; ++c)
      out << ',' << format_double(band.mean[c][t]) << ','
          << format_double(band.lower[c][t]) << ','
          << format_double(band.upper[c][t]);
    out << "\n";
  }
}

}  // namespace mjp
