#include "lrsta/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lrsta/errors.hpp"

namespace lrsta::io {

using nlohmann::json;

namespace {

constexpr const char* kScheduleColumns = "t,Re(Omega_p),Im(Omega_p),Re(Omega_s),Im(Omega_s),Delta";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() && s.find_first_not_of(" \t\r", used) != std::string::npos) {
      throw std::invalid_argument(s);
    }
    return v;
  } catch (const std::exception&) {
    throw IoError("malformed number '" + s + "' on line " + std::to_string(line_no));
  }
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";  // no "-0" in outputs
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> uniform_times(double t0, double t1, std::size_t count) {
  if (count < 2) return {t0};
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  out.back() = t1;
  return out;
}

std::vector<double> schedule_sample_times(const PulseSchedule& schedule, int samples_per_period) {
  if (samples_per_period < 1) throw ArgumentError("samples_per_period must be positive");
  const double carrier = std::max(schedule.system.omega_p, schedule.system.omega_s);
  const double periods = (schedule.t_end() - schedule.t_start()) * carrier / (2.0 * kPi);
  const auto intervals =
      static_cast<std::size_t>(std::max(1.0, std::ceil(periods * samples_per_period - 1e-9)));
  return uniform_times(schedule.t_start(), schedule.t_end(), intervals + 1);
}

void write_schedule_csv(std::ostream& out, const PulseSchedule& schedule,
                        const std::vector<double>& times) {
  std::vector<DriveSample> rows;
  rows.reserve(times.size());
  bool resonant = true;
  for (double t : times) {
    rows.push_back(schedule.at(t));
    if (rows.back().Delta_p != rows.back().Delta_s) resonant = false;
  }

  json header;
  header["schema_version"] = kSchemaVersion;
  header["kind"] = "pulse_schedule";
  header["strategy"] = to_string(schedule.strategy);
  header["omega_p"] = schedule.system.omega_p;
  header["omega_s"] = schedule.system.omega_s;
  header["omega"] = schedule.omega();
  header["t_start"] = schedule.t_start();
  header["t_end"] = schedule.t_end();
  header["params"] = schedule.params;

  out << "# " << header.dump() << '\n';
  out << kScheduleColumns << (resonant ? "" : ",Delta_s") << '\n';
  for (std::size_t i = 0; i < times.size(); ++i) {
    const DriveSample& d = rows[i];
    out << format_double(times[i]) << ',' << format_double(d.Omega_p.real()) << ','
        << format_double(d.Omega_p.imag()) << ',' << format_double(d.Omega_s.real()) << ','
        << format_double(d.Omega_s.imag()) << ',' << format_double(d.Delta_p);
    if (!resonant) out << ',' << format_double(d.Delta_s);
    out << '\n';
  }
}

std::string schedule_csv(const PulseSchedule& schedule, const std::vector<double>& times) {
  std::ostringstream out;
  write_schedule_csv(out, schedule, times);
  return out.str();
}

PulseSchedule read_schedule_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw IoError("schedule file must start with a '# {json}' header line");
  }
  json header;
  try {
    header = json::parse(line.substr(2));
  } catch (const json::exception& e) {
    throw IoError(std::string("invalid schedule header: ") + e.what());
  }
  if (header.value("schema_version", 0) != kSchemaVersion) {
    throw IoError("unsupported schedule schema version");
  }

  ++line_no;
  if (!std::getline(in, line)) throw IoError("schedule file has no column row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const bool has_delta_s = line == std::string(kScheduleColumns) + ",Delta_s";
  if (line != kScheduleColumns && !has_delta_s) throw IoError("unexpected schedule columns: " + line);
  const std::size_t width = has_delta_s ? 7 : 6;

  struct Row {
    double t;
    DriveSample d;
  };
  auto rows = std::make_shared<std::vector<Row>>();
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv(line);
    if (cells.size() != width) {
      throw IoError("expected " + std::to_string(width) + " columns on line " +
                    std::to_string(line_no));
    }
    Row r;
    r.t = parse_double(cells[0], line_no);
    r.d.Omega_p = {parse_double(cells[1], line_no), parse_double(cells[2], line_no)};
    r.d.Omega_s = {parse_double(cells[3], line_no), parse_double(cells[4], line_no)};
    r.d.Delta_p = parse_double(cells[5], line_no);
    r.d.Delta_s = has_delta_s ? parse_double(cells[6], line_no) : r.d.Delta_p;
    if (!rows->empty() && !(r.t > rows->back().t)) {
      throw IoError("times must increase strictly (line " + std::to_string(line_no) + ")");
    }
    rows->push_back(r);
  }
  if (rows->size() < 2) throw IoError("schedule file needs at least two samples");

  auto drive = [rows](double t) {
    const auto& v = *rows;
    auto it = std::upper_bound(v.begin(), v.end(), t, [](double x, const Row& r) { return x < r.t; });
    if (it == v.begin()) return v.front().d;
    if (it == v.end()) return v.back().d;
    const Row& hi = *it;
    const Row& lo = *(it - 1);
    if (t == lo.t) return lo.d;
    const double w = (t - lo.t) / (hi.t - lo.t);
    DriveSample d;
    d.Omega_p = lo.d.Omega_p + w * (hi.d.Omega_p - lo.d.Omega_p);
    d.Omega_s = lo.d.Omega_s + w * (hi.d.Omega_s - lo.d.Omega_s);
    d.Delta_p = lo.d.Delta_p + w * (hi.d.Delta_p - lo.d.Delta_p);
    d.Delta_s = lo.d.Delta_s + w * (hi.d.Delta_s - lo.d.Delta_s);
    return d;
  };

  try {
    std::map<std::string, double> params = header.value("params", std::map<std::string, double>{});
    PulseSchedule schedule{SystemParams(header.at("omega_p").get<double>(),
                                        header.at("omega_s").get<double>(), drive,
                                        rows->front().t, rows->back().t),
                           strategy_from_string(header.value("strategy", "general")),
                           std::move(params), true, {}};
    schedule.knots.reserve(rows->size());
    for (const Row& r : *rows) schedule.knots.push_back(r.t);
    return schedule;
  } catch (const json::exception& e) {
    throw IoError(std::string("invalid schedule header: ") + e.what());
  }
}

PulseSchedule load_schedule_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_schedule_csv(in);
}

void write_report_csv(std::ostream& out, const TransferReport& report, double time_unit) {
  if (!(time_unit > 0.0)) throw ArgumentError("time unit must be positive");
  out << "t,P1,P2,P3,norm\n";
  for (std::size_t i = 0; i < report.times.size(); ++i) {
    const auto& p = report.populations[i];
    out << format_double(report.times[i] / time_unit) << ',' << format_double(p[0]) << ','
        << format_double(p[1]) << ',' << format_double(p[2]) << ','
        << format_double(report.norms[i]) << '\n';
  }
}

std::string report_csv(const TransferReport& report, double time_unit) {
  std::ostringstream out;
  write_report_csv(out, report, time_unit);
  return out.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lrsta::io
