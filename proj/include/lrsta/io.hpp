#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lrsta/propagator.hpp"
#include "lrsta/synthesis.hpp"

namespace lrsta::io {

inline constexpr int kSchemaVersion = 1;

/// `count` evenly spaced times covering [t0, t1] inclusive.
std::vector<double> uniform_times(double t0, double t1, std::size_t count);

/// Sample times with `samples_per_period` points per carrier period.
std::vector<double> schedule_sample_times(const PulseSchedule& schedule, int samples_per_period);

/// Schedule CSV: one "# {json}" header line (schema_version, omega_p,
/// omega_s, strategy, params, domain), then the column row
///   t,Re(Omega_p),Im(Omega_p),Re(Omega_s),Im(Omega_s),Delta
/// and one row per time. A Delta_s column is appended only when the pump and
/// Stokes detunings differ somewhere.
void write_schedule_csv(std::ostream& out, const PulseSchedule& schedule,
                        const std::vector<double>& times);
std::string schedule_csv(const PulseSchedule& schedule, const std::vector<double>& times);

/// Parses a schedule CSV back into a sampled schedule. Throws IoError on
/// malformed input.
PulseSchedule read_schedule_csv(std::istream& in);
PulseSchedule load_schedule_csv(const std::filesystem::path& path);

/// Report CSV with columns t,P1,P2,P3,norm; t is divided by `time_unit`.
void write_report_csv(std::ostream& out, const TransferReport& report, double time_unit);
std::string report_csv(const TransferReport& report, double time_unit);

/// Writes `content` to a sibling temporary file and renames it over `path`.
/// Throws IoError on failure.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

/// Shortest round-trip decimal representation used in every output file.
std::string format_double(double v);

}  // namespace lrsta::io
