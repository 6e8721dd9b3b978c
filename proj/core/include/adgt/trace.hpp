#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "adgt/engine.hpp"

namespace adgt {

// Header: k,residual,consensus_x,consensus_y,alpha_min,alpha_mean,alpha_max,delta_alpha
// Values carry 17 significant digits so doubles survive a round trip.  The
// cumulative wall clock is deliberately excluded: trace bytes depend only on
// the math, never on machine speed.
void write_trace_csv(std::ostream& out, const RunTrace& trace);
void save_trace_csv(const std::string& path, const RunTrace& trace);

std::vector<TraceRow> read_trace_rows(std::istream& in);
std::vector<TraceRow> load_trace_rows(const std::string& path);

// First k among rows with residual <= threshold, or -1.
long rows_iterations_to(const std::vector<TraceRow>& rows, double threshold);

// FNV-1a, used to fingerprint artifacts in run metadata.
std::uint64_t fnv1a64(std::string_view bytes);
std::string to_hex(std::uint64_t value);
std::uint64_t hash_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace adgt
