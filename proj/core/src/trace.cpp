#include "adgt/trace.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "adgt/mixing.hpp"

namespace adgt {

namespace {
constexpr const char* kHeader =
    "k,residual,consensus_x,consensus_y,alpha_min,alpha_mean,alpha_max,delta_alpha";
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out << kHeader << '\n';
  for (const auto& row : trace.rows) {
    out << row.k << ',' << format_full(row.residual) << ',' << format_full(row.consensus_x)
        << ',' << format_full(row.consensus_y) << ',' << format_full(row.alpha_min) << ','
        << format_full(row.alpha_mean) << ',' << format_full(row.alpha_max) << ','
        << format_full(row.delta_alpha) << '\n';
  }
}

void save_trace_csv(const std::string& path, const RunTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trace: " + path);
  write_trace_csv(out, trace);
}

std::vector<TraceRow> read_trace_rows(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("trace: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw std::runtime_error("trace: unexpected header '" + line + "'");

  std::vector<TraceRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    double values[8];
    for (int f = 0; f < 8; ++f) {
      if (!std::getline(fields, field, ','))
        throw std::runtime_error("trace line " + std::to_string(line_no) + ": expected 8 fields");
      const char* begin = field.c_str();
      char* end = nullptr;
      values[f] = std::strtod(begin, &end);
      if (end == begin)
        throw std::runtime_error("trace line " + std::to_string(line_no) + ": bad number '" +
                                 field + "'");
    }
    TraceRow row;
    row.k = static_cast<long>(values[0]);
    row.residual = values[1];
    row.consensus_x = values[2];
    row.consensus_y = values[3];
    row.alpha_min = values[4];
    row.alpha_mean = values[5];
    row.alpha_max = values[6];
    row.delta_alpha = values[7];
    rows.push_back(row);
  }
  if (rows.empty()) throw std::runtime_error("trace: no rows");
  return rows;
}

std::vector<TraceRow> load_trace_rows(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open trace: " + path);
  return read_trace_rows(in);
}

long rows_iterations_to(const std::vector<TraceRow>& rows, double threshold) {
  for (const auto& row : rows)
    if (row.residual <= threshold) return row.k;
  return -1;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

std::string to_hex(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

std::uint64_t hash_file(const std::string& path) { return fnv1a64(read_text_file(path)); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace adgt
