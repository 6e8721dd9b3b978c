#include "adgt/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "adgt/mixing.hpp"

namespace adgt {

namespace {

struct SparseRow {
  double label = 0.0;
  std::vector<std::pair<int, double>> entries;
};

SparseRow parse_line(const std::string& line, int dim, std::size_t line_no) {
  const auto fail = [line_no](const std::string& what) {
    throw std::runtime_error("libsvm line " + std::to_string(line_no) + ": " + what);
  };
  std::istringstream tokens(line);
  SparseRow row;
  std::string tok;
  if (!(tokens >> tok)) fail("missing label");
  try {
    std::size_t used = 0;
    row.label = std::stod(tok, &used);
    if (used != tok.size()) fail("malformed label '" + tok + "'");
  } catch (const std::logic_error&) {
    fail("malformed label '" + tok + "'");
  }
  int prev_index = 0;
  while (tokens >> tok) {
    const std::size_t colon = tok.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
      fail("malformed feature '" + tok + "'");
    int index = 0;
    double value = 0.0;
    try {
      std::size_t used = 0;
      index = std::stoi(tok.substr(0, colon), &used);
      if (used != colon) fail("malformed index in '" + tok + "'");
      const std::string val = tok.substr(colon + 1);
      value = std::stod(val, &used);
      if (used != val.size()) fail("malformed value in '" + tok + "'");
    } catch (const std::logic_error&) {
      fail("malformed feature '" + tok + "'");
    }
    if (index < 1 || index > dim)
      fail("index " + std::to_string(index) + " outside [1, " + std::to_string(dim) + "]");
    if (index <= prev_index) fail("indices must be strictly increasing");
    if (!std::isfinite(value)) fail("non-finite value");
    prev_index = index;
    row.entries.emplace_back(index - 1, value);
  }
  return row;
}

}  // namespace

SampleSet parse_libsvm(std::istream& in, int dim) {
  if (dim < 1) throw std::invalid_argument("libsvm: dim must be positive");
  std::vector<SparseRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    rows.push_back(parse_line(line, dim, line_no));
  }
  if (rows.empty()) throw std::runtime_error("libsvm: no samples found");

  SampleSet s;
  s.features = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), dim);
  s.labels.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    s.labels[static_cast<Eigen::Index>(i)] = rows[i].label > 0.0 ? 1.0 : -1.0;
    for (const auto& [col, value] : rows[i].entries)
      s.features(static_cast<Eigen::Index>(i), col) = value;
  }
  return s;
}

SampleSet parse_libsvm(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset: " + path);
  return parse_libsvm(in, dim);
}

void write_libsvm(std::ostream& out, const SampleSet& s) {
  for (Eigen::Index i = 0; i < s.features.rows(); ++i) {
    out << (s.labels[i] > 0.0 ? "+1" : "-1");
    for (Eigen::Index j = 0; j < s.features.cols(); ++j) {
      const double v = s.features(i, j);
      if (v != 0.0) out << ' ' << (j + 1) << ':' << format_full(v);
    }
    out << '\n';
  }
}

SampleSet standardize_and_intercept(const SampleSet& s) {
  const Eigen::Index m = s.features.rows();
  const Eigen::Index d = s.features.cols();
  if (m < 2) throw std::invalid_argument("standardize: need at least two samples");

  SampleSet out;
  out.labels = s.labels;
  out.features.resize(m, d + 1);
  for (Eigen::Index j = 0; j < d; ++j) {
    const Eigen::VectorXd col = s.features.col(j);
    const double mean = col.mean();
    const Eigen::VectorXd centered = col.array() - mean;
    const double variance = centered.squaredNorm() / static_cast<double>(m);
    // Exact-zero variance covers the constant columns of binary data; near
    // ties are left to the normalization.
    out.features.col(j) = variance == 0.0 ? Eigen::VectorXd::Zero(m).eval()
                                          : (centered / std::sqrt(variance)).eval();
  }
  out.features.col(d).setOnes();
  return out;
}

Partition partition_uniform(const SampleSet& s, int n, int m_per_agent, std::uint64_t seed) {
  if (n < 1 || m_per_agent < 1)
    throw std::invalid_argument("partition: n and m_per_agent must be positive");
  const auto total = static_cast<std::size_t>(s.size());
  const auto need = static_cast<std::size_t>(n) * static_cast<std::size_t>(m_per_agent);
  if (need > total)
    throw std::invalid_argument("partition: need " + std::to_string(need) + " samples, have " +
                                std::to_string(total));

  Rng rng(seed, streams::kPartition);
  const std::vector<std::size_t> drawn = sample_without_replacement(total, need, rng);
  Partition part;
  part.agent_indices.resize(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    auto& list = part.agent_indices[static_cast<std::size_t>(a)];
    const auto base = static_cast<std::size_t>(a) * static_cast<std::size_t>(m_per_agent);
    list.assign(drawn.begin() + static_cast<std::ptrdiff_t>(base),
                drawn.begin() + static_cast<std::ptrdiff_t>(base + m_per_agent));
    std::sort(list.begin(), list.end());
  }
  return part;
}

SampleSet take_rows(const SampleSet& s, const std::vector<std::size_t>& rows) {
  SampleSet out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), s.features.cols());
  out.labels.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= static_cast<std::size_t>(s.size()))
      throw std::invalid_argument("take_rows: index out of range");
    out.features.row(static_cast<Eigen::Index>(i)) = s.features.row(static_cast<Eigen::Index>(rows[i]));
    out.labels[static_cast<Eigen::Index>(i)] = s.labels[static_cast<Eigen::Index>(rows[i])];
  }
  return out;
}

nlohmann::json partition_to_json(const Partition& p) {
  nlohmann::json lists = nlohmann::json::array();
  for (const auto& list : p.agent_indices) lists.push_back(list);
  return nlohmann::json{{"agent_indices", std::move(lists)}};
}

Partition partition_from_json(const nlohmann::json& j) {
  Partition p;
  std::set<std::size_t> seen;
  for (const auto& list : j.at("agent_indices")) {
    std::vector<std::size_t> indices;
    for (const auto& idx : list) {
      const auto value = idx.get<std::size_t>();
      if (!seen.insert(value).second)
        throw std::invalid_argument("partition: index " + std::to_string(value) + " repeated");
      indices.push_back(value);
    }
    p.agent_indices.push_back(std::move(indices));
  }
  return p;
}

SampleSet make_synthetic_classification(int samples, int dim, double flip_prob, Rng& rng) {
  if (samples < 1 || dim < 1)
    throw std::invalid_argument("synthetic classification: bad shape");
  Eigen::VectorXd hidden(dim);
  for (int j = 0; j < dim; ++j) hidden[j] = rng.uniform(-1.0, 1.0);

  SampleSet s;
  s.features.resize(samples, dim);
  s.labels.resize(samples);
  for (int i = 0; i < samples; ++i) {
    for (int j = 0; j < dim; ++j) s.features(i, j) = rng.uniform(-1.0, 1.0);
    const double margin = s.features.row(i) * hidden;
    double label = margin >= 0.0 ? 1.0 : -1.0;
    // Flip draw always consumed so the stream does not depend on flip_prob.
    if (rng.uniform() < flip_prob) label = -label;
    s.labels[i] = label;
  }
  return s;
}

SampleSet make_synthetic_regression(int samples, int dim, double noise, Rng& rng) {
  if (samples < 1 || dim < 1) throw std::invalid_argument("synthetic regression: bad shape");
  Eigen::VectorXd hidden(dim);
  for (int j = 0; j < dim; ++j) hidden[j] = rng.uniform(-1.0, 1.0);

  SampleSet s;
  s.features.resize(samples, dim);
  s.labels.resize(samples);
  for (int i = 0; i < samples; ++i) {
    for (int j = 0; j < dim; ++j) s.features(i, j) = rng.uniform(-1.0, 1.0);
    s.labels[i] = s.features.row(i) * hidden + noise * rng.uniform(-1.0, 1.0);
  }
  return s;
}

}  // namespace adgt
