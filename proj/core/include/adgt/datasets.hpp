#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "adgt/rng.hpp"

namespace adgt {

// Dense classification/regression sample matrix with one row per sample.
// Labels live in {-1, +1} after ingestion.
struct SampleSet {
  Eigen::MatrixXd features;
  Eigen::VectorXd labels;
  std::vector<std::string> feature_names;  // optional, may be empty

  Eigen::Index size() const { return features.rows(); }
};

// LIBSVM text format: "label idx:val idx:val ..." with 1-based, strictly
// increasing indices <= dim; absent indices are zero.  Labels <= 0 map to -1,
// positive labels to +1.  Throws std::runtime_error with a line number on
// malformed input, out-of-range indices, or an empty file.
SampleSet parse_libsvm(std::istream& in, int dim);
SampleSet parse_libsvm(const std::string& path, int dim);

void write_libsvm(std::ostream& out, const SampleSet& s);

// Z-scores every column (population denominator: divide by m), leaves
// zero-variance columns all-zero, then appends a column of ones.  Output
// width is dim+1.  Requires m >= 2.
SampleSet standardize_and_intercept(const SampleSet& s);

// Disjoint per-agent index lists into a SampleSet.
struct Partition {
  std::vector<std::vector<std::size_t>> agent_indices;

  int n() const { return static_cast<int>(agent_indices.size()); }
};

// n disjoint lists of m_per_agent indices drawn uniformly without
// replacement; deterministic given the seed.  Requires n*m_per_agent <= m.
Partition partition_uniform(const SampleSet& s, int n, int m_per_agent, std::uint64_t seed);

SampleSet take_rows(const SampleSet& s, const std::vector<std::size_t>& rows);

nlohmann::json partition_to_json(const Partition& p);
Partition partition_from_json(const nlohmann::json& j);

// Synthetic stand-ins matching the shape of dataset-backed problems, used
// when no data file is configured.  Classification: features uniform in
// [-1,1], labels from the sign of a hidden linear model, a fraction
// flip_prob of labels flipped.  Regression: targets from a hidden linear
// model plus uniform noise in [-noise, noise].
SampleSet make_synthetic_classification(int samples, int dim, double flip_prob, Rng& rng);
SampleSet make_synthetic_regression(int samples, int dim, double noise, Rng& rng);

}  // namespace adgt
