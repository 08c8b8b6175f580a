#pragma once

#include <Eigen/Core>
#include <vector>

#include "fedelastic/errors.hpp"

namespace fedelastic {

// In-memory dataset. Labels are class ids (stored as doubles) for
// classification models and real targets for regression.
struct Dataset {
  Eigen::MatrixXd features;  // n x input_dim
  Eigen::VectorXd labels;    // n

  Eigen::Index n() const { return features.rows(); }
  Eigen::Index input_dim() const { return features.cols(); }

  Dataset subset(const std::vector<int>& indices) const {
    Dataset out;
    out.features.resize(static_cast<Eigen::Index>(indices.size()), features.cols());
    out.labels.resize(static_cast<Eigen::Index>(indices.size()));
    for (std::size_t i = 0; i < indices.size(); ++i) {
      out.features.row(static_cast<Eigen::Index>(i)) = features.row(indices[i]);
      out.labels(static_cast<Eigen::Index>(i)) = labels(indices[i]);
    }
    return out;
  }
};

// Mini-batch as indices into a Dataset.
struct Batch {
  std::vector<int> indices;
};

inline void validate_batch(const Batch& b, const Dataset& d) {
  if (b.indices.empty()) throw ConfigError("batch must contain at least one index");
  std::vector<bool> seen(static_cast<std::size_t>(d.n()), false);
  for (int i : b.indices) {
    if (i < 0 || i >= d.n()) throw ConfigError("batch index out of range");
    if (seen[static_cast<std::size_t>(i)]) throw ConfigError("batch indices must be unique");
    seen[static_cast<std::size_t>(i)] = true;
  }
}

}  // namespace fedelastic
