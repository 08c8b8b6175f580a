#pragma once

#include <stdexcept>
#include <string>

namespace fedelastic {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IngestionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PartitionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivergedSolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MeteringError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DiagnosticsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fedelastic
