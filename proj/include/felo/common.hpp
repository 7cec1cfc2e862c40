#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace felo {

using Scalar = double;

template <typename S>
using MatrixT = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename S>
using VectorT = Eigen::Matrix<S, Eigen::Dynamic, 1>;

// All numeric state is carried by dense f64 Eigen types; matrices are
// row-major so flat views and file payloads share one element order.
using Matrix = MatrixT<Scalar>;
using Vector = VectorT<Scalar>;
using Index = Eigen::Index;

/// Invalid configuration: bad shapes, bad parameters, bad config keys.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed external data: files, labels, checkpoints.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A federation-protocol contract was violated.
struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An API was called out of order or with inconsistent state.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string shape_string(Index rows, Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!m.allFinite()) {
    throw ProtocolError(std::string("non-finite values in ") + what);
  }
}

}  // namespace felo
