#pragma once

#include <span>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace synthbench {

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

/// SHA-256 over the IEEE-754 bytes of a matrix in column-major order,
/// prefixed by its shape. Used to fingerprint test partitions.
std::string matrix_fingerprint(const Eigen::MatrixXd& m);

}  // namespace synthbench
