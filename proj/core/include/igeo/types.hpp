#pragma once

// Dimension-generic value types shared by every igeo module.

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace igeo {

/// Largest ambient dimension supported by the stack-allocated vector types.
inline constexpr int kMaxDim = 8;

/// Column vector whose length is the runtime ambient dimension (never heap allocated).
using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
/// Small dense matrix, at most kMaxDim x kMaxDim.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

enum class ErrorCode {
  kInvalidArgument,
  kUnsupportedDimension,
  kDegenerateFacet,
  kNotClosed,
  kParse,
  kIo,
  kInvalidFlag,
  kPersistentDegeneracy,
  kDegenerateSlice,
  kInsufficientBudget,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A point of the unit sphere S^{n-1}.
class UnitDirection {
 public:
  /// Normalizes `v`; throws kInvalidArgument for zero or non-finite input.
  explicit UnitDirection(const Vector& v);

  static UnitDirection axis(int n, int k);

  const Vector& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  double dot(const Vector& v) const { return coords_.dot(v); }

 private:
  Vector coords_;
};

/// Oriented line {anchor + t * direction}; the anchor is kept in the
/// orthogonal complement of the direction.
class OrientedLine {
 public:
  /// Line with the given direction passing through `through`.
  OrientedLine(UnitDirection direction, const Vector& through);

  const UnitDirection& direction() const { return direction_; }
  const Vector& anchor() const { return anchor_; }
  int dim() const { return direction_.dim(); }
  Vector point_at(double t) const { return anchor_ + t * direction_.coords(); }

 private:
  UnitDirection direction_;
  Vector anchor_;
};

/// r-dimensional affine subspace: offset + span(basis), basis column-orthonormal.
class AffineFlat {
 public:
  /// Throws kInvalidArgument unless basis^T basis = I within 1e-10 and 1 <= r <= n.
  AffineFlat(Matrix basis, Vector offset);
  /// Linear subspace (offset 0).
  static AffineFlat through_origin(Matrix basis);

  const Matrix& basis() const { return basis_; }
  const Vector& offset() const { return offset_; }
  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }

  /// Orthogonal projector basis * basis^T.
  Matrix projector() const { return basis_ * basis_.transpose(); }

 private:
  Matrix basis_;
  Vector offset_;
};

/// Orthonormal basis (n x (n-k)) of the orthogonal complement of span(basis).
Matrix orthonormal_complement(const Matrix& basis);

/// Modified Gram-Schmidt with one reorthogonalization pass. Columns must be
/// linearly independent; throws kInvalidArgument otherwise.
Matrix orthonormalize(const Matrix& columns);

}  // namespace igeo
