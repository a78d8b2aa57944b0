#include "igeo/types.hpp"

#include <cmath>

namespace igeo {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kUnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::kDegenerateFacet: return "DegenerateFacet";
    case ErrorCode::kNotClosed: return "NotClosed";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kInvalidFlag: return "InvalidFlag";
    case ErrorCode::kPersistentDegeneracy: return "PersistentDegeneracy";
    case ErrorCode::kDegenerateSlice: return "DegenerateSlice";
    case ErrorCode::kInsufficientBudget: return "InsufficientBudget";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

UnitDirection::UnitDirection(const Vector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::kInvalidArgument, "direction must be finite and nonzero");
  }
  coords_ = v / norm;
}

UnitDirection UnitDirection::axis(int n, int k) {
  if (k < 0 || k >= n) throw Error(ErrorCode::kInvalidArgument, "axis index out of range");
  Vector v = Vector::Zero(n);
  v[k] = 1.0;
  return UnitDirection(v);
}

OrientedLine::OrientedLine(UnitDirection direction, const Vector& through)
    : direction_(std::move(direction)) {
  if (through.size() != direction_.dim()) {
    throw Error(ErrorCode::kInvalidArgument, "line point and direction dimensions differ");
  }
  anchor_ = through - direction_.dot(through) * direction_.coords();
}

AffineFlat::AffineFlat(Matrix basis, Vector offset) : basis_(std::move(basis)), offset_(std::move(offset)) {
  const auto n = basis_.rows();
  const auto r = basis_.cols();
  if (r < 1 || r > n || offset_.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "flat dimensions inconsistent");
  }
  const Matrix gram = basis_.transpose() * basis_;
  if ((gram - Matrix::Identity(r, r)).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(ErrorCode::kInvalidArgument, "flat basis is not orthonormal");
  }
}

AffineFlat AffineFlat::through_origin(Matrix basis) {
  const auto n = basis.rows();
  return AffineFlat(std::move(basis), Vector::Zero(n));
}

Matrix orthonormalize(const Matrix& columns) {
  Matrix q = columns;
  for (int j = 0; j < q.cols(); ++j) {
    const double original = q.col(j).norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
    }
    const double norm = q.col(j).norm();
    if (!(norm > 1e-12 * std::max(original, 1e-300))) {
      throw Error(ErrorCode::kInvalidArgument, "columns are linearly dependent");
    }
    q.col(j) /= norm;
  }
  return q;
}

Matrix orthonormal_complement(const Matrix& basis) {
  const int n = static_cast<int>(basis.rows());
  const int k = static_cast<int>(basis.cols());
  Matrix out(n, n - k);
  Matrix current = basis;
  bool used[kMaxDim] = {};
  for (int c = 0; c < n - k; ++c) {
    // Greedy: the standard axis with the largest residual keeps the basis well conditioned.
    int best = -1;
    double best_norm = -1.0;
    Vector best_vec;
    for (int a = 0; a < n; ++a) {
      if (used[a]) continue;
      Vector v = Vector::Zero(n);
      v[a] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < current.cols(); ++j) v -= current.col(j).dot(v) * current.col(j);
      }
      const double norm = v.norm();
      if (norm > best_norm) {
        best_norm = norm;
        best = a;
        best_vec = v;
      }
    }
    used[best] = true;
    best_vec /= best_norm;
    out.col(c) = best_vec;
    current.conservativeResize(n, current.cols() + 1);
    current.col(current.cols() - 1) = best_vec;
  }
  return out;
}

}  // namespace igeo
