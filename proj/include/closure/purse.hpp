#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <limits>
#include <span>
#include <variant>
#include <vector>

#include "closure/geometry.hpp"

namespace closure {

// Positive-definite weight matrix plus bound, stored as the upper-triangular
// Cholesky factor U with Lambda = U^T U so that ||e||_Lambda = ||U e||.
template <int M>
struct WeightedBound {
  using Mat = Eigen::Matrix<double, M, M>;
  using Vec = Eigen::Matrix<double, M, 1>;

  Mat chol_upper = Mat::Identity();
  double beta = 1.0;

  WeightedBound() = default;

  // Validates symmetry (1e-12 relative), positive definiteness, beta > 0.
  static WeightedBound fromLambda(const Mat& lambda, double beta);

  // Scaled-identity weight: Lambda = scale * I.
  static WeightedBound isotropic(double scale, double beta);

  double weightedNorm(const Vec& e) const { return (chol_upper * e).norm(); }
  Mat lambda() const { return chol_upper.transpose() * chol_upper; }
};

struct Constraint2D3D {
  Vec2 image_point;   // z_i, normalized image coordinates
  Vec3 world_point;   // Z_i, meters
  WeightedBound<2> bound;
};

struct Purse2D3D {
  std::vector<Constraint2D3D> constraints;
};

struct Constraint3D3D {
  Vec3 source;  // a_i
  Vec3 target;  // b_i
  WeightedBound<3> bound;
};

struct Purse3D3D {
  std::vector<Constraint3D3D> constraints;
};

struct ConstraintReg {
  Rotation rotation_hypothesis;
  Vec3 translation_hypothesis;
  WeightedBound<9> rotation_bound;
  WeightedBound<3> translation_bound;
};

struct PurseReg {
  std::vector<ConstraintReg> constraints;
};

using Purse = std::variant<Purse2D3D, Purse3D3D, PurseReg>;

enum class ConstraintFamily { kSingle, kRotation, kTranslation };

inline constexpr std::size_t kNoBinding = static_cast<std::size_t>(-1);

// Minimum slack over all constraints. For the 2D-3D and 3D-3D variants the
// value carries the units of beta; for the regression variant each family's
// slack is normalized by its own beta (value = min over constraints of
// 1 - ||g||/beta) since the rotation and translation bounds mix units.
struct Margin {
  double value = std::numeric_limits<double>::infinity();
  std::size_t binding_index = kNoBinding;
  ConstraintFamily family = ConstraintFamily::kSingle;
};

// Pinhole normalization (v1/v3, v2/v3); throws "point at/behind camera" when
// v3 <= 1e-9.
Vec2 camera_project(const Vec3& v);

inline constexpr double kDepthFloor = 1e-9;

Vec2 residual(const Purse2D3D& purse, const Pose& pose, std::size_t i);
Vec3 residual(const Purse3D3D& purse, const Pose& pose, std::size_t i);

struct RegResidual {
  Eigen::Matrix<double, 9, 1> rotation;  // vec(R) - vec(R_i), column-major
  Vec3 translation;                      // t - t_i
};
RegResidual residual(const PurseReg& purse, const Pose& pose, std::size_t i);

Margin boundary_margin(const Purse2D3D& purse, const Pose& pose);
Margin boundary_margin(const Purse3D3D& purse, const Pose& pose);
Margin boundary_margin(const PurseReg& purse, const Pose& pose);
Margin boundary_margin(const Purse& purse, const Pose& pose);

bool in_purse(const Purse2D3D& purse, const Pose& pose);
bool in_purse(const Purse3D3D& purse, const Pose& pose);
bool in_purse(const PurseReg& purse, const Pose& pose);
bool in_purse(const Purse& purse, const Pose& pose);

struct BatchMembership {
  std::vector<char> inside;
  std::vector<Margin> margins;
};

// Elementwise boundary_margin/in_purse; output order matches input order and
// is identical regardless of the thread count.
BatchMembership batch_in_purse(const Purse& purse, std::span<const Pose> poses,
                               int threads = 1);

std::size_t constraint_count(const Purse& purse);
double min_beta(const Purse& purse);

// Column-major vectorization used by the regression residuals.
inline Eigen::Matrix<double, 9, 1> vec_mat3(const Mat3& m) {
  return Eigen::Map<const Eigen::Matrix<double, 9, 1>>(m.data());
}

}  // namespace closure
