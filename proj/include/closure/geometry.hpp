#pragma once

#include <Eigen/Dense>

namespace closure {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;

class Rotation;

// Unit quaternion (w, x, y, z). Constructors normalize and pick the canonical
// hemisphere representative: w >= 0, ties broken by the first nonzero
// component being positive.
struct UnitQuaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  UnitQuaternion() = default;
  UnitQuaternion(double w_in, double x_in, double y_in, double z_in);

  Vec4 coeffs() const { return Vec4(w, x, y, z); }
  double dot(const UnitQuaternion& other) const {
    return w * other.w + x * other.x + y * other.y + z * other.z;
  }
  Rotation toRotation() const;
  static UnitQuaternion fromRotation(const Rotation& r);
};

// 3x3 rotation matrix with det = +1. Checked construction validates
// orthonormality to 1e-9; internal operations that produce orthonormal
// matrices by construction use the unchecked path.
class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}

  static Rotation identity() { return Rotation(); }
  static Rotation fromMatrix(const Mat3& m);
  static Rotation fromMatrixUnchecked(const Mat3& m) { return Rotation(m); }

  const Mat3& matrix() const { return m_; }
  Rotation transpose() const { return Rotation(m_.transpose()); }
  UnitQuaternion quaternion() const { return UnitQuaternion::fromRotation(*this); }

  Vec3 operator*(const Vec3& v) const { return m_ * v; }
  Rotation operator*(const Rotation& o) const { return Rotation(m_ * o.m_); }

 private:
  explicit Rotation(const Mat3& m) : m_(m) {}
  Mat3 m_;
};

// Axis-angle with unit axis and angle in [0, pi]. The identity rotation maps
// to (e_x, 0).
struct AxisAngle {
  Vec3 axis = Vec3::UnitX();
  double angle = 0.0;

  static AxisAngle fromRotation(const Rotation& r);
  Vec3 vector() const { return angle * axis; }
};

struct Pose {
  Rotation rotation;
  Vec3 translation = Vec3::Zero();
};

// Geodesic distance on SO(3): arccos((tr(a^T b) - 1)/2), clamped, in [0, pi].
double geodesic_dist_so3(const Rotation& a, const Rotation& b);

// Rodrigues exponential; second-order Taylor branch below angle 1e-10.
Rotation exp_map(const Vec3& v);

// Principal-branch logarithm; throws for angles within 1e-6 of pi.
Vec3 log_map(const Rotation& r);

// Nearest rotation to m in Frobenius norm (polar factor with determinant
// correction). Throws "degenerate projection" when the smallest singular
// value is <= 1e-12.
Rotation project_so3(const Mat3& m);

// Constant-speed geodesic interpolation from a to b, alpha in [0, 1].
Rotation slerp(const Rotation& a, const Rotation& b, double alpha);

// Converts a Frobenius chord length ||R1 - R2||_F in [0, 2*sqrt(2)] to the
// geodesic angle via chord = 2*sqrt(2)*sin(theta/2).
double chord_to_geodesic_radius(double chord);

}  // namespace closure
