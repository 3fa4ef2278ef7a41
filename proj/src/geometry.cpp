#include "closure/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace closure {

namespace {

Mat3 skew(const Vec3& v) {
  Mat3 k;
  k << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
  return k;
}

double clamp_unit(double x) { return std::max(-1.0, std::min(1.0, x)); }

}  // namespace

UnitQuaternion::UnitQuaternion(double w_in, double x_in, double y_in, double z_in)
    : w(w_in), x(x_in), y(y_in), z(z_in) {
  double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("quaternion must be nonzero and finite");
  }
  w /= n;
  x /= n;
  y /= n;
  z /= n;
  bool flip = w < 0.0;
  if (w == 0.0) {
    if (x != 0.0) {
      flip = x < 0.0;
    } else if (y != 0.0) {
      flip = y < 0.0;
    } else {
      flip = z < 0.0;
    }
  }
  if (flip) {
    w = -w;
    x = -x;
    y = -y;
    z = -z;
  }
}

Rotation UnitQuaternion::toRotation() const {
  Mat3 m;
  m << 1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y),
      2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x),
      2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y);
  return Rotation::fromMatrixUnchecked(m);
}

// Shepperd's branch selection keeps the conversion stable for all angles.
UnitQuaternion UnitQuaternion::fromRotation(const Rotation& r) {
  const Mat3& m = r.matrix();
  double t;
  double qw, qx, qy, qz;
  if (m(2, 2) < 0.0) {
    if (m(0, 0) > m(1, 1)) {
      t = 1.0 + m(0, 0) - m(1, 1) - m(2, 2);
      qx = t;
      qy = m(0, 1) + m(1, 0);
      qz = m(2, 0) + m(0, 2);
      qw = m(2, 1) - m(1, 2);
    } else {
      t = 1.0 - m(0, 0) + m(1, 1) - m(2, 2);
      qx = m(0, 1) + m(1, 0);
      qy = t;
      qz = m(1, 2) + m(2, 1);
      qw = m(0, 2) - m(2, 0);
    }
  } else {
    if (m(0, 0) < -m(1, 1)) {
      t = 1.0 - m(0, 0) - m(1, 1) + m(2, 2);
      qx = m(2, 0) + m(0, 2);
      qy = m(1, 2) + m(2, 1);
      qz = t;
      qw = m(1, 0) - m(0, 1);
    } else {
      t = 1.0 + m(0, 0) + m(1, 1) + m(2, 2);
      qx = m(2, 1) - m(1, 2);
      qy = m(0, 2) - m(2, 0);
      qz = m(1, 0) - m(0, 1);
      qw = t;
    }
  }
  return UnitQuaternion(qw, qx, qy, qz);
}

Rotation Rotation::fromMatrix(const Mat3& m) {
  if ((m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("matrix is not orthonormal");
  }
  if (std::abs(m.determinant() - 1.0) > 1e-9) {
    throw std::invalid_argument("matrix determinant is not +1");
  }
  return Rotation(m);
}

AxisAngle AxisAngle::fromRotation(const Rotation& r) {
  UnitQuaternion q = r.quaternion();
  double s = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  AxisAngle out;
  out.angle = 2.0 * std::atan2(s, q.w);
  if (s > 1e-300) {
    out.axis = Vec3(q.x / s, q.y / s, q.z / s);
  }
  return out;
}

double geodesic_dist_so3(const Rotation& a, const Rotation& b) {
  // tr(a^T b) as an elementwise product keeps the evaluation bitwise
  // symmetric in the two arguments.
  double tr = a.matrix().cwiseProduct(b.matrix()).sum();
  return std::acos(clamp_unit(0.5 * (tr - 1.0)));
}

Rotation exp_map(const Vec3& v) {
  double theta = v.norm();
  Mat3 k = skew(v);
  if (theta < 1e-10) {
    return Rotation::fromMatrixUnchecked(Mat3::Identity() + k + 0.5 * (k * k));
  }
  Mat3 k1 = k / theta;
  Mat3 m = Mat3::Identity() + std::sin(theta) * k1 + (1.0 - std::cos(theta)) * (k1 * k1);
  return Rotation::fromMatrixUnchecked(m);
}

Vec3 log_map(const Rotation& r) {
  UnitQuaternion q = r.quaternion();  // canonical: w >= 0 so angle <= pi
  Vec3 v(q.x, q.y, q.z);
  double s = v.norm();
  double angle = 2.0 * std::atan2(s, q.w);
  if (angle >= M_PI - 1e-6) {
    throw std::domain_error("angle near branch cut");
  }
  if (s < 1e-12) {
    return 2.0 / q.w * v;
  }
  return (angle / s) * v;
}

Rotation project_so3(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (!(svd.singularValues()(2) > 1e-12)) {
    throw std::invalid_argument("degenerate projection");
  }
  Mat3 uv = svd.matrixU() * svd.matrixV().transpose();
  Mat3 d = Mat3::Identity();
  d(2, 2) = uv.determinant() > 0.0 ? 1.0 : -1.0;
  return Rotation::fromMatrixUnchecked(svd.matrixU() * d * svd.matrixV().transpose());
}

Rotation slerp(const Rotation& a, const Rotation& b, double alpha) {
  if (alpha < 0.0 || alpha > 1.0) {
    throw std::invalid_argument("slerp ratio outside [0, 1]");
  }
  Vec3 rel = log_map(a.transpose() * b);  // throws near the antipode
  return a * exp_map(alpha * rel);
}

double chord_to_geodesic_radius(double chord) {
  const double max_chord = 2.0 * std::sqrt(2.0);
  if (chord < -1e-12 || chord > max_chord + 1e-12) {
    throw std::invalid_argument("chord length outside [0, 2*sqrt(2)]");
  }
  double c = std::max(0.0, std::min(max_chord, chord));
  return 2.0 * std::asin(c / max_chord);
}

}  // namespace closure
