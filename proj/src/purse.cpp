#include "closure/purse.hpp"

#include <stdexcept>

#include "closure/parallel.hpp"

namespace closure {

template <int M>
WeightedBound<M> WeightedBound<M>::fromLambda(const Mat& lambda, double beta) {
  double scale = 1.0 + lambda.cwiseAbs().maxCoeff();
  if ((lambda - lambda.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("weight matrix is not symmetric");
  }
  Eigen::LLT<Mat> llt(lambda);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("weight matrix is not positive definite");
  }
  if (!(beta > 0.0)) {
    throw std::invalid_argument("bound must be positive");
  }
  WeightedBound out;
  out.chol_upper = Mat(llt.matrixU());
  out.beta = beta;
  return out;
}

template <int M>
WeightedBound<M> WeightedBound<M>::isotropic(double scale, double beta) {
  if (!(scale > 0.0)) {
    throw std::invalid_argument("weight scale must be positive");
  }
  if (!(beta > 0.0)) {
    throw std::invalid_argument("bound must be positive");
  }
  WeightedBound out;
  out.chol_upper = std::sqrt(scale) * Mat::Identity();
  out.beta = beta;
  return out;
}

template struct WeightedBound<2>;
template struct WeightedBound<3>;
template struct WeightedBound<9>;

Vec2 camera_project(const Vec3& v) {
  if (!(v.z() > kDepthFloor)) {
    throw std::domain_error("point at/behind camera");
  }
  return Vec2(v.x() / v.z(), v.y() / v.z());
}

Vec2 residual(const Purse2D3D& purse, const Pose& pose, std::size_t i) {
  const Constraint2D3D& c = purse.constraints.at(i);
  Vec3 v = pose.rotation * c.world_point + pose.translation;
  return c.image_point - camera_project(v);
}

Vec3 residual(const Purse3D3D& purse, const Pose& pose, std::size_t i) {
  const Constraint3D3D& c = purse.constraints.at(i);
  return c.target - (pose.rotation * c.source + pose.translation);
}

RegResidual residual(const PurseReg& purse, const Pose& pose, std::size_t i) {
  const ConstraintReg& c = purse.constraints.at(i);
  RegResidual out;
  out.rotation = vec_mat3(pose.rotation.matrix()) - vec_mat3(c.rotation_hypothesis.matrix());
  out.translation = pose.translation - c.translation_hypothesis;
  return out;
}

namespace {

// Shared min-slack scan; ties resolve to the lowest index because only a
// strictly smaller slack replaces the incumbent.
struct MinTracker {
  Margin margin;
  void consider(double slack, std::size_t index, ConstraintFamily family) {
    if (slack < margin.value) {
      margin.value = slack;
      margin.binding_index = index;
      margin.family = family;
    }
  }
};

}  // namespace

Margin boundary_margin(const Purse2D3D& purse, const Pose& pose) {
  // A pose that puts any keypoint at or behind the camera is outside the set;
  // the sentinel keeps the walkers' ordering total and finite.
  for (std::size_t i = 0; i < purse.constraints.size(); ++i) {
    Vec3 v = pose.rotation * purse.constraints[i].world_point + pose.translation;
    if (!(v.z() > kDepthFloor)) {
      double beta_min = std::numeric_limits<double>::infinity();
      for (const auto& c : purse.constraints) beta_min = std::min(beta_min, c.bound.beta);
      return Margin{-beta_min - 1.0, i, ConstraintFamily::kSingle};
    }
  }
  MinTracker tracker;
  for (std::size_t i = 0; i < purse.constraints.size(); ++i) {
    const Constraint2D3D& c = purse.constraints[i];
    Vec3 v = pose.rotation * c.world_point + pose.translation;
    Vec2 g = c.image_point - Vec2(v.x() / v.z(), v.y() / v.z());
    tracker.consider(c.bound.beta - c.bound.weightedNorm(g), i, ConstraintFamily::kSingle);
  }
  return tracker.margin;
}

Margin boundary_margin(const Purse3D3D& purse, const Pose& pose) {
  MinTracker tracker;
  for (std::size_t i = 0; i < purse.constraints.size(); ++i) {
    const Constraint3D3D& c = purse.constraints[i];
    Vec3 g = c.target - (pose.rotation * c.source + pose.translation);
    tracker.consider(c.bound.beta - c.bound.weightedNorm(g), i, ConstraintFamily::kSingle);
  }
  return tracker.margin;
}

Margin boundary_margin(const PurseReg& purse, const Pose& pose) {
  MinTracker tracker;
  Eigen::Matrix<double, 9, 1> vr = vec_mat3(pose.rotation.matrix());
  for (std::size_t i = 0; i < purse.constraints.size(); ++i) {
    const ConstraintReg& c = purse.constraints[i];
    Eigen::Matrix<double, 9, 1> gr = vr - vec_mat3(c.rotation_hypothesis.matrix());
    tracker.consider(1.0 - c.rotation_bound.weightedNorm(gr) / c.rotation_bound.beta, i,
                     ConstraintFamily::kRotation);
    Vec3 gt = pose.translation - c.translation_hypothesis;
    tracker.consider(1.0 - c.translation_bound.weightedNorm(gt) / c.translation_bound.beta, i,
                     ConstraintFamily::kTranslation);
  }
  return tracker.margin;
}

Margin boundary_margin(const Purse& purse, const Pose& pose) {
  return std::visit([&](const auto& p) { return boundary_margin(p, pose); }, purse);
}

bool in_purse(const Purse2D3D& purse, const Pose& pose) {
  return boundary_margin(purse, pose).value >= 0.0;
}

bool in_purse(const Purse3D3D& purse, const Pose& pose) {
  return boundary_margin(purse, pose).value >= 0.0;
}

bool in_purse(const PurseReg& purse, const Pose& pose) {
  return boundary_margin(purse, pose).value >= 0.0;
}

bool in_purse(const Purse& purse, const Pose& pose) {
  return boundary_margin(purse, pose).value >= 0.0;
}

BatchMembership batch_in_purse(const Purse& purse, std::span<const Pose> poses, int threads) {
  BatchMembership out;
  out.inside.resize(poses.size());
  out.margins.resize(poses.size());
  parallel_for(poses.size(), threads, [&](std::size_t i) {
    out.margins[i] = boundary_margin(purse, poses[i]);
    out.inside[i] = out.margins[i].value >= 0.0 ? 1 : 0;
  });
  return out;
}

std::size_t constraint_count(const Purse& purse) {
  return std::visit([](const auto& p) { return p.constraints.size(); }, purse);
}

double min_beta(const Purse& purse) {
  double beta = std::numeric_limits<double>::infinity();
  if (const auto* p = std::get_if<Purse2D3D>(&purse)) {
    for (const auto& c : p->constraints) beta = std::min(beta, c.bound.beta);
  } else if (const auto* p3 = std::get_if<Purse3D3D>(&purse)) {
    for (const auto& c : p3->constraints) beta = std::min(beta, c.bound.beta);
  } else {
    const auto& pr = std::get<PurseReg>(purse);
    for (const auto& c : pr.constraints) {
      beta = std::min(beta, std::min(c.rotation_bound.beta, c.translation_bound.beta));
    }
  }
  return beta;
}

}  // namespace closure
