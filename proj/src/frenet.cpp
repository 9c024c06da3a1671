#include "marketfield/frenet.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <utility>

#include "marketfield/quadrature.hpp"

namespace marketfield::frenet {

void FrenetFrame::orthonormalize() {
  tangent = normalized(tangent);
  normal = normalized(normal - tangent * dot(tangent, normal));
  binormal = cross(tangent, normal);
}

double FrenetFrame::gram_deviation() const {
  const Vec3 v[3] = {tangent, normal, binormal};
  double dev = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double g = dot(v[i], v[j]) - (i == j ? 1.0 : 0.0);
      dev = std::max(dev, std::fabs(g));
    }
  }
  return dev;
}

namespace {

// Integration state: position and the three frame vectors.
struct State {
  Vec3 pos, t, n, b;

  State operator+(const State& o) const { return {pos + o.pos, t + o.t, n + o.n, b + o.b}; }
  State operator*(double a) const { return {pos * a, t * a, n * a, b * a}; }
};

State derivative(const State& y, double kappa, double tau) {
  return {y.t, y.n * kappa, y.b * tau - y.t * kappa, y.n * (-tau)};
}

State rk4_step(const State& y, double s, double h, const ScalarFn& kappa, const ScalarFn& tau) {
  const auto f = [&](const State& st, double at) {
    return derivative(st, kappa(at), tau(at));
  };
  const State k1 = f(y, s);
  const State k2 = f(y + k1 * (0.5 * h), s + 0.5 * h);
  const State k3 = f(y + k2 * (0.5 * h), s + 0.5 * h);
  const State k4 = f(y + k3 * h, s + h);
  return y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
}

}  // namespace

Curve integrate_frenet(const ScalarFn& kappa, const ScalarFn& tau, double s_min, double s_max,
                       double step, const FrenetFrame& initial, const Vec3& origin) {
  const double extent = s_max - s_min;
  if (!(step > 0.0)) throw InvalidStep("integrate_frenet: step must be > 0");
  if (!(extent > 0.0) || !std::isfinite(extent)) {
    throw InvalidStep("integrate_frenet: s_range must be finite and nonempty");
  }
  if (step > extent * (1.0 + 1e-12)) {
    throw InvalidStep("integrate_frenet: step exceeds the s_range extent");
  }

  const auto n_steps = static_cast<long>(std::ceil(extent / step - 1e-9));

  Curve curve;
  curve.step = step;
  curve.samples.reserve(static_cast<std::size_t>(n_steps) + 1);

  State y{origin, initial.tangent, initial.normal, initial.binormal};
  FrenetFrame frame = initial;
  frame.orthonormalize();
  y.t = frame.tangent;
  y.n = frame.normal;
  y.b = frame.binormal;

  double s = s_min;
  curve.samples.push_back({s, y.pos, frame});
  for (long i = 0; i < n_steps; ++i) {
    const double s_next = (i + 1 == n_steps) ? s_max : s_min + (i + 1) * step;
    y = rk4_step(y, s, s_next - s, kappa, tau);
    frame.tangent = y.t;
    frame.normal = y.n;
    frame.binormal = y.b;
    frame.orthonormalize();
    y.t = frame.tangent;
    y.n = frame.normal;
    y.b = frame.binormal;
    s = s_next;
    curve.samples.push_back({s, y.pos, frame});
  }
  return curve;
}

std::vector<Vec3> closed_form_curve(const soliton::SolitonParams& params, double t,
                                    double s_min, double s_max, double step) {
  std::vector<Vec3> pts;
  const auto n_steps = static_cast<long>(std::ceil((s_max - s_min) / step - 1e-9));
  pts.reserve(static_cast<std::size_t>(n_steps) + 1);
  for (long i = 0; i <= n_steps; ++i) {
    const double s = (i == n_steps) ? s_max : s_min + i * step;
    const auto c = soliton::choice_components(params, s, t);
    pts.push_back({c.c1, c.c2, c.c3});
  }
  return pts;
}

AlignmentReport align_rigid(const std::vector<Vec3>& moving, const std::vector<Vec3>& fixed) {
  const std::size_t n = std::min(moving.size(), fixed.size());
  AlignmentReport report;
  if (n == 0) return report;

  Eigen::Vector3d cm = Eigen::Vector3d::Zero();
  Eigen::Vector3d cf = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    cm += Eigen::Vector3d(moving[i].x, moving[i].y, moving[i].z);
    cf += Eigen::Vector3d(fixed[i].x, fixed[i].y, fixed[i].z);
  }
  cm /= static_cast<double>(n);
  cf /= static_cast<double>(n);

  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector3d a = Eigen::Vector3d(moving[i].x, moving[i].y, moving[i].z) - cm;
    const Eigen::Vector3d b = Eigen::Vector3d(fixed[i].x, fixed[i].y, fixed[i].z) - cf;
    h += a * b.transpose();
  }

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d r = svd.matrixV() * svd.matrixU().transpose();
  if (r.determinant() < 0.0) {
    Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
    flip(2, 2) = -1.0;
    r = svd.matrixV() * flip * svd.matrixU().transpose();
  }
  const Eigen::Vector3d trans = cf - r * cm;

  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector3d mapped =
        r * Eigen::Vector3d(moving[i].x, moving[i].y, moving[i].z) + trans;
    const Eigen::Vector3d diff = mapped - Eigen::Vector3d(fixed[i].x, fixed[i].y, fixed[i].z);
    ss += diff.squaredNorm();
  }
  report.rms_after_alignment = std::sqrt(ss / static_cast<double>(n));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) report.rotation[i][j] = r(i, j);
  }
  report.translation = {trans(0), trans(1), trans(2)};
  return report;
}

std::pair<Curve, AlignmentReport> reconstruct_soliton_curve(
    const soliton::SolitonParams& params, double t, double s_min, double s_max, double step) {
  params.validate();
  const auto kappa = [&params, t](double s) { return soliton::curvature(params, s, t); };
  const auto tau = [&params](double) { return params.tau; };
  Curve curve = integrate_frenet(kappa, tau, s_min, s_max, step);

  std::vector<Vec3> integrated;
  integrated.reserve(curve.samples.size());
  for (const auto& sample : curve.samples) integrated.push_back(sample.position);
  const std::vector<Vec3> target = closed_form_curve(params, t, s_min, s_max, step);
  AlignmentReport report = align_rigid(integrated, target);
  return {std::move(curve), report};
}

std::vector<Vec3> binormal_velocity(const Curve& curve, const ScalarFn& kappa) {
  std::vector<Vec3> out;
  out.reserve(curve.samples.size());
  for (const auto& sample : curve.samples) {
    out.push_back(sample.frame.binormal * kappa(sample.s));
  }
  return out;
}

double polarization_rotation(const ScalarFn& tau, double L) {
  return quadrature::integrate_real(tau, 0.0, L, 1e-12);
}

}  // namespace marketfield::frenet
