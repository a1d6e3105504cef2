#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "vqpt/training.hpp"

namespace vqpt {

namespace {

struct Params {
  double a, b, c;
};

double sse(const std::vector<FitPoint>& pts, const Params& p)
{
  double s = 0.0;
  for (const auto& q : pts) {
    const double r = p.a * std::exp(p.b * q.x) + p.c - q.y;
    s += r * r;
  }
  return s;
}

// Linear least squares for (a, c) at fixed b.
Params solve_linear(const std::vector<FitPoint>& pts, double b)
{
  Eigen::MatrixXd A(static_cast<Eigen::Index>(pts.size()), 2);
  Eigen::VectorXd y(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto r = static_cast<Eigen::Index>(k);
    A(r, 0) = std::exp(b * pts[k].x);
    A(r, 1) = 1.0;
    y(r) = pts[k].y;
  }
  const Eigen::Vector2d ac = A.completeOrthogonalDecomposition().solve(y);
  return {ac(0), b, ac(1)};
}

// Starting b from the slope of log|finite differences| against the
// midpoints: d/dx (a e^{bx}) = a b e^{bx}.
double initial_rate(std::vector<FitPoint> pts)
{
  std::sort(pts.begin(), pts.end(), [](const FitPoint& l, const FitPoint& r) { return l.x < r.x; });
  std::vector<double> xs, ls;
  int sign = 0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double dx = pts[k + 1].x - pts[k].x;
    if (dx <= 0.0)
      continue;
    const double slope = (pts[k + 1].y - pts[k].y) / dx;
    const int s = slope > 0.0 ? 1 : (slope < 0.0 ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign))
      return 0.1;
    sign = s;
    xs.push_back(0.5 * (pts[k].x + pts[k + 1].x));
    ls.push_back(std::log(std::abs(slope)));
  }
  if (xs.size() < 2)
    return 0.1;
  double mx = 0.0, ml = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    ml += ls[k];
  }
  mx /= static_cast<double>(xs.size());
  ml /= static_cast<double>(xs.size());
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    num += (xs[k] - mx) * (ls[k] - ml);
    den += (xs[k] - mx) * (xs[k] - mx);
  }
  const double b = den > 0.0 ? num / den : 0.1;
  return std::isfinite(b) && b != 0.0 ? b : 0.1;
}

} // namespace

ExpFit fit_exponential(const std::vector<FitPoint>& points)
{
  if (points.size() < 3)
    throw std::invalid_argument("fit_exponential: need at least 3 points");
  for (const auto& p : points)
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw std::invalid_argument("fit_exponential: non-finite point");

  Params p = solve_linear(points, initial_rate(points));
  double err = sse(points, p);
  double lambda = 1e-3;
  ExpFit out;
  const auto m = static_cast<Eigen::Index>(points.size());

  for (int it = 1; it <= 1000; ++it) {
    out.iterations = it;
    Eigen::MatrixXd J(m, 3);
    Eigen::VectorXd r(m);
    for (Eigen::Index k = 0; k < m; ++k) {
      const auto& q = points[static_cast<std::size_t>(k)];
      const double e = std::exp(p.b * q.x);
      J(k, 0) = e;
      J(k, 1) = p.a * q.x * e;
      J(k, 2) = 1.0;
      r(k) = p.a * e + p.c - q.y;
    }
    const Eigen::Matrix3d jtj = J.transpose() * J;
    const Eigen::Vector3d jtr = J.transpose() * r;
    if (jtr.norm() <= 1e-14 * (1.0 + std::sqrt(err)) || err <= 1e-28) {
      out.converged = true;
      break;
    }

    bool improved = false;
    Eigen::Vector3d step = Eigen::Vector3d::Zero();
    while (lambda < 1e16) {
      Eigen::Matrix3d lhs = jtj;
      for (int i = 0; i < 3; ++i)
        lhs(i, i) += lambda * (jtj(i, i) + 1e-12);
      step = lhs.ldlt().solve(-jtr);
      const Params trial{p.a + step(0), p.b + step(1), p.c + step(2)};
      const double trial_err = sse(points, trial);
      if (std::isfinite(trial_err) && trial_err < err) {
        const double rel = (err - trial_err) / std::max(err, 1e-300);
        p = trial;
        err = trial_err;
        lambda = std::max(lambda / 10.0, 1e-12);
        improved = true;
        if (rel < 1e-15 || step.norm() <= 1e-13 * (1.0 + std::abs(p.a) + std::abs(p.b) + std::abs(p.c)))
          out.converged = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) {
      // no descent direction left: a stationary point of the residual
      out.converged = true;
      break;
    }
    if (out.converged)
      break;
  }

  out.a = p.a;
  out.b = p.b;
  out.c = p.c;
  out.rms = std::sqrt(err / static_cast<double>(points.size()));
  return out;
}

} // namespace vqpt
