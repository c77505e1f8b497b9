#include "omit/lorentzian_fit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "omit/errors.hpp"

namespace omit {

double lorentzian(double x, double center, double fwhm, double depth, double baseline) {
  const double half = 0.5 * fwhm;
  const double u = x - center;
  return baseline - depth * half * half / (u * u + half * half);
}

namespace {

using Params = Eigen::Vector4d;  // center, fwhm, depth, baseline (normalized units)

double median(std::vector<double> values) {
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (values.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

struct Problem {
  std::vector<double> x;
  std::vector<double> y;

  double cost(const Params& p) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - lorentzian(x[i], p(0), p(1), p(2), p(3));
      sum += r * r;
    }
    return sum;
  }

  // Accumulates J^T J and J^T r for the residual r = y - f.
  void normal_equations(const Params& p, Eigen::Matrix4d& jtj, Eigen::Vector4d& jtr) const {
    jtj.setZero();
    jtr.setZero();
    const double half = 0.5 * p(1);
    const double depth = p(2);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double u = x[i] - p(0);
      const double denom = u * u + half * half;
      const double shape = half * half / denom;
      const double denom_sq = denom * denom;
      Eigen::Vector4d grad;
      grad(0) = -depth * 2.0 * half * half * u / denom_sq;
      grad(1) = -depth * half * u * u / denom_sq;
      grad(2) = -shape;
      grad(3) = 1.0;
      const double r = y[i] - (p(3) - depth * shape);
      jtj.noalias() += grad * grad.transpose();
      jtr.noalias() += grad * r;
    }
  }
};

}  // namespace

LorentzianFit fit_lorentzian(std::span<const double> x, std::span<const double> y,
                             const FitOptions& options) {
  if (x.size() != y.size()) throw ParameterError("fit_lorentzian: x and y differ in length");
  if (x.size() < 5) throw ParameterError("fit_lorentzian: at least 5 points required");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw ParameterError("fit_lorentzian: non-finite data");
    }
  }

  const auto [x_min_it, x_max_it] = std::minmax_element(x.begin(), x.end());
  const double x_min = *x_min_it;
  const double x_max = *x_max_it;
  if (!(x_max > x_min)) throw ParameterError("fit_lorentzian: x has zero span");

  const std::size_t n = x.size();
  const std::size_t outer = std::max<std::size_t>(1, n / 20);
  std::vector<double> edges;
  edges.insert(edges.end(), y.begin(), y.begin() + static_cast<std::ptrdiff_t>(outer));
  edges.insert(edges.end(), y.end() - static_cast<std::ptrdiff_t>(outer), y.end());
  const double baseline0 = median(std::move(edges));

  const auto [y_min_it, y_max_it] = std::minmax_element(y.begin(), y.end());
  const bool dip = std::abs(*y_min_it - baseline0) >= std::abs(*y_max_it - baseline0);
  const auto extremum = dip ? y_min_it : y_max_it;
  const std::size_t i_ext = static_cast<std::size_t>(extremum - y.begin());

  const double x_mid = 0.5 * (x_min + x_max);
  const double x_scale = 0.5 * (x_max - x_min);
  const double y_scale = std::max(std::abs(*y_min_it - baseline0), std::abs(*y_max_it - baseline0));

  LorentzianFit fit;
  if (!(y_scale > 1e-14 * std::max(1.0, std::abs(baseline0)))) {
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(n);
    fit.center = x_mid;
    fit.fwhm = x_max - x_min;
    fit.depth = 0.0;
    fit.baseline = mean;
    fit.converged = true;
    fit.fwhm_unconstrained = true;
  } else {
    Problem problem;
    problem.x.resize(n);
    problem.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      problem.x[i] = (x[i] - x_mid) / x_scale;
      problem.y[i] = (y[i] - baseline0) / y_scale;
    }

    // Width from the half-maximum crossings on either side of the extremum;
    // half the span when a side never drops that far.
    const double half_level = 0.5 * std::abs(problem.y[i_ext]);
    double fwhm0 = 1.0;
    std::size_t lo = i_ext;
    std::size_t hi = i_ext;
    while (lo > 0 && std::abs(problem.y[lo]) > half_level) --lo;
    while (hi + 1 < n && std::abs(problem.y[hi]) > half_level) ++hi;
    if (std::abs(problem.y[lo]) <= half_level && std::abs(problem.y[hi]) <= half_level && hi > lo) {
      fwhm0 = std::abs(problem.x[hi] - problem.x[lo]);
    }

    Params p;
    p << problem.x[i_ext], fwhm0, -problem.y[i_ext], 0.0;
    double cost = problem.cost(p);
    double lambda = 1e-3;
    Eigen::Matrix4d jtj;
    Eigen::Vector4d jtr;

    int iter = 0;
    bool converged = cost == 0.0;
    while (!converged && iter < options.max_iterations) {
      ++iter;
      problem.normal_equations(p, jtj, jtr);
      Eigen::Vector4d diag = jtj.diagonal();
      const double floor = 1e-30 * std::max(1.0, diag.maxCoeff());
      Eigen::Matrix4d damped = jtj;
      for (int k = 0; k < 4; ++k) damped(k, k) += lambda * std::max(diag(k), floor);
      const Eigen::Vector4d step = damped.ldlt().solve(jtr);
      if (!step.allFinite()) break;

      double relative = 0.0;
      for (int k = 0; k < 4; ++k) {
        relative = std::max(relative, std::abs(step(k)) / std::max(std::abs(p(k)), 1e-6));
      }
      const Params trial = p + step;
      const double trial_cost = problem.cost(trial);
      if (trial_cost < cost) {
        p = trial;
        cost = trial_cost;
        lambda = std::max(lambda * 0.1, 1e-15);
        if (relative < options.tolerance || cost == 0.0) converged = true;
      } else {
        // At the floating-point floor of the cost an undamped step can no
        // longer improve it; a tiny lightly damped step means we are there.
        if (relative < options.tolerance && lambda <= 1.0) converged = true;
        lambda *= 10.0;
      }
      if (lambda > 1e30) break;
    }

    fit.center = x_mid + p(0) * x_scale;
    fit.fwhm = std::abs(p(1)) * x_scale;
    fit.depth = p(2) * y_scale;
    fit.baseline = baseline0 + p(3) * y_scale;
    fit.converged = converged;
    fit.iterations = iter;
    fit.fwhm_unconstrained = std::abs(p(2)) < 1e-12;
  }

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit(x[i]);
    sum += r * r;
  }
  fit.rms_residual = std::sqrt(sum / static_cast<double>(n));
  return fit;
}

}  // namespace omit
