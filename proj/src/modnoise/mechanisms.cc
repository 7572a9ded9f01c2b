// Copyright 2026 The modnoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "modnoise/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "modnoise/errors.h"
#include "modnoise/problems.h"

namespace modnoise {
namespace {

constexpr double kTailBound = 1e-12;
constexpr double kCalibrationTol = 1e-6;
constexpr int kMaxWindow = 10000000;

int GeometricWindow(double alpha) {
  // Two-sided tail beyond W is 2 alpha^{W+1} / (1 + alpha).
  int window = 1;
  double tail = 2.0 * alpha * alpha / (1.0 + alpha);
  while (tail >= kTailBound) {
    ++window;
    tail *= alpha;
    if (window > kMaxWindow) {
      throw std::invalid_argument("geometric noise: alpha too close to 1");
    }
  }
  return window;
}

int GaussianWindow(double sigma2) {
  // e^{-W^2/(2 sigma^2)} < kTailBound^2 leaves the two-sided tail far
  // below the bound after normalization.
  const double sigma = std::sqrt(sigma2);
  const int window =
      static_cast<int>(std::ceil(sigma * std::sqrt(-4.0 * std::log(kTailBound)))) + 2;
  if (window > kMaxWindow) {
    throw std::invalid_argument("gaussian noise: sigma too large");
  }
  return window;
}

InfiniteNoiseSpec Renormalize(InfiniteNoiseSpec spec) {
  double sum = 0.0;
  for (double mass : spec.masses) sum += mass;
  for (double& mass : spec.masses) mass /= sum;
  return spec;
}

// Exact (untruncated) accuracy functionals used for calibration; the
// truncation bias is below the 1e-6 calibration tolerance.
double GeometricErrorRate(double alpha) { return 2.0 * alpha / (1.0 + alpha); }
double GeometricMse(double alpha) {
  return 2.0 * alpha / ((1.0 - alpha) * (1.0 - alpha));
}

double GaussianErrorRate(double sigma2) {
  double z = 1.0;
  double tail = 0.0;
  for (int k = 1;; ++k) {
    const double term = std::exp(-0.5 * k * k / sigma2);
    tail += 2.0 * term;
    if (term < 1e-18 * (z + tail)) break;
  }
  z += tail;
  return tail / z;
}

double GaussianMse(double sigma2) {
  double z = 1.0;
  double second = 0.0;
  for (int k = 1;; ++k) {
    const double term = std::exp(-0.5 * k * k / sigma2);
    z += 2.0 * term;
    second += 2.0 * term * k * k;
    if (term * k * k < 1e-18 * (second + 1.0) && term < 1e-18) break;
  }
  return second / z;
}

// Increasing functional: bisection on the parameter in (lo, hi).
double CalibrateMonotone(const std::function<double(double)>& accuracy,
                         double target, double lo, double hi,
                         const char* what) {
  if (!(accuracy(lo) < target)) {
    throw std::invalid_argument(std::string(what) +
                                ": target below attainable range");
  }
  while (accuracy(hi) < target) {
    lo = hi;
    hi = (hi < 1.0) ? 1.0 - 0.5 * (1.0 - hi) : hi * 2.0;
    if (hi > 1e12) {
      throw std::invalid_argument(std::string(what) +
                                  ": target above attainable range");
    }
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double value = accuracy(mid);
    if (std::abs(value - target) <= kCalibrationTol) return mid;
    if (value < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double InfiniteNoiseSpec::Cdf(int k) const {
  if (k < -window) return 0.0;
  double sum = 0.0;
  const int top = std::min(k, window);
  for (int i = -window; i <= top; ++i) sum += Mass(i);
  return sum;
}

std::map<int, double> GeometricMasses(double alpha, int window) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("geometric noise: alpha must lie in (0,1)");
  }
  std::map<int, double> masses;
  const double scale = (1.0 - alpha) / (1.0 + alpha);
  double sum = 0.0;
  for (int k = -window; k <= window; ++k) {
    const double mass = scale * std::pow(alpha, std::abs(k));
    masses[k] = mass;
    sum += mass;
  }
  for (auto& [k, mass] : masses) mass /= sum;
  return masses;
}

std::map<int, double> DiscreteGaussianMasses(double sigma2, int window) {
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument("gaussian noise: sigma^2 must be > 0");
  }
  std::map<int, double> masses;
  double sum = 0.0;
  for (int k = -window; k <= window; ++k) {
    const double mass = std::exp(-0.5 * k * k / sigma2);
    masses[k] = mass;
    sum += mass;
  }
  for (auto& [k, mass] : masses) mass /= sum;
  return masses;
}

InfiniteNoiseSpec MakeTwoSidedGeometric(double alpha) {
  InfiniteNoiseSpec spec;
  spec.family = InfiniteNoiseSpec::Family::kTwoSidedGeometric;
  spec.parameter = alpha;
  spec.window = GeometricWindow(alpha);
  spec.masses.assign(2 * spec.window + 1, 0.0);
  for (const auto& [k, mass] : GeometricMasses(alpha, spec.window)) {
    spec.masses[k + spec.window] = mass;
  }
  return Renormalize(std::move(spec));
}

InfiniteNoiseSpec MakeDiscreteGaussian(double sigma2) {
  InfiniteNoiseSpec spec;
  spec.family = InfiniteNoiseSpec::Family::kDiscreteGaussian;
  spec.parameter = sigma2;
  spec.window = GaussianWindow(sigma2);
  spec.masses.assign(2 * spec.window + 1, 0.0);
  for (const auto& [k, mass] : DiscreteGaussianMasses(sigma2, spec.window)) {
    spec.masses[k + spec.window] = mass;
  }
  return Renormalize(std::move(spec));
}

double NoiseErrorRate(const InfiniteNoiseSpec& noise) {
  return 1.0 - noise.Mass(0);
}

double NoiseMse(const InfiniteNoiseSpec& noise) {
  double mse = 0.0;
  for (int k = -noise.window; k <= noise.window; ++k) {
    mse += static_cast<double>(k) * k * noise.Mass(k);
  }
  return mse;
}

double UnclampedLeakage(const InfiniteNoiseSpec& noise, double eps,
                        const NeighborhoodSpec& nbhd) {
  if (!(eps > 0.0)) throw std::invalid_argument("leakage: eps must be > 0");
  const double exp_eps = std::exp(eps);
  double worst = 0.0;
  for (int mu : nbhd.ScalarOffsets()) {
    for (int sign : {+1, -1}) {
      double leakage = 0.0;
      for (int k = -noise.window; k <= noise.window; ++k) {
        if (noise.Mass(k) - exp_eps * noise.Mass(k + sign * mu) >
            kLeakageCompareTolerance) {
          leakage += noise.Mass(k);
        }
      }
      worst = std::max(worst, leakage);
    }
  }
  return worst;
}

QueryChannel ClampChannel(const InfiniteNoiseSpec& noise, int n) {
  if (n < 1) throw std::invalid_argument("clamp channel: n must be >= 1");
  QueryChannel channel;
  channel.n = n;
  channel.rows.assign(n + 1, std::vector<double>(n + 1, 0.0));
  for (int q = 0; q <= n; ++q) {
    std::vector<double>& row = channel.rows[q];
    row[0] = noise.Cdf(-q);
    for (int k = 1; k <= n - 1; ++k) row[k] = noise.Mass(k - q);
    row[n] = 1.0 - noise.Cdf(n - q - 1);
  }
  ValidateChannel(channel);
  return channel;
}

NoisePmf UniformTailPmf(int n, double rho) {
  if (!(rho > 0.0 && rho < 0.5)) {
    throw std::invalid_argument("uniform tail: rho must lie in (0, 0.5)");
  }
  std::vector<double> masses(n + 1, rho / n);
  masses[0] = 1.0 - rho;
  return MakeScalarPmf(n, std::move(masses));
}

double CalibrateGeometric(AccuracyKind kind, double target) {
  if (kind == AccuracyKind::kErrorRate) {
    return CalibrateMonotone(GeometricErrorRate, target, 1e-12, 0.5,
                             "geometric calibration");
  }
  return CalibrateMonotone(GeometricMse, target, 1e-12, 0.5,
                           "geometric calibration");
}

double CalibrateGaussian(AccuracyKind kind, double target) {
  if (kind == AccuracyKind::kErrorRate) {
    return CalibrateMonotone(GaussianErrorRate, target, 1e-9, 1.0,
                             "gaussian calibration");
  }
  return CalibrateMonotone(GaussianMse, target, 1e-9, 1.0,
                           "gaussian calibration");
}

std::vector<CompareRow> CompareTradeoffs(const CompareSpec& spec) {
  if (spec.eps_grid.empty()) {
    throw std::invalid_argument("compare: empty eps grid");
  }
  const double alpha = CalibrateGeometric(spec.matched_kind,
                                          spec.matched_value);
  const double sigma2 = CalibrateGaussian(spec.matched_kind,
                                          spec.matched_value);
  const InfiniteNoiseSpec geometric = MakeTwoSidedGeometric(alpha);
  const InfiniteNoiseSpec gaussian = MakeDiscreteGaussian(sigma2);
  const QueryChannel geometric_clamped = ClampChannel(geometric, spec.n);
  const QueryChannel gaussian_clamped = ClampChannel(gaussian, spec.n);

  const AccuracyTarget target =
      (spec.matched_kind == AccuracyKind::kErrorRate)
          ? AccuracyTarget::MaxErrorRate(spec.matched_value)
          : AccuracyTarget::MaxMse(spec.matched_value);

  const int grid = static_cast<int>(spec.eps_grid.size());
  std::vector<double> optimal_delta(grid);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < grid; ++i) {
    optimal_delta[i] =
        SolveMinDelta(spec.n, spec.nbhd, spec.eps_grid[i], target).delta;
  }

  std::vector<CompareRow> rows;
  const auto emit = [&](const std::string& name,
                        const std::function<double(double)>& delta_fn) {
    for (int i = 0; i < grid; ++i) {
      rows.push_back({name, spec.eps_grid[i], delta_fn(spec.eps_grid[i])});
    }
  };
  for (int i = 0; i < grid; ++i) {
    rows.push_back({"optimal", spec.eps_grid[i], optimal_delta[i]});
  }
  emit("geometric", [&](double eps) {
    return UnclampedLeakage(geometric, eps, spec.nbhd);
  });
  emit("geometric_clamped", [&](double eps) {
    return ChannelPrivacyProfile(geometric_clamped, eps, spec.nbhd)
        .delta_actual;
  });
  emit("gaussian", [&](double eps) {
    return UnclampedLeakage(gaussian, eps, spec.nbhd);
  });
  emit("gaussian_clamped", [&](double eps) {
    return ChannelPrivacyProfile(gaussian_clamped, eps, spec.nbhd)
        .delta_actual;
  });
  if (spec.matched_kind == AccuracyKind::kErrorRate) {
    const NoisePmf uniform_tail = UniformTailPmf(spec.n, spec.matched_value);
    emit("uniform_tail", [&](double eps) {
      return PrivacyProfile(uniform_tail, eps, spec.nbhd).delta_actual;
    });
  }
  return rows;
}

}  // namespace modnoise
