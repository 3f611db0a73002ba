// Copyright 2026 The spinthermo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spinthermo/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spinthermo {

double qfi(const Matrix& rho, const Matrix& generator) {
  const auto spectrum = hermitian_spectrum(rho);
  const Matrix g = spectrum.vectors.adjoint() * generator * spectrum.vectors;
  const double floor = kQfiPairFloor * rho.trace().real();
  const auto& l = spectrum.values;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    for (Eigen::Index j = 0; j < l.size(); ++j) {
      const double sum = l[i] + l[j];
      if (sum <= floor) continue;
      const double diff = l[i] - l[j];
      acc += diff * diff / sum * std::norm(g(i, j));
    }
  }
  return 2.0 * acc;
}

double variance_bound(const Matrix& rho, const Matrix& generator) {
  const double mean = trace_product(rho, generator).real();
  const double second = trace_product(rho, generator * generator).real();
  return 4.0 * (second - mean * mean);
}

double cramer_rao_bound(double qfi_value) {
  if (qfi_value <= kQfiPairFloor) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(qfi_value);
}

QfiSample qfi_sample(double t, const Matrix& rho, const std::array<Matrix, 3>& generators) {
  QfiSample s;
  s.t = t;
  for (std::size_t k = 0; k < 3; ++k) {
    s.qfi[k] = qfi(rho, generators[k]);
    s.crb[k] = cramer_rao_bound(s.qfi[k]);
  }
  return s;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_line: size mismatch");
  LinearFit fit;
  fit.points = x.size();
  if (x.size() < 2) return fit;
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  // A constant series is fit exactly by any line through it.
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

Reparametrization reparametrize(const std::vector<ThermoSample>& thermo,
                                const std::vector<QfiSample>& qfi_samples) {
  if (thermo.size() != qfi_samples.size()) {
    throw TimeGridMismatch("thermo and QFI series differ in length");
  }
  for (std::size_t i = 0; i < thermo.size(); ++i) {
    const double scale = std::max(1.0, std::abs(thermo[i].t));
    if (std::abs(thermo[i].t - qfi_samples[i].t) > 1e-12 * scale) {
      throw TimeGridMismatch("thermo and QFI samples taken at different times (index " +
                             std::to_string(i) + ")");
    }
  }

  Reparametrization out;
  for (std::size_t i = 0; i < thermo.size(); ++i) {
    out.by_efficiency.push_back({thermo[i].efficiency, qfi_samples[i].qfi});
    out.by_entropy_production.push_back({thermo[i].Sigma, qfi_samples[i].qfi});
  }
  auto by_abscissa = [](const ResourcePoint& a, const ResourcePoint& b) {
    return a.abscissa < b.abscissa;
  };
  std::stable_sort(out.by_efficiency.begin(), out.by_efficiency.end(), by_abscissa);
  std::stable_sort(out.by_entropy_production.begin(), out.by_entropy_production.end(), by_abscissa);

  if (thermo.empty()) return out;
  const double cutoff = 0.01 * thermo.back().Sigma;
  for (std::size_t k = 0; k < 3; ++k) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < thermo.size(); ++i) {
      if (thermo[i].Sigma > cutoff) {
        x.push_back(thermo[i].Sigma);
        y.push_back(qfi_samples[i].qfi[k]);
      }
    }
    out.sigma_fit[k] = fit_line(x, y);
  }
  return out;
}

std::vector<double> upper_half_second_differences(const std::vector<ResourcePoint>& series,
                                                  std::size_t component,
                                                  std::size_t resolution) {
  std::vector<double> out;
  if (series.size() < 3 || component > 2) return out;
  const double lo = series.front().abscissa;
  const double hi = series.back().abscissa;
  const double mid = 0.5 * (lo + hi);
  const double min_gap = (hi - lo) / static_cast<double>(std::max<std::size_t>(resolution, 1));

  std::vector<const ResourcePoint*> kept;
  for (const auto& p : series) {
    if (p.abscissa < mid) continue;
    if (kept.empty() || p.abscissa - kept.back()->abscissa >= min_gap) kept.push_back(&p);
  }
  for (std::size_t i = 1; i + 1 < kept.size(); ++i) {
    const auto& a = *kept[i - 1];
    const auto& b = *kept[i];
    const auto& c = *kept[i + 1];
    const double left = (b.qfi[component] - a.qfi[component]) / (b.abscissa - a.abscissa);
    const double right = (c.qfi[component] - b.qfi[component]) / (c.abscissa - b.abscissa);
    out.push_back(2.0 * (right - left) / (c.abscissa - a.abscissa));
  }
  return out;
}

}  // namespace spinthermo
