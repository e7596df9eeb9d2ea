// Copyright 2026 The PACF Authors.
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

#include "pacf/rademacher.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pacf/error.hpp"
#include "pacf/rng.hpp"

namespace pacf {

void check_psd(const Eigen::MatrixXd& gram) {
  if (gram.rows() == 0 || gram.rows() != gram.cols()) {
    throw InvalidArgument("gram matrix must be square and non-empty");
  }
  if (!gram.allFinite()) throw InvalidArgument("gram matrix has non-finite entries");
  const double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
  if ((gram - gram.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidArgument("gram matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw RuntimeError("eigen-decomposition failed");
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo < -1e-8 * std::max(hi, 0.0)) {
    throw InvalidArgument("gram matrix is not positive semidefinite");
  }
}

RademacherEstimate empirical_rademacher_kernel_ball(const Eigen::MatrixXd& gram,
                                                    double norm_bound_c,
                                                    std::size_t n_draws,
                                                    std::uint64_t seed) {
  if (!(norm_bound_c > 0.0)) throw InvalidArgument("norm bound C must be > 0");
  if (n_draws == 0) throw InvalidArgument("n_draws must be >= 1");
  check_psd(gram);

  const auto m = static_cast<std::size_t>(gram.rows());
  const double scale = norm_bound_c / static_cast<double>(m);
  Rng rng = make_rng(seed, 0x5ade);
  std::vector<double> sigma(m);
  double mean = 0.0;
  double m2 = 0.0;  // Welford
  for (std::size_t k = 0; k < n_draws; ++k) {
    for (auto& s : sigma) s = random_sign(rng);
    double q = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        row += gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * sigma[j];
      }
      q += sigma[i] * row;
    }
    const double v = scale * std::sqrt(std::max(0.0, q));
    const double delta = v - mean;
    mean += delta / static_cast<double>(k + 1);
    m2 += delta * (v - mean);
  }

  RademacherEstimate out;
  out.value = mean;
  out.n_draws = n_draws;
  if (n_draws > 1) {
    const double sd = std::sqrt(m2 / static_cast<double>(n_draws - 1));
    out.mc_half_width = 1.96 * sd / std::sqrt(static_cast<double>(n_draws));
  }
  return out;
}

}  // namespace pacf
