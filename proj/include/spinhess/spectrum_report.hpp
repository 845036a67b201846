#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "spinhess/common.hpp"

namespace spinhess {

struct SpectrumReport {
  std::vector<double> eigenvalues;  ///< ascending
  double lower_bound = 0.0;
  int negative_count = 0;
  /// (value, multiplicity), clustering eigenvalues closer than `cluster_tol` (relative).
  std::vector<std::pair<double, int>> multiplicities;
  double hermitian_residual = 0.0;
};

inline SpectrumReport make_report(std::vector<double> eigenvalues, double cluster_tol = 1e-9) {
  SpectrumReport r;
  std::sort(eigenvalues.begin(), eigenvalues.end());
  r.eigenvalues = std::move(eigenvalues);
  if (r.eigenvalues.empty()) return r;
  r.lower_bound = r.eigenvalues.front();
  r.negative_count = static_cast<int>(
      std::count_if(r.eigenvalues.begin(), r.eigenvalues.end(), [](double v) { return v < 0.0; }));
  for (double v : r.eigenvalues) {
    if (!r.multiplicities.empty()) {
      auto& [last, count] = r.multiplicities.back();
      if (std::abs(v - last) <= cluster_tol * std::max(1.0, std::abs(v))) {
        ++count;
        continue;
      }
    }
    r.multiplicities.emplace_back(v, 1);
  }
  return r;
}

/// Max |a_i - b_i| of two sorted spectra; infinity if sizes differ.
inline double multiset_distance(const SpectrumReport& a, const SpectrumReport& b) {
  if (a.eigenvalues.size() != b.eigenvalues.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.eigenvalues.size(); ++i)
    worst = std::max(worst, std::abs(a.eigenvalues[i] - b.eigenvalues[i]));
  return worst;
}

}  // namespace spinhess
