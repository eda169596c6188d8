#include "blockcs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace blockcs {

double relative_error(const CxVec& x_rec, const CxVec& x_true,
                      bool true_denominator) {
  if (x_rec.size() != x_true.size())
    throw std::invalid_argument("relative_error: size mismatch");
  double num = (x_rec - x_true).norm();
  double den = true_denominator ? x_true.norm() : x_rec.norm();
  if (den == 0.0)
    return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

SupportRates support_rates(const CxVec& x_rec, const CxVec& x_true,
                           double zero_tol) {
  if (x_rec.size() != x_true.size())
    throw std::invalid_argument("support_rates: size mismatch");
  if (zero_tol < 0.0)
    throw std::invalid_argument("support_rates: zero_tol < 0");
  long t_hit = 0, t_total = 0, tc_hit = 0, tc_total = 0;
  for (Eigen::Index j = 0; j < x_true.size(); ++j) {
    bool rec_nonzero = std::abs(x_rec[j]) > zero_tol;
    if (x_true[j] != Cx(0.0, 0.0)) {
      ++t_total;
      if (rec_nonzero) ++t_hit;
    } else {
      ++tc_total;
      if (!rec_nonzero) ++tc_hit;
    }
  }
  SupportRates r;
  r.t_rate = t_total == 0 ? 100.0 : 100.0 * t_hit / t_total;
  r.tc_rate = tc_total == 0 ? 100.0 : 100.0 * tc_hit / tc_total;
  return r;
}

double objective_metric(const Problem& p, const CxVec& x_rec) {
  return objective(p, x_rec);
}

namespace {

// Declared-active flags per (trial, block) at a given threshold.
double fap_at(const std::vector<std::vector<double>>& block_max,
              const std::vector<std::vector<bool>>& truly_active,
              double threshold) {
  long alarms = 0, inactive = 0;
  for (size_t t = 0; t < block_max.size(); ++t) {
    for (size_t b = 0; b < block_max[t].size(); ++b) {
      if (truly_active[t][b]) continue;
      ++inactive;
      if (block_max[t][b] > threshold) ++alarms;
    }
  }
  return static_cast<double>(alarms) / static_cast<double>(inactive);
}

}  // namespace

DetectionStats calibrate_threshold(const std::vector<CxVec>& recovered,
                                   const std::vector<CxVec>& truths,
                                   const BlockStructure& bs,
                                   double target_fap) {
  if (recovered.size() != truths.size())
    throw std::invalid_argument("calibrate_threshold: trial count mismatch");
  if (recovered.empty())
    throw std::invalid_argument("calibrate_threshold: no trials");
  if (target_fap <= 0.0 || target_fap >= 1.0)
    throw std::invalid_argument("calibrate_threshold: target_fap outside (0,1)");

  const size_t trials = recovered.size();
  std::vector<std::vector<double>> block_max(trials);
  std::vector<std::vector<bool>> truly_active(trials);
  std::vector<double> candidates{0.0};
  long inactive_pairs = 0;

  for (size_t t = 0; t < trials; ++t) {
    if (recovered[t].size() != bs.total_len() ||
        truths[t].size() != bs.total_len())
      throw std::invalid_argument(
          "calibrate_threshold: signal length != block layout");
    block_max[t].resize(bs.blocks());
    truly_active[t].resize(bs.blocks());
    for (int b = 0; b < bs.blocks(); ++b) {
      double mx = 0.0;
      bool active = false;
      for (int j = 0; j < bs.length(b); ++j) {
        int idx = bs.offset(b) + j;
        double mag = std::abs(recovered[t][idx]);
        mx = std::max(mx, mag);
        candidates.push_back(mag);
        if (truths[t][idx] != Cx(0.0, 0.0)) active = true;
      }
      block_max[t][b] = mx;
      truly_active[t][b] = active;
      if (!active) ++inactive_pairs;
    }
  }
  if (inactive_pairs == 0)
    throw std::invalid_argument(
        "calibrate_threshold: no inactive (trial, user) pairs to calibrate on");

  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  // FAP is nonincreasing in the threshold and reaches 0 at the largest
  // observed magnitude (declaration uses a strict >), so a feasible
  // candidate always exists; bisect to the smallest one.
  size_t lo = 0, hi = candidates.size() - 1;
  if (fap_at(block_max, truly_active, candidates[lo]) > target_fap) {
    for (int it = 0; it < 64 && lo + 1 < hi; ++it) {
      size_t mid = lo + (hi - lo) / 2;
      if (fap_at(block_max, truly_active, candidates[mid]) <= target_fap)
        hi = mid;
      else
        lo = mid;
    }
    lo = hi;
  }

  DetectionStats stats;
  stats.threshold = candidates[lo];
  stats.trials = static_cast<int>(trials);
  stats.fap = fap_at(block_max, truly_active, stats.threshold);
  long missed = 0, active_pairs = 0;
  for (size_t t = 0; t < trials; ++t) {
    for (size_t b = 0; b < block_max[t].size(); ++b) {
      if (!truly_active[t][b]) continue;
      ++active_pairs;
      if (block_max[t][b] <= stats.threshold) ++missed;
    }
  }
  stats.fir = active_pairs == 0
                  ? 0.0
                  : static_cast<double>(missed) / static_cast<double>(active_pairs);
  return stats;
}

MetricsRecord aggregate(const std::vector<MetricsRecord>& records) {
  if (records.empty()) throw std::invalid_argument("aggregate: empty batch");
  MetricsRecord mean;
  for (const auto& r : records) {
    mean.iterations += r.iterations;
    mean.wall_time += r.wall_time;
    mean.r_error += r.r_error;
    mean.obj_value += r.obj_value;
    mean.t_rate += r.t_rate;
    mean.tc_rate += r.tc_rate;
  }
  const double k = static_cast<double>(records.size());
  mean.iterations /= k;
  mean.wall_time /= k;
  mean.r_error /= k;
  mean.obj_value /= k;
  mean.t_rate /= k;
  mean.tc_rate /= k;
  return mean;
}

}  // namespace blockcs
