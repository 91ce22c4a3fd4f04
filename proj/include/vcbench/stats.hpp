#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace vcbench::stats {

// Sample Pearson correlation. Throws Error(DegenerateVariance) when either
// input is constant.
double pearson(std::span<const double> x, std::span<const double> y);

// n_subjects x k_raters, row-major.
class RaterMatrix {
 public:
  RaterMatrix(std::size_t subjects, std::size_t raters, std::vector<double> scores);

  std::size_t subjects() const noexcept { return subjects_; }
  std::size_t raters() const noexcept { return raters_; }
  double at(std::size_t subject, std::size_t rater) const { return scores_[subject * raters_ + rater]; }

 private:
  std::size_t subjects_;
  std::size_t raters_;
  std::vector<double> scores_;
};

struct TwoWayMeanSquares {
  double rows = 0.0;     // MSR, subjects
  double columns = 0.0;  // MSC, raters
  double error = 0.0;    // MSE, residual
};

TwoWayMeanSquares two_way_mean_squares(const RaterMatrix& m);

// Two-way random effects, absolute agreement, average of k raters:
// (MSR - MSE) / (MSR + (MSC - MSE) / n).
double icc2k(const RaterMatrix& m);

struct AnovaResult {
  double f = 0.0;
  double p = 1.0;
  std::size_t df_between = 0;
  std::size_t df_within = 0;
  bool f_infinite = false;  // zero within-group variance, non-zero between
};

using GroupedSamples = std::map<std::string, std::vector<double>>;

AnovaResult anova_oneway(const GroupedSamples& groups);

// Regularized incomplete beta I_x(a, b), relative tolerance 1e-10.
double regularized_incomplete_beta(double a, double b, double x);

// Upper tail P(F > f) of the F distribution with (d1, d2) degrees of freedom.
double f_distribution_sf(double f, double d1, double d2);

}  // namespace vcbench::stats
