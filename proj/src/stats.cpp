#include "vcbench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vcbench/error.hpp"

namespace vcbench::stats {

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(ErrorKind::InvalidArgument, "pearson inputs differ in length");
  if (x.size() < 2) fail(ErrorKind::InvalidArgument, "pearson needs at least 2 observations");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    fail(ErrorKind::DegenerateVariance, "pearson correlation undefined for a constant input");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

RaterMatrix::RaterMatrix(std::size_t subjects, std::size_t raters, std::vector<double> scores)
    : subjects_(subjects), raters_(raters), scores_(std::move(scores)) {
  if (subjects < 2 || raters < 2) {
    fail(ErrorKind::InvalidArgument, "rater matrix needs at least 2 subjects and 2 raters");
  }
  if (scores_.size() != subjects * raters) {
    fail(ErrorKind::Dimension, "rater matrix has missing cells");
  }
  for (double v : scores_) {
    if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, "rater scores must be finite");
  }
}

TwoWayMeanSquares two_way_mean_squares(const RaterMatrix& m) {
  const std::size_t n = m.subjects();
  const std::size_t k = m.raters();
  std::vector<double> row_mean(n, 0.0), col_mean(k, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      row_mean[i] += m.at(i, j);
      col_mean[j] += m.at(i, j);
      grand += m.at(i, j);
    }
  }
  for (double& r : row_mean) r /= static_cast<double>(k);
  for (double& c : col_mean) c /= static_cast<double>(n);
  grand /= static_cast<double>(n * k);

  double ss_total = 0.0, ss_rows = 0.0, ss_cols = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) ss_total += (m.at(i, j) - grand) * (m.at(i, j) - grand);
  }
  for (double r : row_mean) ss_rows += static_cast<double>(k) * (r - grand) * (r - grand);
  for (double c : col_mean) ss_cols += static_cast<double>(n) * (c - grand) * (c - grand);
  const double ss_error = std::max(0.0, ss_total - ss_rows - ss_cols);

  TwoWayMeanSquares ms;
  ms.rows = ss_rows / static_cast<double>(n - 1);
  ms.columns = ss_cols / static_cast<double>(k - 1);
  ms.error = ss_error / static_cast<double>((n - 1) * (k - 1));
  return ms;
}

double icc2k(const RaterMatrix& m) {
  const TwoWayMeanSquares ms = two_way_mean_squares(m);
  const double denom = ms.rows + (ms.columns - ms.error) / static_cast<double>(m.subjects());
  if (!(denom > 0.0)) {
    fail(ErrorKind::UndefinedReliability, "ICC(2,k) undefined: MSR + (MSC - MSE)/n <= 0");
  }
  return (ms.rows - ms.error) / denom;
}

// ---------------------------------------------------------------------------

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-10 * 1e-3;
  constexpr int max_iter = 10000;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) return h;
  }
  fail(ErrorKind::Numeric, "incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) fail(ErrorKind::InvalidArgument, "incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) fail(ErrorKind::InvalidArgument, "incomplete beta needs x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double f_distribution_sf(double f, double d1, double d2) {
  if (!(d1 > 0.0) || !(d2 > 0.0)) fail(ErrorKind::InvalidArgument, "F distribution needs positive df");
  if (std::isinf(f)) return 0.0;
  if (!(f > 0.0)) return 1.0;
  return regularized_incomplete_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
}

AnovaResult anova_oneway(const GroupedSamples& groups) {
  if (groups.size() < 2) fail(ErrorKind::InvalidArgument, "ANOVA needs at least 2 groups");
  std::size_t total_n = 0;
  double grand = 0.0;
  std::vector<double> means;
  for (const auto& [name, obs] : groups) {
    if (obs.size() < 2) {
      fail(ErrorKind::InvalidArgument, "ANOVA group '" + name + "' needs at least 2 observations");
    }
    double sum = 0.0;
    for (double v : obs) {
      if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, "ANOVA observations must be finite");
      sum += v;
    }
    means.push_back(sum / static_cast<double>(obs.size()));
    grand += sum;
    total_n += obs.size();
  }
  grand /= static_cast<double>(total_n);

  const bool equal_means =
      std::all_of(means.begin(), means.end(), [&](double m) { return m == means.front(); });
  double ss_between = 0.0;
  double ss_within = 0.0;
  std::size_t g = 0;
  for (const auto& [name, obs] : groups) {
    const double m = means[g++];
    if (!equal_means) ss_between += static_cast<double>(obs.size()) * (m - grand) * (m - grand);
    for (double v : obs) ss_within += (v - m) * (v - m);
  }

  AnovaResult r;
  r.df_between = groups.size() - 1;
  r.df_within = total_n - groups.size();
  if (ss_within == 0.0) {
    if (ss_between == 0.0) {
      fail(ErrorKind::DegenerateAnova, "ANOVA undefined: no variance within or between groups");
    }
    r.f = std::numeric_limits<double>::infinity();
    r.f_infinite = true;
    r.p = 0.0;
    return r;
  }
  const double ms_between = ss_between / static_cast<double>(r.df_between);
  const double ms_within = ss_within / static_cast<double>(r.df_within);
  r.f = ms_between / ms_within;
  r.p = f_distribution_sf(r.f, static_cast<double>(r.df_between), static_cast<double>(r.df_within));
  return r;
}

}  // namespace vcbench::stats
