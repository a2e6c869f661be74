#include "mpcr/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mpcr/error.hpp"

namespace mpcr::maps {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxLimitTerms = 4000;
constexpr int kMaxPsiIterations = 200;

void require_nonnegative(double r, const char* what) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw Error(ErrorKind::NegativeInput, std::string(what) + " must be finite and >= 0");
  }
}

void require_nonnegative(std::span<const double> x, const char* what) {
  for (double xi : x) require_nonnegative(xi, what);
}

void require_probability(double v1) {
  if (!(v1 > 0.0 && v1 <= 1.0)) throw Error(ErrorKind::BadProbability, "v1 must lie in (0,1]");
}

void require_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorKind::BadTolerance, "tolerance must be finite and > 0");
  }
}

void require_dim(std::span<const double> x, const ModelParams& params) {
  if (x.size() != params.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "vector has " + std::to_string(x.size()) +
                                                  " entries, model has " +
                                                  std::to_string(params.dim()));
  }
}

void guard_growth(double magnitude, double b1, int n) {
  if (n <= 0) return;
  if (magnitude * integer_power(b1, n) > kOverflowLimit) {
    throw Error(ErrorKind::OverflowRisk,
                "iterate projected to exceed " + std::to_string(kOverflowLimit));
  }
}

double sum(std::span<const double> x) { return std::accumulate(x.begin(), x.end(), 0.0); }

}  // namespace

double f_once(double r, double v1) {
  require_nonnegative(r, "r");
  return r + v1 * r / (1.0 + r);
}

double f_inverse(double y, double v1) {
  require_nonnegative(y, "y");
  require_probability(v1);
  // Positive root of r^2 + (b1 - y) r - y = 0. Below b1 the textbook form
  // cancels, so use the product of roots (-y) instead.
  const double b1 = 1.0 + v1;
  const double disc = std::sqrt((b1 - y) * (b1 - y) + 4.0 * y);
  if (y >= b1) return 0.5 * (y - b1 + disc);
  return 2.0 * y / (b1 - y + disc);
}

double f_apply(double r, int n, double v1) {
  require_nonnegative(r, "r");
  require_probability(v1);
  guard_growth(r, 1.0 + v1, n);
  double value = r;
  for (int k = 0; k < n; ++k) value = value + v1 * value / (1.0 + value);
  for (int k = 0; k > n; --k) value = f_inverse(value, v1);
  return value;
}

Vector F_apply(std::span<const double> x, const ModelParams& params) {
  require_dim(x, params);
  require_nonnegative(x, "x");
  const double total = sum(x);
  const auto& v = params.v();
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + v[i] * x[i] / (1.0 + total);
  return out;
}

PsiRoot solve_psi(std::span<const double> y, std::span<const double> b) {
  const double total = sum(y);
  PsiRoot root;
  if (total == 0.0) return root;

  auto psi = [&](double t, double& slope) {
    double acc = 0.0;
    double dacc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double denom = b[i] + t;
      acc += (1.0 + t) / denom * y[i];
      dacc += (b[i] - 1.0) * y[i] / (denom * denom);
    }
    slope = 1.0 - dacc;
    return t - acc;
  };

  // psi(0) < 0 < psi(total) and psi is strictly convex, so Newton started
  // from the right end descends monotonically onto the root.
  const double tolerance = 1e-13 * (1.0 + total);
  double lo = 0.0;
  double hi = total;
  double t = hi;
  for (int it = 1; it <= kMaxPsiIterations; ++it) {
    double slope = 0.0;
    const double value = psi(t, slope);
    root = {t, value, it};
    if (std::abs(value) <= tolerance) return root;
    if (value > 0.0) {
      hi = t;
    } else {
      lo = t;
    }
    if (hi - lo <= 4.0 * kEps * hi) return root;
    double next = slope > 0.0 ? t - value / slope : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    t = next;
  }
  throw Error(ErrorKind::SolverFailure,
              "psi root not found within " + std::to_string(kMaxPsiIterations) +
                  " iterations (residual " + std::to_string(root.residual) + ")");
}

Vector F_inverse(std::span<const double> y, const ModelParams& params) {
  require_dim(y, params);
  require_nonnegative(y, "y");
  Vector out(y.size(), 0.0);
  if (sum(y) == 0.0) return out;
  const auto& b = params.b();
  const double tau = solve_psi(y, b).tau;
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = (1.0 + tau) / (b[i] + tau) * y[i];
  return out;
}

Vector F_iterate(std::span<const double> x, int n, const ModelParams& params) {
  require_dim(x, params);
  require_nonnegative(x, "x");
  guard_growth(sum(x), params.b1(), n);
  Vector state(x.begin(), x.end());
  for (int k = 0; k < n; ++k) state = F_apply(state, params);
  for (int k = 0; k > n; --k) state = F_inverse(state, params);
  return state;
}

bool in_dominant_subspace(std::span<const double> x, const ModelParams& params) noexcept {
  for (std::size_t i = params.dominant_count(); i < x.size(); ++i) {
    if (x[i] != 0.0) return false;
  }
  return true;
}

Vector F_iterate_dominant(std::span<const double> x, int n, const ModelParams& params) {
  require_dim(x, params);
  require_nonnegative(x, "x");
  if (!in_dominant_subspace(x, params)) {
    throw Error(ErrorKind::BadParameter, "vector has mass outside the dominant block");
  }
  const double total = sum(x);
  Vector out(x.size(), 0.0);
  if (total == 0.0) return out;
  const double scale = f_apply(total, n, params.v1()) / total;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = scale * x[i];
  return out;
}

LimitEval H_eval(double r, double v1, double tol) {
  require_nonnegative(r, "r");
  require_probability(v1);
  require_tolerance(tol);
  if (r == 0.0) return {};

  const double b1 = 1.0 + v1;
  // Tail: sum_{j>=k} r^2 v1 / (b1^{j+2} + r b1) <= r^2 v1 b1^{-k-1} / (b1 - 1).
  // Rounding: f^(m) is concave with f^(m)(0) = 0, so relative errors do not
  // grow through later iterations; each step (and each rescale) adds a few ulps.
  auto rounding = [&](int k) { return (6.0 * k + 2.0) * kEps * r; };
  double tail = r * r * v1 / (b1 * (b1 - 1.0));
  int k = 0;
  while (tail + rounding(k) > tol) {
    if (rounding(k) > tol || k >= kMaxLimitTerms) {
      throw Error(ErrorKind::ToleranceUnattainable,
                  "H(" + std::to_string(r) + ") cannot be certified to " + std::to_string(tol));
    }
    tail /= b1;
    ++k;
  }

  double s = r;
  for (int j = 0; j < k; ++j) s /= b1;
  for (int j = 0; j < k; ++j) s = s + v1 * s / (1.0 + s);
  return {s, tail + rounding(k), k};
}

std::vector<LimitEval> G_eval(double r, double v1, std::span<const double> b, double tol) {
  require_nonnegative(r, "r");
  require_probability(v1);
  require_tolerance(tol);
  const double b1 = 1.0 + v1;
  std::vector<LimitEval> out(b.size(), LimitEval{1.0, 0.0, 0});
  if (r == 0.0) return out;

  // Work in log space: the product is certified once the summed log error
  // is below log1p(tol), so value * expm1(log error) <= tol as value <= 1.
  // Half the budget goes to the truncated tail, a quarter to inner H calls.
  const double budget = std::log1p(tol);
  double tail = r / (b1 * (b1 - 1.0));
  int terms = 1;
  while (tail > 0.5 * budget) {
    if (terms >= kMaxLimitTerms) {
      throw Error(ErrorKind::ToleranceUnattainable, "G product tail does not converge");
    }
    tail /= b1;
    ++terms;
  }
  const double inner_tol = budget / (4.0 * terms);

  std::vector<double> h(terms);
  double log_error = tail;
  double s = r;
  for (int m = 0; m < terms; ++m) {
    s /= b1;
    const LimitEval hm = H_eval(s, v1, inner_tol);
    h[m] = hm.value;
    // H is 1-Lipschitz, so the rescaled argument's rounding passes through.
    log_error += hm.truncation_bound + (m + 2.0) * kEps * s;
  }
  log_error += 4.0 * terms * kEps;

  for (std::size_t i = 0; i < b.size(); ++i) {
    double product = 1.0;
    for (int m = 0; m < terms; ++m) product *= (1.0 + h[m] / b[i]) / (1.0 + h[m]);
    out[i] = {product, product * std::expm1(log_error), terms};
  }
  return out;
}

std::vector<LimitEval> G_eval(double r, const ModelParams& params, double tol) {
  return G_eval(r, params.v1(), params.b(), tol);
}

TheoremLimits theorem_limits(std::span<const double> W, int n, const ModelParams& params,
                             double tol) {
  require_dim(W, params);
  require_nonnegative(W, "W");
  require_tolerance(tol);
  const std::size_t d = params.dim();
  const std::size_t d0 = params.dominant_count();
  const double w0 = std::accumulate(W.begin(), W.begin() + static_cast<std::ptrdiff_t>(d0), 0.0);

  TheoremLimits out;
  out.thm1.assign(d, 0.0);
  out.thm2_vector.assign(d, 0.0);

  const auto g = G_eval(w0, params, tol);
  for (std::size_t i = 0; i < d; ++i) {
    out.thm1[i] = W[i] * g[i].value;
    out.certificate = std::max(out.certificate, W[i] * g[i].truncation_bound);
  }
  // Extinct dominant block: the vector limit is identically zero.
  if (w0 == 0.0) return out;

  const LimitEval h = H_eval(w0, params.v1(), tol);
  out.thm2_total = f_apply(h.value, n, params.v1());
  const double lipschitz = n > 0 ? integer_power(params.b1(), n) : 1.0;
  out.certificate = std::max(out.certificate, lipschitz * h.truncation_bound);
  for (std::size_t i = 0; i < d0; ++i) out.thm2_vector[i] = W[i] / w0 * out.thm2_total;
  return out;
}

std::vector<ScalingResidual> scaling_limit_residuals(std::span<const double> x,
                                                     std::span<const int> n_list,
                                                     const ModelParams& params) {
  require_dim(x, params);
  require_nonnegative(x, "x");
  if (!std::is_sorted(n_list.begin(), n_list.end()) ||
      std::adjacent_find(n_list.begin(), n_list.end()) != n_list.end()) {
    throw Error(ErrorKind::BadParameter, "n_list must be strictly increasing");
  }
  const std::size_t d = params.dim();
  const std::size_t d0 = params.dominant_count();
  const auto& b = params.b();
  const double x0 = std::accumulate(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(d0), 0.0);

  // Limits are evaluated well below the residual sizes of interest.
  constexpr double kHTol = 1e-11;
  constexpr double kGTol = 1e-9;
  Vector target(d, 0.0);
  std::vector<LimitEval> g(d, LimitEval{1.0, 0.0, 0});
  if (x0 > 0.0) {
    const double ratio = H_eval(x0, params.v1(), kHTol).value / x0;
    for (std::size_t i = 0; i < d0; ++i) target[i] = ratio * x[i];
    g = G_eval(x0, params, kGTol);
  }

  std::vector<ScalingResidual> rows;
  rows.reserve(n_list.size());
  for (int n : n_list) {
    if (n < 0) throw Error(ErrorKind::BadParameter, "scaling residuals need n >= 0");
    const double scale = integer_power(params.b1(), n);
    Vector scaled(x.begin(), x.end());
    for (double& xi : scaled) xi /= scale;
    const Vector iterate = F_iterate(scaled, n, params);

    ScalingResidual row;
    row.n = n;
    for (std::size_t i = 0; i < d; ++i) row.dominant += std::abs(iterate[i] - target[i]);
    for (std::size_t i = d0; i < d; ++i) {
      const double normalised = iterate[i] * integer_power(b[0] / b[i], n);
      const double residual = std::abs(normalised - x[i] * g[i].value);
      row.minor.push_back(residual);
      row.minor_max = std::max(row.minor_max, residual);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mpcr::maps
