#pragma once

#include <span>
#include <vector>

#include "mpcr/model.hpp"

// Deterministic maps of the density recursion and their scaling limits.
//
//   f(r)      = r + v1 r / (1 + r)                 scalar map of the dominant block
//   F_i(x)    = x_i + v_i x_i / (1 + sum x)        multitype map
//   H(r)      = lim f^(n)(r / b1^n)
//   G_i(r)    = prod_{m>=1} (1 + H(r/b1^m)/b_i) / (1 + H(r/b1^m))
//
// Every limit is returned with a certified bound on its distance to the
// exact value, covering both truncation and floating-point rounding.
namespace mpcr::maps {

using Vector = std::vector<double>;

struct LimitEval {
  double value = 0.0;
  double truncation_bound = 0.0;
  int terms_used = 0;
};

struct PsiRoot {
  double tau = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Projected magnitudes above this are rejected with OverflowRisk.
inline constexpr double kOverflowLimit = 1e300;

double f_once(double r, double v1);
double f_inverse(double y, double v1);
double f_apply(double r, int n, double v1);

Vector F_apply(std::span<const double> x, const ModelParams& params);
Vector F_inverse(std::span<const double> y, const ModelParams& params);
Vector F_iterate(std::span<const double> x, int n, const ModelParams& params);

// Closed form of F^(n) on the invariant set {x : x_i = 0 for i >= d0}.
// Throws BadParameter when x has mass outside the dominant block.
Vector F_iterate_dominant(std::span<const double> x, int n, const ModelParams& params);

bool in_dominant_subspace(std::span<const double> x, const ModelParams& params) noexcept;

// Root of psi(t) = t - sum_i (1+t)/(b_i+t) y_i, which defines F^{-1}.
PsiRoot solve_psi(std::span<const double> y, std::span<const double> b);

LimitEval H_eval(double r, double v1, double tol);
std::vector<LimitEval> G_eval(double r, const ModelParams& params, double tol);
// Standalone form for curve families: b holds 1 + v_i, the leading rate is v1.
std::vector<LimitEval> G_eval(double r, double v1, std::span<const double> b, double tol);

struct TheoremLimits {
  Vector thm1;          // W_i * G_i(W_0)
  double thm2_total = 0.0;  // f^(n)(H(W_0))
  Vector thm2_vector;   // (W_i / W_0) f^(n)(H(W_0)) on the dominant block, 0 elsewhere
  double certificate = 0.0;  // max bound over the limit evaluations used
};

TheoremLimits theorem_limits(std::span<const double> W, int n, const ModelParams& params,
                             double tol);

struct ScalingResidual {
  int n = 0;
  double dominant = 0.0;  // || F^(n)(x/b1^n) - H(x0)/x0 (x_1..x_d0, 0..0) ||_1
  Vector minor;           // per type i >= d0: |F^(n)_i(x/b1^n) (b1/b_i)^n - x_i G_i(x0)|
  double minor_max = 0.0;
};

std::vector<ScalingResidual> scaling_limit_residuals(std::span<const double> x,
                                                     std::span<const int> n_list,
                                                     const ModelParams& params);

}  // namespace mpcr::maps
