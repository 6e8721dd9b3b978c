#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adgt {

// Inputs to the stability constants.  lambda is the mixing contraction
// factor, L/mu the global smoothness and strong-convexity constants,
// delta_alpha the stepsize heterogeneity, alpha_max the stepsize ceiling.
struct BoundInputs {
  double lambda = 0.0;
  double L = 1.0;
  double mu = 1.0;
  double delta_alpha = 0.0;
  double alpha_max = 1.0;
};

// Requires 0 < mu <= L, delta_alpha in [0,1), alpha_max > 0 and lambda in
// (0,1); tilde_lambda alone accepts lambda = 0 (complete mixing).
void validate(const BoundInputs& in, bool allow_zero_lambda = false);

// lambda + lambda * L * alpha_max * (1 + delta_alpha); < 1 whenever
// alpha_max < (1-lambda) / (L lambda (1+delta_alpha)).
double tilde_lambda(const BoundInputs& in);

// Coefficients of the stability quadratic in alpha_max; a < 0, b < 0, c > 0
// over the whole valid input range.
struct AbcConstants {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

AbcConstants abc_constants(const BoundInputs& in);

// Stepsize ceiling: min of the linear-regime bound
// (1-lambda)^2 / ((1+delta_alpha) L lambda (lambda+3)) and the positive root
// (-b - sqrt(b^2 - 4ac)) / (2a).  With a < 0 and b < 0 the chosen branch has
// no cancellation.  Always positive and finite on valid inputs.
double ceiling_D(const BoundInputs& in);

// 1 / (2 D mu): smallest damping parameter for which the admissible
// stepsize window is guaranteed.
double gamma_min(double D, double mu);

// [mu/L * D, D], the guaranteed stepsize window; collapses to {D} at mu = L.
struct AlphaInterval {
  double lo = 0.0;
  double hi = 0.0;
};

AlphaInterval admissible_alpha(double D, double L, double mu);

// Heterogeneity values bracketing the theory's range: 0 and the analytic
// cap (L-mu)/(L+mu).
std::vector<double> default_delta_grid(double L, double mu);

struct SweepRow {
  double lambda = 0.0;
  double delta_alpha = 0.0;
  double D = 0.0;
  double gamma_min = 0.0;
};

// Cartesian product of the grids, rows sorted by (lambda, delta_alpha).
std::vector<SweepRow> sweep_constants(double L, double mu, const std::vector<double>& lambda_grid,
                                 const std::vector<double>& delta_grid);

// Header: lambda,delta_alpha,D,gamma_min; 17 significant digits.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void save_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

}  // namespace adgt
