#include "adgt/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "adgt/mixing.hpp"

namespace adgt {

void validate(const BoundInputs& in, bool allow_zero_lambda) {
  const double lo = allow_zero_lambda ? 0.0 : std::nextafter(0.0, 1.0);
  if (!(in.lambda >= lo) || !(in.lambda < 1.0))
    throw std::invalid_argument(allow_zero_lambda ? "lambda must lie in [0,1)"
                                                  : "lambda must lie in (0,1)");
  if (!(in.mu > 0.0) || !(in.L >= in.mu))
    throw std::invalid_argument("need L >= mu > 0");
  if (!(in.delta_alpha >= 0.0) || !(in.delta_alpha < 1.0))
    throw std::invalid_argument("delta_alpha must lie in [0,1)");
  if (!(in.alpha_max > 0.0) || !std::isfinite(in.alpha_max))
    throw std::invalid_argument("alpha_max must be positive and finite");
}

double tilde_lambda(const BoundInputs& in) {
  validate(in, true);
  return in.lambda + in.lambda * in.L * in.alpha_max * (1.0 + in.delta_alpha);
}

AbcConstants abc_constants(const BoundInputs& in) {
  validate(in);
  const double lam = in.lambda;
  const double L = in.L;
  const double d = in.delta_alpha;
  const double s2 = std::numbers::sqrt2;

  AbcConstants out;
  out.a = L * L * lam * (1.0 + d) * ((lam - 1.0) + (2.0 * s2 - 4.0) * lam * d);
  out.b = -2.0 * L * lam * (lam + 3.0) * (1.0 + d)
          - 2.0 * s2 * L * (1.0 - lam) * d * (lam + 1.0)
          - L * lam * d * d * ((4.0 - 2.0 * s2) * lam + (4.0 + 2.0 * s2))
          - L * (1.0 - lam) * (1.0 - lam);
  out.c = 2.0 * (1.0 - lam) * (1.0 - lam);
  return out;
}

double ceiling_D(const BoundInputs& in) {
  validate(in);
  const double lam = in.lambda;
  const double linear_bound =
      (1.0 - lam) * (1.0 - lam) / ((1.0 + in.delta_alpha) * in.L * lam * (lam + 3.0));
  const AbcConstants k = abc_constants(in);
  // a < 0 and b < 0, so -b - sqrt(.) subtracts a larger magnitude from a
  // positive value and the quotient by 2a flips it positive; no cancellation.
  const double discriminant = k.b * k.b - 4.0 * k.a * k.c;
  const double root = (-k.b - std::sqrt(discriminant)) / (2.0 * k.a);
  return std::min(linear_bound, root);
}

double gamma_min(double D, double mu) {
  if (!(D > 0.0) || !(mu > 0.0)) throw std::invalid_argument("gamma_min requires D, mu > 0");
  return 1.0 / (2.0 * D * mu);
}

AlphaInterval admissible_alpha(double D, double L, double mu) {
  if (!(D > 0.0)) throw std::invalid_argument("admissible_alpha requires D > 0");
  if (!(mu > 0.0) || !(L >= mu)) throw std::invalid_argument("need L >= mu > 0");
  return {mu / L * D, D};
}

std::vector<double> default_delta_grid(double L, double mu) {
  if (!(mu > 0.0) || !(L >= mu)) throw std::invalid_argument("need L >= mu > 0");
  const double cap = (L - mu) / (L + mu);
  if (cap == 0.0) return {0.0};
  return {0.0, cap};
}

std::vector<SweepRow> sweep_constants(double L, double mu, const std::vector<double>& lambda_grid,
                                 const std::vector<double>& delta_grid) {
  if (lambda_grid.empty() || delta_grid.empty())
    throw std::invalid_argument("sweep grids must be nonempty");

  std::vector<double> lambdas = lambda_grid;
  std::vector<double> deltas = delta_grid;
  std::sort(lambdas.begin(), lambdas.end());
  std::sort(deltas.begin(), deltas.end());

  std::vector<SweepRow> rows;
  rows.reserve(lambdas.size() * deltas.size());
  for (const double lam : lambdas) {
    for (const double d : deltas) {
      BoundInputs in;
      in.lambda = lam;
      in.L = L;
      in.mu = mu;
      in.delta_alpha = d;
      in.alpha_max = 1.0;  // not used by the ceiling
      SweepRow row;
      row.lambda = lam;
      row.delta_alpha = d;
      row.D = ceiling_D(in);
      row.gamma_min = gamma_min(row.D, mu);
      rows.push_back(row);
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "lambda,delta_alpha,D,gamma_min\n";
  for (const auto& row : rows) {
    out << format_full(row.lambda) << ',' << format_full(row.delta_alpha) << ','
        << format_full(row.D) << ',' << format_full(row.gamma_min) << '\n';
  }
}

void save_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write sweep csv: " + path);
  write_sweep_csv(out, rows);
}

}  // namespace adgt
