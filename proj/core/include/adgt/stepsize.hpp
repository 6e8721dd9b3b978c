#pragma once

#include <string>

namespace adgt {

enum class StepsizePolicy { AdGT, AdGTCombined, AdGD, MethodDM, Fixed };

std::string to_string(StepsizePolicy policy);
StepsizePolicy stepsize_policy_from_string(const std::string& name);

// Per-agent stepsize controller state.  alpha stays positive under every
// policy; theta is the last realized growth ratio alpha_new/alpha_old.
struct StepsizeState {
  double alpha = 1e-3;
  double theta = 0.0;
  double gamma = 1.0;
  StepsizePolicy policy = StepsizePolicy::AdGT;
};

// Norms observed over one engine round, all finite and nonnegative:
// dx_norm = |x'-x|, dy_norm = |y'-y|, dgrad_norm = |grad'-grad|,
// y_norm = |y| before the round.
struct CurvatureProbe {
  double dx_norm = 0.0;
  double dy_norm = 0.0;
  double dgrad_norm = 0.0;
  double y_norm = 0.0;
};

// New state plus whether a curvature term (not the growth branch) was the
// strict minimum; engines use the flag to locate the first curvature-limited
// update per agent.
struct StepsizeUpdate {
  StepsizeState state;
  bool curvature_bound = false;
};

// alpha' = min(1/(2 gamma L_y), sqrt(1+theta) alpha) with L_y = dy/dx;
// the curvature term is dropped when dx or dy is zero (no information).
// theta' = alpha'/alpha.
StepsizeUpdate update_adgt(const StepsizeState& s, const CurvatureProbe& probe);

// Like update_adgt with the additional candidate 1/(2 gamma L_f),
// L_f = dgrad/dx.
StepsizeUpdate update_adgt_combined(const StepsizeState& s, const CurvatureProbe& probe);

// Centralized rule: alpha' = min(dx/(2 dgrad), sqrt(1+theta) alpha);
// gamma does not enter.
StepsizeUpdate update_adgd(const StepsizeState& s, const CurvatureProbe& probe);

// alpha' = min(1/(2 L_f), 1/y_norm, sqrt(2) alpha), L_f = dgrad/dx; terms
// with zero denominators are dropped; theta is not used and left unchanged.
StepsizeUpdate update_method_dm(const StepsizeState& s, const CurvatureProbe& probe);

// Dispatch on s.policy; Fixed returns s unchanged.
StepsizeUpdate update_stepsize(const StepsizeState& s, const CurvatureProbe& probe);

// Diagnostic only; alpha is never modified during runs.  Bounds are
// [1/(2 gamma L), 1/(2 gamma mu)] with margins measured from alpha.
struct ClampReport {
  double lower = 0.0;
  double upper = 0.0;
  double margin_lower = 0.0;  // alpha - lower
  double margin_upper = 0.0;  // upper - alpha
  bool inside = false;
};

// Requires L >= mu > 0.
ClampReport clamp_report(const StepsizeState& s, double L, double mu);

}  // namespace adgt
