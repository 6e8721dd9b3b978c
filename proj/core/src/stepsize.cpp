#include "adgt/stepsize.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace adgt {

std::string to_string(StepsizePolicy policy) {
  switch (policy) {
    case StepsizePolicy::AdGT: return "adgt";
    case StepsizePolicy::AdGTCombined: return "adgt-combined";
    case StepsizePolicy::AdGD: return "adgd";
    case StepsizePolicy::MethodDM: return "method-dm";
    case StepsizePolicy::Fixed: return "fixed";
  }
  throw std::logic_error("unknown StepsizePolicy");
}

StepsizePolicy stepsize_policy_from_string(const std::string& name) {
  if (name == "adgt") return StepsizePolicy::AdGT;
  if (name == "adgt-combined") return StepsizePolicy::AdGTCombined;
  if (name == "adgd") return StepsizePolicy::AdGD;
  if (name == "method-dm") return StepsizePolicy::MethodDM;
  if (name == "fixed") return StepsizePolicy::Fixed;
  throw std::invalid_argument("unknown stepsize policy: " + name);
}

namespace {

StepsizeUpdate finish(const StepsizeState& s, double alpha_new, bool curvature_bound,
                      bool update_theta) {
  StepsizeState out = s;
  out.alpha = alpha_new;
  if (update_theta) out.theta = alpha_new / s.alpha;
  return {out, curvature_bound};
}

}  // namespace

StepsizeUpdate update_adgt(const StepsizeState& s, const CurvatureProbe& probe) {
  double next = std::sqrt(1.0 + s.theta) * s.alpha;
  bool bound = false;
  if (probe.dx_norm > 0.0 && probe.dy_norm > 0.0) {
    const double tracker_curvature = probe.dy_norm / probe.dx_norm;
    const double candidate = 1.0 / (2.0 * s.gamma * tracker_curvature);
    if (candidate < next) {
      next = candidate;
      bound = true;
    }
  }
  return finish(s, next, bound, true);
}

StepsizeUpdate update_adgt_combined(const StepsizeState& s, const CurvatureProbe& probe) {
  double next = std::sqrt(1.0 + s.theta) * s.alpha;
  bool bound = false;
  if (probe.dx_norm > 0.0 && probe.dgrad_norm > 0.0) {
    const double candidate = probe.dx_norm / (2.0 * s.gamma * probe.dgrad_norm);
    if (candidate < next) {
      next = candidate;
      bound = true;
    }
  }
  if (probe.dx_norm > 0.0 && probe.dy_norm > 0.0) {
    const double candidate = probe.dx_norm / (2.0 * s.gamma * probe.dy_norm);
    if (candidate < next) {
      next = candidate;
      bound = true;
    }
  }
  return finish(s, next, bound, true);
}

StepsizeUpdate update_adgd(const StepsizeState& s, const CurvatureProbe& probe) {
  double next = std::sqrt(1.0 + s.theta) * s.alpha;
  bool bound = false;
  if (probe.dx_norm > 0.0 && probe.dgrad_norm > 0.0) {
    const double candidate = probe.dx_norm / (2.0 * probe.dgrad_norm);
    if (candidate < next) {
      next = candidate;
      bound = true;
    }
  }
  return finish(s, next, bound, true);
}

StepsizeUpdate update_method_dm(const StepsizeState& s, const CurvatureProbe& probe) {
  double next = std::numbers::sqrt2 * s.alpha;
  bool bound = false;
  if (probe.dx_norm > 0.0 && probe.dgrad_norm > 0.0) {
    const double candidate = probe.dx_norm / (2.0 * probe.dgrad_norm);
    if (candidate < next) {
      next = candidate;
      bound = true;
    }
  }
  if (probe.y_norm > 0.0) {
    const double candidate = 1.0 / probe.y_norm;
    if (candidate < next) {
      next = candidate;
      bound = true;
    }
  }
  return finish(s, next, bound, false);
}

StepsizeUpdate update_stepsize(const StepsizeState& s, const CurvatureProbe& probe) {
  switch (s.policy) {
    case StepsizePolicy::AdGT: return update_adgt(s, probe);
    case StepsizePolicy::AdGTCombined: return update_adgt_combined(s, probe);
    case StepsizePolicy::AdGD: return update_adgd(s, probe);
    case StepsizePolicy::MethodDM: return update_method_dm(s, probe);
    case StepsizePolicy::Fixed: return {s, false};
  }
  throw std::logic_error("unknown StepsizePolicy");
}

ClampReport clamp_report(const StepsizeState& s, double L, double mu) {
  if (!(mu > 0.0) || !(L >= mu))
    throw std::invalid_argument("clamp_report requires L >= mu > 0");
  ClampReport report;
  report.lower = 1.0 / (2.0 * s.gamma * L);
  report.upper = 1.0 / (2.0 * s.gamma * mu);
  report.margin_lower = s.alpha - report.lower;
  report.margin_upper = report.upper - s.alpha;
  report.inside = report.margin_lower >= 0.0 && report.margin_upper >= 0.0;
  return report;
}

}  // namespace adgt
