#include "csl/learnlab/bounds.h"

#include <cmath>

#include "csl/error.h"

namespace csl::learnlab {

namespace {

void RequirePositive(double value, const char* name) {
  if (!(value > 0.0)) Throw(ErrorKind::kNonPositiveParameter, std::string(name) + " must be > 0");
}

void RequireNonNegative(double value, const char* name) {
  if (!(value >= 0.0)) Throw(ErrorKind::kNonPositiveParameter, std::string(name) + " must be >= 0");
}

double AsDouble(std::int64_t n) {
  if (n < 1) Throw(ErrorKind::kNonPositiveParameter, "n must be >= 1");
  return static_cast<double>(n);
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double DisturbanceBound(double xi, std::int64_t n, PerturbationMode mode) {
  RequireNonNegative(xi, "xi");
  const double scale = mode == PerturbationMode::kReplaceOne ? 2.0 : 1.0;
  return scale * xi / AsDouble(n);
}

double DisturbanceBound(const LipschitzEstimate& lip, std::int64_t n, PerturbationMode mode) {
  return DisturbanceBound(lip.xi, n, mode);
}

double IntegrateSchedule(const Schedule& schedule, double horizon, double h) {
  RequirePositive(h, "h");
  RequireNonNegative(horizon, "T");
  if (horizon == 0.0) return 0.0;
  const auto steps = static_cast<std::int64_t>(std::ceil(horizon / h - 1e-9));
  const double dt = horizon / static_cast<double>(steps);
  double sum = 0.5 * (schedule(0.0) + schedule(horizon));
  for (std::int64_t k = 1; k < steps; ++k) sum += schedule(static_cast<double>(k) * dt);
  return sum * dt;
}

double StabilityBound(const Regime& regime) {
  return std::visit(
      Overloaded{
          [](const ContractionRegime& p) {
            RequirePositive(p.lambda, "lambda");
            RequirePositive(p.chi, "chi");
            RequireNonNegative(p.lipschitz, "L");
            RequireNonNegative(p.xi, "xi");
            RequireNonNegative(p.c, "C");
            const double asymptotic = 2.0 * p.chi * p.lipschitz * p.xi / (p.lambda * AsDouble(p.n));
            if (!p.t) return asymptotic;
            return p.chi * p.lipschitz * std::exp(-p.lambda * *p.t) * p.c + asymptotic;
          },
          [](const StronglyConvexRegime& p) {
            RequirePositive(p.gamma, "gamma");
            RequireNonNegative(p.lipschitz, "L");
            return 2.0 * p.lipschitz * p.lipschitz / (p.gamma * AsDouble(p.n));
          },
          [](const PreconditionedRegime& p) {
            RequirePositive(p.gamma, "gamma");
            RequirePositive(p.p_min, "p_min");
            RequirePositive(p.p_max, "p_max");
            RequireNonNegative(p.lipschitz, "L");
            return std::sqrt(p.p_max * p.p_max * p.p_max / p.p_min) * 2.0 * p.lipschitz *
                   p.lipschitz / (p.gamma * AsDouble(p.n));
          },
          [](const ConvexScheduleRegime& p) {
            RequireNonNegative(p.lipschitz, "L");
            if (!p.schedule) Throw(ErrorKind::kInvalidArgument, "schedule is required");
            return 2.0 * p.lipschitz * p.lipschitz / AsDouble(p.n) *
                   IntegrateSchedule(p.schedule, p.horizon, p.h);
          },
          [](const AdaptiveRateRegime& p) {
            RequirePositive(p.rho_min, "rho_min");
            RequirePositive(p.lambda, "lambda");
            RequirePositive(p.chi, "chi");
            return 2.0 * p.chi * p.lipschitz * p.xi / (p.rho_min * p.lambda * AsDouble(p.n));
          },
          [](const PlRegime& p) {
            RequirePositive(p.mu, "mu");
            return 4.0 * p.lipschitz * p.lipschitz / (p.mu * AsDouble(p.n));
          },
          [](const LyapunovGrowthRegime& p) {
            RequirePositive(p.beta, "beta");
            RequirePositive(p.mu, "mu");
            RequireNonNegative(p.v0, "V0");
            RequireNonNegative(p.dist_to_optimum, "dist_to_optimum");
            const double decay = p.t ? p.v0 * std::exp(-p.beta * *p.t) : 0.0;
            const double floor = 2.0 * p.lyap_lipschitz * p.xi / (AsDouble(p.n) * p.beta * p.mu);
            return p.lipschitz * (p.dist_to_optimum + std::sqrt(decay + floor));
          },
      },
      regime);
}

std::string_view RegimeName(const Regime& regime) {
  static constexpr std::string_view kNames[] = {
      "contraction", "strongly_convex", "preconditioned", "convex_schedule",
      "adaptive_rate", "pl", "lyapunov_growth"};
  return kNames[regime.index()];
}

std::string_view RegimeFormula(const Regime& regime) {
  static constexpr std::string_view kFormulas[] = {
      "chi*L*exp(-lambda*t)*C + 2*chi*L*xi/(lambda*n)",
      "2*L^2/(gamma*n)",
      "sqrt(p_max^3/p_min)*2*L^2/(gamma*n)",
      "(2*L^2/n)*integral_0^T alpha(t) dt",
      "2*chi*L*xi/(rho_min*lambda*n)",
      "4*L^2/(mu*n)",
      "L*(|theta_S-theta*_S| + sqrt(V0*exp(-beta*t) + 2*M*xi/(n*beta*mu)))"};
  return kFormulas[regime.index()];
}

Regime MakeRegime(std::string_view name, const std::map<std::string, double>& params) {
  auto get = [&](const char* key) {
    const auto it = params.find(key);
    if (it == params.end()) {
      Throw(ErrorKind::kInvalidArgument, "regime parameter '" + std::string(key) + "' missing");
    }
    return it->second;
  };
  auto opt = [&](const char* key, double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  auto opt_t = [&]() -> std::optional<double> {
    const auto it = params.find("t");
    if (it == params.end()) return std::nullopt;
    return it->second;
  };
  auto n = [&]() { return static_cast<std::int64_t>(std::llround(get("n"))); };

  if (name == "contraction") {
    return ContractionRegime{opt("chi", 1.0), get("L"), get("xi"), get("lambda"), opt("C", 0.0),
                             n(), opt_t()};
  }
  if (name == "strongly_convex") return StronglyConvexRegime{get("L"), get("gamma"), n()};
  if (name == "preconditioned") {
    return PreconditionedRegime{get("p_max"), get("p_min"), get("L"), get("gamma"), n()};
  }
  if (name == "convex_schedule") {
    return ConvexScheduleRegime{get("L"), n(), ExponentialSchedule(get("alpha0"), opt("decay", 0.0)),
                                get("T"), opt("h", 1e-3)};
  }
  if (name == "adaptive_rate") {
    return AdaptiveRateRegime{opt("chi", 1.0), get("L"), get("xi"), get("rho_min"), get("lambda"), n()};
  }
  if (name == "pl") return PlRegime{get("L"), get("mu"), n()};
  if (name == "lyapunov_growth") {
    return LyapunovGrowthRegime{get("L"),  opt("dist_to_optimum", 0.0), get("V0"), get("beta"),
                                get("lyap_lipschitz"), get("xi"), get("mu"), n(), opt_t()};
  }
  Throw(ErrorKind::kUnknownRegime, "unknown regime '" + std::string(name) + "'");
}

}  // namespace csl::learnlab
