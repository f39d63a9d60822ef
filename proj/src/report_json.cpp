#include "cauchy/report_json.hpp"

#include <cmath>

namespace cauchy {

namespace {

nlohmann::json optional_number(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nullptr; }

template <class Estimate>
void common_fields(nlohmann::json& j, const EstimateReport<Estimate>& r) {
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["residual"] = number_or_null(r.residual);
  j["dispersion"] = optional_number(r.dispersion);
  j["loglik"] = optional_number(r.loglik);
  j["flags"] = r.flags;
  if (r.zero_atoms) j["zero_atoms"] = *r.zero_atoms;
}

}  // namespace

nlohmann::json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

nlohmann::json to_json(const PointReport& r) {
  nlohmann::json j;
  j["estimate"] = complex_json(r.estimate);
  common_fields(j, r);
  return j;
}

nlohmann::json to_json(const MixtureReport& r) {
  nlohmann::json j;
  j["estimate"] = {{"t", r.estimate.t()},
                   {"gamma1", complex_json(r.estimate.gamma1().value())},
                   {"gamma2", complex_json(r.estimate.gamma2().value())}};
  common_fields(j, r);
  return j;
}

nlohmann::json to_json(const TestReport& r) {
  nlohmann::json grid = nlohmann::json::array();
  for (Complex z : r.grid_used) {
    if (z.imag() == 0.0) {
      grid.push_back(z.real());
    } else {
      grid.push_back(complex_json(z));
    }
  }
  return {{"statistic", r.statistic},
          {"p_value", r.p_value},
          {"B", r.replications},
          {"grid", grid},
          {"null_gamma", complex_json(r.null_params)}};
}

nlohmann::json to_json(const IdentityCheck& c) {
  nlohmann::json j{{"family", c.family},
                   {"worst_error", number_or_null(c.worst_error)},
                   {"tolerance", c.tolerance},
                   {"worst_point", c.worst_point},
                   {"pass", c.pass}};
  if (!c.table.empty()) {
    nlohmann::json table = nlohmann::json::object();
    for (const auto& [k, v] : c.table) table[k] = v;
    j["table"] = table;
  }
  return j;
}

nlohmann::json to_json(const std::vector<IdentityCheck>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) arr.push_back(to_json(c));
  return arr;
}

}  // namespace cauchy
