#pragma once

#include "json.hpp"
#include <span>
#include <vector>

#include "cauchy/estimation.hpp"
#include "cauchy/gof.hpp"
#include "cauchy/oracle.hpp"

namespace cauchy {

nlohmann::json complex_json(Complex z);
nlohmann::json to_json(const PointReport& r);
nlohmann::json to_json(const MixtureReport& r);
nlohmann::json to_json(const TestReport& r);
nlohmann::json to_json(const IdentityCheck& c);
nlohmann::json to_json(const std::vector<IdentityCheck>& checks);

}  // namespace cauchy
