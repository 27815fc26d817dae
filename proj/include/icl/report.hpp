// Assembles the machine-readable analysis report: stationary distribution,
// channel maps, partitions and their relation, every closure/control
// measure, and a verification summary.

#pragma once

#include <string>

#include <json.hpp>

#include "icl/universe.hpp"

namespace icl {

// Pure function of the universe and the closure-verdict tolerance.
nlohmann::json analysis_report(const Universe& u, double tol = kClosureTol);

// Fixed-width human-readable rendering with 6 significant digits.
std::string pretty_report(const nlohmann::json& report);

}  // namespace icl
