#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "kondo/optimize.hpp"
#include "kondo/quench.hpp"
#include "kondo/router.hpp"
#include "kondo/scaling.hpp"

namespace kondo::cli {

/// 12 significant digits, as used in every CSV.
std::string fmt12(double v);

std::string trace_csv(const QuenchTrace& trace);
std::string optimization_csv(const OptimizationResult& r);
std::string scaling_csv(const std::vector<OptimizationResult>& runs, const PhiFit& fit);
std::string asymmetric_csv(const std::vector<SplitRow>& rows);
std::string regimes_csv(const std::vector<RegimeRow>& rows);
std::string router_csv(const RouteResult& routed);

nlohmann::json to_json(const ChainSpec& c);
nlohmann::json to_json(const CompositeSpec& c);
nlohmann::json to_json(const SolverConfig& c);
nlohmann::json to_json(const QuenchTrace& t);
nlohmann::json to_json(const OptimizationResult& r);
nlohmann::json to_json(const PhiFit& f);
nlohmann::json to_json(const std::vector<SplitRow>& rows);
nlohmann::json to_json(const std::vector<RegimeRow>& rows);
nlohmann::json to_json(const RouteResult& routed);

/// Writes to `path`, or to `fallback` when `path` is empty. Throws IoError.
void write_output(const std::string& path, const std::string& content, std::ostream& fallback);

}  // namespace kondo::cli
