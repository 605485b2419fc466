#ifndef LACUNA_IO_HPP
#define LACUNA_IO_HPP

#include <json.hpp>

#include <string>

#include "lacuna/core.hpp"
#include "lacuna/lacunary.hpp"
#include "lacuna/series.hpp"
#include "lacuna/summability.hpp"

namespace lacuna {

using json = nlohmann::json;

json to_json(const VectorSequence& x);
VectorSequence sequence_from_json(const json& j);

json to_json(const LacunarySequence& theta);
LacunarySequence theta_from_json(const json& j);

json to_json(const StabilizationPolicy& p);
StabilizationPolicy policy_from_json(const json& j);

json to_json(const EpsilonGrid& g);
EpsilonGrid grid_from_json(const json& j);

json to_json(const SummabilityVerdict& v);

json to_json(const DensityTrace& t);

json to_json(const SeriesContext& ctx);
SeriesContext series_from_json(const json& j, NormKind norm,
                               StabilizationPolicy validation_policy);

json to_json(const WucReport& r);
json to_json(const CauchyOutcome& o);
json to_json(const DivergenceWitness& w);
json to_json(const CounterexampleResult& r, const FunctionalValues& fvals);

/// columns: r,k_r,h_r,residual[,density@eps...]
std::string verdict_csv(const SummabilityVerdict& v);
/// columns: r,k_r,h_r,fraction
std::string density_csv(const DensityTrace& t, const LacunarySequence& theta);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

} // namespace lacuna

#endif
