#pragma once

// Build manifests and the CSV / JSON forms of the analysis reports. Every CSV
// starts with "# manifest <hash>" naming the build it came from.

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "padic/analysis.hpp"

namespace padic {

using Json = nlohmann::ordered_json;

/// Shortest round-tripping form with 17 significant digits.
std::string fmt17(double x);

/// Parameters, schedule, conditions, materialized levels and the run config.
Json manifest_json(const KaufmanMeasure& K, const Json& run_config);
/// FNV-1a 64 of the compact dump, as 16 hex digits.
std::string manifest_hash(const Json& manifest);

Json to_json(const LemmaReport& r);
Json to_json(const DecayProfile& r);
Json to_json(const DimEstimate& r);
Json to_json(const RegularityReport& r);
Json to_json(const CountingReport& r);
Json to_json(const EnergyReport& r);
Json to_json(const RestrictionReport& r);

void write_decay_csv(std::ostream& os, const DecayProfile& r, const std::string& hash);
/// Two columns: ln|s|_p, ln max|mu^| for the nonzero shells.
void write_plot_dump(std::ostream& os, const DecayProfile& r, const std::string& hash);
void write_regularity_csv(std::ostream& os, const RegularityReport& r, const std::string& hash);
void write_counting_csv(std::ostream& os, const CountingReport& r, const std::string& hash);
void write_restriction_csv(std::ostream& os, const RestrictionReport& r, const std::string& hash);
void write_lemma_csv(std::ostream& os, const std::vector<LemmaReport>& r, const std::string& hash);

}  // namespace padic
