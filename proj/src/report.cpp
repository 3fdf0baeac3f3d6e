#include "padic/report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace padic {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Json clause_json(const ClauseResult& c) {
  return {{"clause", c.clause}, {"applicable", c.applicable}, {"exact", c.exact}, {"ok", c.ok},
          {"points", c.points},  {"exhaustive", c.exhaustive}, {"detail", c.detail}};
}

}  // namespace

std::string fmt17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json manifest_json(const KaufmanMeasure& K, const Json& run_config) {
  const ConstructionParams& p = K.params();
  const LevelSchedule& s = K.schedule();
  Json params = {{"p", p.p},
                 {"tau", p.tau.get_str()},
                 {"shape", p.shape.name()},
                 {"g", p.g.name()},
                 {"depth", p.depth},
                 {"mode", mode_name(p.mode)},
                 {"M_list", p.m_list},
                 {"M0", p.resolved_M0()}};
  Json levels = Json::array();
  for (unsigned k = 0; k <= s.depth(); ++k) {
    Json lv = {{"k", k}, {"M", s.M[k]}, {"L", s.L[k]}};
    if (k >= 1) lv["Q_count"] = s.q_count[k].to_string();
    lv["materialized"] = K.materialized(k);
    if (K.materialized(k)) {
      lv["support_cells"] = K.mu(k).density().size();
      lv["level"] = K.mu(k).level();
      lv["mass"] = K.mu(k).total_mass().get_str();
    }
    levels.push_back(lv);
  }
  Json checks = Json::array();
  for (const auto& c : s.checks)
    checks.push_back({{"k", c.k}, {"condition", c.condition}, {"holds", c.holds}, {"detail", c.detail}});
  return {{"params", params},   {"levels", levels},      {"conditions", checks},
          {"notes", K.notes()}, {"run_config", run_config}};
}

std::string manifest_hash(const Json& manifest) {
  const std::string text = manifest.dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

Json to_json(const LemmaReport& r) {
  Json clauses = Json::array();
  for (const auto& c : r.clauses) clauses.push_back(clause_json(c));
  return {{"name", r.name}, {"ok", r.ok()}, {"constant", r.constant}, {"constant_label", r.constant_label},
          {"clauses", clauses}};
}

Json to_json(const DecayProfile& r) {
  Json shells = Json::array();
  for (const auto& sh : r.shells)
    shells.push_back({{"ell", sh.ell},
                      {"max_abs", sh.max_abs},
                      {"argmax", sh.argmax},
                      {"points", sh.points},
                      {"exhaustive", sh.exhaustive},
                      {"ratio", sh.ratio}});
  return {{"k", r.k},          {"p", r.p},           {"shape", r.shape.name()},
          {"tau", r.tau.get_str()}, {"g", r.g.name()}, {"M", r.M},
          {"L", r.L},          {"beta", r.beta},     {"log_power", r.log_power},
          {"seed", r.seed},    {"evaluator", r.evaluator}, {"window_ratio", r.window_ratio()},
          {"shells", shells}};
}

Json to_json(const DimEstimate& r) {
  return {{"shells", r.shells},
          {"zero_shells", r.zero_shells},
          {"slope_raw", r.slope_raw},
          {"slope_corrected", r.slope_corrected},
          {"exponent_raw", r.exponent_raw},
          {"exponent_corrected", r.exponent_corrected},
          {"dim_raw", r.dim_raw},
          {"dim_corrected", r.dim_corrected},
          {"target_exponent", r.target_exponent}};
}

Json to_json(const RegularityReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"ell", row.ell},
                    {"exact", row.exact},
                    {"max_mass", row.max_mass.get_str()},
                    {"lo", row.lo},
                    {"hi", row.hi},
                    {"argmax", row.argmax},
                    {"bound", row.bound},
                    {"ratio", row.ratio},
                    {"case", row.case_tag},
                    {"method", row.method}});
  return {{"k", r.k}, {"C", r.C}, {"notes", r.notes}, {"rows", rows}};
}

Json to_json(const CountingReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"lemma", row.lemma},
                    {"j", row.j},
                    {"k", row.k},
                    {"ell", row.ell},
                    {"instances", row.instances},
                    {"measured", row.measured.get_str()},
                    {"bound", row.bound.get_str()},
                    {"holds", row.holds}});
  return {{"ok", r.ok()}, {"instances", r.instances}, {"violations", r.violations}, {"notes", r.notes}, {"rows", rows}};
}

Json to_json(const EnergyReport& r) {
  Json sums = Json::array();
  for (const auto& s : r.square_sums) sums.push_back(s.get_str());
  return {{"alpha", r.alpha.get_str()}, {"level", r.level},         {"spatial", r.spatial},
          {"fourier", r.fourier},       {"truncated", r.truncated}, {"square_sums", sums}};
}

Json to_json(const RestrictionReport& r) {
  return {{"q", r.q.get_str()},
          {"seed", r.seed},
          {"functions", r.rows.size()},
          {"max_ratio", r.max_ratio},
          {"argmax", r.rows.empty() ? "" : r.rows[r.argmax].name}};
}

void write_decay_csv(std::ostream& os, const DecayProfile& r, const std::string& hash) {
  os << "# manifest " << hash << "\n";
  os << "ell,abs_s,max_abs,ratio,points,exhaustive,argmax\n";
  for (const auto& sh : r.shells)
    os << sh.ell << "," << r.p << "^" << sh.ell << "," << fmt17(sh.max_abs) << "," << fmt17(sh.ratio) << ","
       << sh.points << "," << (sh.exhaustive ? 1 : 0) << "," << csv_field(sh.argmax) << "\n";
}

void write_plot_dump(std::ostream& os, const DecayProfile& r, const std::string& hash) {
  os << "# manifest " << hash << "\n";
  os << "ln_abs_s,ln_max_abs\n";
  const double lnp = std::log(static_cast<double>(r.p));
  for (const auto& sh : r.shells)
    if (sh.max_abs > 0) os << fmt17(sh.ell * lnp) << "," << fmt17(std::log(sh.max_abs)) << "\n";
}

void write_regularity_csv(std::ostream& os, const RegularityReport& r, const std::string& hash) {
  os << "# manifest " << hash << "\n";
  os << "ell,exact,max_mass,lo,hi,bound,ratio,case,method,argmax\n";
  for (const auto& row : r.rows)
    os << row.ell << "," << (row.exact ? 1 : 0) << "," << row.max_mass.get_str() << "," << fmt17(row.lo) << ","
       << fmt17(row.hi) << "," << fmt17(row.bound) << "," << fmt17(row.ratio) << "," << csv_field(row.case_tag) << ","
       << csv_field(row.method) << "," << csv_field(row.argmax) << "\n";
}

void write_counting_csv(std::ostream& os, const CountingReport& r, const std::string& hash) {
  os << "# manifest " << hash << "\n";
  os << "lemma,j,k,ell,instances,measured,bound,holds\n";
  for (const auto& row : r.rows)
    os << csv_field(row.lemma) << "," << row.j << "," << row.k << "," << row.ell << "," << row.instances << ","
       << row.measured.get_str() << "," << row.bound.get_str() << "," << (row.holds ? 1 : 0) << "\n";
}

void write_restriction_csv(std::ostream& os, const RestrictionReport& r, const std::string& hash) {
  os << "# manifest " << hash << "\n";
  os << "index,name,level,integral,norm,ratio\n";
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    os << i << "," << csv_field(row.name) << "," << row.level << "," << fmt17(row.integral) << "," << fmt17(row.norm)
       << "," << fmt17(row.ratio) << "\n";
  }
}

void write_lemma_csv(std::ostream& os, const std::vector<LemmaReport>& reports, const std::string& hash) {
  os << "# manifest " << hash << "\n";
  os << "lemma,clause,applicable,exact,ok,points,exhaustive,detail\n";
  for (const auto& r : reports)
    for (const auto& c : r.clauses)
      os << csv_field(r.name) << "," << csv_field(c.clause) << "," << (c.applicable ? 1 : 0) << ","
         << (c.exact ? 1 : 0) << "," << (c.ok ? 1 : 0) << "," << c.points << "," << (c.exhaustive ? 1 : 0) << ","
         << csv_field(c.detail) << "\n";
}

}  // namespace padic
