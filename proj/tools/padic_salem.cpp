// padic-salem: build finite-level Kaufman measures on Z_p^d and run the
// lemma checks and diagnostics on them.
//
// Exit codes: 0 success, 1 an exact lemma clause failed, 2 usage or standing
// assumption error, 3 a size budget was exceeded.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "padic/analysis.hpp"
#include "padic/kaufman.hpp"
#include "padic/parallel.hpp"
#include "padic/report.hpp"

namespace fs = std::filesystem;
using namespace padic;

namespace {

struct RunConfig {
  std::string command;
  unsigned p = 3;
  std::string tau = "5/2";
  std::vector<std::string> shape{"scalar"};
  std::string g = "sqrt";
  unsigned depth = 2;
  std::string mode = "faithful";
  std::vector<unsigned> m_list;
  int M0 = -1;
  u64 seed = 1;
  u64 cap_shell = 100'000;
  u64 samples = 10'000;
  std::string out = ".";
  std::string format = "csv";
  unsigned threads = 0;
  u64 cell_budget = BuildBudget{}.cells;
  u64 table_budget = BuildBudget{}.dual_table;
  int k = -1;
  int max_ell = -1;
  std::vector<std::string> alpha;
  std::string q;
  std::string alpha_exp, beta_exp;
  unsigned count = 200;
  unsigned max_level = 4;
  std::string what = "support";

  /// Everything that changes results; the output directory and the worker
  /// count are left out so manifests do not depend on them.
  Json to_json() const {
    Json j = {{"command", command}, {"p", p},         {"tau", tau},       {"shape", shape},
              {"g", g},             {"depth", depth}, {"mode", mode},     {"M_list", m_list},
              {"seed", seed},       {"cap_shell", cap_shell}, {"samples", samples},
              {"format", format},   {"cell_budget", cell_budget}, {"table_budget", table_budget}};
    if (M0 >= 0) j["M0"] = M0;
    if (k >= 0) j["k"] = k;
    if (max_ell >= 0) j["max_ell"] = max_ell;
    if (!alpha.empty()) j["alpha"] = alpha;
    if (!q.empty()) j["q"] = q;
    if (!alpha_exp.empty()) j["alpha_exp"] = alpha_exp;
    if (!beta_exp.empty()) j["beta_exp"] = beta_exp;
    if (command == "restrict") {
      j["count"] = count;
      j["max_level"] = max_level;
    }
    if (command == "dump") j["what"] = what;
    return j;
  }
};

BigRational parse_rational(const std::string& text, const std::string& what) {
  BigRational r;
  if (text.empty() || r.set_str(text, 10) != 0 || r.get_den() == 0)
    throw std::invalid_argument(what + ": '" + text + "' is not a rational NUM/DEN");
  r.canonicalize();
  return r;
}

ConstructionParams to_params(const RunConfig& c) {
  ConstructionParams params;
  params.p = c.p;
  params.tau = parse_rational(c.tau, "--tau");
  if (c.shape.size() == 1 && c.shape[0] == "scalar") {
    params.shape = Shape::scalar();
  } else if (c.shape.size() == 3 && c.shape[0] == "mxn") {
    params.shape = Shape::mxn(static_cast<unsigned>(std::stoul(c.shape[1])), static_cast<unsigned>(std::stoul(c.shape[2])));
    if (params.shape.m == 0 || params.shape.n == 0) throw std::invalid_argument("--shape: m and n must be positive");
  } else {
    throw std::invalid_argument("--shape expects 'scalar' or 'mxn M N'");
  }
  params.g = Growth::parse(c.g);
  params.depth = c.depth;
  params.mode = parse_mode(c.mode);
  params.m_list = c.m_list;
  if (c.M0 >= 0) params.M0 = static_cast<unsigned>(c.M0);
  if (params.mode == Mode::toy && params.m_list.empty()) throw std::invalid_argument("toy mode needs --M-list");
  if (params.mode == Mode::toy) params.depth = static_cast<unsigned>(params.m_list.size());
  params.validate();
  return params;
}

SamplingOptions sampling(const RunConfig& c) {
  SamplingOptions opt;
  opt.shell_cap = c.cap_shell;
  opt.samples = c.samples;
  opt.seed = c.seed;
  return opt;
}

struct Output {
  fs::path dir;
  std::string hash;
  bool json = false;

  void text(const std::string& name, const std::string& body) const {
    std::ofstream f(dir / name);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    f << body;
  }
  void json_doc(const std::string& name, Json doc) const {
    doc["manifest"] = hash;
    text(name, doc.dump(2) + "\n");
  }
  template <class Writer>
  void csv(const std::string& name, Writer&& w) const {
    std::ostringstream os;
    w(os);
    text(name, os.str());
  }
};

unsigned default_k(const KaufmanMeasure& K, const RunConfig& c) {
  if (c.k >= 0) {
    if (static_cast<unsigned>(c.k) > K.depth()) throw std::invalid_argument("--k exceeds the depth");
    return static_cast<unsigned>(c.k);
  }
  return std::max(1u, K.materialized_depth());
}

void print_schedule(const KaufmanMeasure& K) {
  const LevelSchedule& s = K.schedule();
  std::cout << "schedule (" << mode_name(K.params().mode) << ", p=" << K.prime() << ", tau=" << K.params().tau.get_str()
            << ", " << K.params().shape.name() << ", g=" << K.params().g.name() << ")\n";
  for (unsigned k = 0; k <= s.depth(); ++k) {
    std::cout << "  k=" << k << "  M=" << s.M[k] << "  L=" << s.L[k];
    if (k >= 1) std::cout << "  |Q|=" << s.q_count[k].to_string();
    if (K.materialized(k)) std::cout << "  cells=" << K.mu(k).density().size() << "  mass=" << K.mu(k).total_mass().get_str();
    else std::cout << "  (implicit)";
    std::cout << "\n";
  }
  for (const auto& c : s.checks)
    if (!c.holds) std::cout << "  condition " << c.condition << " fails at k=" << c.k << ": " << c.detail << "\n";
  for (const auto& n : K.notes()) std::cout << "  note: " << n << "\n";
}

int cmd_build(const KaufmanMeasure& K, const Output& out) {
  print_schedule(K);
  for (unsigned k = 0; k <= K.materialized_depth(); ++k) {
    std::ostringstream os;
    os << "# manifest " << out.hash << "\n";
    write_density(os, K.mu(k).density());
    out.text("mu_" + std::to_string(k) + ".density", os.str());
    if (k >= 1 && K.fm_materialized(k)) {
      std::ostringstream fs_;
      fs_ << "# manifest " << out.hash << "\n";
      write_density(fs_, K.fm_density(k));
      out.text("F_" + std::to_string(k) + ".density", fs_.str());
    }
  }
  return 0;
}

void print_lemma(const LemmaReport& r) {
  for (const auto& c : r.clauses) {
    const char* tag = !c.applicable ? "n/a " : c.ok ? "PASS" : "FAIL";
    std::cout << "  " << tag << "  " << r.name << "  " << c.clause << "  [" << c.points << " pts"
              << (c.exhaustive ? ", exhaustive" : "") << "]  " << c.detail << "\n";
  }
}

int cmd_verify(const KaufmanMeasure& K, const RunConfig& cfg, const Output& out) {
  const ConstructionParams& params = K.params();
  const LevelSchedule& s = K.schedule();
  const SamplingOptions opt = sampling(cfg);
  print_schedule(K);
  std::vector<LemmaReport> reports;
  std::vector<std::string> notes;
  for (unsigned k = 1; k <= K.depth(); ++k) {
    if (!K.has_fm(k)) {
      notes.push_back("FM at M_" + std::to_string(k) + " skipped: Q_M not enumerated");
      continue;
    }
    try {
      reports.push_back(verify_lemma_FM(params, s.M[k], opt));
    } catch (const SizeError& e) {
      notes.push_back("FM at M_" + std::to_string(k) + " skipped: " + e.what());
    }
  }
  for (unsigned k = 1; k <= K.depth(); ++k) reports.push_back(verify_lemma_muk(K, k, opt));
  for (unsigned k = 0; k <= K.materialized_depth(); ++k) {
    LemmaReport r;
    r.name = "transfer mu_" + std::to_string(k);
    r.clauses.push_back(periodicity_check(K.mu(k), 50, cfg.seed));
    reports.push_back(r);
  }
  for (unsigned k = 1; k <= K.materialized_depth(); ++k) {
    const WellApproxReport w = support_wellapprox_check(K, k);
    LemmaReport r;
    r.name = "support mu_" + std::to_string(k);
    ClauseResult c;
    c.clause = "well-approximable witnesses";
    c.ok = w.ok;
    c.points = w.cells_checked;
    c.exhaustive = true;
    c.detail = std::to_string(w.witnesses_found) + " witnesses" + (w.failures.empty() ? "" : "; " + w.failures.front());
    r.clauses.push_back(c);
    reports.push_back(r);
  }

  CountingReport counting;
  if (!params.shape.matrix) {
    for (unsigned j = 1; j <= K.depth(); ++j)
      for (unsigned k = j; k <= std::min(K.depth(), j + 1); ++k) {
        try {
          CountingReport c = counting_checks(params, s, j, k);
          counting.rows.insert(counting.rows.end(), c.rows.begin(), c.rows.end());
          counting.notes.insert(counting.notes.end(), c.notes.begin(), c.notes.end());
          counting.instances += c.instances;
          counting.violations += c.violations;
        } catch (const SizeError& e) {
          counting.notes.push_back("counting (" + std::to_string(j) + "," + std::to_string(k) + ") skipped: " + e.what());
        } catch (const std::domain_error& e) {
          counting.notes.push_back("counting (" + std::to_string(j) + "," + std::to_string(k) + ") skipped: " + e.what());
        }
      }
  }

  bool ok = counting.ok();
  for (const auto& r : reports) {
    print_lemma(r);
    ok = ok && r.ok();
  }
  std::cout << "  " << (counting.ok() ? "PASS" : "FAIL") << "  counting  " << counting.rows.size() << " rows, "
            << counting.instances << " instances, " << counting.violations << " violations\n";
  for (const auto& n : counting.notes) std::cout << "  note: " << n << "\n";
  for (const auto& n : notes) std::cout << "  note: " << n << "\n";

  Json doc = {{"ok", ok}, {"lemmas", Json::array()}, {"counting", to_json(counting)}, {"notes", notes}};
  for (const auto& r : reports) doc["lemmas"].push_back(to_json(r));
  out.json_doc("verify.json", doc);
  if (!out.json) {
    out.csv("verify.csv", [&](std::ostream& os) { write_lemma_csv(os, reports, out.hash); });
    out.csv("counting.csv", [&](std::ostream& os) { write_counting_csv(os, counting, out.hash); });
  }
  std::cout << (ok ? "verify: all exact clauses hold\n" : "verify: exact clause failure\n");
  return ok ? 0 : 1;
}

int cmd_decay(const KaufmanMeasure& K, const RunConfig& cfg, const Output& out, bool dim) {
  const unsigned k = default_k(K, cfg);
  const DecayProfile prof = decay_profile(K, k, sampling(cfg));
  const std::string stem = "decay_k" + std::to_string(k);
  std::cout << "decay of mu_" << k << "^ (" << prof.evaluator << "), window (p^" << prof.M << ", p^" << prof.L << "]\n";
  for (const auto& sh : prof.shells)
    std::cout << "  l=" << sh.ell << "  max=" << fmt17(sh.max_abs) << "  ratio=" << fmt17(sh.ratio) << "  points=" << sh.points
              << (sh.exhaustive ? " (all)" : "") << "\n";
  Json doc = {{"profile", to_json(prof)}};
  if (dim) {
    const DimEstimate est = fourier_dim_estimate(prof);
    std::cout << "  exponent raw " << fmt17(est.exponent_raw) << ", log-corrected " << fmt17(est.exponent_corrected)
              << " (target " << fmt17(est.target_exponent) << "); dimension estimate " << fmt17(est.dim_corrected) << "\n";
    doc["estimate"] = to_json(est);
    out.json_doc("dim_k" + std::to_string(k) + ".json", doc);
    return 0;
  }
  out.json_doc(stem + ".json", doc);
  if (!out.json) {
    out.csv(stem + ".csv", [&](std::ostream& os) { write_decay_csv(os, prof, out.hash); });
    out.csv(stem + "_plot.csv", [&](std::ostream& os) { write_plot_dump(os, prof, out.hash); });
  }
  return 0;
}

int cmd_regularity(const KaufmanMeasure& K, const RunConfig& cfg, const Output& out) {
  std::vector<unsigned> ks;
  if (cfg.k >= 0) ks.push_back(default_k(K, cfg));
  else
    for (unsigned k = 1; k <= K.depth(); ++k) ks.push_back(k);
  const unsigned top = cfg.max_ell >= 0 ? static_cast<unsigned>(cfg.max_ell) : K.schedule().L.back();
  Json doc = {{"reports", Json::array()}};
  for (unsigned k : ks) {
    const RegularityReport rep = regularity_scan(K, k, top);
    std::cout << "regularity mu_" << k << ": C = " << fmt17(rep.C) << " over 1 <= l <= " << top << "\n";
    doc["reports"].push_back(to_json(rep));
    if (!out.json)
      out.csv("regularity_k" + std::to_string(k) + ".csv", [&](std::ostream& os) { write_regularity_csv(os, rep, out.hash); });
  }
  out.json_doc("regularity.json", doc);
  return 0;
}

int cmd_energy(const KaufmanMeasure& K, const RunConfig& cfg, const Output& out) {
  const unsigned d = K.dim();
  std::vector<BigRational> alphas;
  for (const auto& a : cfg.alpha) alphas.push_back(parse_rational(a, "--alpha"));
  if (alphas.empty()) {
    const unsigned n = K.params().shape.matrix ? K.params().shape.n : 1;
    const BigRational target = BigRational(2 * n) / K.params().tau;
    for (const BigRational& f : {BigRational(4, 5), BigRational(6, 5)}) {
      BigRational a = f * target;
      a.canonicalize();
      if (a > 0 && a < d) alphas.push_back(a);
    }
  }
  std::vector<unsigned> ks;
  if (cfg.k >= 0) ks.push_back(default_k(K, cfg));
  else
    for (unsigned k = 0; k <= K.materialized_depth(); ++k) ks.push_back(k);
  Json doc = {{"energies", Json::array()}};
  std::ostringstream csv;
  csv << "# manifest " << out.hash << "\nk,alpha,level,spatial,fourier,truncated\n";
  for (unsigned k : ks)
    for (const auto& a : alphas) {
      const EnergyReport e = riesz_energy(K.mu(k), a);
      std::cout << "  mu_" << k << "  alpha=" << a.get_str() << "  spatial=" << fmt17(e.spatial)
                << "  fourier=" << fmt17(e.fourier) << "\n";
      Json j = to_json(e);
      j["k"] = k;
      doc["energies"].push_back(j);
      csv << k << "," << a.get_str() << "," << e.level << "," << fmt17(e.spatial) << "," << fmt17(e.fourier) << ","
          << (e.truncated ? 1 : 0) << "\n";
    }
  out.json_doc("energy.json", doc);
  if (!out.json) out.text("energy.csv", csv.str());
  return 0;
}

int cmd_restrict(const KaufmanMeasure& K, const RunConfig& cfg, const Output& out) {
  const unsigned k = cfg.k >= 0 ? default_k(K, cfg) : K.materialized_depth();
  BigRational endpoint;
  if (!cfg.alpha_exp.empty() || !cfg.beta_exp.empty()) {
    if (cfg.alpha_exp.empty() || cfg.beta_exp.empty())
      throw std::invalid_argument("--alpha-exp and --beta-exp go together");
    endpoint = restriction_endpoint(parse_rational(cfg.alpha_exp, "--alpha-exp"),
                                    parse_rational(cfg.beta_exp, "--beta-exp"), K.dim());
  } else if (!K.params().shape.matrix) {
    endpoint = scalar_restriction_endpoint(K.params().tau);
  } else {
    throw std::invalid_argument("matrix restriction needs --alpha-exp and --beta-exp");
  }
  BigRational q = cfg.q.empty() ? endpoint - BigRational(1, 100) : parse_rational(cfg.q, "--q");
  q.canonicalize();
  RestrictionFamily fam;
  fam.count = cfg.count;
  fam.max_level = cfg.max_level;
  fam.seed = cfg.seed;
  const RestrictionReport rep = restriction_ratio(K.mu(k), q, fam);
  std::cout << "restriction on mu_" << k << ": q=" << q.get_str() << " (endpoint " << endpoint.get_str() << ", "
            << (q < endpoint ? "admissible" : "not below the endpoint") << "), max ratio " << fmt17(rep.max_ratio)
            << " at " << rep.rows[rep.argmax].name << "\n";
  Json doc = to_json(rep);
  doc["endpoint"] = endpoint.get_str();
  doc["k"] = k;
  out.json_doc("restriction_k" + std::to_string(k) + ".json", doc);
  if (!out.json)
    out.csv("restriction_k" + std::to_string(k) + ".csv", [&](std::ostream& os) { write_restriction_csv(os, rep, out.hash); });
  return 0;
}

int cmd_oracle_diff(const KaufmanMeasure& K, const RunConfig& cfg, const Output& out) {
  const unsigned p = K.prime(), d = K.dim();
  const u64 cap = cfg.cap_shell;
  Json doc = {{"diffs", Json::array()}};
  bool ok = true;
  auto record = [&](const std::string& what, double worst, u64 points) {
    const bool pass = worst <= 1e-12;
    ok = ok && pass;
    std::cout << "  " << (pass ? "PASS" : "FAIL") << "  " << what << "  max diff " << fmt17(worst) << " over " << points
              << " points\n";
    doc["diffs"].push_back({{"what", what}, {"max_diff", worst}, {"points", points}});
  };
  auto all_points = [&](unsigned L) {
    std::vector<DualPoint> pts;
    const CellLayout layout(p, d, L);
    for (u64 key = 0; key < layout.cell_count(); ++key) {
      auto a = layout.coords(key);
      pts.push_back(DualPoint::from_numerators(p, a, L));
    }
    return pts;
  };
  auto compare = [&](const std::string& what, const StepDensity& f, unsigned L, auto&& closed) {
    if (!pow_fits(p, d * L) || ipow(p, d * L) > cap) {
      std::cout << "  skip  " << what << ": p^(dL) above --cap-shell\n";
      return;
    }
    const auto pts = all_points(L);
    std::vector<double> err(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { err[i] = std::abs(closed(pts[i]) - brute_ft_oracle(f, pts[i])); });
    double worst = 0;
    for (double e : err) worst = std::max(worst, e);
    record(what, worst, pts.size());
  };
  const StepDensity& psi0 = K.psi0();
  compare("psi_0 closed vs oracle", psi0, std::max(psi0.level(), 1u) + 1,
          [&](const DualPoint& s) { return ft_psi0_closed(K.params(), s).to_complex(); });
  for (unsigned k = 1; k <= K.depth(); ++k) {
    if (K.fm_materialized(k)) {
      const FMData& f = K.fm(k);
      compare("F_" + std::to_string(k) + " closed vs oracle", K.fm_density(k), f.L(),
              [&](const DualPoint& s) { return f.ft(s); });
    }
    if (K.materialized(k) && K.dual_cache(k - 1) && K.has_fm(k))
      compare("mu_" + std::to_string(k) + " recursion vs oracle", K.mu(k).density(), K.schedule().L[k],
              [&](const DualPoint& s) { return ft_mu_recursive(K, k, s); });
  }
  doc["ok"] = ok;
  out.json_doc("oracle_diff.json", doc);
  return ok ? 0 : 1;
}

int cmd_dump(const KaufmanMeasure& K, const RunConfig& cfg, const Output& out) {
  const unsigned k = cfg.k >= 0 ? default_k(K, cfg) : K.materialized_depth();
  const StepDensity& D = K.mu(k).density();
  if (cfg.what == "fourier") {
    const FourierTable t = ft_table(D, cfg.table_budget);
    out.csv("fourier_k" + std::to_string(k) + ".csv", [&](std::ostream& os) {
      os << "# manifest " << out.hash << "\n";
      t.write_csv(os);
    });
  } else if (cfg.what == "support") {
    out.csv("support_k" + std::to_string(k) + ".csv", [&](std::ostream& os) {
      os << "# manifest " << out.hash << "\n";
      for (unsigned i = 0; i < D.dim(); ++i) os << "c" << i + 1 << ",";
      os << "level,density\n";
      for (std::size_t i = 0; i < D.size(); ++i) {
        for (u64 c : D.layout().coords(D.cells()[i].first)) os << c << ",";
        os << D.level() << "," << D.cells()[i].second.get_str() << "\n";
      }
    });
  } else {
    throw std::invalid_argument("--what expects fourier or support");
  }
  return 0;
}

int run(RunConfig cfg) {
  set_thread_count(cfg.threads);
  const ConstructionParams params = to_params(cfg);
  BuildBudget budget;
  budget.cells = cfg.cell_budget;
  budget.dual_table = cfg.table_budget;
  const KaufmanMeasure K(params, budget);

  Output out;
  out.dir = cfg.out;
  out.json = cfg.format == "json";
  fs::create_directories(out.dir);
  const Json manifest = manifest_json(K, cfg.to_json());
  out.hash = manifest_hash(manifest);
  out.text("manifest.json", manifest.dump(2) + "\n");
  std::cout << "manifest " << out.hash << "\n";

  const std::string& c = cfg.command;
  if (c == "build") return cmd_build(K, out);
  if (c == "verify") return cmd_verify(K, cfg, out);
  if (c == "decay") return cmd_decay(K, cfg, out, false);
  if (c == "dim") return cmd_decay(K, cfg, out, true);
  if (c == "regularity") return cmd_regularity(K, cfg, out);
  if (c == "energy") return cmd_energy(K, cfg, out);
  if (c == "restrict") return cmd_restrict(K, cfg, out);
  if (c == "oracle-diff") return cmd_oracle_diff(K, cfg, out);
  if (c == "dump") return cmd_dump(K, cfg, out);
  throw std::invalid_argument("unknown command " + c);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Finite-level Kaufman measures on Z_p^d: construction, lemma checks and Fourier diagnostics"};
  app.set_config("--config", "", "key = value file; command-line flags win");
  app.require_subcommand(1, 1);
  app.fallthrough();

  app.add_option("--p", cfg.p, "prime p")->capture_default_str();
  app.add_option("--tau", cfg.tau, "tau as NUM/DEN")->capture_default_str();
  app.add_option("--shape", cfg.shape, "scalar | mxn M N")->expected(1, 3);
  app.add_option("--g", cfg.g, "sqrt | power[:a/b] | log | logroot:j")->capture_default_str();
  app.add_option("--depth", cfg.depth, "number of levels K")->capture_default_str();
  app.add_option("--mode", cfg.mode, "faithful | toy")->check(CLI::IsMember({"faithful", "toy"}))->capture_default_str();
  app.add_option("--M-list", cfg.m_list, "toy M_1,...,M_K")->delimiter(',');
  app.add_option("--M0", cfg.M0, "explicit M_0");
  app.add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
  app.add_option("--cap-shell", cfg.cap_shell, "enumerate shells up to this many points")->capture_default_str();
  app.add_option("--samples", cfg.samples, "seeded points per larger shell")->capture_default_str();
  app.add_option("--out", cfg.out, "output directory")->capture_default_str();
  app.add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker count, 0 = all cores")->capture_default_str();
  app.add_option("--cell-budget", cfg.cell_budget, "cells allowed per F_M density")->capture_default_str();
  app.add_option("--table-budget", cfg.table_budget, "largest dense Fourier table")->capture_default_str();
  app.add_option("--k", cfg.k, "level k");
  app.add_option("--max-ell", cfg.max_ell, "largest ball level for regularity");
  app.add_option("--alpha", cfg.alpha, "Riesz exponents NUM/DEN")->delimiter(',');
  app.add_option("--q", cfg.q, "restriction exponent NUM/DEN");
  app.add_option("--alpha-exp", cfg.alpha_exp, "Frostman exponent for the restriction endpoint");
  app.add_option("--beta-exp", cfg.beta_exp, "Fourier decay exponent for the restriction endpoint");
  app.add_option("--count", cfg.count, "restriction test functions")->capture_default_str();
  app.add_option("--max-level", cfg.max_level, "largest level of a restriction test function")->capture_default_str();
  app.add_option("--what", cfg.what, "dump: support | fourier")->capture_default_str();

  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"build", "construct mu_k, write the manifest and densities"},
           {"verify", "exact lemma suite; exit 1 on any failure"},
           {"decay", "per-shell maxima of mu_k^"},
           {"regularity", "max ball masses against the regularity bound"},
           {"energy", "Riesz energies, spatial and Fourier side"},
           {"restrict", "restriction ratios over a seeded family"},
           {"dim", "Fourier dimension estimate from the decay profile"},
           {"oracle-diff", "closed forms against the brute-force oracle"},
           {"dump", "Fourier table or support cells as CSV"}}) {
    app.add_subcommand(name, help)->callback([&cfg, name = name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return run(cfg);
  } catch (const StandingAssumptionError& e) {
    std::cerr << "standing assumption: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const SizeError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
