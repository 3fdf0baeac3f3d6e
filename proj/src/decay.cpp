#include <cmath>
#include <limits>
#include <stdexcept>

#include "padic/analysis.hpp"
#include "padic/parallel.hpp"
#include "shells.hpp"

namespace padic {

namespace {

using Evaluator = std::function<std::complex<double>(const std::vector<u64>&, unsigned)>;

Evaluator pick_evaluator(const KaufmanMeasure& K, unsigned k, std::string& name) {
  const unsigned p = K.prime();
  bool recursive = k >= 1 && K.dual_cache(k - 1) && K.has_fm(k);
  if (recursive && K.materialized(k)) {
    // a geometric sum costs about three cell visits of the direct sum
    const FourierTable& prev = *K.dual_cache(k - 1);
    u64 nonzero = 0;
    for (const auto& v : prev.values()) nonzero += v != 0.0;
    const u64 terms = nonzero * K.fm(k).Q().size() * K.params().shape.m;
    recursive = 3 * terms <= K.mu(k).density().size();
  }
  if (recursive) {
    name = "recursive";
    return [&K, k, p](const std::vector<u64>& a, unsigned l) {
      return ft_mu_recursive(K, k, DualPoint::from_numerators(p, a, l));
    };
  }
  if (K.materialized(k)) {
    name = "direct";
    return [&K, k, p](const std::vector<u64>& a, unsigned l) {
      return ft_point(K.mu(k).density(), DualPoint::from_numerators(p, a, l));
    };
  }
  throw SizeError("mu_" + std::to_string(k) + "^ has no evaluator: the level is implicit and the dual cache of mu_" +
                  std::to_string(k - 1) + " is unavailable");
}

}  // namespace

double DecayProfile::window_ratio() const {
  double best = 0;
  for (const auto& sh : shells)
    if (sh.ell > M && sh.ell <= L) best = std::max(best, sh.ratio);
  return best;
}

DecayProfile decay_profile(const KaufmanMeasure& K, unsigned k, const SamplingOptions& opt,
                           std::optional<unsigned> max_shell) {
  if (k > K.depth()) throw std::invalid_argument("decay_profile: k exceeds the schedule depth");
  const ConstructionParams& params = K.params();
  const LevelSchedule& sched = K.schedule();
  DecayProfile prof;
  prof.p = K.prime();
  prof.k = k;
  prof.dim = K.dim();
  prof.shape = params.shape;
  prof.tau = params.tau;
  prof.g = params.g;
  prof.M = sched.M[k];
  prof.L = sched.L[k];
  prof.seed = opt.seed;
  const unsigned n = params.shape.matrix ? params.shape.n : 1;
  prof.beta = static_cast<double>(n) / params.tau.get_d();
  prof.log_power = n + 1;

  const Evaluator eval = pick_evaluator(K, k, prof.evaluator);
  const unsigned top = max_shell.value_or(prof.L);
  const long double lnp = std::log(static_cast<long double>(prof.p));

  for (unsigned l = 0; l <= top; ++l) {
    ShellStats sh;
    sh.ell = l;
    std::vector<std::vector<u64>> pts =
        detail::shell_selection(prof.p, prof.dim, l, opt.shell_cap, opt.samples, detail::mix_seed(opt.seed, k), sh.exhaustive);
    if (!sh.exhaustive && opt.structured) {
      auto extra = detail::structured_points(K, k, l, opt.structured_cap);
      pts.insert(pts.end(), extra.begin(), extra.end());
    }
    std::vector<double> mag(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { mag[i] = std::abs(eval(pts[i], l)); });
    std::size_t arg = 0;
    for (std::size_t i = 1; i < mag.size(); ++i)
      if (mag[i] > mag[arg]) arg = i;
    sh.points = pts.size();
    sh.max_abs = mag.empty() ? 0 : mag[arg];
    sh.argmax = pts.empty() ? "" : DualPoint::from_numerators(prof.p, pts[arg], l).to_string();
    const long double lnabs = l * lnp;
    const long double ln1p = lnabs + std::log1p(std::exp(-lnabs));
    const long double lg = params.g.ln_at_power(prof.p, l);
    const long double denom = prof.log_power * std::log(ln1p) + lg;
    sh.ratio = sh.max_abs == 0 ? 0.0
                               : static_cast<double>(std::exp(std::log(static_cast<long double>(sh.max_abs)) +
                                                              prof.beta * lnabs - denom));
    prof.shells.push_back(std::move(sh));
  }
  return prof;
}

DimEstimate fourier_dim_estimate(const DecayProfile& profile) {
  DimEstimate est;
  est.target_exponent = profile.beta;
  std::vector<double> x, yraw, ycorr;
  const double lnp = std::log(static_cast<double>(profile.p));
  for (const auto& sh : profile.shells) {
    if (sh.ell <= profile.M || sh.ell > profile.L) continue;
    // exact zeros only come out as rounding noise
    if (sh.max_abs < 1e-13) {
      est.zero_shells.push_back(sh.ell);
      continue;
    }
    const double lx = sh.ell * lnp;
    est.shells.push_back(sh.ell);
    x.push_back(lx);
    yraw.push_back(std::log(sh.max_abs));
    ycorr.push_back(std::log(sh.max_abs) - profile.log_power * std::log(std::log1p(std::exp(lx))));
  }
  if (x.size() < 3)
    throw std::invalid_argument("fourier_dim_estimate: " + std::to_string(x.size()) +
                                " nonzero shells in (p^M, p^L]; at least 3 are needed");
  auto slope = [&](const std::vector<double>& y) {
    const double m = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sx += x[i];
      sy += y[i];
      sxx += x[i] * x[i];
      sxy += x[i] * y[i];
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
  };
  est.slope_raw = slope(yraw);
  est.slope_corrected = slope(ycorr);
  est.exponent_raw = -est.slope_raw;
  est.exponent_corrected = -est.slope_corrected;
  est.dim_raw = 2 * est.exponent_raw;
  est.dim_corrected = 2 * est.exponent_corrected;
  return est;
}

}  // namespace padic
