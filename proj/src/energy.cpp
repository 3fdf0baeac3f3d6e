#include <cmath>
#include <stdexcept>

#include "padic/analysis.hpp"

namespace padic {

EnergyReport riesz_energy(const StepMeasure& mu, const BigRational& alpha) {
  const unsigned d = mu.density().dim(), p = mu.density().prime(), L = mu.level();
  if (alpha <= 0 || alpha >= d) throw std::invalid_argument("riesz_energy: alpha must lie in (0, d)");
  EnergyReport rep;
  rep.alpha = alpha;
  rep.level = L;
  for (unsigned l = 0; l <= L; ++l) {
    BigRational sum = 0;
    for (const auto& [_, m] : ball_masses(mu, l)) sum += m * m;
    rep.square_sums.push_back(sum);
  }
  const long double lnp = std::log(static_cast<long double>(p));
  const long double a = alpha.get_d();
  // pairs in one level-l ball but different level-(l+1) balls sit at distance p^-l
  long double spatial = 0;
  for (unsigned l = 0; l < L; ++l)
    spatial += std::exp(l * a * lnp) * BigRational(rep.square_sums[l] - rep.square_sums[l + 1]).get_d();
  spatial += std::exp(L * a * lnp) * rep.square_sums[L].get_d();
  rep.spatial = static_cast<double>(spatial);

  // sum_{|s| <= p^l} |mu^(s)|^2 = p^{dl} sum_B mu(B)^2 (Parseval at level l)
  long double fourier = 0;
  BigRational prev = rep.square_sums[0];
  for (unsigned l = 1; l <= L; ++l) {
    const BigRational cur = BigRational(big_pow(p, d * l)) * rep.square_sums[l];
    fourier += std::exp(l * (a - d) * lnp) * BigRational(cur - prev).get_d();
    prev = cur;
  }
  rep.fourier = static_cast<double>(fourier);
  return rep;
}

}  // namespace padic
