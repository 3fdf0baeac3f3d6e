#include "padic/growth.hpp"

#include <cmath>
#include <stdexcept>

namespace padic {

Growth Growth::power(const BigRational& gamma) {
  if (gamma <= 0) throw std::invalid_argument("power growth needs a positive exponent");
  Growth g;
  g.kind_ = Kind::power;
  g.gamma_ = gamma;
  g.gamma_.canonicalize();
  return g;
}

Growth Growth::log() {
  Growth g;
  g.kind_ = Kind::log;
  g.gamma_ = 0;
  return g;
}

Growth Growth::logroot(unsigned j) {
  if (j == 0) throw std::invalid_argument("logroot growth needs j >= 1");
  if (j == 1) return log();
  Growth g;
  g.kind_ = Kind::logroot;
  g.gamma_ = 0;
  g.root_ = j;
  return g;
}

Growth Growth::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (name == "sqrt" && arg.empty()) return power(BigRational(1, 2));
  if (name == "power") {
    if (arg.empty()) return power(BigRational(1, 2));
    BigRational gamma;
    if (gamma.set_str(arg, 10) != 0) throw std::invalid_argument("bad growth exponent '" + arg + "'");
    gamma.canonicalize();
    return power(gamma);
  }
  if (name == "log" && arg.empty()) return log();
  if (name == "logroot") {
    if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("logroot needs an integer root, e.g. logroot:2");
    return logroot(static_cast<unsigned>(std::stoul(arg)));
  }
  throw std::invalid_argument("unknown growth function '" + spec + "' (sqrt, power:a/b, log, logroot:j)");
}

std::string Growth::name() const {
  switch (kind_) {
    case Kind::power:
      return "power:" + gamma_.get_str();
    case Kind::log:
      return "log";
    case Kind::logroot:
      return "logroot:" + std::to_string(root_);
  }
  return "?";
}

double Growth::operator()(double t) const {
  switch (kind_) {
    case Kind::power:
      return std::pow(t, gamma_.get_d());
    case Kind::log:
      return std::log1p(t);
    case Kind::logroot:
      return std::pow(std::log1p(t), 1.0 / root_);
  }
  return 0;
}

long double Growth::ln_at_power(unsigned p, unsigned M) const {
  const long double lnt = M * std::log(static_cast<long double>(p));
  switch (kind_) {
    case Kind::power:
      return gamma_.get_d() * lnt;
    case Kind::log:
    case Kind::logroot: {
      // ln(1 + p^M) = M ln p + log1p(p^-M)
      long double ln1p = lnt + std::log1p(std::exp(-lnt));
      return std::log(ln1p) / root_;
    }
  }
  return 0;
}

long double big_log(const BigRational& x) {
  if (x <= 0) throw std::domain_error("big_log of a nonpositive value");
  auto ln_int = [](const BigInt& n) {
    long e = 0;
    double m = mpz_get_d_2exp(&e, n.get_mpz_t());
    return std::log(static_cast<long double>(m)) + e * std::log(2.0L);
  };
  return ln_int(x.get_num()) - ln_int(x.get_den());
}

bool Growth::exceeds(const BigRational& lhs, unsigned p, unsigned M) const {
  if (lhs <= 0) return true;
  if (kind_ == Kind::power) {
    const BigInt& a = gamma_.get_num();
    const BigInt& b = gamma_.get_den();
    if (a.fits_ulong_p() && b.fits_ulong_p() && a.get_ui() * M <= 200000 && b.get_ui() <= 64) {
      // lhs < p^(aM/b)  <=>  lhs^b < p^(aM)
      BigRational left = 1;
      for (unsigned long i = 0; i < b.get_ui(); ++i) left *= lhs;
      return left < BigRational(big_pow(p, static_cast<unsigned>(a.get_ui() * M)));
    }
  }
  return big_log(lhs) < ln_at_power(p, M);
}

}  // namespace padic
