#include "padic/core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace padic {

long Valuation::value() const {
  if (infinite_) throw std::domain_error("valuation of zero is +infinity");
  return value_;
}

void require_prime(unsigned p) {
  if (!is_small_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not a prime");
}

unsigned valuation_of(const BigInt& n, unsigned p) {
  if (n == 0) throw std::domain_error("valuation_of(0)");
  BigInt rest;
  BigInt prime = p;
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

BigInt big_pow(unsigned p, unsigned exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, exp);
  return r;
}

std::complex<double> unit_root(u64 index, u64 order) {
  index %= order;
  if (index == 0) return {1.0, 0.0};
  // Reduce to (-1/2, 1/2] turns before scaling.
  double t = static_cast<double>(index) / static_cast<double>(order);
  if (2 * static_cast<u128>(index) > order) t -= 1.0;
  const double angle = 2.0 * std::numbers::pi * t;
  return {std::cos(angle), std::sin(angle)};
}

// ---------------------------------------------------------------- phases

UnitRootPhase::UnitRootPhase(unsigned p) : p_(p), index_(0), level_(0) {}

UnitRootPhase::UnitRootPhase(unsigned p, BigInt index, unsigned level)
    : p_(p), index_(std::move(index)), level_(level) {
  canonicalize();
}

void UnitRootPhase::canonicalize() {
  BigInt modulus = big_pow(p_, level_);
  mpz_mod(index_.get_mpz_t(), index_.get_mpz_t(), modulus.get_mpz_t());
  while (level_ > 0 && mpz_divisible_ui_p(index_.get_mpz_t(), p_)) {
    index_ /= p_;
    --level_;
  }
  if (index_ == 0) level_ = 0;
}

BigRational UnitRootPhase::fraction() const {
  BigRational r(index_, big_pow(p_, level_));
  r.canonicalize();
  return r;
}

std::complex<double> UnitRootPhase::to_complex() const {
  if (level_ == 0) return {1.0, 0.0};
  if (pow_fits(p_, level_)) return unit_root(index_.get_ui(), ipow(p_, level_));
  mpf_class t(fraction(), 128);
  if (t > 0.5) t -= 1;
  long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(t.get_d());
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

UnitRootPhase UnitRootPhase::operator*(const UnitRootPhase& other) const {
  if (other.p_ != p_) throw std::invalid_argument("phase product across different primes");
  unsigned level = std::max(level_, other.level_);
  BigInt a = index_ * big_pow(p_, level - level_);
  BigInt b = other.index_ * big_pow(p_, level - other.level_);
  return UnitRootPhase(p_, a + b, level);
}

UnitRootPhase UnitRootPhase::inverse() const { return UnitRootPhase(p_, -index_, level_); }

// ---------------------------------------------------------------- rationals

namespace {
Valuation compute_valuation(const BigRational& v, unsigned p) {
  if (v == 0) return Valuation::infinity();
  long num = valuation_of(v.get_num(), p);
  long den = valuation_of(v.get_den(), p);
  return Valuation(num - den);
}
}  // namespace

PadicRational::PadicRational(unsigned p, BigRational value)
    : p_(p), value_(std::move(value)), valuation_(Valuation::infinity()) {
  require_prime(p_);
  value_.canonicalize();
  valuation_ = compute_valuation(value_, p_);
}

PadicRational::PadicRational(unsigned p, long num, long den) : PadicRational(p, BigRational(num, den)) {
  if (den == 0) throw std::domain_error("zero denominator");
}

BigRational PadicRational::abs_p() const {
  if (is_zero()) return 0;
  long v = valuation_.value();
  if (v >= 0) return BigRational(1, big_pow(p_, static_cast<unsigned>(v)));
  return BigRational(big_pow(p_, static_cast<unsigned>(-v)));
}

bool PadicRational::is_integral() const { return is_zero() || valuation_.value() >= 0; }

void PadicRational::check_same_prime(const PadicRational& o) const {
  if (o.p_ != p_) throw std::invalid_argument("p-adic arithmetic across different primes");
}

PadicRational PadicRational::operator+(const PadicRational& o) const {
  check_same_prime(o);
  return {p_, BigRational(value_ + o.value_)};
}
PadicRational PadicRational::operator-(const PadicRational& o) const {
  check_same_prime(o);
  return {p_, BigRational(value_ - o.value_)};
}
PadicRational PadicRational::operator*(const PadicRational& o) const {
  check_same_prime(o);
  return {p_, BigRational(value_ * o.value_)};
}
PadicRational PadicRational::operator/(const PadicRational& o) const {
  check_same_prime(o);
  if (o.is_zero()) throw std::domain_error("division by zero");
  return {p_, BigRational(value_ / o.value_)};
}

std::ostream& operator<<(std::ostream& os, const PadicRational& x) { return os << x.to_string(); }

PadicRational frac_part(const PadicRational& x) {
  if (x.is_integral()) return {x.prime(), 0};
  const unsigned p = x.prime();
  const auto level = static_cast<unsigned>(-x.valuation().value());
  BigInt modulus = big_pow(p, level);
  BigInt a = x.numerator();
  BigInt b = x.denominator() / modulus;  // prime to p
  BigInt b_inv;
  mpz_invert(b_inv.get_mpz_t(), b.get_mpz_t(), modulus.get_mpz_t());
  BigInt idx = a * b_inv;
  mpz_mod(idx.get_mpz_t(), idx.get_mpz_t(), modulus.get_mpz_t());
  return {p, BigRational(idx, modulus)};
}

PadicRational int_part(const PadicRational& x) { return x - frac_part(x); }

UnitRootPhase char_phase(const PadicRational& x) {
  PadicRational f = frac_part(x);
  if (f.is_zero()) return UnitRootPhase(x.prime());
  auto level = static_cast<unsigned>(-f.valuation().value());
  return UnitRootPhase(x.prime(), f.numerator(), level);
}

BigInt residue_mod(const PadicRational& x, unsigned level) {
  if (!x.is_integral()) throw std::domain_error("residue_mod: x is not in Z_p");
  BigInt modulus = big_pow(x.prime(), level);
  if (level == 0) return 0;
  BigInt den_inv;
  BigInt den = x.denominator();
  mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
  BigInt r = x.numerator() * den_inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

}  // namespace padic
