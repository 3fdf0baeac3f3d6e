#include "padic/cyclotomic.hpp"

#include "padic/numeric.hpp"

#include <sstream>
#include <stdexcept>

namespace padic {


CyclotomicSum::CyclotomicSum(unsigned p, unsigned level) : p_(p), level_(level), order_(ipow(p, level)) {}

CyclotomicSum CyclotomicSum::rational(unsigned p, const BigRational& value) {
  CyclotomicSum s(p, 0);
  s.add_term(0, value);
  return s;
}

void CyclotomicSum::add_term(u64 exponent, const BigRational& coeff) {
  if (coeff == 0) return;
  exponent %= order_;
  auto [it, inserted] = terms_.try_emplace(exponent, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

void CyclotomicSum::add_phase(const UnitRootPhase& phase, const BigRational& coeff) {
  if (phase.prime() != p_) throw std::invalid_argument("phase prime mismatch");
  if (phase.level() > level_) *this = lifted(phase.level());
  u64 exponent = phase.index().get_ui() * ipow(p_, level_ - phase.level());
  add_term(exponent, coeff);
}

CyclotomicSum CyclotomicSum::lifted(unsigned level) const {
  if (level < level_) throw std::invalid_argument("CyclotomicSum::lifted cannot lower the level");
  if (level == level_) return *this;
  CyclotomicSum out(p_, level);
  u64 factor = ipow(p_, level - level_);
  for (const auto& [k, c] : terms_) out.terms_.emplace(k * factor, c);
  return out;
}

CyclotomicSum& CyclotomicSum::operator+=(const CyclotomicSum& other) {
  if (other.p_ != p_) throw std::invalid_argument("CyclotomicSum prime mismatch");
  if (other.level_ > level_) *this = lifted(other.level_);
  u64 factor = ipow(p_, level_ - other.level_);
  for (const auto& [k, c] : other.terms_) add_term(k * factor, c);
  return *this;
}

CyclotomicSum& CyclotomicSum::operator-=(const CyclotomicSum& other) {
  CyclotomicSum neg = other;
  neg *= BigRational(-1);
  return *this += neg;
}

CyclotomicSum& CyclotomicSum::operator*=(const BigRational& scale) {
  if (scale == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= scale;
  return *this;
}

CyclotomicSum CyclotomicSum::operator*(const CyclotomicSum& other) const {
  if (other.p_ != p_) throw std::invalid_argument("CyclotomicSum prime mismatch");
  unsigned level = std::max(level_, other.level_);
  CyclotomicSum a = lifted(level), b = other.lifted(level);
  CyclotomicSum out(p_, level);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) out.add_term(addmod(ka, kb, out.order_), ca * cb);
  return out;
}

CyclotomicSum CyclotomicSum::canonical() const {
  CyclotomicSum out(p_, level_);
  if (level_ == 0) {
    out.terms_ = terms_;
    return out;
  }
  const u64 h = order_ / p_;
  const u64 top = (p_ - 1) * h;
  for (const auto& [k, c] : terms_) {
    if (k < top) {
      out.add_term(k, c);
    } else {
      u64 j = k - top;
      for (unsigned i = 0; i + 1 < p_; ++i) out.add_term(j + i * h, -c);
    }
  }
  return out;
}

bool CyclotomicSum::is_zero() const { return canonical().terms_.empty(); }

std::optional<BigRational> CyclotomicSum::as_rational() const {
  // Q is the fixed field; in the power basis it is spanned by zeta^0.
  CyclotomicSum c = canonical();
  if (c.terms_.empty()) return BigRational(0);
  if (c.terms_.size() == 1 && c.terms_.begin()->first == 0) return c.terms_.begin()->second;
  return std::nullopt;
}

std::complex<double> CyclotomicSum::to_complex() const {
  CompensatedSum acc;
  for (const auto& [k, c] : terms_) acc.add(c.get_d() * unit_root(k, order_));
  return acc.value();
}

bool operator==(const CyclotomicSum& a, const CyclotomicSum& b) {
  if (a.p_ != b.p_) return false;
  unsigned level = std::max(a.level_, b.level_);
  CyclotomicSum diff = a.lifted(level);
  diff -= b.lifted(level);
  return diff.is_zero();
}

std::string CyclotomicSum::to_string() const {
  std::ostringstream os;
  CyclotomicSum c = canonical();
  if (c.terms_.empty()) return "0";
  bool first = true;
  for (const auto& [k, v] : c.terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << v.get_str() << ")";
    if (k != 0) os << "*e(" << k << "/" << order_ << ")";
  }
  return os.str();
}

}  // namespace padic
