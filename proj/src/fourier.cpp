#include "padic/fourier.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "padic/numeric.hpp"
#include "padic/parallel.hpp"

namespace padic {

// ---------------------------------------------------------------- DualPoint

DualPoint::DualPoint(unsigned p, std::vector<PadicRational> coords) : p_(p) {
  require_prime(p);
  coords_.reserve(coords.size());
  for (const auto& x : coords) {
    if (x.prime() != p) throw std::invalid_argument("DualPoint: coordinate prime mismatch");
    PadicRational r = frac_part(x);
    if (!r.is_zero()) level_ = std::max<unsigned>(level_, static_cast<unsigned>(-r.valuation().value()));
    coords_.push_back(std::move(r));
  }
}

DualPoint DualPoint::zero(unsigned p, unsigned dim) {
  return DualPoint(p, std::vector<PadicRational>(dim, PadicRational(p, 0)));
}

DualPoint DualPoint::from_numerators(unsigned p, std::span<const u64> a, unsigned level) {
  const BigInt den = big_pow(p, level);
  std::vector<PadicRational> coords;
  coords.reserve(a.size());
  for (u64 ai : a) {
    BigRational v{BigInt(std::to_string(ai)), den};
    v.canonicalize();
    coords.emplace_back(p, v);
  }
  return DualPoint(p, std::move(coords));
}

BigRational DualPoint::abs_p() const {
  if (is_zero()) return 0;
  return BigRational(big_pow(p_, level_));
}

bool DualPoint::is_zero() const {
  for (const auto& c : coords_)
    if (!c.is_zero()) return false;
  return true;
}

std::vector<u64> DualPoint::numerators(unsigned at) const {
  if (at < level_) throw std::invalid_argument("DualPoint::numerators: level below |s|_p");
  const u64 order = ipow(p_, at);
  std::vector<u64> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) {
    if (c.is_zero()) {
      out.push_back(0);
      continue;
    }
    BigInt scaled = c.numerator() * BigInt(std::to_string(order)) / c.denominator();
    out.push_back(scaled.get_ui());
  }
  return out;
}

std::string DualPoint::coord_string(unsigned i) const {
  const auto& c = coords_.at(i);
  unsigned l = c.is_zero() ? 0 : static_cast<unsigned>(-c.valuation().value());
  return c.numerator().get_str() + "/" + std::to_string(p_) + "^" + std::to_string(l);
}

DualPoint DualPoint::operator+(const DualPoint& o) const {
  if (o.dim() != dim()) throw std::invalid_argument("DualPoint: dimension mismatch");
  std::vector<PadicRational> c;
  for (unsigned i = 0; i < dim(); ++i) c.push_back(coords_[i] + o.coords_[i]);
  return DualPoint(p_, std::move(c));
}

DualPoint DualPoint::operator-(const DualPoint& o) const { return *this + (-o); }

DualPoint DualPoint::operator-() const {
  std::vector<PadicRational> c;
  for (const auto& x : coords_) c.push_back(-x);
  return DualPoint(p_, std::move(c));
}

std::string DualPoint::to_string() const {
  std::ostringstream os;
  os << '(';
  for (unsigned i = 0; i < dim(); ++i) {
    if (i) os << ", ";
    os << coord_string(i);
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------- closed forms

ScaledPhase ft_ball_indicator(std::span<const PadicRational> a, long k, const DualPoint& s) {
  const unsigned p = s.prime();
  if (a.size() != s.dim()) throw std::invalid_argument("ft_ball_indicator: dimension mismatch");
  // |s|_p <= p^k; s = 0 always qualifies.
  if (!s.is_zero() && static_cast<long>(s.level()) > k) return {BigRational(0), UnitRootPhase(p)};
  BigRational scale = 1;
  const long dk = static_cast<long>(s.dim()) * k;
  if (dk >= 0)
    scale = BigRational(1, big_pow(p, static_cast<unsigned>(dk)));
  else
    scale = BigRational(big_pow(p, static_cast<unsigned>(-dk)));
  PadicRational dot(p, 0);
  for (unsigned i = 0; i < s.dim(); ++i) dot = dot + a[i] * s.coords()[i];
  return {scale, char_phase(dot)};
}

namespace {

// Phase index of the integer corner of `key` against s = a / p^l.
inline u64 cell_phase(const CellLayout& layout, u64 key, const std::vector<u64>& a, u64 order) {
  u64 idx = 0;
  const u64 side = layout.side();
  for (unsigned i = 0; i < layout.dim(); ++i) {
    u64 c = key % side;
    key /= side;
    if (a[i] != 0) idx = addmod(idx, mulmod(c % order, a[i], order), order);
  }
  return idx;
}

}  // namespace

std::complex<double> ft_point(const StepDensity& f, const DualPoint& s, u64 bucket_threshold) {
  if (s.dim() != f.dim() || s.prime() != f.prime()) throw std::invalid_argument("ft_point: space mismatch");
  const unsigned l = s.level();
  if (l > f.level() || f.size() == 0) return 0.0;
  const u64 order = ipow(f.prime(), l);
  const std::vector<u64> a = s.numerators(l);
  const auto& cells = f.cells();
  const auto& approx = f.approx_values();
  const double vol = f.cell_volume().get_d();
  CompensatedSum acc;
  if (order <= bucket_threshold && order <= 4 * cells.size() + 64) {
    std::vector<double> bucket(order, 0.0);
    for (std::size_t i = 0; i < cells.size(); ++i)
      bucket[cell_phase(f.layout(), cells[i].first, a, order)] += approx[i];
    for (u64 k = 0; k < order; ++k)
      if (bucket[k] != 0.0) acc.add(bucket[k] * unit_root(k, order));
  } else {
    for (std::size_t i = 0; i < cells.size(); ++i)
      acc.add(approx[i] * unit_root(cell_phase(f.layout(), cells[i].first, a, order), order));
  }
  return acc.value() * vol;
}

CyclotomicSum ft_point_exact(const StepDensity& f, const DualPoint& s) {
  if (s.dim() != f.dim() || s.prime() != f.prime())
    throw std::invalid_argument("ft_point_exact: space mismatch");
  const unsigned l = s.level();
  if (l > f.level() || f.size() == 0) return CyclotomicSum(f.prime(), 0);
  const u64 order = ipow(f.prime(), l);
  const std::vector<u64> a = s.numerators(l);
  CyclotomicSum out(f.prime(), l);
  const auto& weights = f.integer_weights();
  if (!weights.empty()) {
    // integer buckets over the common denominator; no sum can overflow
    std::unordered_map<u64, u64> bucket;
    for (std::size_t i = 0; i < weights.size(); ++i)
      bucket[cell_phase(f.layout(), f.cells()[i].first, a, order)] += weights[i];
    for (const auto& [k, c] : bucket) out.add_term(k, BigRational(BigInt(static_cast<unsigned long>(c))));
    out *= f.cell_volume() / BigRational(f.common_denominator());
    return out;
  }
  std::unordered_map<u64, BigRational> bucket;
  for (const auto& [key, value] : f.cells()) bucket[cell_phase(f.layout(), key, a, order)] += value;
  for (const auto& [k, c] : bucket) out.add_term(k, c);
  out *= f.cell_volume();
  return out;
}

CyclotomicSum ft_point_exact(const StepDensity& f, std::span<const PadicRational> s) {
  if (s.size() != f.dim()) throw std::invalid_argument("ft_point_exact: dimension mismatch");
  CyclotomicSum out(f.prime(), 0);
  // ball lemma cutoff on each cell: |s|_p > p^L gives 0
  const BigRational radius(big_pow(f.prime(), f.level()));
  for (const auto& x : s)
    if (x.abs_p() > radius) return out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const CellIndex cell = f.cell_index(i);
    BigRational dot = 0;
    for (unsigned j = 0; j < f.dim(); ++j) dot += BigRational(BigInt(std::to_string(cell.coords[j]))) * s[j].value();
    out.add_phase(char_phase(PadicRational(f.prime(), dot)), f.cells()[i].second);
  }
  out *= f.cell_volume();
  return out;
}

std::complex<double> brute_ft_oracle(const StepDensity& f, const DualPoint& s, u64 cap) {
  const unsigned p = f.prime(), d = f.dim();
  const unsigned fine = std::max(f.level(), s.level());
  const u64 children = ipow(ipow(p, fine - f.level()), d);
  if (static_cast<u128>(children) * f.size() > cap)
    throw SizeError("brute_ft_oracle: " + std::to_string(f.size()) + " cells x " + std::to_string(children) +
                    " children exceeds the cap");
  const u64 old_side = f.layout().side();
  const u64 per_axis = ipow(p, fine - f.level());
  const double two_pi = 2.0 * std::numbers::pi;
  std::complex<double> total = 0;
  std::vector<u64> digit(d);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const CellIndex cell = f.cell_index(i);
    const double w = f.approx_values()[i];
    std::fill(digit.begin(), digit.end(), 0);
    while (true) {
      BigRational dot = 0;
      for (unsigned j = 0; j < d; ++j) {
        BigInt x(std::to_string(cell.coords[j]));
        x += BigInt(std::to_string(digit[j])) * BigInt(std::to_string(old_side));
        dot += BigRational(x) * s.coords()[j].value();
      }
      const double frac = frac_part(PadicRational(p, dot)).value().get_d();
      total += w * std::polar(1.0, two_pi * frac);
      unsigned j = 0;
      while (j < d && ++digit[j] == per_axis) digit[j++] = 0;
      if (j == d) break;
    }
  }
  return total / std::pow(static_cast<double>(p), static_cast<double>(d) * fine);
}

// ---------------------------------------------------------------- tables

FourierTable::FourierTable(unsigned p, unsigned dim, unsigned level, std::vector<std::complex<double>> values)
    : layout_(p, dim, level), values_(std::move(values)) {
  if (values_.size() != layout_.cell_count()) throw std::invalid_argument("FourierTable: wrong value count");
}

std::complex<double> FourierTable::at(const DualPoint& s) const {
  if (s.level() > level())
    throw ResolutionError("FourierTable: |s|_p = p^" + std::to_string(s.level()) + " exceeds table level");
  const std::vector<u64> a = s.numerators(level());
  return values_.at(layout_.key(a));
}

DualPoint FourierTable::dual_point(u64 key) const {
  return DualPoint::from_numerators(prime(), layout_.coords(key), level());
}

void FourierTable::write_csv(std::ostream& os) const {
  const unsigned d = dim();
  for (unsigned i = 0; i < d; ++i) os << "s" << (i + 1) << ',';
  os << "re,im,abs,abs_s\n";
  os << std::setprecision(17);
  std::vector<u64> a(d, 0);
  const u64 side = layout_.side();
  for (u64 row = 0; row < layout_.cell_count(); ++row) {
    const DualPoint s = DualPoint::from_numerators(prime(), a, level());
    const std::complex<double> v = values_[layout_.key(a)];
    for (unsigned i = 0; i < d; ++i) os << s.coord_string(i) << ',';
    os << v.real() << ',' << v.imag() << ',' << std::abs(v) << ','
       << s.abs_p().get_str() << '\n';
    // lexicographic: the last coordinate moves fastest
    for (unsigned i = d; i-- > 0;) {
      if (++a[i] < side) break;
      a[i] = 0;
    }
  }
}

void radix_p_dft(std::vector<std::complex<double>>& x, unsigned p, unsigned L, int sign) {
  const u64 n = ipow(p, L);
  if (x.size() != n) throw std::invalid_argument("radix_p_dft: length is not p^L");
  if (n == 1) return;
  for (u64 i = 0; i < n; ++i) {
    u64 r = 0, v = i;
    for (unsigned k = 0; k < L; ++k) {
      r = r * p + v % p;
      v /= p;
    }
    if (r > i) std::swap(x[i], x[r]);
  }
  std::vector<std::complex<double>> root(n);
  for (u64 k = 0; k < n; ++k) root[k] = unit_root(sign > 0 ? k : (n - k) % n, n);
  std::vector<std::complex<double>> t(p);
  const u64 step_p = n / p;
  for (u64 len = p; len <= n; len *= p) {
    const u64 m = len / p, stride = n / len;
    for (u64 start = 0; start < n; start += len) {
      for (u64 j = 0; j < m; ++j) {
        for (unsigned q = 0; q < p; ++q) t[q] = x[start + j + q * m] * root[(q * j * stride) % n];
        for (unsigned u = 0; u < p; ++u) {
          std::complex<double> y = 0;
          for (unsigned q = 0; q < p; ++q) y += t[q] * root[(static_cast<u64>(q) * u % p) * step_p];
          x[start + j + u * m] = y;
        }
      }
    }
  }
}

namespace {

void transform_axes(std::vector<std::complex<double>>& data, const CellLayout& layout, int sign) {
  const u64 side = layout.side();
  const unsigned d = layout.dim();
  const u64 total = layout.cell_count();
  u64 stride = 1;
  for (unsigned axis = 0; axis < d; ++axis) {
    const u64 lines = total / side;
    parallel_for(lines, [&](std::size_t line) {
      // line -> base offset with the axis digit zeroed
      const u64 low = line % stride, high = line / stride;
      const u64 base = low + high * stride * side;
      std::vector<std::complex<double>> buf(side);
      for (u64 k = 0; k < side; ++k) buf[k] = data[base + k * stride];
      radix_p_dft(buf, layout.prime(), layout.level(), sign);
      for (u64 k = 0; k < side; ++k) data[base + k * stride] = buf[k];
    });
    stride *= side;
  }
}

}  // namespace

FourierTable ft_table(const StepDensity& f, u64 budget) {
  const CellLayout& layout = f.layout();
  if (layout.cell_count() > budget)
    throw SizeError("ft_table: p^(dL) = " + std::to_string(layout.cell_count()) + " exceeds the table budget " +
                    std::to_string(budget) + "; use ft_point or sampled shells instead");
  std::vector<std::complex<double>> data(layout.cell_count(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) data[f.cells()[i].first] = f.approx_values()[i];
  transform_axes(data, layout, +1);
  const double vol = f.cell_volume().get_d();
  for (auto& v : data) v *= vol;
  return FourierTable(f.prime(), f.dim(), f.level(), std::move(data));
}

void dft_cells(std::vector<std::complex<double>>& data, const CellLayout& layout, int sign) {
  if (data.size() != layout.cell_count()) throw std::invalid_argument("dft_cells: size does not match the layout");
  transform_axes(data, layout, sign);
}

std::vector<std::complex<double>> inverse_ft_table(const FourierTable& table) {
  std::vector<std::complex<double>> data = table.values();
  transform_axes(data, table.layout(), -1);
  return data;
}

}  // namespace padic
