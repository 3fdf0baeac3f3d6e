#include "padic/stepfn.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace padic {

CellLayout::CellLayout(unsigned p, unsigned dim, unsigned level) : p_(p), dim_(dim), level_(level) {
  require_prime(p);
  if (dim == 0) throw std::invalid_argument("CellLayout: dimension must be positive");
  if (!pow_fits(p, dim * level))
    throw SizeError("cell layout p^(dL) = " + std::to_string(p) + "^" + std::to_string(dim * level) +
                    " exceeds the 63-bit key range");
  side_ = ipow(p, level);
  count_ = ipow(p, dim * level);
}

u64 CellLayout::key(std::span<const u64> coords) const {
  if (coords.size() != dim_) throw std::invalid_argument("CellLayout::key: wrong number of coordinates");
  u64 k = 0;
  for (std::size_t i = dim_; i-- > 0;) k = k * side_ + (coords[i] % side_);
  return k;
}

std::vector<u64> CellLayout::coords(u64 key) const {
  std::vector<u64> c(dim_);
  for (unsigned i = 0; i < dim_; ++i) {
    c[i] = key % side_;
    key /= side_;
  }
  return c;
}

u64 CellLayout::coord(u64 key, unsigned axis) const {
  for (unsigned i = 0; i < axis; ++i) key /= side_;
  return key % side_;
}

u64 CellLayout::ancestor(u64 key, unsigned coarse) const {
  if (coarse > level_) throw std::invalid_argument("CellLayout::ancestor: level above layout level");
  const u64 coarse_side = ipow(p_, coarse);
  u64 out = 0, scale = 1;
  for (unsigned i = 0; i < dim_; ++i) {
    out += (key % side_ % coarse_side) * scale;
    key /= side_;
    scale *= coarse_side;
  }
  return out;
}

std::vector<PadicRational> CellIndex::center() const {
  std::vector<PadicRational> out;
  out.reserve(coords.size());
  for (u64 c : coords) out.emplace_back(p, BigRational(BigInt(std::to_string(c))));
  return out;
}

// ---------------------------------------------------------------- StepDensity

StepDensity::StepDensity(unsigned p, unsigned dim, unsigned level) : layout_(p, dim, level) {}

StepDensity StepDensity::constant(unsigned p, unsigned dim, const BigRational& value) {
  return from_cells(p, dim, 0, {{0, value}});
}

StepDensity StepDensity::from_cells(unsigned p, unsigned dim, unsigned level, std::vector<Cell> cells) {
  StepDensity f(p, dim, level);
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.first < b.first; });
  for (auto& [key, value] : cells) {
    value.canonicalize();
    if (key >= f.layout_.cell_count()) throw std::out_of_range("StepDensity: cell key out of range");
    if (!f.cells_.empty() && f.cells_.back().first == key)
      f.cells_.back().second += value;
    else
      f.cells_.emplace_back(key, std::move(value));
  }
  std::erase_if(f.cells_, [](const Cell& c) { return c.second == 0; });
  for (const auto& c : f.cells_)
    if (c.second < 0) throw std::invalid_argument("StepDensity: negative density value");
  f.approx_.reserve(f.cells_.size());
  for (const auto& c : f.cells_) f.approx_.push_back(c.second.get_d());
  BigInt den = 1;
  for (const auto& c : f.cells_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.second.get_den().get_mpz_t());
  BigInt total = 0;
  std::vector<u64> weights;
  weights.reserve(f.cells_.size());
  bool fits = true;
  for (const auto& c : f.cells_) {
    BigInt w = c.second.get_num() * (den / c.second.get_den());
    total += w;
    if (!w.fits_ulong_p() || total >= (BigInt(1) << 63)) {
      fits = false;
      break;
    }
    weights.push_back(w.get_ui());
  }
  if (fits) {
    f.int_weights_ = std::move(weights);
    f.common_den_ = den;
  }
  return f;
}

BigRational StepDensity::value_at(u64 key) const {
  auto it = std::lower_bound(cells_.begin(), cells_.end(), key,
                             [](const Cell& c, u64 k) { return c.first < k; });
  if (it == cells_.end() || it->first != key) return 0;
  return it->second;
}

CellIndex StepDensity::cell_index(std::size_t i) const {
  return CellIndex{prime(), level(), layout_.coords(cells_.at(i).first)};
}

BigRational StepDensity::cell_volume() const {
  return BigRational(1, big_pow(prime(), dim() * level()));
}

BigRational StepDensity::haar_integral() const {
  BigRational sum = 0;
  for (const auto& c : cells_) sum += c.second;
  return sum * cell_volume();
}

BigRational StepDensity::max_value() const {
  BigRational m = 0;
  for (const auto& c : cells_)
    if (c.second > m) m = c.second;
  return m;
}

StepDensity refine(const StepDensity& f, unsigned new_level) {
  if (new_level < f.level())
    throw std::invalid_argument("refine: target level " + std::to_string(new_level) + " is below level " +
                                std::to_string(f.level()));
  if (new_level == f.level()) return f;
  const CellLayout fine(f.prime(), f.dim(), new_level);
  const u64 old_side = f.layout().side();
  const u64 children = ipow(f.prime(), new_level - f.level());
  const unsigned d = f.dim();
  std::vector<StepDensity::Cell> out;
  std::vector<u64> digit(d, 0);
  for (const auto& [key, value] : f.cells()) {
    const std::vector<u64> base = f.layout().coords(key);
    std::fill(digit.begin(), digit.end(), 0);
    std::vector<u64> c(d);
    while (true) {
      for (unsigned i = 0; i < d; ++i) c[i] = base[i] + digit[i] * old_side;
      out.emplace_back(fine.key(c), value);
      unsigned i = 0;
      while (i < d && ++digit[i] == children) digit[i++] = 0;
      if (i == d) break;
    }
  }
  return StepDensity::from_cells(f.prime(), f.dim(), new_level, std::move(out));
}

StepDensity multiply(const StepDensity& f, const StepDensity& g) {
  if (f.prime() != g.prime() || f.dim() != g.dim())
    throw std::invalid_argument("multiply: densities live on different spaces");
  const StepDensity& fine = f.level() >= g.level() ? f : g;
  const StepDensity& coarse = f.level() >= g.level() ? g : f;
  std::vector<StepDensity::Cell> out;
  for (const auto& [key, value] : fine.cells()) {
    BigRational c = coarse.value_at(fine.layout().ancestor(key, coarse.level()));
    if (c != 0) out.emplace_back(key, value * c);
  }
  return StepDensity::from_cells(fine.prime(), fine.dim(), fine.level(), std::move(out));
}

std::vector<std::pair<u64, BigRational>> ball_masses(const StepMeasure& mu, unsigned l) {
  const StepDensity& f = mu.density();
  if (l > f.level())
    throw ResolutionError("ball level " + std::to_string(l) + " is finer than the measure level " +
                          std::to_string(f.level()));
  std::unordered_map<u64, BigRational> acc;
  for (const auto& [key, value] : f.cells()) acc[f.layout().ancestor(key, l)] += value;
  std::vector<std::pair<u64, BigRational>> out(acc.begin(), acc.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  const BigRational vol = f.cell_volume();
  for (auto& entry : out) entry.second *= vol;
  return out;
}

BigRational ball_mass(const StepMeasure& mu, std::span<const PadicRational> center, unsigned l) {
  const StepDensity& f = mu.density();
  if (l > f.level())
    throw ResolutionError("ball level " + std::to_string(l) + " is finer than the measure level " +
                          std::to_string(f.level()));
  if (center.size() != f.dim()) throw std::invalid_argument("ball_mass: center has wrong dimension");
  for (const auto& x : center)
    if (!x.is_integral()) return 0;  // the ball misses Z_p^d
  std::vector<u64> digits;
  for (const auto& x : center) digits.push_back(residue_mod(x, l).get_ui());
  const CellLayout coarse(f.prime(), f.dim(), l);
  const u64 target = coarse.key(digits);
  BigRational sum = 0;
  for (const auto& [key, value] : f.cells())
    if (f.layout().ancestor(key, l) == target) sum += value;
  return sum * f.cell_volume();
}

// ---------------------------------------------------------------- text format

void write_density(std::ostream& os, const StepDensity& f) {
  os << f.prime() << ' ' << f.dim() << ' ' << f.level() << ' ' << f.size() << '\n';
  for (const auto& [key, value] : f.cells()) {
    for (u64 c : f.layout().coords(key)) os << c << ' ';
    os << value.get_num().get_str() << ' ' << value.get_den().get_str() << '\n';
  }
}

StepDensity read_density(std::istream& is) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line))
      if (!line.empty() && line[0] != '#') return true;
    return false;
  };
  if (!next_line()) throw std::runtime_error("read_density: missing header");
  std::istringstream header(line);
  unsigned p = 0, d = 0, level = 0;
  std::size_t count = 0;
  if (!(header >> p >> d >> level >> count)) throw std::runtime_error("read_density: malformed header");
  CellLayout layout(p, d, level);
  std::vector<StepDensity::Cell> cells;
  cells.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!next_line()) throw std::runtime_error("read_density: truncated record list");
    std::istringstream rec(line);
    std::vector<u64> coords(d);
    for (auto& c : coords)
      if (!(rec >> c)) throw std::runtime_error("read_density: malformed record");
    std::string num, den;
    if (!(rec >> num >> den)) throw std::runtime_error("read_density: malformed record");
    BigRational value{BigInt(num), BigInt(den)};
    value.canonicalize();
    cells.emplace_back(layout.key(coords), value);
  }
  return StepDensity::from_cells(p, d, level, std::move(cells));
}

}  // namespace padic
