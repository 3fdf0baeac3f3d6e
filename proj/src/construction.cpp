#include "padic/construction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace padic {

StepDensity build_psi0(const ConstructionParams& params, const LevelSchedule& schedule) {
  const unsigned p = params.p;
  if (params.shape.matrix) return StepDensity::constant(p, params.dim(), 1);
  if (schedule.depth() >= 1 && schedule.L[1] < 2)
    throw std::invalid_argument("psi_0 support condition needs ceil(tau M_1) >= 2");
  // |x|_p = 1/p: the cells p*j, 1 <= j < p, at level 2
  const BigRational density(BigInt(p) * p, BigInt(p - 1));
  std::vector<StepDensity::Cell> cells;
  for (unsigned j = 1; j < p; ++j) cells.emplace_back(u64{p} * j, density);
  return StepDensity::from_cells(p, 1, 2, std::move(cells));
}

CyclotomicSum ft_psi0_closed(const ConstructionParams& params, const DualPoint& s) {
  const unsigned p = params.p;
  std::vector<PadicRational> origin(s.dim(), PadicRational(p, 0));
  CyclotomicSum out(p, 0);
  if (params.shape.matrix) {
    ScaledPhase b = ft_ball_indicator(origin, 0, s);
    out.add_phase(b.phase, b.scale);
    return out;
  }
  const BigRational c = 1 / (BigRational(1, p) - BigRational(1, BigInt(p) * p));
  ScaledPhase b1 = ft_ball_indicator(origin, 1, s);
  ScaledPhase b2 = ft_ball_indicator(origin, 2, s);
  out.add_phase(b1.phase, c * b1.scale);
  out.add_phase(b2.phase, -c * b2.scale);
  return out;
}

// ---------------------------------------------------------------- FMData

FMData::FMData(const ConstructionParams& params, unsigned M)
    : p_(params.p), M_(M), L_(ceil_tau(params.tau, M)), shape_(params.shape) {
  Q_ = enumerate_QM(p_, M);
  R_ = ipow(p_, M);
  if (!pow_fits(p_, L_)) throw SizeError("F_M: p^L exceeds the 63-bit index range");
  const u64 N = ipow(p_, L_);
  Qinv_.reserve(Q_.size());
  for (u64 q : Q_) Qinv_.push_back(inverse_mod(q % N, N));
}

BigInt FMData::pair_count() const {
  BigInt qn = 1, rm = 1;
  for (unsigned j = 0; j < shape_.n; ++j) qn *= BigInt(std::to_string(Q_.size()));
  for (unsigned i = 0; i < shape_.m; ++i) rm *= BigInt(std::to_string(R_));
  return qn * rm;
}

BigRational FMData::phi_share() const {
  BigRational share(big_pow(p_, shape_.m * L_), pair_count());
  share.canonicalize();
  return share;
}

BigInt FMData::placement_count() const {
  return pair_count() * big_pow(p_, shape_.m * (shape_.n - 1) * L_);
}

StepDensity FMData::build(u64 cell_budget) const {
  if (placement_count() > BigInt(std::to_string(cell_budget)))
    throw SizeError("F_M density for M = " + std::to_string(M_) + " needs " + placement_count().get_str() +
                    " cell placements, over the budget " + std::to_string(cell_budget));
  const u64 N = ipow(p_, L_);
  const BigRational share = phi_share();
  std::vector<StepDensity::Cell> cells;
  cells.reserve(placement_count().get_ui());
  if (!shape_.matrix) {
    for (std::size_t i = 0; i < Q_.size(); ++i)
      for (u64 r = 0; r < R_; ++r) cells.emplace_back(mulmod(r, Qinv_[i], N), share);
    return StepDensity::from_cells(p_, 1, L_, std::move(cells));
  }
  // x is m x n (axis i*n + j); row i of xq = r_i fixes x_i0 given the free x_ij, j >= 1.
  const unsigned m = shape_.m, n = shape_.n;
  const CellLayout layout(p_, m * n, L_);
  std::vector<std::size_t> qi(n, 0);
  std::vector<u64> r(m), x(m * n), freev(m * (n - 1));
  while (true) {
    std::fill(r.begin(), r.end(), 0);
    while (true) {
      std::fill(freev.begin(), freev.end(), 0);
      while (true) {
        for (unsigned i = 0; i < m; ++i) {
          u64 rest = r[i] % N;
          for (unsigned j = 1; j < n; ++j) {
            const u64 v = freev[i * (n - 1) + (j - 1)];
            x[i * n + j] = v;
            rest = submod(rest, mulmod(v, Q_[qi[j]] % N, N), N);
          }
          x[i * n] = mulmod(rest, Qinv_[qi[0]], N);
        }
        cells.emplace_back(layout.key(x), share);
        std::size_t t = 0;
        while (t < freev.size() && ++freev[t] == N) freev[t++] = 0;
        if (t == freev.size()) break;
      }
      unsigned t = 0;
      while (t < m && ++r[t] == R_) r[t++] = 0;
      if (t == m) break;
    }
    unsigned t = 0;
    while (t < n && ++qi[t] == Q_.size()) qi[t++] = 0;
    if (t == n) break;
  }
  return StepDensity::from_cells(p_, m * n, L_, std::move(cells));
}

namespace {

// sin(pi j / N) for 0 <= j < 2N, reduced exactly to an angle in [0, pi/2]
double sin_pi_ratio(u64 j, u64 N) {
  double sign = 1;
  if (j >= N) {
    j -= N;
    sign = -1;
  }
  if (2 * static_cast<u128>(j) > N) j = N - j;
  return sign * std::sin(std::numbers::pi * static_cast<double>(j) / static_cast<double>(N));
}

}  // namespace

std::complex<double> FMData::geometric_sum(u64 w, unsigned l) const {
  const u64 N = ipow(p_, l);
  w %= N;
  if (w == 0) return static_cast<double>(R_);
  if (static_cast<u128>(R_) * w % N == 0) return 0.0;
  // e((R-1) w / 2N) sin(pi R w / N) / sin(pi w / N), angles reduced exactly
  const u128 twoN = static_cast<u128>(N) * 2;
  const u64 num_angle = static_cast<u64>(static_cast<u128>(R_) * w % twoN);
  const u64 phase = static_cast<u64>(static_cast<u128>(R_ - 1) * w % twoN);
  const double ratio = sin_pi_ratio(num_angle, N) / sin_pi_ratio(w, N);
  return ratio * unit_root(phase, static_cast<u64>(twoN));
}

namespace {

// For matrix shapes: the number of q_j in Q (j >= 1) compatible with q_0 in
// every row, i.e. a_ij q_0 = a_i0 q_j (mod N).
u64 compatible_count(const std::vector<u64>& a, unsigned m, unsigned n, const std::vector<u64>& Q, u64 q0,
                     u64 N) {
  u64 total = 1;
  for (unsigned j = 1; j < n && total != 0; ++j) {
    u64 count = 0;
    for (u64 qj : Q) {
      bool ok = true;
      for (unsigned i = 0; i < m && ok; ++i)
        ok = mulmod(a[i * n + j], q0 % N, N) == mulmod(a[i * n], qj % N, N);
      if (ok) ++count;
    }
    total *= count;
  }
  return total;
}

}  // namespace

std::complex<double> FMData::ft(const DualPoint& s) const {
  if (s.dim() != dim() || s.prime() != p_) throw std::invalid_argument("F_M^: dual point has the wrong shape");
  if (s.level() > L_) return 0.0;
  return ft_at(s.numerators(s.level()), s.level());
}

std::complex<double> FMData::ft_at(std::vector<u64> a, unsigned l) const {
  if (a.size() != dim()) throw std::invalid_argument("F_M^: dual point has the wrong shape");
  // strip common factors of p so that |s|_p = p^l exactly
  while (l > 0 && std::all_of(a.begin(), a.end(), [&](u64 v) { return v % p_ == 0; })) {
    for (auto& v : a) v /= p_;
    --l;
  }
  if (l == 0) return 1.0;
  if (l > L_) return 0.0;
  const u64 N = ipow(p_, l);
  for (auto& v : a) v %= N;
  std::complex<double> acc = 0;
  if (!shape_.matrix) {
    for (std::size_t i = 0; i < Q_.size(); ++i) acc += geometric_sum(mulmod(a[0], Qinv_[i] % N, N), l);
    return acc / (static_cast<double>(Q_.size()) * static_cast<double>(R_));
  }
  const unsigned m = shape_.m, n = shape_.n;
  for (std::size_t k = 0; k < Q_.size(); ++k) {
    const u64 mult = compatible_count(a, m, n, Q_, Q_[k], N);
    if (mult == 0) continue;
    std::complex<double> prod = static_cast<double>(mult);
    for (unsigned i = 0; i < m; ++i) prod *= geometric_sum(mulmod(a[i * n], Qinv_[k] % N, N), l);
    acc += prod;
  }
  return acc / pair_count().get_d();
}

CyclotomicSum FMData::ft_exact(const DualPoint& s) const {
  if (s.dim() != dim() || s.prime() != p_) throw std::invalid_argument("F_M^: dual point has the wrong shape");
  if (s.is_zero()) return CyclotomicSum::rational(p_, 1);
  const unsigned l = s.level();
  if (l > L_) return CyclotomicSum(p_, 0);
  const u64 N = ipow(p_, l);
  const std::vector<u64> a = s.numerators(l);
  auto geometric = [&](u64 w) {
    CyclotomicSum g(p_, l);
    for (u64 r = 0; r < R_; ++r) g.add_term(mulmod(r % N, w, N), 1);
    return g;
  };
  CyclotomicSum acc(p_, l);
  const unsigned m = shape_.m, n = shape_.n;
  for (std::size_t k = 0; k < Q_.size(); ++k) {
    const u64 mult = shape_.matrix ? compatible_count(a, m, n, Q_, Q_[k], N) : 1;
    if (mult == 0) continue;
    CyclotomicSum prod = CyclotomicSum::rational(p_, BigRational(BigInt(std::to_string(mult))));
    for (unsigned i = 0; i < m; ++i) prod = prod * geometric(mulmod(a[i * n], Qinv_[k] % N, N));
    acc += prod;
  }
  acc *= BigRational(1) / BigRational(pair_count());
  return acc;
}

// ---------------------------------------------------------------- D(s)

bool membership_D(const DualPoint& s, std::span<const u64> q, unsigned m, unsigned n) {
  if (s.dim() != m * n || q.size() != n) throw std::invalid_argument("membership_D: shape mismatch");
  for (u64 qj : q)
    if (qj % s.prime() == 0) throw std::invalid_argument("membership_D: q_j must be prime to p");
  const unsigned l = s.level();
  if (l == 0) return true;
  const u64 N = ipow(s.prime(), l);
  const std::vector<u64> a = s.numerators(l);
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 1; j < n; ++j)
      if (mulmod(a[i * n + j], q[0] % N, N) != mulmod(a[i * n], q[j] % N, N)) return false;
  return true;
}

bool membership_D_direct(const DualPoint& s, std::span<const u64> q, unsigned m, unsigned n) {
  if (s.dim() != m * n || q.size() != n) throw std::invalid_argument("membership_D: shape mismatch");
  const unsigned p = s.prime();
  for (unsigned i = 0; i < m; ++i) {
    const PadicRational ref =
        frac_part(s.coords()[i * n] / PadicRational(p, BigRational(BigInt(std::to_string(q[0])))));
    for (unsigned j = 1; j < n; ++j) {
      const PadicRational f =
          frac_part(s.coords()[i * n + j] / PadicRational(p, BigRational(BigInt(std::to_string(q[j])))));
      if (!(f == ref)) return false;
    }
  }
  return true;
}

}  // namespace padic
