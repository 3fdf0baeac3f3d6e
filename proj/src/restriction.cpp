#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "padic/analysis.hpp"
#include "padic/numeric.hpp"
#include "padic/parallel.hpp"
#include "shells.hpp"

namespace padic {

namespace {

enum class Kind { ball, chi_ball, signs };

struct Member {
  Kind kind = Kind::ball;
  unsigned level = 0, radius = 0;
  std::vector<u64> center, freq;
  u64 seed = 0;
};

std::string vec_string(const std::vector<u64>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

std::string member_name(const Member& m) {
  std::ostringstream os;
  switch (m.kind) {
    case Kind::ball:
      os << "ball(radius=p^" << m.radius << ",l=" << m.level << ",center=" << vec_string(m.center) << ")";
      break;
    case Kind::chi_ball:
      os << "chi-ball(radius=p^" << m.radius << ",l=" << m.level << ",center=" << vec_string(m.center)
         << ",freq=" << vec_string(m.freq) << ")";
      break;
    case Kind::signs:
      os << "signs(l=" << m.level << ",stream=" << m.seed << ")";
      break;
  }
  return os.str();
}

}  // namespace

BigRational restriction_endpoint(const BigRational& alpha, const BigRational& beta, unsigned d) {
  BigRational den = BigRational(4 * d) - 4 * alpha + beta;
  if (den <= 0) throw std::invalid_argument("restriction_endpoint: 4d - 4 alpha + beta must be positive");
  BigRational r = 1 + beta / den;
  r.canonicalize();
  return r;
}

BigRational scalar_restriction_endpoint(const BigRational& tau) {
  const BigRational two_over_tau = BigRational(2) / tau;
  return restriction_endpoint(two_over_tau, two_over_tau, 1);
}

RestrictionReport restriction_ratio(const StepMeasure& mu, const BigRational& q, const RestrictionFamily& family) {
  if (q < 1) throw std::invalid_argument("restriction_ratio: q must be >= 1");
  const StepDensity& D = mu.density();
  const unsigned p = D.prime(), d = D.dim();
  unsigned top = std::min(family.max_level, mu.level());
  while (top > 0 && !(pow_fits(p, d * top) && ipow(p, d * top) <= (u64{1} << 20))) --top;

  // mu(B) over level-l balls as dense vectors
  std::vector<std::vector<double>> mass(top + 1);
  std::vector<std::vector<BigRational>> exact(top + 1);
  for (unsigned l = 0; l <= top; ++l) {
    const u64 n = ipow(p, d * l);
    mass[l].assign(n, 0.0);
    exact[l].assign(n, BigRational(0));
    for (const auto& [key, m] : ball_masses(mu, l)) {
      mass[l][key] = m.get_d();
      exact[l][key] = m;
    }
  }

  std::vector<Member> members(std::max(family.count, 1u));
  for (unsigned i = 1; i < members.size(); ++i) {
    std::mt19937_64 rng(detail::mix_seed(family.seed, i, 97));
    Member& m = members[i];
    m.kind = static_cast<Kind>(i % 3);
    m.level = top == 0 ? 0 : 1 + static_cast<unsigned>(rng() % top);
    m.radius = static_cast<unsigned>(rng() % (m.level + 1));
    const u64 side = ipow(p, m.level);
    m.center.resize(d);
    m.freq.resize(d);
    for (unsigned a = 0; a < d; ++a) m.center[a] = rng() % side;
    for (unsigned a = 0; a < d; ++a) m.freq[a] = rng() % side;
    m.seed = rng();
  }
  members[0].center.assign(d, 0);
  members[0].freq.assign(d, 0);

  const long double lnp = std::log(static_cast<long double>(p));
  const long double qd = q.get_d();
  RestrictionReport rep;
  rep.q = q;
  rep.seed = family.seed;
  rep.rows.resize(members.size());
  parallel_for(members.size(), [&](std::size_t i) {
    const Member& m = members[i];
    RestrictionRow& row = rep.rows[i];
    row.name = i == 0 ? "indicator(Z_p^d)" : member_name(m);
    row.level = m.level;
    if (m.kind == Kind::ball) {
      // f^ = p^{dk} e(.) on |x| <= p^-k, else 0
      const BigRational inner = exact[m.radius][0] * BigRational(big_pow(p, 2 * d * m.radius));
      row.integral = inner.get_d();
      row.norm = static_cast<double>(std::exp(d * m.radius * lnp / qd));
      row.ratio = std::sqrt(row.integral) / row.norm;
      return;
    }
    const CellLayout layout(p, d, m.level);
    const u64 n = layout.cell_count();
    std::vector<std::complex<double>> h(n, 0.0);
    u64 support = 0;
    if (m.kind == Kind::chi_ball) {
      const u64 step = ipow(p, m.level - m.radius), side = layout.side();
      for (u64 key = 0; key < n; ++key) {
        auto c = layout.coords(key);
        bool in = true;
        u64 phase = 0;
        for (unsigned a = 0; a < d; ++a) {
          in = in && (c[a] % step == m.center[a] % step);
          phase = addmod(phase, mulmod(c[a], m.freq[a], side), side);
        }
        if (!in) continue;
        h[key] = unit_root(phase, side);
        ++support;
      }
    } else {
      std::mt19937_64 rng(m.seed);
      for (u64 key = 0; key < n; ++key) {
        const u64 r = rng() % 4;
        if (r >= 2) continue;
        h[key] = r == 0 ? 1.0 : -1.0;
        ++support;
      }
      if (support == 0) {
        h[0] = 1.0;
        support = 1;
      }
    }
    dft_cells(h, layout, +1);
    CompensatedSum acc;
    for (u64 key = 0; key < n; ++key) acc.add(mass[m.level][key] * std::norm(h[key]));
    row.integral = acc.value().real();
    row.norm = static_cast<double>(std::pow(static_cast<long double>(support), 1.0L / qd));
    row.ratio = std::sqrt(row.integral) / row.norm;
  });
  for (std::size_t i = 0; i < rep.rows.size(); ++i)
    if (rep.rows[i].ratio > rep.max_ratio) {
      rep.max_ratio = rep.rows[i].ratio;
      rep.argmax = i;
    }
  return rep;
}

}  // namespace padic
