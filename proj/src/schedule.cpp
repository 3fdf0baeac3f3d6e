#include "padic/schedule.hpp"

#include <sstream>
#include <stdexcept>

namespace padic {

std::string Shape::name() const {
  if (!matrix) return "scalar";
  return "mxn " + std::to_string(m) + " " + std::to_string(n);
}

std::string mode_name(Mode m) { return m == Mode::faithful ? "faithful" : "toy"; }

Mode parse_mode(const std::string& s) {
  if (s == "faithful") return Mode::faithful;
  if (s == "toy") return Mode::toy;
  throw std::invalid_argument("unknown mode '" + s + "' (faithful|toy)");
}

unsigned ceil_tau(const BigRational& tau, unsigned M) {
  BigInt num = tau.get_num() * M;
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), tau.get_den().get_mpz_t());
  if (!q.fits_uint_p()) throw SizeError("ceil(tau M) overflows");
  return static_cast<unsigned>(q.get_ui());
}

void ConstructionParams::validate() const {
  require_prime(p);
  if (shape.m == 0 || shape.n == 0) throw std::invalid_argument("matrix shape needs m, n >= 1");
  if (!shape.matrix && tau <= 2) throw std::invalid_argument("scalar construction needs tau > 2");
  if (shape.matrix && tau <= BigRational(shape.m + shape.n, shape.m))
    throw std::invalid_argument("matrix construction needs tau > (m+n)/m");
  if (depth == 0) throw std::invalid_argument("depth must be at least 1");
  const unsigned m0 = resolved_M0();
  if (p == 2 && m0 < 2)
    throw StandingAssumptionError("standing assumption violated: M_0 >= 2 is required when p = 2");
  if (mode == Mode::toy) {
    if (m_list.size() < depth)
      throw std::invalid_argument("toy mode needs an M-list with at least depth entries");
    for (std::size_t i = 0; i < m_list.size(); ++i) {
      if (m_list[i] == 0) throw std::invalid_argument("M-list entries must be positive");
      if (p == 2 && m_list[i] < 2)
        throw StandingAssumptionError("standing assumption violated: M >= 2 is required when p = 2");
      if (i > 0 && m_list[i] <= m_list[i - 1]) throw std::invalid_argument("M-list must be strictly increasing");
    }
  }
}

bool LevelSchedule::all_conditions_hold() const {
  for (const auto& c : checks)
    if (!c.holds) return false;
  return true;
}

namespace {

struct Conditions {
  const ConstructionParams& params;
  const LevelSchedule& s;

  // (size 2): p^{d' L_{k-1}} < g(p^M), d' = mn in the matrix case.
  bool size2(unsigned k, unsigned M) const {
    const unsigned e = (params.shape.matrix ? params.dim() : 1) * s.L[k - 1];
    return params.g.exceeds(BigRational(big_pow(params.p, e)), params.p, M);
  }

  // (size 3), scalar only: prod_{i<k} p^{L_i} / (|Q_{M_i}| p^{M_i}) < g(p^M).
  // With inexact counts the lower bound for |Q| makes the product an upper bound.
  BigRational size3_lhs(unsigned k) const {
    BigRational prod = 1;
    for (unsigned i = 1; i < k; ++i)
      prod *= BigRational(big_pow(params.p, s.L[i]), s.q_count[i].lo * big_pow(params.p, s.M[i]));
    return prod;
  }
};

std::string describe_power(unsigned p, unsigned e) {
  return std::to_string(p) + "^" + std::to_string(e);
}

}  // namespace

LevelSchedule choose_Mk(const ConstructionParams& params, unsigned max_M) {
  params.validate();
  LevelSchedule s;
  s.p = params.p;
  s.tau = params.tau;
  s.shape = params.shape;
  s.mode = params.mode;
  const unsigned m0 = params.resolved_M0();
  s.M.push_back(m0);
  s.L.push_back(ceil_tau(params.tau, m0));
  s.q_count.push_back(m0 >= 1 ? count_QM(params.p, m0) : PrimeCount{});
  Conditions cond{params, s};
  const bool scalar = !params.shape.matrix;
  const std::string tag = scalar ? "Mk size " : "Mk size mn ";

  for (unsigned k = 1; k <= params.depth; ++k) {
    unsigned M = 0;
    if (params.mode == Mode::toy) {
      M = params.m_list[k - 1];
    } else {
      // All three conditions are monotone in M, so the first M passing them is minimal.
      M = s.L[k - 1] + 1;
      auto ok = [&](unsigned cand) {
        return cond.size2(k, cand) && (!scalar || params.g.exceeds(cond.size3_lhs(k), params.p, cand));
      };
      if (!ok(M)) {
        unsigned lo = M, hi = M;
        while (!ok(hi)) {
          lo = hi;
          if (hi >= max_M)
            throw SizeError("schedule: M_" + std::to_string(k) + " exceeds the resolution budget " +
                            std::to_string(max_M) + "; feasible depth is " + std::to_string(k - 1));
          hi = std::min<unsigned>(max_M, hi * 2);
        }
        while (hi - lo > 1) {
          unsigned mid = lo + (hi - lo) / 2;
          (ok(mid) ? hi : lo) = mid;
        }
        M = hi;
      }
    }
    s.M.push_back(M);
    s.L.push_back(ceil_tau(params.tau, M));
    s.q_count.push_back(count_QM(params.p, M));

    const unsigned Lprev = s.L[k - 1];
    std::ostringstream d1;
    d1 << "ceil(tau M_" << k - 1 << ") = " << Lprev << " < M_" << k << " = " << M;
    s.checks.push_back({k, tag + "1", Lprev < M, d1.str()});
    const unsigned e = (scalar ? 1 : params.dim()) * Lprev;
    s.checks.push_back({k, tag + "2", cond.size2(k, M),
                        describe_power(params.p, e) + " < g(" + describe_power(params.p, M) + ")"});
    if (scalar) {
      BigRational lhs = cond.size3_lhs(k);
      bool certified = true;
      for (unsigned i = 1; i < k; ++i) certified = certified && s.q_count[i].exact;
      s.checks.push_back({k, tag + "3", params.g.exceeds(lhs, params.p, M),
                          "prod = " + std::to_string(lhs.get_d()) + " < g(" + describe_power(params.p, M) + ")" +
                              (certified ? "" : " (|Q| lower bounds used)")});
    }
  }
  return s;
}

}  // namespace padic
