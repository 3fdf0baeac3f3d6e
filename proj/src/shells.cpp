#include "shells.hpp"

#include <algorithm>
#include <limits>

namespace padic::detail {

u64 shell_size(unsigned p, unsigned d, unsigned l) {
  if (l == 0) return 1;
  if (!pow_fits(p, d * l)) return std::numeric_limits<u64>::max();
  return ipow(p, d * l) - ipow(p, d * (l - 1));
}

unsigned point_level(unsigned p, const std::vector<u64>& a, unsigned l) {
  unsigned v = l;
  for (u64 x : a)
    if (x != 0) v = std::min(v, vp(x, p));
  bool all_zero = std::all_of(a.begin(), a.end(), [](u64 x) { return x == 0; });
  return all_zero ? 0 : l - v;
}

std::vector<std::vector<u64>> shell_points(unsigned p, unsigned d, unsigned l) {
  std::vector<std::vector<u64>> out;
  if (l == 0) {
    out.emplace_back(d, 0);
    return out;
  }
  const u64 side = ipow(p, l), total = ipow(p, d * l);
  out.reserve(shell_size(p, d, l));
  std::vector<u64> a(d);
  for (u64 key = 0; key < total; ++key) {
    u64 rest = key;
    bool on_shell = false;
    for (unsigned i = 0; i < d; ++i) {
      a[i] = rest % side;
      rest /= side;
      on_shell = on_shell || a[i] % p != 0;
    }
    if (on_shell) out.push_back(a);
  }
  return out;
}

u64 mix_seed(u64 seed, u64 a, u64 b) {
  // splitmix64 finalizer over the combined words
  u64 z = seed + 0x9E3779B97F4A7C15ull * (a + 1) + 0xBF58476D1CE4E5B9ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<std::vector<u64>> sample_shell(unsigned p, unsigned d, unsigned l, u64 count, u64 seed) {
  std::vector<std::vector<u64>> out;
  if (l == 0) {
    out.emplace_back(d, 0);
    return out;
  }
  const u64 side = ipow(p, l);
  std::mt19937_64 rng(mix_seed(seed, l, d));
  out.reserve(count);
  std::vector<u64> a(d);
  while (out.size() < count) {
    bool on_shell = false;
    for (unsigned i = 0; i < d; ++i) {
      a[i] = rng() % side;
      on_shell = on_shell || a[i] % p != 0;
    }
    if (on_shell) out.push_back(a);
  }
  return out;
}

std::vector<std::vector<u64>> shell_selection(unsigned p, unsigned d, unsigned l, u64 cap, u64 samples, u64 seed,
                                              bool& exhaustive) {
  exhaustive = shell_size(p, d, l) <= cap;
  return exhaustive ? shell_points(p, d, l) : sample_shell(p, d, l, samples, seed);
}

std::vector<std::vector<u64>> spike_points(const FMData& f, unsigned l) {
  std::vector<std::vector<u64>> out;
  if (l == 0 || !pow_fits(f.prime(), l)) return out;
  const u64 N = ipow(f.prime(), l);
  const unsigned m = f.shape().m, n = f.shape().n, d = f.dim();
  std::vector<std::vector<long>> weights;
  if (!f.shape().matrix) {
    weights = {{1}, {2}, {-1}, {-2}};
  } else {
    // w in {-1, 0, 1}^m minus 0
    u64 total = ipow(3, m);
    for (u64 c = 1; c < total; ++c) {
      std::vector<long> w(m);
      u64 rest = c;
      for (unsigned i = 0; i < m; ++i, rest /= 3) w[i] = static_cast<long>(rest % 3) - 1;
      weights.push_back(w);
    }
  }
  for (u64 q : f.Q()) {
    for (const auto& w : weights) {
      std::vector<u64> a(d);
      for (unsigned i = 0; i < m; ++i) {
        u64 wi = w[i] >= 0 ? static_cast<u64>(w[i]) % N : N - static_cast<u64>(-w[i]) % N;
        for (unsigned j = 0; j < n; ++j) a[i * n + j] = mulmod(q % N, wi % N, N);
      }
      if (point_level(f.prime(), a, l) == l) out.push_back(std::move(a));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::vector<u64>> structured_points(const KaufmanMeasure& K, unsigned k, unsigned l, u64 cap) {
  if (k == 0 || !K.has_fm(k)) return {};
  std::vector<std::vector<u64>> base = spike_points(K.fm(k), l);
  const FourierTable* prev = K.dual_cache(k - 1);
  if (!prev || prev->level() >= l) return base;
  std::vector<u64> shifts;
  for (u64 key = 1; key < prev->size(); ++key)
    if (std::abs(prev->at(key)) > 1e-12) shifts.push_back(key);
  std::stable_sort(shifts.begin(), shifts.end(),
                   [&](u64 x, u64 y) { return std::abs(prev->at(x)) > std::abs(prev->at(y)); });
  const u64 room = base.empty() ? 0 : cap / base.size();
  if (room <= 1) return base;
  if (shifts.size() > room - 1) shifts.resize(room - 1);

  const unsigned p = K.prime(), d = K.dim(), R = prev->level();
  const u64 N = ipow(p, l), lift = ipow(p, l - R);
  std::vector<std::vector<u64>> out = base;
  for (const auto& a : base) {
    for (u64 key : shifts) {
      std::vector<u64> t = prev->layout().coords(key);
      std::vector<u64> s(d);
      for (unsigned i = 0; i < d; ++i) s[i] = addmod(a[i], mulmod(t[i], lift, N), N);
      if (point_level(p, s, l) == l) out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace padic::detail
