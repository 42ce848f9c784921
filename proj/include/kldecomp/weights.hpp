#ifndef KLDECOMP_WEIGHTS_HPP
#define KLDECOMP_WEIGHTS_HPP

#include "kldecomp/coxeter.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kld {

struct orbit_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct not_antidominant : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Level -e linkage: tuples of rank N, with nu the finite parabolic of the
// parabolic category (never contains 0).
struct LinkageContext {
  int N = 1;
  int e = 2;
  ParabolicSubset nu;

  LinkageContext() = default;
  LinkageContext(int rank, int level, ParabolicSubset parabolic) : N(rank), e(level), nu(std::move(parabolic)) {
    if (N < 1 || e < 1) throw std::invalid_argument("rank and e must be positive");
    if (nu.rank() != N) throw rank_mismatch("parabolic rank mismatch");
    if (nu.contains(0)) throw std::invalid_argument("nu must not contain s_0");
  }
};

// lambda + rho as an N-tuple; delta_coeff rides along untouched.
struct ShiftedWeight {
  std::vector<long> entries;
  boost::rational<long> delta_coeff{0};

  friend bool operator==(const ShiftedWeight& a, const ShiftedWeight& b) { return a.entries == b.entries; }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(entries[i]);
    }
    return s + "]";
  }
};

inline void check_rank(const LinkageContext& ctx, std::size_t n) {
  if (static_cast<int>(n) != ctx.N) throw rank_mismatch("weight rank mismatch");
}

// s_i . a on the shifted tuple.
inline void apply_simple(std::vector<long>& a, int i, long e) {
  const std::size_t n = a.size();
  if (n == 1) return;
  if (i == 0) {
    const long first = a.front();
    a.front() = a.back() - e;
    a.back() = first + e;
  } else {
    std::swap(a[static_cast<std::size_t>(i - 1)], a[static_cast<std::size_t>(i)]);
  }
}

// (w . a)_j = a_{w^-1(j)} with a_{p+N} = a_p + e.
inline ShiftedWeight act(const LinkageContext& ctx, const AffinePerm& w, const ShiftedWeight& a) {
  check_rank(ctx, a.entries.size());
  check_same_rank(w, AffinePerm(ctx.N));
  const AffinePerm winv = inverse(w);
  ShiftedWeight r{std::vector<long>(a.entries.size()), a.delta_coeff};
  for (int j = 1; j <= ctx.N; ++j) {
    const long p = winv(j);
    const long k = floor_div(p - 1, ctx.N);
    r.entries[static_cast<std::size_t>(j - 1)] = a.entries[static_cast<std::size_t>(p - 1 - k * ctx.N)] + k * ctx.e;
  }
  return r;
}

inline bool is_antidominant(const LinkageContext& ctx, const ShiftedWeight& o) {
  const auto& a = o.entries;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i - 1] > a[i]) return false;
  return a.back() <= a.front() + ctx.e;
}

struct AntidominantResult {
  ShiftedWeight o;
  AffinePerm g;  // g . o = a
};

// Sorts by swapping adjacent descents (s_0 when a_N - e > a_1); the recorded
// generators, read left to right, form a word for g.
inline AntidominantResult antidominant_rep(const LinkageContext& ctx, const ShiftedWeight& a) {
  check_rank(ctx, a.entries.size());
  std::vector<long> t = a.entries;
  AffinePerm g(ctx.N);
  if (ctx.N > 1) {
    while (true) {
      int step = -1;
      for (int i = 1; i < ctx.N && step < 0; ++i)
        if (t[static_cast<std::size_t>(i - 1)] > t[static_cast<std::size_t>(i)]) step = i;
      if (step < 0 && t.back() - ctx.e > t.front()) step = 0;
      if (step < 0) break;
      apply_simple(t, step, ctx.e);
      g.rmul_inplace(step);
    }
  }
  return {ShiftedWeight{std::move(t), a.delta_coeff}, g};
}

inline ParabolicSubset stabilizer(const LinkageContext& ctx, const ShiftedWeight& o) {
  check_rank(ctx, o.entries.size());
  if (!is_antidominant(ctx, o)) throw not_antidominant(o.str() + " is not antidominant");
  std::vector<int> gens;
  if (ctx.N == 1) return ParabolicSubset(1, {});
  const auto& a = o.entries;
  if (a.back() == a.front() + ctx.e) gens.push_back(0);
  for (int i = 1; i < ctx.N; ++i)
    if (a[static_cast<std::size_t>(i - 1)] == a[static_cast<std::size_t>(i)]) gens.push_back(i);
  return ParabolicSubset(ctx.N, std::move(gens));
}

// Strict along nu: the shifted tuple of a nu-dominant weight is nu-regular.
inline bool is_nu_dominant(const LinkageContext& ctx, const ShiftedWeight& a) {
  check_rank(ctx, a.entries.size());
  for (int i : ctx.nu.gens())
    if (a.entries[static_cast<std::size_t>(i - 1)] <= a.entries[static_cast<std::size_t>(i)]) return false;
  return true;
}

// Orbit invariants: residues mod e (as a multiset) and the entry sum.
inline bool same_orbit_invariants(const LinkageContext& ctx, const ShiftedWeight& a, const ShiftedWeight& b) {
  auto residues = [&](const ShiftedWeight& w) {
    std::vector<long> r;
    for (long x : w.entries) r.push_back(pos_mod(x, ctx.e));
    std::sort(r.begin(), r.end());
    return r;
  };
  long sa = 0;
  long sb = 0;
  for (long x : a.entries) sa += x;
  for (long x : b.entries) sb += x;
  return sa == sb && residues(a) == residues(b);
}

// The w with w . o = target that is shortest in w W_mu.
inline AffinePerm to_min_rep(const LinkageContext& ctx, const ShiftedWeight& target, const ShiftedWeight& o,
                             const ParabolicSubset& mu) {
  check_rank(ctx, target.entries.size());
  check_rank(ctx, o.entries.size());
  if (!same_orbit_invariants(ctx, target, o))
    throw orbit_mismatch(target.str() + " and " + o.str() + " have different residue content or sum");
  auto [o2, g] = antidominant_rep(ctx, target);
  if (!(o2 == o)) throw orbit_mismatch(target.str() + " is not in the orbit of " + o.str());
  if (ctx.N > 1 && !is_min_rep(g, mu, Side::right)) return coset_rep(g, mu, Side::right, Extremum::min);
  return g;
}

}  // namespace kld

#endif  // KLDECOMP_WEIGHTS_HPP
