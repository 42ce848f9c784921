#ifndef KLDECOMP_MULTIPARTITIONS_HPP
#define KLDECOMP_MULTIPARTITIONS_HPP

#include "kldecomp/coxeter.hpp"
#include "kldecomp/weights.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kld {

using Partition = std::vector<int>;

struct Multipartition {
  std::vector<Partition> components;

  int level() const { return static_cast<int>(components.size()); }
  int size() const {
    int n = 0;
    for (const auto& p : components)
      for (int r : p) n += r;
    return n;
  }
  friend auto operator<=>(const Multipartition&, const Multipartition&) = default;
  friend bool operator==(const Multipartition&, const Multipartition&) = default;

  // Nested integer lists, e.g. [[2],[1]].
  std::string str() const {
    std::string s = "[";
    for (std::size_t p = 0; p < components.size(); ++p) {
      if (p) s += ',';
      s += '[';
      for (std::size_t i = 0; i < components[p].size(); ++i) {
        if (i) s += ',';
        s += std::to_string(components[p][i]);
      }
      s += ']';
    }
    return s + "]";
  }
};

// Residue -> multiplicity; zero multiplicities are not stored.
using Block = std::map<int, int>;

struct Charge {
  std::vector<int> s;
  int e = 2;

  Charge() = default;
  Charge(std::vector<int> residues, int modulus) : s(std::move(residues)), e(modulus) {
    if (s.empty()) throw std::invalid_argument("charge must have at least one component");
    if (e < 2) throw std::invalid_argument("e must be at least 2");
    for (auto& x : s) x = static_cast<int>(pos_mod(x, e));
  }
  int level() const { return static_cast<int>(s.size()); }
};

inline void validate_partition(const Partition& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) throw std::invalid_argument("partition parts must be positive");
    if (i && p[i] > p[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
  }
}

inline Partition transpose(const Partition& p) {
  Partition t;
  if (p.empty()) return t;
  for (int j = 0; j < p.front(); ++j) {
    int c = 0;
    for (int r : p)
      if (r > j) ++c;
    t.push_back(c);
  }
  return t;
}

inline Block residue_content(const Multipartition& lam, const Charge& chg) {
  if (lam.level() != chg.level()) throw std::invalid_argument("multipartition level differs from charge level");
  Block d;
  for (int p = 0; p < lam.level(); ++p) {
    const auto& rows = lam.components[static_cast<std::size_t>(p)];
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < rows[i]; ++j)
        ++d[static_cast<int>(pos_mod(chg.s[static_cast<std::size_t>(p)] + j - static_cast<long>(i), chg.e))];
  }
  return d;
}

inline int block_size(const Block& d) {
  int n = 0;
  for (const auto& [r, k] : d) n += k;
  return n;
}

// Partitions of n, parts descending, in reverse lexicographic order.
inline std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int, int)> rec = [&](int rest, int cap) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(rest, cap); k >= 1; --k) {
      cur.push_back(k);
      rec(rest - k, k);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

inline std::vector<Multipartition> multipartitions_of(int n, int level) {
  std::vector<Multipartition> out;
  Multipartition cur;
  cur.components.resize(static_cast<std::size_t>(level));
  std::function<void(int, int)> rec = [&](int p, int rest) {
    if (p == level - 1) {
      for (const auto& part : partitions_of(rest)) {
        cur.components[static_cast<std::size_t>(p)] = part;
        out.push_back(cur);
      }
      return;
    }
    for (int k = rest; k >= 0; --k)
      for (const auto& part : partitions_of(k)) {
        cur.components[static_cast<std::size_t>(p)] = part;
        rec(p + 1, rest - k);
      }
  };
  rec(0, n);
  return out;
}

// Every l-partition of |d| with content d, in generation order.
inline std::vector<Multipartition> enumerate_block(const Charge& chg, const Block& d) {
  Block want;
  for (const auto& [r, k] : d) {
    if (k < 0) throw std::invalid_argument("negative block multiplicity");
    if (k > 0) want[static_cast<int>(pos_mod(r, chg.e))] += k;
  }
  std::vector<Multipartition> out;
  for (auto& lam : multipartitions_of(block_size(want), chg.level()))
    if (residue_content(lam, chg) == want) out.push_back(std::move(lam));
  return out;
}

// Reverse the components and transpose each.
inline Multipartition star(const Multipartition& lam) {
  Multipartition r;
  for (auto it = lam.components.rbegin(); it != lam.components.rend(); ++it) r.components.push_back(transpose(*it));
  return r;
}

// Minimal m with m_p = -s_{l+1-p} mod e and m_p >= max(n, 1).
inline std::vector<int> choose_m(const Charge& chg, int n) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  const int l = chg.level();
  std::vector<int> m;
  for (int p = 1; p <= l; ++p) {
    const long target = pos_mod(-chg.s[static_cast<std::size_t>(l - p)], chg.e);
    long v = std::max(n, 1);
    while (pos_mod(v, chg.e) != target) ++v;
    m.push_back(static_cast<int>(v));
  }
  return m;
}

// Throws unless m satisfies the congruence and size constraints for n.
inline void check_m(const Charge& chg, const std::vector<int>& m, int n) {
  const int l = chg.level();
  if (static_cast<int>(m.size()) != l)
    throw std::invalid_argument("m has " + std::to_string(m.size()) + " entries, expected " + std::to_string(l));
  for (int p = 1; p <= l; ++p) {
    const int mp = m[static_cast<std::size_t>(p - 1)];
    if (mp < 1) throw std::invalid_argument("m entries must be positive");
    if (pos_mod(mp + chg.s[static_cast<std::size_t>(l - p)], chg.e) != 0)
      throw std::invalid_argument("m_" + std::to_string(p) + " = " + std::to_string(mp) + " is not congruent to -s_" +
                                  std::to_string(l + 1 - p) + " mod " + std::to_string(chg.e));
    if (mp < n)
      throw std::invalid_argument("m_" + std::to_string(p) + " = " + std::to_string(mp) + " is smaller than n = " +
                                  std::to_string(n));
  }
}

inline int total(const std::vector<int>& m) {
  int n = 0;
  for (int x : m) n += x;
  return n;
}

// {1..N-1} minus the partial sums of m.
inline ParabolicSubset nu_from_m(const std::vector<int>& m) {
  std::vector<int> gens;
  int acc = 0;
  for (int mp : m) {
    for (int k = 1; k < mp; ++k) gens.push_back(acc + k);
    acc += mp;
  }
  return ParabolicSubset(acc, std::move(gens));
}

// (lambda padded) - rho + rho_m, returned shifted by +rho, i.e. padded + rho_m.
inline ShiftedWeight omega_weight(const Multipartition& lam, const std::vector<int>& m, const Charge& chg) {
  if (lam.level() != static_cast<int>(m.size())) throw std::invalid_argument("m length differs from level");
  const int N = total(m);
  std::vector<long> padded;
  std::vector<long> rho_m;
  for (int p = 0; p < lam.level(); ++p) {
    const auto& rows = lam.components[static_cast<std::size_t>(p)];
    validate_partition(rows);
    const int mp = m[static_cast<std::size_t>(p)];
    if (static_cast<int>(rows.size()) > mp)
      throw std::invalid_argument("component " + std::to_string(p + 1) + " has more than m_" + std::to_string(p + 1) +
                                  " = " + std::to_string(mp) + " rows");
    for (int i = 0; i < mp; ++i) {
      padded.push_back(i < static_cast<int>(rows.size()) ? rows[static_cast<std::size_t>(i)] : 0);
      rho_m.push_back(mp - i);
    }
  }
  ShiftedWeight out;
  long dot = 0;
  for (int i = 0; i < N; ++i) {
    const long omega = padded[static_cast<std::size_t>(i)] + i + rho_m[static_cast<std::size_t>(i)];
    const long rho = -i;
    dot += omega * (2 * rho + omega);
    out.entries.push_back(omega + rho);
  }
  out.delta_coeff = boost::rational<long>(dot, 2L * chg.e);
  return out;
}

struct WeylLabel {
  AffinePerm w;
  ShiftedWeight target;
  ShiftedWeight o;
  ParabolicSubset mu;
};

inline WeylLabel to_weyl(const Multipartition& lam, const LinkageContext& ctx, const Charge& chg,
                         const std::vector<int>& m) {
  ShiftedWeight target = omega_weight(star(lam), m, chg);
  check_rank(ctx, target.entries.size());
  auto [o, g] = antidominant_rep(ctx, target);
  ParabolicSubset mu = stabilizer(ctx, o);
  AffinePerm w = to_min_rep(ctx, target, o, mu);
  return {std::move(w), std::move(target), std::move(o), std::move(mu)};
}

// "[[2],[1]]"
inline Multipartition parse_multipartition(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw std::invalid_argument("bad multipartition " + text);
  Multipartition lam;
  std::size_t i = 1;
  while (i + 1 < s.size()) {
    if (s[i] == ',') {
      ++i;
      continue;
    }
    if (s[i] != '[') throw std::invalid_argument("bad multipartition " + text);
    const auto j = s.find(']', i);
    if (j == std::string::npos) throw std::invalid_argument("bad multipartition " + text);
    Partition p = parse_int_list(s.substr(i + 1, j - i - 1));
    validate_partition(p);
    lam.components.push_back(std::move(p));
    i = j + 1;
  }
  return lam;
}

// "0:1,1:2"
inline Block parse_block(const std::string& text, int e) {
  Block d;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto c = item.find(':');
    if (c == std::string::npos) throw std::invalid_argument("block entry '" + item + "' is not residue:multiplicity");
    std::size_t u1 = 0;
    std::size_t u2 = 0;
    int r = 0;
    int k = 0;
    try {
      r = std::stoi(item.substr(0, c), &u1);
      k = std::stoi(item.substr(c + 1), &u2);
    } catch (const std::exception&) {
      throw std::invalid_argument("block entry '" + item + "' is not residue:multiplicity");
    }
    if (u1 != c || u2 != item.size() - c - 1 || k < 0)
      throw std::invalid_argument("block entry '" + item + "' is not residue:multiplicity");
    if (k > 0) d[static_cast<int>(pos_mod(r, e))] += k;
  }
  return d;
}

inline std::string block_str(const Block& d) {
  std::string s;
  for (const auto& [r, k] : d) {
    if (k == 0) continue;
    if (!s.empty()) s += ',';
    s += std::to_string(r) + ":" + std::to_string(k);
  }
  return s;
}

}  // namespace kld

#endif  // KLDECOMP_MULTIPARTITIONS_HPP
