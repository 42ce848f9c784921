#ifndef KLDECOMP_COXETER_HPP
#define KLDECOMP_COXETER_HPP

/*
  Affine symmetric group in window notation.

  An element w is stored as (w(1), ..., w(N)) with w(i + N) = w(i) + N and
  window sum N(N+1)/2. Generators s_1..s_{N-1} swap adjacent positions; s_0
  swaps positions 0 and 1 of Z, i.e. window slots N and 1 up to a shift.
*/

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/container_hash/hash.hpp>

namespace kld {

struct rank_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct infinite_parabolic : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct not_minimal_rep : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline long pos_mod(long a, long b) { return a - b * floor_div(a, b); }

enum class Side { left, right };
enum class Extremum { min, max };

class AffinePerm {
 public:
  AffinePerm() : AffinePerm(1) {}
  explicit AffinePerm(int rank) : w_(static_cast<std::size_t>(rank)) {
    if (rank < 1) throw std::invalid_argument("rank must be positive");
    std::iota(w_.begin(), w_.end(), 1);
  }

  static AffinePerm identity(int rank) { return AffinePerm(rank); }

  // Validates distinct residues and the window-sum normalization.
  static AffinePerm from_window(std::vector<int> window) {
    const int n = static_cast<int>(window.size());
    if (n < 1) throw std::invalid_argument("empty window");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    long sum = 0;
    for (int v : window) {
      auto r = static_cast<std::size_t>(pos_mod(v, n));
      if (seen[r]) throw std::invalid_argument("window entries not distinct mod rank");
      seen[r] = true;
      sum += v;
    }
    if (sum != static_cast<long>(n) * (n + 1) / 2)
      throw std::invalid_argument("window sum is not N(N+1)/2 (extended group element)");
    AffinePerm w;
    w.w_ = std::move(window);
    return w;
  }

  static AffinePerm simple(int rank, int i) {
    AffinePerm w(rank);
    w.check_gen(i);
    w.rmul_inplace(i);
    return w;
  }

  static AffinePerm from_word(int rank, const std::vector<int>& word) {
    AffinePerm w(rank);
    for (int i : word) {
      w.check_gen(i);
      w.rmul_inplace(i);
    }
    return w;
  }

  int rank() const { return static_cast<int>(w_.size()); }
  const std::vector<int>& window() const { return w_; }

  // w(i) for any integer i.
  long operator()(long i) const {
    const long n = rank();
    const long k = floor_div(i - 1, n);
    return w_[static_cast<std::size_t>(i - 1 - k * n)] + k * n;
  }

  // Position p with w(p) = v.
  long position_of(long v) const {
    const long n = rank();
    for (long r = 0; r < n; ++r) {
      const long d = v - w_[static_cast<std::size_t>(r)];
      if (pos_mod(d, n) == 0) return r + 1 + d;
    }
    throw std::logic_error("value not in image");
  }

  int length() const {
    const int n = rank();
    long len = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        len += std::labs(floor_div(w_[static_cast<std::size_t>(j)] - w_[static_cast<std::size_t>(i)], n));
    return static_cast<int>(len);
  }

  bool has_right_descent(int i) const {
    const int n = rank();
    if (n == 1) return false;
    if (i == 0) return w_[static_cast<std::size_t>(n - 1)] - n > w_[0];
    return w_[static_cast<std::size_t>(i - 1)] > w_[static_cast<std::size_t>(i)];
  }
  bool has_left_descent(int i) const {
    if (rank() == 1) return false;
    return position_of(i) > position_of(i + 1);
  }

  std::uint64_t right_descent_mask() const {
    std::uint64_t m = 0;
    for (int i = 0; i < rank() && rank() > 1; ++i)
      if (has_right_descent(i)) m |= std::uint64_t{1} << i;
    return m;
  }
  std::uint64_t left_descent_mask() const {
    std::uint64_t m = 0;
    for (int i = 0; i < rank() && rank() > 1; ++i)
      if (has_left_descent(i)) m |= std::uint64_t{1} << i;
    return m;
  }

  // w -> w s_i
  void rmul_inplace(int i) {
    const int n = rank();
    if (n == 1) return;
    if (i == 0) {
      const int a = w_[0];
      const int b = w_[static_cast<std::size_t>(n - 1)];
      w_[0] = b - n;
      w_[static_cast<std::size_t>(n - 1)] = a + n;
    } else {
      std::swap(w_[static_cast<std::size_t>(i - 1)], w_[static_cast<std::size_t>(i)]);
    }
  }
  // w -> s_i w
  void lmul_inplace(int i) {
    const int n = rank();
    if (n == 1) return;
    const long j = (i + 1) % n;
    for (auto& x : w_) {
      const long r = pos_mod(x, n);
      if (r == i)
        x += 1;
      else if (r == j)
        x -= 1;
    }
  }
  AffinePerm rmul(int i) const {
    AffinePerm r = *this;
    r.rmul_inplace(i);
    return r;
  }
  AffinePerm lmul(int i) const {
    AffinePerm r = *this;
    r.lmul_inplace(i);
    return r;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] != static_cast<int>(i) + 1) return false;
    return true;
  }

  friend bool operator==(const AffinePerm&, const AffinePerm&) = default;
  friend auto operator<=>(const AffinePerm&, const AffinePerm&) = default;

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(w_[i]);
    }
    return s + "]";
  }

  void check_gen(int i) const {
    if (i < 0 || i >= rank() || rank() == 1)
      throw std::out_of_range("generator index " + std::to_string(i) + " out of range for rank " +
                              std::to_string(rank()));
  }

 private:
  std::vector<int> w_;
};

struct PermHash {
  std::size_t operator()(const AffinePerm& w) const {
    return boost::hash_range(w.window().begin(), w.window().end());
  }
};

inline void check_same_rank(const AffinePerm& x, const AffinePerm& y) {
  if (x.rank() != y.rank()) throw rank_mismatch("rank mismatch");
}

// (x o y)(i) = x(y(i))
inline AffinePerm compose(const AffinePerm& x, const AffinePerm& y) {
  check_same_rank(x, y);
  std::vector<int> w(static_cast<std::size_t>(x.rank()));
  for (int i = 0; i < x.rank(); ++i) w[static_cast<std::size_t>(i)] = static_cast<int>(x(y(i + 1)));
  return AffinePerm::from_window(std::move(w));
}

inline AffinePerm inverse(const AffinePerm& w) {
  const int n = w.rank();
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const long x = w.window()[static_cast<std::size_t>(i)];
    const long k = floor_div(x - 1, n);
    v[static_cast<std::size_t>(x - 1 - k * n)] = static_cast<int>(i + 1 - k * n);
  }
  return AffinePerm::from_window(std::move(v));
}

inline std::vector<int> mask_to_list(std::uint64_t m) {
  std::vector<int> out;
  for (int i = 0; i < 64; ++i)
    if (m >> i & 1U) out.push_back(i);
  return out;
}

inline std::vector<int> descents(const AffinePerm& w, Side side) {
  return mask_to_list(side == Side::right ? w.right_descent_mask() : w.left_descent_mask());
}

// Reduced word by stripping the smallest right descent.
inline std::vector<int> reduced_word(AffinePerm w) {
  std::vector<int> word;
  while (true) {
    const std::uint64_t d = w.right_descent_mask();
    if (d == 0) break;
    const int s = std::countr_zero(d);
    word.push_back(s);
    w.rmul_inplace(s);
  }
  std::reverse(word.begin(), word.end());
  return word;
}

inline bool bruhat_leq(AffinePerm x, AffinePerm y) {
  check_same_rank(x, y);
  int lx = x.length();
  int ly = y.length();
  while (true) {
    if (lx > ly) return false;
    if (lx == ly) return x == y;
    if (lx == 0) return true;
    const int s = std::countr_zero(y.right_descent_mask());
    y.rmul_inplace(s);
    --ly;
    if (x.has_right_descent(s)) {
      x.rmul_inplace(s);
      --lx;
    }
  }
}

// Elements z with z < w and l(z) = l(w) - 1, as w t for affine reflections t.
inline std::vector<AffinePerm> bruhat_down_covers(const AffinePerm& w) {
  const int n = w.rank();
  std::vector<AffinePerm> out;
  if (n == 1) return out;
  const long horizon = static_cast<long>(n) * (w.length() + 2);
  for (long i = 1; i <= n; ++i) {
    const long wi = w(i);
    for (long j = i + 1; j <= i + horizon; ++j) {
      if ((j - i) % n == 0) continue;
      const long wj = w(j);
      if (wi <= wj) continue;
      bool gap = true;
      for (long k = i + 1; k < j && gap; ++k) {
        const long wk = w(k);
        if (wk < wi && wk > wj) gap = false;
      }
      if (!gap) continue;
      std::vector<int> z = w.window();
      const long kj = floor_div(j - 1, n);
      const long rj = j - 1 - kj * n;
      z[static_cast<std::size_t>(i - 1)] = static_cast<int>(wj);
      z[static_cast<std::size_t>(rj)] = static_cast<int>(wi - kj * n);
      out.push_back(AffinePerm::from_window(std::move(z)));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Orders by length, then window.
struct LengthLess {
  bool operator()(const AffinePerm& a, const AffinePerm& b) const {
    const int la = a.length();
    const int lb = b.length();
    return la != lb ? la < lb : a < b;
  }
};

// Downward closure of y under covers; memoized per top element.
class IntervalCache {
 public:
  const std::vector<AffinePerm>& lower(const AffinePerm& y) {
    auto it = memo_.find(y);
    if (it != memo_.end()) return it->second;
    std::set<AffinePerm> seen{y};
    std::deque<AffinePerm> queue{y};
    while (!queue.empty()) {
      AffinePerm z = queue.front();
      queue.pop_front();
      for (auto& c : bruhat_down_covers(z))
        if (seen.insert(c).second) queue.push_back(c);
    }
    std::vector<AffinePerm> v(seen.begin(), seen.end());
    std::sort(v.begin(), v.end(), LengthLess{});
    return memo_.emplace(y, std::move(v)).first->second;
  }

 private:
  std::unordered_map<AffinePerm, std::vector<AffinePerm>, PermHash> memo_;
};

inline std::vector<AffinePerm> lower_interval(const AffinePerm& y) {
  IntervalCache c;
  return c.lower(y);
}

class ParabolicSubset {
 public:
  ParabolicSubset() = default;
  ParabolicSubset(int rank, std::vector<int> gens) : rank_(rank), gens_(std::move(gens)) {
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    for (int g : gens_)
      if (g < 0 || g >= rank_) throw std::out_of_range("parabolic generator out of range");
  }

  int rank() const { return rank_; }
  const std::vector<int>& gens() const { return gens_; }
  bool contains(int i) const { return std::binary_search(gens_.begin(), gens_.end(), i); }
  bool empty() const { return gens_.empty(); }
  std::uint64_t mask() const {
    std::uint64_t m = 0;
    for (int g : gens_) m |= std::uint64_t{1} << g;
    return m;
  }

  // Any proper subset of the cyclic Dynkin diagram generates a finite group.
  bool is_finite() const { return rank_ == 1 || static_cast<int>(gens_.size()) < rank_; }
  void require_finite() const {
    if (!is_finite()) throw infinite_parabolic("parabolic subgroup generated by all simple reflections is infinite");
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(gens_[i]);
    }
    return s;
  }

  friend bool operator==(const ParabolicSubset&, const ParabolicSubset&) = default;

 private:
  int rank_ = 1;
  std::vector<int> gens_;
};

// All elements of W_f, sorted by length then window.
inline std::vector<AffinePerm> parabolic_elements(const ParabolicSubset& f) {
  f.require_finite();
  std::set<AffinePerm> seen{AffinePerm(f.rank())};
  std::deque<AffinePerm> queue{AffinePerm(f.rank())};
  while (!queue.empty()) {
    AffinePerm z = queue.front();
    queue.pop_front();
    if (f.rank() == 1) break;
    for (int g : f.gens()) {
      AffinePerm zs = z.rmul(g);
      if (seen.insert(zs).second) queue.push_back(zs);
    }
  }
  std::vector<AffinePerm> v(seen.begin(), seen.end());
  std::sort(v.begin(), v.end(), LengthLess{});
  return v;
}

inline AffinePerm longest_element(const ParabolicSubset& f) {
  f.require_finite();
  AffinePerm w(f.rank());
  if (f.rank() == 1) return w;
  for (bool grew = true; grew;) {
    grew = false;
    for (int g : f.gens())
      if (!w.has_right_descent(g)) {
        w.rmul_inplace(g);
        grew = true;
      }
  }
  return w;
}

// Strips left descents in f; returns the shortest element of W_f w and l(c) for w = c w'.
inline std::pair<AffinePerm, int> strip_left_descents(AffinePerm w, const ParabolicSubset& f) {
  int c = 0;
  for (bool moved = true; moved;) {
    moved = false;
    for (int g : f.gens())
      if (w.has_left_descent(g)) {
        w.lmul_inplace(g);
        ++c;
        moved = true;
      }
  }
  return {w, c};
}

inline bool is_min_rep(const AffinePerm& w, const ParabolicSubset& f, Side side) {
  const std::uint64_t d = side == Side::right ? w.right_descent_mask() : w.left_descent_mask();
  return (d & f.mask()) == 0;
}

// Shortest or longest element of w W_f (right) or W_f w (left).
inline AffinePerm coset_rep(AffinePerm w, const ParabolicSubset& f, Side side, Extremum ext) {
  check_same_rank(w, AffinePerm(f.rank()));
  f.require_finite();
  if (w.rank() == 1) return w;
  const bool want_descent = ext == Extremum::min;
  for (bool moved = true; moved;) {
    moved = false;
    for (int g : f.gens()) {
      const bool d = side == Side::right ? w.has_right_descent(g) : w.has_left_descent(g);
      if (d == want_descent) {
        if (side == Side::right)
          w.rmul_inplace(g);
        else
          w.lmul_inplace(g);
        moved = true;
      }
    }
  }
  return w;
}

// Minimal representatives (no descent in f on the given side) up to max_length,
// sorted by length then window. Grows by multiplication on the opposite side,
// which keeps minimality of prefixes.
inline std::vector<AffinePerm> enumerate_min_reps(const ParabolicSubset& f, Side side, int max_length) {
  f.require_finite();
  const int n = f.rank();
  std::vector<AffinePerm> layer{AffinePerm(n)};
  std::vector<AffinePerm> out = layer;
  for (int len = 1; len <= max_length && n > 1; ++len) {
    std::set<AffinePerm> next;
    for (const auto& w : layer)
      for (int s = 0; s < n; ++s) {
        AffinePerm z = side == Side::left ? w.rmul(s) : w.lmul(s);
        if (z.length() == len && is_min_rep(z, f, side)) next.insert(z);
      }
    layer.assign(next.begin(), next.end());
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

// All elements of length <= max_length.
inline std::vector<AffinePerm> elements_up_to(int rank, int max_length) {
  return enumerate_min_reps(ParabolicSubset(rank, {}), Side::left, max_length);
}

inline std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::string s;
  for (char c : text)
    if (c != '[' && c != ']' && c != ' ') s += c;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad integer '" + item + "'");
    }
    if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
    out.push_back(v);
  }
  return out;
}

inline std::string format_word(const std::vector<int>& word) {
  std::string s;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(word[i]);
  }
  return s;
}

inline AffinePerm parse_window(std::string_view s) { return AffinePerm::from_window(parse_int_list(s)); }

}  // namespace kld

#endif  // KLDECOMP_COXETER_HPP
