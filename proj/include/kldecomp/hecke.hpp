#ifndef KLDECOMP_HECKE_HPP
#define KLDECOMP_HECKE_HPP

#include "kldecomp/coxeter.hpp"
#include "kldecomp/laurent.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kld {

// Finite sum of p_w H_w over the affine symmetric group of a fixed rank.
// Normalization: H_s^2 = 1 + (q^-1 - q) H_s.
class HeckeElement {
 public:
  using Terms = std::map<AffinePerm, LaurentPoly>;

  explicit HeckeElement(int rank = 1) : rank_(rank) {}
  static HeckeElement basis(const AffinePerm& w, LaurentPoly c = LaurentPoly(1)) {
    HeckeElement h(w.rank());
    h.add(w, c);
    return h;
  }

  int rank() const { return rank_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  LaurentPoly coeff(const AffinePerm& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? LaurentPoly() : it->second;
  }

  void add(const AffinePerm& w, const LaurentPoly& c) {
    check_same_rank(w, AffinePerm(rank_));
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  HeckeElement& operator+=(const HeckeElement& b) {
    for (const auto& [w, c] : b.terms_) add(w, c);
    return *this;
  }
  HeckeElement& operator-=(const HeckeElement& b) {
    for (const auto& [w, c] : b.terms_) add(w, -c);
    return *this;
  }
  HeckeElement& operator*=(const LaurentPoly& k) {
    if (k.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, c] : terms_) c = c * k;
    return *this;
  }

  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }
  friend HeckeElement operator*(HeckeElement a, const LaurentPoly& k) { return a *= k; }
  friend bool operator==(const HeckeElement&, const HeckeElement&) = default;

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.str() + ")H" + w.str();
    }
    return s;
  }

 private:
  int rank_;
  Terms terms_;
};

// a * H_s (right) or H_s * a (left).
inline HeckeElement mul_simple(const HeckeElement& a, int i, Side side) {
  AffinePerm(a.rank()).check_gen(i);
  HeckeElement r(a.rank());
  const LaurentPoly quad = LaurentPoly::q(-1) - LaurentPoly::q(1);
  for (const auto& [w, c] : a.terms()) {
    const bool down = side == Side::right ? w.has_right_descent(i) : w.has_left_descent(i);
    const AffinePerm ws = side == Side::right ? w.rmul(i) : w.lmul(i);
    r.add(ws, c);
    if (down) r.add(w, c * quad);
  }
  return r;
}

// Product a * b, expanding each H_w of b along a reduced word.
inline HeckeElement operator*(const HeckeElement& a, const HeckeElement& b) {
  if (a.rank() != b.rank()) throw rank_mismatch("rank mismatch");
  HeckeElement r(a.rank());
  for (const auto& [w, c] : b.terms()) {
    HeckeElement t = a;
    for (int s : reduced_word(w)) t = mul_simple(t, s, Side::right);
    r += t * c;
  }
  return r;
}

// bar(H_w) = (H_{w^-1})^-1 = product of (H_s + q - q^-1) along a reduced word of w.
inline HeckeElement bar(const HeckeElement& a) {
  HeckeElement r(a.rank());
  const LaurentPoly shift = LaurentPoly::q(1) - LaurentPoly::q(-1);
  for (const auto& [w, c] : a.terms()) {
    HeckeElement t = HeckeElement::basis(AffinePerm(a.rank()), c.bar());
    for (int s : reduced_word(w)) {
      HeckeElement u = mul_simple(t, s, Side::right);
      u += t * shift;
      t = std::move(u);
    }
    r += t;
  }
  return r;
}

// One line per entry: "window|window|poly".
using PolyTable = std::vector<std::tuple<AffinePerm, AffinePerm, LaurentPoly>>;

inline PolyTable load_poly_table(const std::filesystem::path& file) {
  PolyTable out;
  std::ifstream in(file);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto a = line.find('|');
    const auto b = line.find('|', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos)
      throw parse_error("bad cache line in " + file.string() + ": " + line);
    out.emplace_back(parse_window(line.substr(0, a)), parse_window(line.substr(a + 1, b - a - 1)),
                     parse_poly(line.substr(b + 1)));
  }
  return out;
}

// Writes to a temporary file and renames, so readers never see partial output.
inline void save_poly_table(const std::filesystem::path& file, PolyTable rows) {
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<1>(a), std::get<0>(a)) < std::tie(std::get<1>(b), std::get<0>(b));
  });
  std::filesystem::create_directories(file.parent_path());
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    for (const auto& [x, y, p] : rows) out << x.str() << '|' << y.str() << '|' << p.str() << '\n';
    if (!out) throw std::runtime_error("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, file);
}

// Kazhdan-Lusztig data on the whole group, memoized per top element.
// Not thread-safe; give each worker its own engine.
class KLEngine {
 public:
  explicit KLEngine(int rank) : rank_(rank) {}

  int rank() const { return rank_; }

  // \underline{H}_x = sum_y h_{y,x} H_y, built from \underline{H}_{xs} \underline{H}_s
  // minus mu-corrections.
  const HeckeElement& kl_basis(const AffinePerm& x) {
    check_same_rank(x, AffinePerm(rank_));
    if (auto it = basis_.find(x); it != basis_.end()) return it->second;
    HeckeElement c(rank_);
    if (x.is_identity()) {
      c.add(x, LaurentPoly(1));
    } else {
      const int s = std::countr_zero(x.right_descent_mask());
      const AffinePerm xs = x.rmul(s);
      const HeckeElement prev = kl_basis(xs);
      c = mul_simple(prev, s, Side::right) + prev * LaurentPoly::q(1);
      for (const auto& [z, p] : prev.terms()) {
        if (z == xs || !z.has_right_descent(s)) continue;
        const bigint mu = p.coeff(1);
        if (mu == 0) continue;
        c -= kl_basis(z) * LaurentPoly(mu);
      }
    }
    return basis_.emplace(x, std::move(c)).first->second;
  }

  // h_{y,x}
  LaurentPoly h(const AffinePerm& y, const AffinePerm& x) {
    check_same_rank(x, y);
    return kl_basis(x).coeff(y);
  }

  // h^{x,y}: inverse of the signed h-matrix, solved over the support of \underline{H}_x.
  LaurentPoly hinv(const AffinePerm& x, const AffinePerm& y) {
    check_same_rank(x, y);
    if (x == y) return LaurentPoly(1);
    if (!bruhat_leq(y, x)) return {};
    const auto key = std::make_pair(x, y);
    if (auto it = hinv_.find(key); it != hinv_.end()) return it->second;
    const int lx = x.length();
    LaurentPoly acc;
    const HeckeElement cx = kl_basis(x);
    for (const auto& [z, p] : cx.terms()) {
      if (z == x || !bruhat_leq(y, z)) continue;
      acc.axpy(bigint(-parity_sign(lx + z.length())), p * hinv(z, y));
    }
    return hinv_.emplace(key, std::move(acc)).first->second;
  }

  // n_{x,y} = sum_{z in W_f} (-q)^{l(z)} h_{zx,y}
  LaurentPoly n(const AffinePerm& x, const AffinePerm& y, const ParabolicSubset& f) {
    require_min(x, f);
    require_min(y, f);
    LaurentPoly acc;
    for (const auto& z : parabolic_elements(f)) acc += neg_q_pow(z.length()) * h(compose(z, x), y);
    return acc;
  }

  // n^{x,y}, by inversion over minimal representatives below x.
  LaurentPoly ninv(const AffinePerm& x, const AffinePerm& y, const ParabolicSubset& f) {
    require_min(x, f);
    require_min(y, f);
    if (x == y) return LaurentPoly(1);
    if (!bruhat_leq(y, x)) return {};
    auto key = std::make_tuple(x, y, f.mask());
    if (auto it = ninv_.find(key); it != ninv_.end()) return it->second;
    const int lx = x.length();
    LaurentPoly acc;
    for (const auto& z : intervals_.lower(x)) {
      if (z == x || !is_min_rep(z, f, Side::left) || !bruhat_leq(y, z)) continue;
      acc.axpy(bigint(-parity_sign(lx + z.length())), n(z, x, f) * ninv(z, y, f));
    }
    return ninv_.emplace(std::move(key), std::move(acc)).first->second;
  }

  const std::vector<AffinePerm>& lower_interval(const AffinePerm& x) { return intervals_.lower(x); }

  PolyTable export_table() const {
    PolyTable rows;
    for (const auto& [x, c] : basis_)
      for (const auto& [y, p] : c.terms()) rows.emplace_back(y, x, p);
    return rows;
  }

  // Rows must list every nonzero h_{y,x} of each x they mention.
  void import_table(const PolyTable& rows) {
    std::map<AffinePerm, HeckeElement> grouped;
    for (const auto& [y, x, p] : rows) {
      check_same_rank(x, AffinePerm(rank_));
      grouped.try_emplace(x, rank_).first->second.add(y, p);
    }
    for (auto& [x, c] : grouped) basis_.try_emplace(x, std::move(c));
  }

 private:
  static void require_min(const AffinePerm& x, const ParabolicSubset& f) {
    check_same_rank(x, AffinePerm(f.rank()));
    f.require_finite();
    if (!is_min_rep(x, f, Side::left))
      throw not_minimal_rep(x.str() + " has a left descent in {" + f.str() + "}");
  }

  struct PairHash {
    std::size_t operator()(const std::pair<AffinePerm, AffinePerm>& p) const {
      std::size_t h = PermHash{}(p.first);
      boost::hash_combine(h, PermHash{}(p.second));
      return h;
    }
  };

  int rank_;
  std::unordered_map<AffinePerm, HeckeElement, PermHash> basis_;
  std::unordered_map<std::pair<AffinePerm, AffinePerm>, LaurentPoly, PairHash> hinv_;
  std::map<std::tuple<AffinePerm, AffinePerm, std::uint64_t>, LaurentPoly> ninv_;
  IntervalCache intervals_;
};

}  // namespace kld

#endif  // KLDECOMP_HECKE_HPP
