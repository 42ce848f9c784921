#ifndef KLDECOMP_QUOTIENT_HPP
#define KLDECOMP_QUOTIENT_HPP

// Kazhdan-Lusztig polynomials of the left quotient Q = {t : no left descent in nu},
// computed in the right module with basis M_t = \underline{H}_{w_nu} H_t.
// m(t, x) = h_{w_nu t, w_nu x}; nothing outside Q is ever enumerated, which keeps
// deep elements of large rank tractable.

#include "kldecomp/coxeter.hpp"
#include "kldecomp/hecke.hpp"
#include "kldecomp/laurent.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace kld {

class QuotientKL {
 public:
  using Id = int;

  QuotientKL(int rank, ParabolicSubset nu) : rank_(rank), nu_(std::move(nu)), nu_mask_(nu_.mask()) {
    if (nu_.rank() != rank_) throw rank_mismatch("parabolic rank mismatch");
    nu_.require_finite();
    longest_nu_length_ = longest_element(nu_).length();
  }

  int rank() const { return rank_; }
  const ParabolicSubset& nu() const { return nu_; }
  int longest_nu_length() const { return longest_nu_length_; }

  bool in_quotient(const AffinePerm& w) const { return (w.left_descent_mask() & nu_mask_) == 0; }

  Id intern(const AffinePerm& w) {
    if (auto it = ids_.find(w); it != ids_.end()) return it->second;
    if (!in_quotient(w)) throw not_minimal_rep(w.str() + " has a left descent in {" + nu_.str() + "}");
    const Id k = static_cast<Id>(els_.size());
    ids_.emplace(w, k);
    els_.push_back(w);
    len_.push_back(w.length());
    rdesc_.push_back(w.right_descent_mask());
    rmul_.insert(rmul_.end(), static_cast<std::size_t>(rank_), kUnknown);
    covers_.emplace_back();
    covers_done_.push_back(false);
    return k;
  }

  const AffinePerm& element(Id i) const { return els_[static_cast<std::size_t>(i)]; }
  int length(Id i) const { return len_[static_cast<std::size_t>(i)]; }
  std::size_t size() const { return els_.size(); }

  // m_{t,x}
  LaurentPoly m(Id t, Id x) {
    if (t == x) return LaurentPoly(1);
    if (!leq(t, x)) return {};
    const std::uint64_t key = pack(t, x);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    LaurentPoly res = compute_m(t, x);
    memo_.emplace(key, res);
    return res;
  }

  LaurentPoly m(const AffinePerm& t, const AffinePerm& x) { return m(intern(t), intern(x)); }

  // m^{x,y}: signed inverse of the m-matrix over [y, x] in Q.
  LaurentPoly minv(Id x, Id y) {
    if (x == y) return LaurentPoly(1);
    if (!leq(y, x)) return {};
    const std::uint64_t key = pack(x, y);
    if (auto it = inv_memo_.find(key); it != inv_memo_.end()) return it->second;
    const std::vector<Id> iv = interval(y, x);
    LaurentPoly acc;
    for (Id z : iv) {
      if (z == x) continue;
      const LaurentPoly a = m(z, x);
      if (a.is_zero()) continue;
      acc.axpy(bigint(-parity_sign(length(x) + length(z))), a * minv(z, y));
    }
    inv_memo_.emplace(key, acc);
    return acc;
  }

  // h_{u, w_nu x0} for any u and x0 in Q, via u = c t0 with c in W_nu.
  LaurentPoly h_top(const AffinePerm& u, Id x0) {
    auto [t0, c] = strip_left_descents(u, nu_);
    return m(intern(t0), x0).shifted(longest_nu_length_ - c);
  }

  // Hint that upcoming queries m(t, x) mostly have t >= f. Partner searches
  // then start from f (or f s) instead of from each t.
  void set_floor(Id f) {
    floors_ = {f};
    for (int s = 0; s < rank_; ++s)
      if (has_descent(f, s))
        if (Id fs = rmul(f, s); fs != kOutside) floors_.push_back(fs);
  }

  bool leq(Id a, Id b) {
    if (a == b) return true;
    if (length(a) >= length(b)) return false;
    Id x = a;
    Id y = b;
    bool r = false;
    while (true) {
      const int lx = length(x);
      const int ly = length(y);
      if (lx > ly) break;
      if (lx == ly) {
        r = x == y;
        break;
      }
      if (lx == 0) {
        r = true;
        break;
      }
      const int s = std::countr_zero(rdesc_[static_cast<std::size_t>(y)]);
      y = rmul(y, s);
      if (rdesc_[static_cast<std::size_t>(x)] >> s & 1U) x = rmul(x, s);
    }
    return r;
  }

  // [t, v] in Q, v first, by breadth-first search along covers inside Q.
  // Requires t <= v.
  std::vector<Id> interval(Id t, Id v) {
    std::vector<Id> res{v};
    ++stamp_;
    mark(v);
    for (std::size_t head = 0; head < res.size(); ++head) {
      const Id z = res[head];
      if (length(z) <= length(t) + 1) continue;
      for (Id c : covers(z)) {
        if (marked(c) || !leq(t, c)) continue;
        mark(c);
        res.push_back(c);
      }
    }
    if (t != v && length(t) < length(v) && !marked(t)) res.push_back(t);
    return res;
  }

  PolyTable export_table() const {
    PolyTable rows;
    rows.reserve(memo_.size());
    for (const auto& [key, p] : memo_)
      rows.emplace_back(element(static_cast<Id>(key >> 32)), element(static_cast<Id>(key & 0xffffffffU)), p);
    return rows;
  }

  void import_table(const PolyTable& rows) {
    for (const auto& [t, x, p] : rows) {
      check_same_rank(t, AffinePerm(rank_));
      memo_.emplace(pack(intern(t), intern(x)), p);
    }
  }

  std::size_t memo_size() const { return memo_.size(); }

 private:
  static constexpr Id kUnknown = -2;
  static constexpr Id kOutside = -1;

  static std::uint64_t pack(Id a, Id b) {
    return static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32 | static_cast<std::uint32_t>(b);
  }

  // id of w s, or kOutside when w s leaves Q.
  Id rmul(Id w, int s) {
    const std::size_t slot = static_cast<std::size_t>(w) * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(s);
    Id r = rmul_[slot];
    if (r != kUnknown) return r;
    const AffinePerm ws = element(w).rmul(s);
    r = in_quotient(ws) ? intern(ws) : kOutside;
    rmul_[slot] = r;
    return r;
  }

  const std::vector<Id>& covers(Id z) {
    const auto zi = static_cast<std::size_t>(z);
    if (!covers_done_[zi]) {
      std::vector<Id> out;
      for (const auto& c : bruhat_down_covers(element(z)))
        if (in_quotient(c)) out.push_back(intern(c));
      covers_[zi] = std::move(out);
      covers_done_[zi] = true;
    }
    return covers_[zi];
  }

  void mark(Id z) {
    const auto zi = static_cast<std::size_t>(z);
    if (seen_.size() <= zi) seen_.resize(els_.size() + 1, 0);
    seen_[zi] = stamp_;
  }
  bool marked(Id z) const {
    const auto zi = static_cast<std::size_t>(z);
    return zi < seen_.size() && seen_[zi] == stamp_;
  }

  bool has_descent(Id w, int s) const { return rdesc_[static_cast<std::size_t>(w)] >> s & 1U; }

  LaurentPoly compute_m(Id t, Id x) {
    const std::uint64_t xd = rdesc_[static_cast<std::size_t>(x)];
    int pick = -1;
    for (int s = 0; s < rank_; ++s) {
      if (!(xd >> s & 1U)) continue;
      if (!has_descent(t, s)) {
        const Id ts = rmul(t, s);
        if (ts != kOutside) return m(ts, x).shifted(1);
      }
      if (pick < 0) pick = s;
    }
    const int s = pick;
    const Id v = rmul(x, s);
    LaurentPoly res;
    if (has_descent(t, s)) {
      res = m(rmul(t, s), v) + m(t, v).shifted(-1);
    } else {
      const LaurentPoly base = m(t, v);
      res = base.shifted(1) + base.shifted(-1);
    }
    if (!leq(t, v)) return res;
    for (const auto& [y, mu] : mu_list(t, v, s))
      if (leq(t, y)) res.axpy(-mu, m(t, y));
    return res;
  }

  // Elements of Q below v seen so far, with the mu(y, v) != 0 partners among
  // them that have s as a descent (or leave Q under s).
  struct Partners {
    std::unordered_set<Id> region;
    std::vector<Id> odd;
    std::vector<std::size_t> scanned;
    std::vector<std::vector<std::pair<Id, bigint>>> by_s;
  };

  const std::vector<std::pair<Id, bigint>>& mu_list(Id t, Id v, int s) {
    const auto vi = static_cast<std::size_t>(v);
    if (partners_.size() <= vi) partners_.resize(els_.size());
    if (!partners_[vi]) {
      partners_[vi] = std::make_unique<Partners>();
      partners_[vi]->scanned.assign(static_cast<std::size_t>(rank_), 0);
      partners_[vi]->by_s.resize(static_cast<std::size_t>(rank_));
    }
    Partners& p = *partners_[vi];
    if (!p.region.count(t)) {
      Id low = t;
      for (Id f : floors_)
        if (leq(f, t)) {
          low = f;
          break;
        }
      for (Id y : interval(low, v))
        if (p.region.insert(y).second && (length(v) - length(y)) % 2 == 1) p.odd.push_back(y);
    }
    const auto si = static_cast<std::size_t>(s);
    for (; p.scanned[si] < p.odd.size(); ++p.scanned[si]) {
      const Id y = p.odd[p.scanned[si]];
      if (!has_descent(y, s) && rmul(y, s) != kOutside) continue;
      bigint mu = m(y, v).coeff(1);
      if (mu != 0) p.by_s[si].emplace_back(y, std::move(mu));
    }
    return p.by_s[si];
  }

  std::vector<std::unique_ptr<Partners>> partners_;
  std::vector<Id> floors_;

  int rank_;
  ParabolicSubset nu_;
  std::uint64_t nu_mask_;
  int longest_nu_length_ = 0;

  std::vector<AffinePerm> els_;
  std::unordered_map<AffinePerm, Id, PermHash> ids_;
  std::vector<int> len_;
  std::vector<std::uint64_t> rdesc_;
  std::vector<Id> rmul_;
  std::vector<std::vector<Id>> covers_;
  std::vector<bool> covers_done_;

  std::unordered_map<std::uint64_t, LaurentPoly> memo_;
  std::unordered_map<std::uint64_t, LaurentPoly> inv_memo_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t stamp_ = 0;
  std::unordered_map<std::uint64_t, std::vector<Id>> interval_memo_;
};

// Inverse of the m-matrix restricted to S = {w in Q : w shortest in w W_mu}.
// For x0, y0 in S the entries m^{x0 c, y0} (c in W_mu) are q^{l(c)} m^{x0, y0},
// so folding each column of m over right W_mu cosets with weight (-q)^{l(c)}
// gives a matrix on S whose signed inverse is m^{x0, y0} itself.
class SingularInverse {
 public:
  using Id = QuotientKL::Id;

  SingularInverse(QuotientKL& eng, ParabolicSubset mu) : eng_(eng), mu_(std::move(mu)), mu_mask_(mu_.mask()) {
    if (mu_.rank() != eng_.rank()) throw rank_mismatch("parabolic rank mismatch");
    mu_.require_finite();
  }

  bool in_domain(Id w) const { return (eng_.element(w).right_descent_mask() & mu_mask_) == 0; }

  // m^{x0, y0}
  LaurentPoly operator()(Id x0, Id y0) {
    if (!in_domain(x0) || !in_domain(y0)) throw not_minimal_rep("argument is not shortest in its coset mod {" + mu_.str() + "}");
    return solve(x0, y0);
  }

 private:
  static std::uint64_t pack(Id a, Id b) {
    return static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32 | static_cast<std::uint32_t>(b);
  }

  // Folded column of x0 over [y0, x0]: entries A(w, x0), w in S.
  const std::vector<std::pair<Id, LaurentPoly>>& column(Id y0, Id x0) {
    const std::uint64_t key = pack(y0, x0);
    if (auto it = cols_.find(key); it != cols_.end()) return it->second;
    eng_.set_floor(y0);
    std::map<Id, LaurentPoly> acc;
    for (Id t : eng_.interval(y0, x0)) {
      auto [w, c] = strip_right(eng_.element(t));
      const Id wi = eng_.intern(w);
      if (wi == x0) continue;
      acc[wi] += neg_q_pow(c) * eng_.m(t, x0);
    }
    std::vector<std::pair<Id, LaurentPoly>> col;
    for (auto& [w, p] : acc)
      if (!p.is_zero()) col.emplace_back(w, std::move(p));
    return cols_.emplace(key, std::move(col)).first->second;
  }

  std::pair<AffinePerm, int> strip_right(AffinePerm w) const {
    int c = 0;
    for (std::uint64_t d; (d = w.right_descent_mask() & mu_mask_) != 0; ++c) w.rmul_inplace(std::countr_zero(d));
    return {std::move(w), c};
  }

  LaurentPoly solve(Id x0, Id y0) {
    if (x0 == y0) return LaurentPoly(1);
    if (!eng_.leq(y0, x0)) return {};
    const std::uint64_t key = pack(x0, y0);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    LaurentPoly res;
    for (const auto& [w, a] : column(y0, x0)) {
      if (!eng_.leq(y0, w)) continue;
      res.axpy(bigint(-parity_sign(eng_.length(x0) + eng_.length(w))), a * solve(w, y0));
    }
    memo_.emplace(key, res);
    return res;
  }

  QuotientKL& eng_;
  ParabolicSubset mu_;
  std::uint64_t mu_mask_;
  std::unordered_map<std::uint64_t, std::vector<std::pair<Id, LaurentPoly>>> cols_;
  std::unordered_map<std::uint64_t, LaurentPoly> memo_;
};

}  // namespace kld

#endif  // KLDECOMP_QUOTIENT_HPP
