#ifndef KLDECOMP_DECOMP_HPP
#define KLDECOMP_DECOMP_HPP

#include "kldecomp/coxeter.hpp"
#include "kldecomp/hecke.hpp"
#include "kldecomp/laurent.hpp"
#include "kldecomp/multipartitions.hpp"
#include "kldecomp/quotient.hpp"
#include "kldecomp/weights.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace kld {

struct invariant_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Coeffs = std::map<AffinePerm, LaurentPoly>;
using PolyMatrix = std::vector<std::vector<LaurentPoly>>;

// ---- Whole-group formulas. Exact, but only practical for short elements. ----

inline LaurentPoly verma_decomp(KLEngine& eng, const AffinePerm& x, const AffinePerm& y) { return eng.hinv(x, y); }

// sum_{z in W_nu} (-q)^{l(z)} h^{zx,y}
inline LaurentPoly parabolic_verma_decomp(KLEngine& eng, const AffinePerm& x, const AffinePerm& y,
                                          const ParabolicSubset& nu) {
  check_same_rank(x, y);
  LaurentPoly acc;
  for (const auto& z : parabolic_elements(nu)) acc += neg_q_pow(z.length()) * eng.hinv(compose(z, x), y);
  return acc;
}

inline LaurentPoly truncated_verma_decomp(KLEngine& eng, const AffinePerm& x, const AffinePerm& y) {
  return eng.h(x, y);
}

inline LaurentPoly truncated_parabolic_decomp(KLEngine& eng, const AffinePerm& x, const AffinePerm& y,
                                              const ParabolicSubset& mu) {
  return eng.n(x, y, mu);
}

// Elements of [y, x] that are longest in their left W_nu coset must all be present.
inline void require_closed(KLEngine& eng, const AffinePerm& x, const std::vector<AffinePerm>& interval,
                           const ParabolicSubset& nu) {
  const std::set<AffinePerm> have(interval.begin(), interval.end());
  if (!have.count(x)) throw std::invalid_argument("interval not closed: top element missing");
  for (const auto& z : eng.lower_interval(x)) {
    if ((z.left_descent_mask() & nu.mask()) != nu.mask()) continue;
    bool above_member = false;
    for (const auto& y : interval)
      if (bruhat_leq(y, z)) {
        above_member = true;
        break;
      }
    if (above_member && !have.count(z)) throw std::invalid_argument("interval not closed: missing " + z.str());
  }
}

// [L(x)] in the parabolic Verma basis, trivial mu.
inline Coeffs simple_into_vermas(KLEngine& eng, const AffinePerm& x, const std::vector<AffinePerm>& interval,
                                 const ParabolicSubset& nu) {
  require_closed(eng, x, interval, nu);
  const AffinePerm xi = inverse(x);
  Coeffs out;
  for (const auto& y : interval) {
    LaurentPoly c = eng.h(inverse(y), xi);
    if (c.is_zero()) continue;
    out.emplace(y, c * bigint(parity_sign(x.length() + y.length())));
  }
  return out;
}

// [L(x)] in the parabolic Verma basis for a singular anchor with stabilizer mu.
inline Coeffs simple_into_parabolic_vermas(KLEngine& eng, const AffinePerm& x, const ParabolicSubset& mu,
                                           const ParabolicSubset& nu, const std::vector<AffinePerm>& interval) {
  auto check = [&](const AffinePerm& w) {
    if (!is_min_rep(w, mu, Side::right))
      throw not_minimal_rep(w.str() + " is not shortest in its coset mod {" + mu.str() + "}");
    if ((w.left_descent_mask() & nu.mask()) != nu.mask())
      throw std::invalid_argument(w.str() + " is not longest in its left coset mod {" + nu.str() + "}");
  };
  check(x);
  const AffinePerm xi = inverse(x);
  Coeffs out;
  for (const auto& y : interval) {
    check(y);
    LaurentPoly c = eng.n(inverse(y), xi, mu);
    if (c.is_zero()) continue;
    out.emplace(y, c * bigint(parity_sign(x.length() + y.length())));
  }
  return out;
}

// Reindex by inversion and substitute q -> -q^-1.
inline Coeffs koszul_coefficient_transform(const Coeffs& in) {
  Coeffs out;
  for (const auto& [w, c] : in) out.emplace(inverse(w), c.koszul_twist());
  return out;
}

// ---- Block pipeline on the quotient engine. ----

struct BlockLabel {
  Multipartition lam;
  WeylLabel weyl;
  AffinePerm x0;  // weyl.w = w_nu x0
};

struct BlockData {
  Charge chg;
  Block d;
  std::vector<int> m;
  LinkageContext ctx;
  ShiftedWeight o;
  ParabolicSubset mu;
  std::vector<BlockLabel> labels;  // display order
};

inline BlockData prepare_block(const Charge& chg, const Block& d, std::optional<std::vector<int>> m_override = {}) {
  const int n = block_size(d);
  BlockData b;
  b.chg = chg;
  b.d = d;
  b.m = m_override ? *m_override : choose_m(chg, n);
  check_m(chg, b.m, n);
  b.ctx = LinkageContext(total(b.m), chg.e, nu_from_m(b.m));
  const int wnu = longest_element(b.ctx.nu).length();
  auto lams = enumerate_block(chg, d);
  if (lams.empty()) throw std::invalid_argument("block " + block_str(d) + " is empty");
  for (auto& lam : lams) {
    WeylLabel wl = to_weyl(lam, b.ctx, chg, b.m);
    if (b.labels.empty()) {
      b.o = wl.o;
      b.mu = wl.mu;
    } else if (!(wl.o == b.o) || !(wl.mu == b.mu)) {
      throw invariant_violation("labels " + b.labels.front().lam.str() + " and " + lam.str() +
                                " have different antidominant anchors");
    }
    if (!is_nu_dominant(b.ctx, wl.target))
      throw invariant_violation("weight " + wl.target.str() + " of " + lam.str() + " is not nu-dominant");
    auto [x0, c] = strip_left_descents(wl.w, b.ctx.nu);
    if (c != wnu)
      throw invariant_violation("label " + lam.str() + " is not longest in its W_nu coset");
    b.labels.push_back({std::move(lam), std::move(wl), std::move(x0)});
  }
  // Length is a linear extension of the Bruhat order; ties by weight, descending.
  std::sort(b.labels.begin(), b.labels.end(), [](const BlockLabel& a, const BlockLabel& c) {
    const int la = a.weyl.w.length();
    const int lc = c.weyl.w.length();
    if (la != lc) return la < lc;
    return a.weyl.target.entries > c.weyl.target.entries;
  });
  return b;
}

inline QuotientKL make_engine(const BlockData& b) { return QuotientKL(b.ctx.N, b.ctx.nu); }

// D[i][j] = [Delta(lambda_i) : L(lambda_j)]_q = m^{x0_i, x0_j}.
inline PolyMatrix decomposition_matrix(QuotientKL& eng, const BlockData& b) {
  const std::size_t L = b.labels.size();
  std::vector<QuotientKL::Id> ids;
  for (const auto& lab : b.labels) ids.push_back(eng.intern(lab.x0));
  SingularInverse inv(eng, b.mu);
  PolyMatrix D(L, std::vector<LaurentPoly>(L));
  for (std::size_t j = 0; j < L; ++j)
    for (std::size_t i = 0; i < L; ++i) D[i][j] = inv(ids[i], ids[j]);
  return D;
}

// M[i][j]: coefficient of [V(lambda_j)] in [L(lambda_i)], from the mu-parabolic
// polynomials of the inverses.
inline PolyMatrix simple_in_verma_matrix(QuotientKL& eng, const BlockData& b) {
  const std::size_t L = b.labels.size();
  const auto Wmu = parabolic_elements(b.mu);
  PolyMatrix M(L, std::vector<LaurentPoly>(L));
  for (std::size_t i = 0; i < L; ++i) {
    const auto x0 = eng.intern(b.labels[i].x0);
    const int lx = b.labels[i].weyl.w.length();
    for (std::size_t j = 0; j < L; ++j) {
      const AffinePerm& y = b.labels[j].weyl.w;
      LaurentPoly acc;
      for (const auto& z : Wmu) acc += neg_q_pow(z.length()) * eng.h_top(compose(y, z), x0);
      M[i][j] = acc * bigint(parity_sign(lx + y.length()));
    }
  }
  return M;
}

inline PolyMatrix multiply(const PolyMatrix& A, const PolyMatrix& B) {
  const std::size_t n = A.size();
  const std::size_t k = B.size();
  const std::size_t p = k ? B.front().size() : 0;
  PolyMatrix R(n, std::vector<LaurentPoly>(p));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (A[i][t].is_zero()) continue;
      for (std::size_t j = 0; j < p; ++j) R[i][j] += A[i][t] * B[t][j];
    }
  return R;
}

inline PolyMatrix transpose(const PolyMatrix& A) {
  PolyMatrix T(A.empty() ? 0 : A.front().size(), std::vector<LaurentPoly>(A.size()));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < A[i].size(); ++j) T[j][i] = A[i][j];
  return T;
}

// C[l][x] = sum_mu D[mu][l] D[mu][x]
inline PolyMatrix cartan_matrix(const PolyMatrix& D) { return multiply(transpose(D), D); }

// Violations of: diagonal 1, zero above the diagonal, q N[q] below.
inline std::vector<std::string> unitriangularity_violations(const PolyMatrix& D) {
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < D.size(); ++i)
    for (std::size_t j = 0; j < D.size(); ++j) {
      const LaurentPoly& p = D[i][j];
      const std::string at = "(" + std::to_string(i) + "," + std::to_string(j) + ")=" + p.str();
      if (i == j) {
        if (!(p == LaurentPoly(1))) bad.push_back("diagonal " + at);
      } else if (i < j) {
        if (!p.is_zero()) bad.push_back("above diagonal " + at);
      } else if (!p.is_zero() && (p.low_degree() < 1 || !p.all_coefficients_nonnegative())) {
        bad.push_back("not in qN[q] " + at);
      }
    }
  return bad;
}

struct BlockResult {
  BlockData block;
  PolyMatrix D;
  PolyMatrix C;
};

inline BlockResult block_matrices(QuotientKL& eng, BlockData b) {
  PolyMatrix D = decomposition_matrix(eng, b);
  PolyMatrix C = cartan_matrix(D);
  return {std::move(b), std::move(D), std::move(C)};
}

inline BlockResult block_matrices(const Charge& chg, const Block& d, std::optional<std::vector<int>> m = {}) {
  BlockData b = prepare_block(chg, d, std::move(m));
  QuotientKL eng = make_engine(b);
  return block_matrices(eng, std::move(b));
}

// Blocks of all l-partitions of n, in lexicographic order of content vectors.
inline std::vector<Block> blocks_of_size(const Charge& chg, int n) {
  std::set<std::vector<int>> keys;
  for (const auto& lam : multipartitions_of(n, chg.level())) {
    std::vector<int> key(static_cast<std::size_t>(chg.e), 0);
    for (const auto& [r, k] : residue_content(lam, chg)) key[static_cast<std::size_t>(r)] = k;
    keys.insert(key);
  }
  std::vector<Block> out;
  for (const auto& key : keys) {
    Block d;
    for (int r = 0; r < chg.e; ++r)
      if (key[static_cast<std::size_t>(r)]) d[r] = key[static_cast<std::size_t>(r)];
    out.push_back(d);
  }
  return out;
}

}  // namespace kld

#endif  // KLDECOMP_DECOMP_HPP
