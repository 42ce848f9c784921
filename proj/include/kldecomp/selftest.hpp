#ifndef KLDECOMP_SELFTEST_HPP
#define KLDECOMP_SELFTEST_HPP

#include "kldecomp/decomp.hpp"

#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace kld {

struct InvariantReport {
  std::string name;
  long checked = 0;
  long skipped = 0;
  std::vector<std::string> counterexamples;

  explicit InvariantReport(std::string n) : name(std::move(n)) {}
  bool ok() const { return counterexamples.empty(); }
  void expect(bool cond, const std::function<std::string()>& what) {
    ++checked;
    if (!cond) counterexamples.push_back(what());
  }
};

inline bool all_passed(const std::vector<InvariantReport>& rs) {
  for (const auto& r : rs)
    if (!r.ok()) return false;
  return true;
}

// One line per invariant family, then up to five counterexamples each.
inline std::string format_reports(const std::vector<InvariantReport>& rs) {
  std::ostringstream out;
  for (const auto& r : rs) {
    out << (r.ok() ? "PASS " : "FAIL ") << r.name << " checked=" << r.checked;
    if (r.skipped) out << " skipped=" << r.skipped;
    if (!r.ok()) out << " failures=" << r.counterexamples.size();
    out << '\n';
    for (std::size_t i = 0; i < r.counterexamples.size() && i < 5; ++i)
      out << "  counterexample: " << r.counterexamples[i] << '\n';
  }
  return out.str();
}

// Parabolic subsets exercised by the suites: each generator, and {0,1}, {1,2} when N >= 3.
inline std::vector<ParabolicSubset> sample_parabolics(int N) {
  std::vector<ParabolicSubset> out;
  if (N < 2) return out;
  for (int i = 0; i < N; ++i) out.emplace_back(N, std::vector<int>{i});
  if (N >= 3) {
    out.emplace_back(N, std::vector<int>{0, 1});
    out.emplace_back(N, std::vector<int>{1, 2});
  }
  return out;
}

// Whole-group identities for all elements of length <= max_len.
inline std::vector<InvariantReport> hecke_suite(int N, int max_len) {
  const std::string at = " N=" + std::to_string(N) + " len<=" + std::to_string(max_len);
  InvariantReport a{"degree-bound" + at};
  InvariantReport b{"inversion-symmetry" + at};
  InvariantReport c{"parabolic-inverse" + at};
  InvariantReport d{"inverse-at-identity" + at};
  InvariantReport e{"translation-guarded" + at};
  InvariantReport f{"parity" + at};
  InvariantReport pos{"positivity" + at};
  InvariantReport barinv{"bar-invariance" + at};
  InvariantReport orth{"orthogonality" + at};
  InvariantReport porth{"parabolic-orthogonality" + at};

  KLEngine eng(N);
  const auto els = elements_up_to(N, max_len);
  const AffinePerm one(N);
  auto pair_str = [](const AffinePerm& x, const AffinePerm& y) { return x.str() + " " + y.str(); };

  for (const auto& y : els) {
    const HeckeElement& cy = eng.kl_basis(y);
    barinv.expect(bar(cy) == cy, [&] { return y.str(); });
    const AffinePerm yi = inverse(y);
    for (const auto& x : eng.lower_interval(y)) {
      const LaurentPoly h = eng.h(x, y);
      const int gap = y.length() - x.length();
      const LaurentPoly t = h.shifted(-gap);
      bool in_a = !t.is_zero() && t.high_degree() == 0 && t.coeff(0) == 1;
      t.for_each_term([&](int k, const bigint&) { in_a = in_a && k % 2 == 0; });
      a.expect(in_a, [&] { return pair_str(x, y) + " h=" + h.str(); });
      const AffinePerm xi = inverse(x);
      b.expect(h == eng.h(xi, yi) && eng.hinv(y, x) == eng.hinv(yi, xi), [&] { return pair_str(x, y); });
      f.expect(h.negate_variable() == h * bigint(parity_sign(gap)), [&] { return pair_str(x, y) + " h=" + h.str(); });
      pos.expect(h.all_coefficients_nonnegative(), [&] { return pair_str(x, y) + " h=" + h.str(); });
    }
    d.expect(eng.hinv(y, one) == LaurentPoly::q(y.length()), [&] { return y.str() + " " + eng.hinv(y, one).str(); });

    // sum_z (-1)^{l(x)+l(z)} h_{z,x} h^{z,w} = delta_{x,w} with x = y.
    for (const auto& w : eng.lower_interval(y)) {
      LaurentPoly acc;
      for (const auto& z : eng.lower_interval(y))
        if (bruhat_leq(w, z)) acc.axpy(bigint(parity_sign(y.length() + z.length())), eng.h(z, y) * eng.hinv(z, w));
      orth.expect(acc == LaurentPoly(w == y ? 1 : 0), [&] { return pair_str(y, w) + " sum=" + acc.str(); });
    }
  }

  for (const auto& fp : sample_parabolics(N)) {
    std::vector<AffinePerm> mins;
    for (const auto& x : els)
      if (is_min_rep(x, fp, Side::left)) mins.push_back(x);
    for (const auto& y : mins) {
      for (const auto& x : mins) {
        if (!bruhat_leq(x, y)) continue;
        const LaurentPoly n = eng.n(x, y, fp);
        pos.expect(n.all_coefficients_nonnegative(), [&] { return pair_str(x, y) + " n=" + n.str(); });
        c.expect(eng.ninv(y, x, fp) == eng.hinv(y, x), [&] { return pair_str(y, x) + " f=" + fp.str(); });

        // Sum over x of (-1)^{l(y)+l(z)} n_{z,y} n^{z,x}, z ranging over ^fW.
        LaurentPoly acc;
        for (const auto& z : mins)
          if (bruhat_leq(x, z) && bruhat_leq(z, y))
            acc.axpy(bigint(parity_sign(y.length() + z.length())), eng.n(z, y, fp) * eng.ninv(z, x, fp));
        porth.expect(acc == LaurentPoly(x == y ? 1 : 0), [&] { return pair_str(y, x) + " f=" + fp.str(); });
      }
      // n_{xz,y} = q^{l(z)} n_{x,y} when every letter of z is a right descent of y
      // and x z, y z stay in ^fW with the lengths dropping by l(z).
      for (const auto& x : mins)
        for (const auto& z : elements_up_to(N, 2)) {
          if (z.is_identity()) continue;
          const AffinePerm xz = compose(x, z);
          const AffinePerm yz = compose(y, z);
          if (xz.length() != x.length() - z.length() || yz.length() != y.length() - z.length()) continue;
          bool guard = is_min_rep(xz, fp, Side::left) && is_min_rep(yz, fp, Side::left);
          for (int g : reduced_word(z)) guard = guard && y.has_right_descent(g);
          if (!guard) {
            ++e.skipped;
            continue;
          }
          e.expect(eng.n(xz, y, fp) == eng.n(x, y, fp).shifted(z.length()),
                   [&] { return pair_str(x, y) + " z=" + z.str() + " f=" + fp.str(); });
        }
    }
  }
  return {a, b, c, d, e, f, pos, barinv, orth, porth};
}

// ---- block suites ----

inline std::vector<Charge> all_charges(int e, int level) {
  std::vector<Charge> out;
  std::vector<int> s(static_cast<std::size_t>(level), 0);
  while (true) {
    out.emplace_back(s, e);
    int p = level - 1;
    while (p >= 0 && s[static_cast<std::size_t>(p)] == e - 1) s[static_cast<std::size_t>(p--)] = 0;
    if (p < 0) break;
    ++s[static_cast<std::size_t>(p)];
  }
  return out;
}

inline std::string block_tag(const Charge& chg, const Block& d) {
  return "e=" + std::to_string(chg.e) + " s=" + format_word(chg.s) + " block=" + block_str(d);
}

// Determinant by fraction-free elimination.
inline bigint integer_determinant(std::vector<std::vector<bigint>> a) {
  const std::size_t n = a.size();
  bigint sign = 1;
  bigint prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return n ? sign * a[n - 1][n - 1] : bigint(1);
}

inline bool is_symmetric(const PolyMatrix& C) {
  for (std::size_t i = 0; i < C.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!(C[i][j] == C[j][i])) return false;
  return true;
}

inline bool in_natural_polys(const PolyMatrix& C) {
  for (const auto& row : C)
    for (const auto& p : row)
      if (!p.is_zero() && (p.low_degree() < 0 || !p.all_coefficients_nonnegative())) return false;
  return true;
}

// D unitriangular in qN[q] off the diagonal, C = D^t D symmetric over N[q], det D(1) = 1.
inline InvariantReport block_structure_suite(const std::vector<int>& es, int max_level, int max_n) {
  InvariantReport r{"block-structure level<=" + std::to_string(max_level) + " n<=" + std::to_string(max_n)};
  for (int e : es)
    for (int l = 1; l <= max_level; ++l)
      for (const auto& chg : all_charges(e, l))
        for (int n = 0; n <= max_n; ++n)
          for (const auto& d : blocks_of_size(chg, n)) {
            const BlockResult res = block_matrices(chg, d);
            const auto bad = unitriangularity_violations(res.D);
            r.expect(bad.empty(), [&] { return block_tag(chg, d) + " " + bad.front(); });
            r.expect(is_symmetric(res.C) && in_natural_polys(res.C),
                     [&] { return block_tag(chg, d) + " C not symmetric over N[q]"; });
            std::vector<std::vector<bigint>> d1;
            for (const auto& row : res.D) {
              d1.emplace_back();
              for (const auto& p : row) d1.back().push_back(p.eval_one());
            }
            const bigint det = integer_determinant(d1);
            r.expect(det == 1, [&] { return block_tag(chg, d) + " det D(1)=" + det.str(); });
          }
  return r;
}

// The simple-into-parabolic-Verma matrix times D is the identity.
inline InvariantReport inverse_pairing_suite(const std::vector<int>& es, int max_level, int max_n) {
  InvariantReport r{"simple-verma-pairing level<=" + std::to_string(max_level) + " n<=" + std::to_string(max_n)};
  for (int e : es)
    for (int l = 1; l <= max_level; ++l)
      for (const auto& chg : all_charges(e, l))
        for (int n = 0; n <= max_n; ++n)
          for (const auto& d : blocks_of_size(chg, n)) {
            const BlockData b = prepare_block(chg, d);
            QuotientKL eng = make_engine(b);
            const PolyMatrix P = multiply(simple_in_verma_matrix(eng, b), decomposition_matrix(eng, b));
            for (std::size_t i = 0; i < P.size(); ++i)
              for (std::size_t j = 0; j < P.size(); ++j)
                r.expect(P[i][j] == LaurentPoly(i == j ? 1 : 0), [&] {
                  return block_tag(chg, d) + " (" + std::to_string(i) + "," + std::to_string(j) + ")=" + P[i][j].str();
                });
          }
  return r;
}

// Level one, e = 5, n <= 3: every block has one label and D = C = [1].
inline InvariantReport semisimple_suite() {
  InvariantReport r{"semisimple e=5 level=1 n<=3"};
  for (const auto& chg : all_charges(5, 1))
    for (int n = 0; n <= 3; ++n)
      for (const auto& d : blocks_of_size(chg, n)) {
        const BlockResult res = block_matrices(chg, d);
        const bool one = res.D.size() == 1 && res.D[0][0] == LaurentPoly(1) && res.C[0][0] == LaurentPoly(1);
        r.expect(one, [&] { return block_tag(chg, d) + " has " + std::to_string(res.D.size()) + " labels"; });
      }
  return r;
}

// e = 2, s = (0), n = 2: one two-label block with D = [[1,0],[q^k,1]], k >= 1,
// and C symmetric with trace in 2 + qN[q].
inline InvariantReport two_label_suite() {
  InvariantReport r{"two-label e=2 s=0 n=2"};
  const Charge chg({0}, 2);
  const auto blocks = blocks_of_size(chg, 2);
  r.expect(blocks.size() == 1, [&] { return std::to_string(blocks.size()) + " blocks"; });
  for (const auto& d : blocks) {
    const BlockResult res = block_matrices(chg, d);
    if (res.D.size() != 2) {
      r.expect(false, [&] { return block_tag(chg, d) + " has " + std::to_string(res.D.size()) + " labels"; });
      continue;
    }
    const LaurentPoly& off = res.D[1][0];
    r.expect(off.term_count() == 1 && off.low_degree() >= 1 && off.coeff(off.low_degree()) == 1 &&
                 res.D[0][1].is_zero(),
             [&] { return "off-diagonal " + off.str(); });
    const LaurentPoly tr = res.C[0][0] + res.C[1][1] - LaurentPoly(2);
    r.expect(is_symmetric(res.C) && (tr.is_zero() || (tr.low_degree() >= 1 && tr.all_coefficients_nonnegative())),
             [&] { return "trace " + (tr + LaurentPoly(2)).str(); });
  }
  return r;
}

inline std::vector<InvariantReport> run_selftest(bool full) {
  std::vector<InvariantReport> out;
  auto add = [&](std::vector<InvariantReport> rs) { out.insert(out.end(), rs.begin(), rs.end()); };
  add(hecke_suite(2, 5));
  add(hecke_suite(3, 5));
  if (full) {
    add(hecke_suite(4, 6));
    out.push_back(inverse_pairing_suite({2, 3}, 2, 3));
    out.push_back(block_structure_suite({2, 3}, 2, 4));
    out.push_back(semisimple_suite());
    out.push_back(two_label_suite());
  }
  return out;
}

}  // namespace kld

#endif  // KLDECOMP_SELFTEST_HPP
