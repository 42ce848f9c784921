#include "kldecomp/hecke.hpp"
#include "kldecomp/selftest.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace kld;

namespace {

AffinePerm S(int rank, std::initializer_list<int> word) { return AffinePerm::from_word(rank, std::vector<int>(word)); }
LaurentPoly P(const char* s) { return parse_poly(s); }
HeckeElement H(const AffinePerm& w, LaurentPoly c = LaurentPoly(1)) { return HeckeElement::basis(w, std::move(c)); }

}  // namespace

TEST(Hecke, QuadraticRelation) {
  const AffinePerm s = S(2, {1});
  const HeckeElement sq = H(s) * H(s);
  EXPECT_EQ(sq, H(AffinePerm(2)) + H(s, P("q^-1 - q")));
  EXPECT_EQ(H(S(3, {1})) * H(S(3, {2})), H(S(3, {1, 2})));
  EXPECT_EQ(H(AffinePerm(3)) * H(S(3, {0})), H(S(3, {0})));
  EXPECT_EQ(mul_simple(H(s), 1, Side::left), sq);
}

TEST(Hecke, Bar) {
  const AffinePerm e(2);
  const AffinePerm s = S(2, {1});
  EXPECT_EQ(bar(H(e)), H(e));
  EXPECT_EQ(bar(H(s)), H(s) + H(e, P("q - q^-1")));
  EXPECT_EQ(bar(H(e, P("q"))), H(e, P("q^-1")));
}

TEST(Hecke, KLPolynomials) {
  KLEngine eng(3);
  for (const auto& x : elements_up_to(3, 3)) EXPECT_EQ(eng.h(x, x), LaurentPoly(1));
  for (int N : {2, 3, 4}) {
    KLEngine e(N);
    for (int i = 0; i < N; ++i) EXPECT_EQ(e.h(AffinePerm(N), AffinePerm::simple(N, i)), P("q"));
  }
  EXPECT_TRUE(eng.h(S(3, {1}), S(3, {2})).is_zero());
}

TEST(Hecke, InverseKL) {
  KLEngine eng(3);
  for (const auto& x : elements_up_to(3, 4)) {
    EXPECT_EQ(eng.hinv(x, AffinePerm(3)), LaurentPoly::q(x.length()));
    EXPECT_EQ(eng.hinv(x, x), LaurentPoly(1));
  }
  KLEngine two(2);
  EXPECT_EQ(two.hinv(S(2, {1}), AffinePerm(2)), P("q"));
}

TEST(Hecke, ParabolicN) {
  KLEngine eng(3);
  const ParabolicSubset f(3, {1});
  const ParabolicSubset none(3, {});
  for (const auto& x : enumerate_min_reps(f, Side::left, 3)) EXPECT_EQ(eng.n(x, x, f), LaurentPoly(1));
  EXPECT_EQ(eng.n(AffinePerm(3), S(3, {2}), f), P("q"));
  for (const auto& y : elements_up_to(3, 3))
    for (const auto& x : lower_interval(y)) EXPECT_EQ(eng.n(x, y, none), eng.h(x, y));
  EXPECT_THROW(eng.n(S(3, {1}), S(3, {1}), f), not_minimal_rep);
  EXPECT_THROW(eng.n(AffinePerm(3), AffinePerm(3), ParabolicSubset(3, {0, 1, 2})), infinite_parabolic);
}

TEST(Hecke, InverseParabolicN) {
  KLEngine eng(3);
  const ParabolicSubset f(3, {2});
  const auto mins = enumerate_min_reps(f, Side::left, 4);
  for (const auto& x : mins) {
    EXPECT_EQ(eng.ninv(x, x, f), LaurentPoly(1));
    for (const auto& y : mins)
      if (bruhat_leq(y, x)) {
        EXPECT_EQ(eng.ninv(x, y, f), eng.hinv(x, y));
        EXPECT_EQ(eng.ninv(x, y, ParabolicSubset(3, {})), eng.hinv(x, y));
      }
  }
}

TEST(HeckeProperty, InductionMatchesBarSolve) {
  for (int N : {2, 3}) {
    const oracle::Ball ball(N, 4);
    KLEngine eng(N);
    for (const auto& [x, word] : ball.word) {
      const auto want = oracle::kl_by_bar_solve(ball, x);
      EXPECT_EQ(eng.kl_basis(x).terms(), (HeckeElement::Terms(want.begin(), want.end()))) << x.str();
    }
  }
}

TEST(HeckeProperty, InverseMatchesOracle) {
  const oracle::Ball ball(3, 4);
  KLEngine eng(3);
  for (const auto& x : elements_up_to(3, 4)) {
    const auto col = oracle::inverse_column(ball, x);
    for (const auto& y : lower_interval(x)) {
      auto it = col.find(y);
      EXPECT_EQ(eng.hinv(x, y), it == col.end() ? LaurentPoly() : it->second) << x.str() << " " << y.str();
    }
  }
}

TEST(HeckeProperty, BarIsInvolutiveRingMap) {
  const auto els = elements_up_to(3, 3);
  for (const auto& a : els)
    for (const auto& b : els) {
      const HeckeElement x = H(a, P("q + 2")) + H(b, P("q^-1"));
      EXPECT_EQ(bar(bar(x)), x);
      EXPECT_EQ(bar(H(a) * H(b)), bar(H(a)) * bar(H(b)));
    }
}

TEST(HeckeProperty, SmallSuitePasses) {
  for (const auto& r : hecke_suite(3, 4)) {
    EXPECT_TRUE(r.ok()) << format_reports({r});
    EXPECT_GT(r.checked, 0) << r.name;
  }
}

TEST(Hecke, TableRoundTrip) {
  KLEngine eng(3);
  for (const auto& x : elements_up_to(3, 3)) eng.kl_basis(x);
  const auto dir = std::filesystem::temp_directory_path() / "kldecomp_hecke_table";
  std::filesystem::create_directories(dir);
  const auto file = dir / "t.txt";
  save_poly_table(file, eng.export_table());
  KLEngine fresh(3);
  fresh.import_table(load_poly_table(file));
  for (const auto& y : elements_up_to(3, 3))
    for (const auto& x : lower_interval(y)) EXPECT_EQ(fresh.h(x, y), eng.h(x, y));
  std::filesystem::remove_all(dir);
}
