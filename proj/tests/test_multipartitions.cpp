#include "kldecomp/decomp.hpp"

#include <gtest/gtest.h>

using namespace kld;

namespace {

Multipartition M(std::vector<Partition> c) { return Multipartition{std::move(c)}; }

}  // namespace

TEST(Multipartitions, ResidueContent) {
  EXPECT_EQ(residue_content(M({{2}, {1}}), Charge({0, 1}, 2)), (Block{{0, 1}, {1, 2}}));
  EXPECT_TRUE(residue_content(M({{}, {}}), Charge({0, 1}, 2)).empty());
  EXPECT_EQ(residue_content(M({{1, 1}}), Charge({0}, 3)), (Block{{0, 1}, {2, 1}}));
}

TEST(Multipartitions, EnumerateBlock) {
  EXPECT_EQ(enumerate_block(Charge({0}, 2), Block{{0, 1}, {1, 1}}), (std::vector<Multipartition>{M({{2}}), M({{1, 1}})}));
  EXPECT_EQ(enumerate_block(Charge({0, 1}, 2), Block{}), std::vector<Multipartition>{M({{}, {}})});
  EXPECT_EQ(enumerate_block(Charge({0, 1}, 2), Block{{1, 1}}), std::vector<Multipartition>{M({{}, {1}})});
}

TEST(Multipartitions, Star) {
  EXPECT_EQ(star(M({{2}, {1}})), M({{1}, {1, 1}}));
  EXPECT_EQ(star(M({{}, {}})), M({{}, {}}));
  EXPECT_EQ(star(M({{2, 1}})), M({{2, 1}}));
}

TEST(Multipartitions, ChooseM) {
  EXPECT_EQ(choose_m(Charge({0, 0}, 2), 2), (std::vector<int>{2, 2}));
  EXPECT_EQ(choose_m(Charge({1}, 3), 2), std::vector<int>{2});
  EXPECT_EQ(choose_m(Charge({1, 0}, 3), 0), (std::vector<int>{3, 2}));
  EXPECT_THROW(check_m(Charge({0}, 2), {3}, 2), std::invalid_argument);
  EXPECT_THROW(check_m(Charge({0}, 2), {2, 2}, 2), std::invalid_argument);
  EXPECT_THROW(check_m(Charge({0}, 2), {2}, 3), std::invalid_argument);
}

TEST(Multipartitions, Omega) {
  const Charge c2({0, 0}, 2);
  EXPECT_EQ(omega_weight(M({{1}, {}}), {2, 2}, c2).entries, (std::vector<long>{3, 1, 2, 1}));
  EXPECT_EQ(omega_weight(M({{}, {}}), {2, 2}, c2).entries, (std::vector<long>{2, 1, 2, 1}));
  EXPECT_EQ(omega_weight(M({{2}}), {2}, Charge({0}, 2)).entries, (std::vector<long>{4, 1}));
  EXPECT_THROW(omega_weight(M({{1, 1, 1}}), {2}, Charge({0}, 2)), std::invalid_argument);
}

TEST(Multipartitions, ToWeyl) {
  const Charge chg({0}, 2);
  const LinkageContext ctx(2, 2, nu_from_m({2}));
  const WeylLabel a = to_weyl(M({{2}}), ctx, chg, {2});
  EXPECT_EQ(a.target.entries, (std::vector<long>{3, 2}));
  EXPECT_EQ(a.o.entries, (std::vector<long>{2, 3}));
  EXPECT_EQ(a.w, AffinePerm::simple(2, 1));
  const WeylLabel b = to_weyl(M({{1, 1}}), ctx, chg, {2});
  EXPECT_EQ(b.target.entries, (std::vector<long>{4, 1}));
  EXPECT_EQ(b.o, a.o);
  EXPECT_EQ(b.w.length(), 2);
  const WeylLabel z = to_weyl(M({{}}), LinkageContext(1, 2, nu_from_m({1})), Charge({1}, 2), {1});
  EXPECT_TRUE(z.w.is_identity());
}

TEST(Multipartitions, Parsing) {
  EXPECT_EQ(parse_multipartition("[[2],[1]]"), M({{2}, {1}}));
  EXPECT_EQ(parse_multipartition("[[],[1,1]]"), M({{}, {1, 1}}));
  EXPECT_EQ(M({{2}, {1}}).str(), "[[2],[1]]");
  EXPECT_THROW(parse_multipartition("[[1,2]]"), std::invalid_argument);
  EXPECT_EQ(parse_block("0:1,1:2", 2), (Block{{0, 1}, {1, 2}}));
  EXPECT_EQ(parse_block("3:1", 2), (Block{{1, 1}}));
  EXPECT_EQ(block_str(Block{{0, 1}, {1, 2}}), "0:1,1:2");
  EXPECT_THROW(parse_block("0-1", 2), std::invalid_argument);
}

TEST(MultipartitionsProperty, BlocksPartitionAllLabels) {
  for (int e : {2, 3})
    for (int l : {1, 2})
      for (int n = 0; n <= 5; ++n) {
        std::vector<int> s(static_cast<std::size_t>(l));
        for (int p = 0; p < l; ++p) s[static_cast<std::size_t>(p)] = p;
        const Charge chg(s, e);
        std::size_t total_labels = 0;
        for (const auto& d : blocks_of_size(chg, n)) {
          const auto lams = enumerate_block(chg, d);
          EXPECT_FALSE(lams.empty());
          for (const auto& lam : lams) {
            EXPECT_EQ(residue_content(lam, chg), d);
            EXPECT_EQ(lam.size(), n);
            EXPECT_EQ(star(star(lam)), lam);
          }
          total_labels += lams.size();
        }
        EXPECT_EQ(total_labels, multipartitions_of(n, l).size());
      }
}
