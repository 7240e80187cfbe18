#include <functional>
#include <set>

#include <gtest/gtest.h>

#include "schubloc/rootsys.hpp"

using namespace schubloc;

namespace {

// Closure of the simple reflections by brute-force word growth.
std::set<std::vector<std::int16_t>> closure_by_words(const RootSystem& rs) {
  std::set<std::vector<std::int16_t>> seen{WeylElt::identity(rs).perm()};
  std::vector<std::vector<int>> frontier{{}};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& w : frontier)
      for (int i = 0; i < rs.rank(); ++i) {
        auto x = w;
        x.push_back(i);
        if (seen.insert(WeylElt::from_word(rs, x).perm()).second) next.push_back(x);
      }
    frontier = std::move(next);
  }
  return seen;
}

// Products of all subwords of one reduced word of w.
std::set<std::vector<std::int16_t>> subword_products(const RootSystem& rs, const std::vector<int>& word) {
  std::set<std::vector<std::int16_t>> out;
  for (std::uint32_t m = 0; m < (1u << word.size()); ++m) {
    std::vector<int> sub;
    for (std::size_t k = 0; k < word.size(); ++k)
      if ((m >> k) & 1u) sub.push_back(word[k]);
    out.insert(WeylElt::from_word(rs, sub).perm());
  }
  return out;
}

// Type A tableau criterion on one-line notation.
bool rank_matrix_leq(const std::vector<int>& u, const std::vector<int>& w) {
  const int n = static_cast<int>(u.size());
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= n; ++k) {
      int cu = 0, cw = 0;
      for (int j = 0; j < i; ++j) {
        cu += u[j] >= k;
        cw += w[j] >= k;
      }
      if (cu > cw) return false;
    }
  return true;
}

int inversions_of(const RootSystem& rs, const WeylElt& w) {
  int n = 0;
  for (int b = 0; b < rs.num_positive(); ++b) n += !rs.is_positive_index(w.act(b));
  return n;
}

}  // namespace

TEST(RootSystem, PositiveRootCounts) {
  const std::pair<const char*, int> cases[] = {{"A1", 1},  {"A2", 3},  {"A3", 6},  {"A5", 15}, {"B2", 4},
                                               {"B3", 9},  {"C3", 9},  {"D4", 12}, {"G2", 6},  {"F4", 24},
                                               {"E6", 36}, {"E7", 63}, {"E8", 120}};
  for (auto [label, n] : cases) EXPECT_EQ(RootSystem::from_label(label).num_positive(), n) << label;
}

TEST(RootSystem, WeylOrders) {
  const std::pair<const char*, std::uint64_t> cases[] = {{"A1", 2},      {"A3", 24},         {"B2", 8},  {"G2", 12},
                                                         {"D4", 192},    {"F4", 1152},       {"E6", 51840},
                                                         {"E7", 2903040}, {"E8", 696729600}};
  for (auto [label, n] : cases) EXPECT_EQ(RootSystem::from_label(label).weyl_order(), n) << label;
}

TEST(RootSystem, SimpleRootsComeFirst) {
  auto rs = RootSystem::from_label("B3");
  for (int i = 0; i < rs.rank(); ++i) {
    EXPECT_EQ(rs.simple_root(i).height(), 1);
    EXPECT_EQ(rs.simple_root(i).coeffs[i], 1);
  }
  for (int k = 1; k < rs.num_positive(); ++k)
    EXPECT_LE(rs.positive_roots()[k - 1].height(), rs.positive_roots()[k].height());
}

TEST(RootSystem, ReflectionFormula) {
  // s_i(alpha_j) = alpha_j - a_ij alpha_i
  for (const char* label : {"A3", "B3", "C3", "G2", "F4"}) {
    auto rs = RootSystem::from_label(label);
    for (int i = 0; i < rs.rank(); ++i)
      for (int j = 0; j < rs.rank(); ++j) {
        Root want = rs.simple_root(j);
        want.coeffs[i] -= rs.cartan()[i][j];
        EXPECT_EQ(rs.reflect(i, rs.simple_root(j)), want);
        EXPECT_EQ(rs.root(rs.reflect_index(i, j)), want);
      }
  }
}

TEST(RootSystem, ActOnRootExamples) {
  auto rs = RootSystem::from_label("A2");
  auto s1 = WeylElt::simple(rs, 0);
  EXPECT_EQ(act_on_root(rs, s1, Root{{0, 1}}), (Root{{1, 1}}));
  EXPECT_EQ(act_on_root(rs, s1, Root{{1, 0}}), (Root{{-1, 0}}));
  auto g2 = RootSystem::from_label("G2");
  // a_21 = -3: s2(alpha_1) = alpha_1 + 3 alpha_2
  EXPECT_EQ(act_on_root(g2, WeylElt::simple(g2, 1), Root{{1, 0}}), (Root{{1, 3}}));
  EXPECT_EQ(act_on_root(g2, WeylElt::simple(g2, 0), Root{{0, 1}}), (Root{{1, 1}}));
}

TEST(RootSystem, CartanValidation) {
  EXPECT_THROW(RootSystem::from_cartan({}), InvalidCartan);
  EXPECT_THROW(RootSystem::from_cartan({{2, -1}, {-1}}), InvalidCartan);
  EXPECT_THROW(RootSystem::from_cartan({{1, -1}, {-1, 2}}), InvalidCartan);
  EXPECT_THROW(RootSystem::from_cartan({{2, 1}, {-1, 2}}), InvalidCartan);
  EXPECT_THROW(RootSystem::from_cartan({{2, 0}, {-1, 2}}), InvalidCartan);
  EXPECT_THROW(RootSystem::from_cartan({{2, -2}, {-2, 2}}), NotFiniteType);
  EXPECT_THROW(RootSystem::from_cartan({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}), NotFiniteType);
  EXPECT_THROW(RootSystem::from_label("Q3"), InvalidArgument);
  EXPECT_THROW(RootSystem::from_label("D3"), InvalidArgument);
  EXPECT_THROW(RootSystem::from_label("A"), InvalidArgument);
  EXPECT_THROW(RootSystem::from_label("E9"), InvalidArgument);
  EXPECT_NO_THROW(RootSystem::from_label("a_3"));
}

TEST(RootSystem, ExplicitCartanMatchesLabel) {
  auto rs = RootSystem::from_cartan({{2, -1}, {-2, 2}});
  EXPECT_EQ(rs.num_positive(), 4);
  EXPECT_FALSE(rs.label().has_value());
  EXPECT_EQ(rs.key(), "cartan[2,-1;-2,2]");
  EXPECT_TRUE(RootSystem::from_cartan(RootSystem::standard_cartan('A', 3)).is_type_a());
  EXPECT_FALSE(RootSystem::from_label("B3").is_type_a());
}

TEST(WeylGroup, EnumerationMatchesWordClosure) {
  for (const char* label : {"A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4"}) {
    auto rs = RootSystem::from_label(label);
    WeylGroup g(rs);
    auto oracle = closure_by_words(rs);
    ASSERT_EQ(g.size(), oracle.size()) << label;
    EXPECT_EQ(g.size(), rs.weyl_order()) << label;
    std::set<std::vector<std::int16_t>> got;
    for (const auto& w : g.elements()) got.insert(w.perm());
    EXPECT_EQ(got, oracle) << label;
  }
}

TEST(WeylGroup, OrderingAndCanonicalWords) {
  auto rs = RootSystem::from_label("A3");
  WeylGroup g(rs);
  for (std::size_t k = 1; k < g.size(); ++k) {
    const auto& a = g.element(k - 1);
    const auto& b = g.element(k);
    EXPECT_TRUE(a.length() < b.length() || (a.length() == b.length() && a.word() < b.word()));
  }
  for (std::size_t w = 0; w < g.size(); ++w) {
    EXPECT_EQ(g.element(w).length(), inversions_of(rs, g.element(w)));
    EXPECT_EQ(static_cast<int>(g.element(w).word().size()), g.length(w));
    auto words = g.reduced_words(w);
    EXPECT_EQ(words.front(), g.element(w).word());
    for (const auto& word : words) EXPECT_EQ(g.index_of_word(word), w);
  }
  EXPECT_EQ(g.reduced_words(g.longest()).size(), 16u);
  EXPECT_EQ(g.length(g.longest()), rs.num_positive());
}

TEST(WeylGroup, MultiplicationTables) {
  auto rs = RootSystem::from_label("B3");
  WeylGroup g(rs);
  for (std::size_t u = 0; u < g.size(); u += 5)
    for (std::size_t v = 0; v < g.size(); v += 3) {
      EXPECT_EQ(g.element(g.multiply(u, v)), multiply(rs, g.element(u), g.element(v)));
      EXPECT_EQ(g.multiply(u, g.inverse(u)), g.identity());
    }
  for (std::size_t w = 0; w < g.size(); ++w)
    EXPECT_EQ(g.element(g.inverse(w)), inverse(rs, g.element(w)));
}

TEST(WeylGroup, ReflectionsNegateTheirRoot) {
  for (const char* label : {"A3", "B3", "G2"}) {
    auto rs = RootSystem::from_label(label);
    WeylGroup g(rs);
    for (int b = 0; b < rs.num_positive(); ++b) {
      const WeylElt& s = g.element(g.reflection(b));
      EXPECT_EQ(s.act(b), rs.negate_index(b));
      EXPECT_EQ(g.multiply(g.reflection(b), g.reflection(b)), g.identity());
      EXPECT_EQ(s.length() % 2, 1);
    }
  }
}

TEST(WeylGroup, CapCheckedBeforeEnumeration) {
  EXPECT_THROW(WeylGroup(RootSystem::from_label("E8")), ResourceCapExceeded);
  EXPECT_THROW(WeylGroup(RootSystem::from_label("A3"), 23), ResourceCapExceeded);
  EXPECT_NO_THROW(WeylGroup(RootSystem::from_label("A3"), 24));
}

TEST(Bruhat, MatchesSubwordOracle) {
  for (const char* label : {"A2", "A3", "B2", "B3", "G2"}) {
    auto rs = RootSystem::from_label(label);
    WeylGroup g(rs);
    for (std::size_t w = 0; w < g.size(); ++w) {
      auto below = subword_products(rs, g.element(w).word());
      for (std::size_t u = 0; u < g.size(); ++u) {
        bool want = below.count(g.element(u).perm()) > 0;
        EXPECT_EQ(g.bruhat_leq(u, w), want) << label << ' ' << u << ' ' << w;
        EXPECT_EQ(bruhat_leq(rs, g.element(u), g.element(w)), want);
      }
    }
  }
}

TEST(Bruhat, MatchesRankMatrixInTypeA) {
  auto rs = RootSystem::from_label("A3");
  WeylGroup g(rs);
  for (std::size_t u = 0; u < g.size(); ++u)
    for (std::size_t w = 0; w < g.size(); ++w)
      EXPECT_EQ(g.bruhat_leq(u, w), rank_matrix_leq(one_line(rs, g.element(u)), one_line(rs, g.element(w))));
}

TEST(Bruhat, IsPartialOrderWithExtremes) {
  auto rs = RootSystem::from_label("A3");
  WeylGroup g(rs);
  const std::size_t n = g.size();
  for (std::size_t a = 0; a < n; ++a) {
    EXPECT_TRUE(g.bruhat_leq(a, a));
    EXPECT_TRUE(g.bruhat_leq(g.identity(), a));
    EXPECT_TRUE(g.bruhat_leq(a, g.longest()));
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && g.bruhat_leq(a, b)) { EXPECT_FALSE(g.bruhat_leq(b, a)); }
      for (std::size_t c = 0; c < n; ++c)
        if (g.bruhat_leq(a, b) && g.bruhat_leq(b, c)) { EXPECT_TRUE(g.bruhat_leq(a, c)); }
    }
  }
}

TEST(Parabolic, LongestAndCoxeterElements) {
  auto rs = RootSystem::from_label("A3");
  EXPECT_EQ(longest_element(rs, SubsetK()).length(), 0);
  EXPECT_EQ(longest_element(rs, SubsetK::of({1})).length(), 1);
  EXPECT_EQ(longest_element(rs, SubsetK::of({1, 2})).length(), 3);
  EXPECT_EQ(longest_element(rs, SubsetK::of({1, 3})).length(), 2);
  EXPECT_EQ(longest_element(rs, SubsetK::of({1, 2, 3})).length(), 6);
  auto b3 = RootSystem::from_label("B3");
  EXPECT_EQ(longest_element(b3, SubsetK::of({2, 3})).length(), 4);
  EXPECT_EQ(longest_element(b3, SubsetK::of({1, 2, 3})).length(), 9);

  for (std::uint32_t m = 1; m < 8; ++m) {
    SubsetK k(m);
    auto v = coxeter_element(rs, k);
    EXPECT_EQ(v.length(), k.size());
    EXPECT_EQ(support(v), k);
    EXPECT_EQ(v.word(), k.members());
    auto w = coxeter_element(rs, k, CoxeterOrder::decreasing);
    EXPECT_EQ(w, inverse(rs, v));
    // w_K sends every positive root of the K-subsystem negative.
    auto wk = longest_element(rs, k);
    EXPECT_EQ(support(wk), k);
    EXPECT_EQ(wk, inverse(rs, wk));
  }
  EXPECT_THROW(coxeter_element(rs, SubsetK()), InvalidArgument);
  EXPECT_THROW(longest_element(rs, SubsetK::of({4})), InvalidArgument);
}

TEST(Subsets, ParseRenderAndShape) {
  EXPECT_EQ(SubsetK::parse("1,2", 3), SubsetK::of({1, 2}));
  EXPECT_EQ(SubsetK::parse("{2 3}", 3), SubsetK::of({2, 3}));
  EXPECT_EQ(SubsetK::parse("", 3), SubsetK());
  EXPECT_THROW(SubsetK::parse("4", 3), InvalidArgument);
  EXPECT_THROW(SubsetK::parse("1;2", 3), InvalidArgument);
  EXPECT_EQ(SubsetK::of({3, 1}).to_string(), "1,3");
  EXPECT_TRUE(SubsetK::of({2, 3}).is_consecutive());
  EXPECT_FALSE(SubsetK::of({1, 3}).is_consecutive());
  EXPECT_EQ(SubsetK::of({2, 3, 4}).tail(), 2);
  EXPECT_EQ(SubsetK::of({2, 3, 4}).head(), 4);
  auto order = subsets_by_size(3);
  ASSERT_EQ(order.size(), 8u);
  EXPECT_EQ(order.front(), SubsetK());
  EXPECT_EQ(order.back(), SubsetK::of({1, 2, 3}));
  for (std::size_t k = 1; k < order.size(); ++k) {
    EXPECT_LE(order[k - 1].size(), order[k].size());
    if (order[k - 1].size() == order[k].size()) { EXPECT_LT(order[k - 1].mask(), order[k].mask()); }
  }
}

TEST(Notation, OneLineRoundTrip) {
  auto rs = RootSystem::from_label("A2");
  EXPECT_EQ(parse_element(rs, "231").word(), (std::vector<int>{0, 1}));
  EXPECT_EQ(parse_element(rs, "[312]").word(), (std::vector<int>{1, 0}));
  EXPECT_EQ(parse_element(rs, "321").word(), (std::vector<int>{0, 1, 0}));
  EXPECT_EQ(parse_element(rs, "2,1,3").word(), (std::vector<int>{0}));
  EXPECT_EQ(one_line_text(rs, parse_element(rs, "s1 s2")), "231");
  EXPECT_EQ(parse_element(rs, "s2 s1 s2"), parse_element(rs, "s1s2s1"));
  EXPECT_EQ(parse_element(rs, "e").length(), 0);
  EXPECT_EQ(parse_element(rs, "s1 s1").length(), 0);
  EXPECT_THROW(parse_element(rs, "221"), InvalidArgument);
  EXPECT_THROW(parse_element(rs, "12"), InvalidArgument);
  EXPECT_THROW(parse_element(rs, "s3"), InvalidArgument);
  EXPECT_THROW(parse_element(rs, "x1"), InvalidArgument);
  EXPECT_THROW(parse_element(RootSystem::from_label("B2"), "213"), InvalidArgument);

  auto a3 = RootSystem::from_label("A3");
  WeylGroup g(a3);
  for (const auto& w : g.elements()) {
    EXPECT_EQ(parse_element(a3, one_line_text(a3, w)), w);
    EXPECT_EQ(parse_element(a3, word_text(w)), w);
  }
  EXPECT_EQ(word_text(WeylElt::identity(a3)), "e");
}
