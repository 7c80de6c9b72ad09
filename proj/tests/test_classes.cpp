#include <gtest/gtest.h>

#include <random>
#include <set>

#include "splitsync/classes.hpp"
#include "splitsync/critical.hpp"
#include "splitsync/directing.hpp"
#include "splitsync/split.hpp"
#include "support.hpp"

using namespace splitsync;

namespace {

Automaton intro() {
  return Automaton(3, {Symbol::from_one_based({{1, 3}, {2}, {1}}),
                       Symbol::from_one_based({{2}, {1}, {2, 3}})});
}

Automaton all_to_all(std::size_t n) {
  return Automaton(n, {Symbol(std::vector<StateSet>(n, StateSet::full(n)))});
}

Automaton half_loop() {
  return Automaton(2, {Symbol::from_one_based({{1, 2}, {2}})});
}

void check_sample(const Automaton& a) {
  for (const auto& v : support::class_property_violations(a)) ADD_FAILURE() << v;
}

}  // namespace

TEST(Cyclic, Examples) {
  for (std::size_t n = 2; n <= 8; ++n) {
    EXPECT_TRUE(is_cyclic(cerny(n)).member());
    EXPECT_TRUE(is_cyclic(cerny_cnfa(n)).member());
  }
  EXPECT_FALSE(is_cyclic(intro()).member());
  EXPECT_TRUE(is_cyclic(Automaton(1, {Symbol::identity(1)})).member());
  const auto v = is_cyclic(cerny(5));
  ASSERT_TRUE(v.certificate);
  EXPECT_TRUE(check_cyclic_certificate(cerny(5), *v.certificate));
}

TEST(OneCluster, Examples) {
  const auto v = is_one_cluster(intro());
  ASSERT_TRUE(v.member());
  EXPECT_EQ(v.certificate->symbol, 1u);
  EXPECT_EQ(v.certificate->sink, 0);
  EXPECT_FALSE(is_one_cluster(Automaton(2, {Symbol::identity(2)})).member());
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const Automaton c = support::gen_cyclic(2 + rng() % 5, rng);
    EXPECT_TRUE(is_one_cluster(c).member());
  }
}

TEST(OneCluster, AgreesWithPairwiseFormulation) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 2000; ++i) {
    const Automaton a = random_cnfa(1 + rng() % 5, 1 + rng() % 3, 0.15, rng());
    EXPECT_EQ(is_one_cluster(a).member(), is_one_cluster_pairwise(a));
  }
}

TEST(Monotonic, Examples) {
  EXPECT_TRUE(check_monotonic_order(half_loop(), {0, 1}));
  EXPECT_TRUE(is_monotonic(half_loop()).member());
  EXPECT_EQ(d3_oracle(half_loop()).length, 1u);
  for (std::size_t n = 2; n <= 5; ++n) EXPECT_FALSE(is_monotonic(all_to_all(n)).member());
  EXPECT_THROW(is_monotonic(cerny(11)), InvalidArgument);
}

TEST(Monotonic, DfaReadingsCoincide) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const Automaton d = random_cnfa(2 + rng() % 3, 1 + rng() % 3, 0.0, rng());
    EXPECT_EQ(is_monotonic(d).member(), support::dfa_monotonic(d));
  }
}

TEST(Orientable, Examples) {
  for (std::size_t n = 2; n <= 7; ++n) EXPECT_TRUE(is_orientable(cerny(n)).member());
  std::vector<State> natural{0, 1, 2, 3, 4};
  EXPECT_TRUE(check_orientable_order(cerny_cnfa(5), natural));
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto s = support::gen_monotonic(2 + rng() % 4, rng);
    EXPECT_TRUE(is_orientable(s.automaton).member());
  }
}

TEST(Orientable, DfaReadingsCoincide) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const Automaton d = random_cnfa(2 + rng() % 3, 1 + rng() % 3, 0.0, rng());
    EXPECT_EQ(is_orientable(d).member(), support::dfa_orientable(d));
  }
}

TEST(StronglyEulerian, Examples) {
  EXPECT_TRUE(is_strongly_eulerian(all_to_all(4)).member());
  for (std::size_t n = 3; n <= 6; ++n) EXPECT_FALSE(is_strongly_eulerian(cerny(n)).member());
  // Two spanning cycles on 4 states.
  const Automaton cycles(4, {Symbol::from_one_based({{2}, {3}, {4}, {1}}),
                             Symbol::from_one_based({{3}, {1}, {4}, {2}})});
  EXPECT_TRUE(is_strongly_eulerian(cycles).member());
  // Balanced at every vertex but not regular: degrees 1 and 2.
  EXPECT_FALSE(is_strongly_eulerian(Automaton(2, {Symbol::from_one_based({{2}, {1, 2}})})).member());
  EXPECT_EQ(is_strongly_eulerian(all_to_all(4)).certificate->degree,
            std::vector<std::size_t>{4});
}

TEST(StronglyEulerian, SplitDegreeFormula) {
  std::mt19937_64 rng(6);
  std::size_t checked = 0;
  std::vector<Automaton> samples{all_to_all(2), all_to_all(3),
                                 Automaton(3, {Symbol::from_one_based({{1, 2}, {2, 3}, {3, 1}})})};
  for (int i = 0; i < 20; ++i) samples.push_back(support::gen_strongly_eulerian(3 + rng() % 2, rng));
  for (const auto& a : samples) {
    const auto v = is_strongly_eulerian(a);
    ASSERT_TRUE(v.member());
    std::size_t expected = 0;
    for (const auto& s : a.symbols()) {
      const std::size_t k = s.image(0).size();
      std::size_t power = 1;
      for (std::size_t q = 0; q < a.n(); ++q) power *= k;
      expected += power;
    }
    const auto multiset = support::split_multiset(a);
    std::vector<std::size_t> in(a.n(), 0), out(a.n(), 0);
    for (const auto& b : multiset) {
      for (std::size_t q = 0; q < a.n(); ++q) {
        ++out[q];
        ++in[b.image(State(q)).min()];
      }
    }
    for (std::size_t q = 0; q < a.n(); ++q) {
      EXPECT_EQ(in[q], expected);
      EXPECT_EQ(out[q], expected);
    }
    const DegreeProfile p = multigraph_degrees(a.n(), multiset);
    EXPECT_EQ(p.in, in);
    EXPECT_EQ(p.out, out);
    EXPECT_TRUE(p.strongly_connected);
    ++checked;
  }
  EXPECT_GE(checked, 3u);
}

TEST(AperiodicCondition, Counterexamples) {
  const auto fails = satisfies_aperiodic_condition(half_loop());
  EXPECT_EQ(fails.verdict, Verdict::kNonMember);
  EXPECT_EQ(dfa_is_aperiodic(full_split(half_loop()).automaton).verdict, Verdict::kMember);
  EXPECT_TRUE(support::dfa_aperiodic(full_split(half_loop()).automaton));

  EXPECT_EQ(satisfies_aperiodic_condition(all_to_all(2)).verdict, Verdict::kNonMember);
  const Automaton split = full_split(all_to_all(2)).automaton;
  EXPECT_EQ(dfa_is_aperiodic(split).verdict, Verdict::kNonMember);
  EXPECT_FALSE(support::dfa_aperiodic(split));

  EXPECT_EQ(dfa_is_aperiodic(Automaton(3, {Symbol::identity(3)})).verdict, Verdict::kMember);
}

TEST(AperiodicCondition, AgreesWithMonoidOracleOnDfas) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const Automaton d = random_cnfa(2 + rng() % 3, 1 + rng() % 3, 0.0, rng());
    EXPECT_EQ(dfa_is_aperiodic(d).verdict == Verdict::kMember, support::dfa_aperiodic(d));
    EXPECT_EQ(satisfies_aperiodic_condition(d).verdict == Verdict::kMember, support::dfa_aperiodic(d));
  }
  EXPECT_EQ(satisfies_aperiodic_condition(cerny(6), 10).verdict, Verdict::kUndecided);
}

TEST(UnderlyingGraph, Connectivity) {
  EXPECT_TRUE(is_strongly_connected_underlying(intro()));
  EXPECT_FALSE(is_strongly_connected_underlying(Automaton(2, {Symbol::identity(2)})));
  for (std::size_t n = 2; n <= 6; ++n) EXPECT_TRUE(is_strongly_connected_underlying(cerny(n)));
}

TEST(BestBound, Examples) {
  BoundEntry tight;
  const auto bounds = best_bound(intro(), &tight);
  bool saw_one_cluster = false;
  for (const auto& b : bounds) {
    if (b.bound_class == "one_cluster") {
      saw_one_cluster = true;
      EXPECT_EQ(b.value, 4u);
    }
  }
  EXPECT_TRUE(saw_one_cluster);
  EXPECT_EQ(tight.value, 4u);
  EXPECT_EQ(d3_implicit(intro()).length, 4u);

  best_bound(half_loop(), &tight);
  EXPECT_EQ(tight.bound_class, "monotonic");
  EXPECT_EQ(tight.value, 1u);

  best_bound(cerny(4), &tight);
  EXPECT_EQ(tight.value, 9u);
  EXPECT_EQ(dfa_shortest_sync(cerny(4)).length, 9u);
}

TEST(BestBound, ClosedForms) {
  for (std::size_t n = 2; n <= 12; ++n) {
    EXPECT_EQ(one_cluster_bound(n), 2 * n * n - 7 * n + 7);
    EXPECT_EQ(eulerian_bound(n), (n - 2) * (n - 1) + 1);
    EXPECT_EQ(aperiodic_bound(n), n * (n + 1) / 6);
  }
}

TEST(ClassPreservation, Generators) {
  std::mt19937_64 rng(8);
  std::size_t orientable = 0, aperiodic = 0;
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 2 + rng() % 3;
    check_sample(support::gen_cyclic(n, rng));
    check_sample(support::gen_one_cluster(n, rng));
    check_sample(support::gen_monotonic(n, rng).automaton);
    const auto o = support::gen_orientable_candidate(n, rng);
    if (check_orientable_order(o.automaton, o.order)) {
      ++orientable;
      EXPECT_TRUE(is_orientable(o.automaton).member());
      check_sample(o.automaton);
    }
    check_sample(support::gen_strongly_eulerian(n, rng));
    const Automaton ap = support::gen_aperiodic_candidate(n, rng);
    if (satisfies_aperiodic_condition(ap).verdict == Verdict::kMember) {
      ++aperiodic;
      check_sample(ap);
    }
  }
  EXPECT_GT(orientable, 50u);
  EXPECT_GT(aperiodic, 50u);
}

TEST(ClassPreservation, GeneratorsHitTheirClass) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + rng() % 4;
    EXPECT_TRUE(is_cyclic(support::gen_cyclic(n, rng)).member());
    EXPECT_TRUE(is_one_cluster(support::gen_one_cluster(n, rng)).member());
    const auto m = support::gen_monotonic(n, rng);
    EXPECT_TRUE(check_monotonic_order(m.automaton, m.order));
    EXPECT_TRUE(is_strongly_eulerian(support::gen_strongly_eulerian(n, rng)).member());
  }
}
