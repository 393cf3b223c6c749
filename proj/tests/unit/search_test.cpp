#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "randassign/errors.hpp"
#include "randassign/rules.hpp"
#include "randassign/search.hpp"

namespace randassign::search {
namespace {

TEST(Profiles, CountAndDecoding) {
  EXPECT_EQ(profile_count(2), 4u);
  EXPECT_EQ(profile_count(3), 216u);
  EXPECT_EQ(profile_count(4), 331776u);
  EXPECT_EQ(profile_at(3, 0), Profile(3, {0, 1, 2}));
  EXPECT_EQ(profile_at(3, 215), Profile(3, {2, 1, 0}));
  const Profile p = profile_at(3, 1);
  EXPECT_EQ(p[2], (std::vector<Object>{0, 2, 1}));
  EXPECT_EQ(p[0], (std::vector<Object>{0, 1, 2}));
  EXPECT_THROW(profile_at(3, 216), ArgumentError);
  EXPECT_THROW(profile_count(6), ResourceError);
  EXPECT_THROW(profile_count(1), ArgumentError);
}

TEST(Profiles, DecodingIsABijection) {
  std::set<Profile> seen;
  for (std::uint64_t k = 0; k < profile_count(3); ++k) seen.insert(profile_at(3, k));
  EXPECT_EQ(seen.size(), 216u);
}

// Orbit of a profile under object relabelling and agent permutation,
// generated directly.
std::set<Profile> orbit(const Profile& p) {
  const std::size_t n = p.size();
  std::set<Profile> out;
  for (const auto& phi : oracle::permutations(n)) {
    for (const auto& pi : oracle::permutations(n)) {
      Profile image(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (Object o : p[pi[i]]) image[i].push_back(phi[o]);
      }
      out.insert(image);
    }
  }
  return out;
}

TEST(Canonical, ClassesPartitionAllProfiles) {
  for (std::size_t n = 2; n <= 3; ++n) {
    std::set<Profile> expected;
    for (std::uint64_t k = 0; k < profile_count(n); ++k) {
      const Profile p = profile_at(n, k);
      expected.insert(*orbit(p).begin());
    }
    const auto reps = canonical_profiles(n);
    EXPECT_EQ(std::set<Profile>(reps.begin(), reps.end()), expected);
    std::uint64_t covered = 0;
    for (const auto& r : reps) {
      EXPECT_EQ(canonical_form(r), r);
      EXPECT_EQ(orbit_size(r), orbit(r).size());
      covered += orbit_size(r);
    }
    EXPECT_EQ(covered, profile_count(n));
  }
}

TEST(Canonical, FormIsOrbitInvariant) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const Profile p = oracle::random_instance(4, rng).preferences();
    const Profile c = canonical_form(p);
    for (const auto& q : orbit(p)) {
      ASSERT_EQ(canonical_form(q), c);
    }
  }
}

TEST(Canonical, FourAgentClassesCoverAllProfiles) {
  const auto reps = canonical_profiles(4);
  std::uint64_t covered = 0;
  for (const auto& r : reps) covered += orbit_size(r);
  EXPECT_EQ(covered, profile_count(4));
  EXPECT_EQ(reps.size(), 762u);
}

TEST(Canonical, PsIsEquivariant) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = oracle::random_instance(4, rng);
    const Matrix m = probabilistic_serial(inst);
    auto phi = oracle::permutations(4)[static_cast<std::size_t>(trial)];
    std::vector<Agent> pi = oracle::permutations(4)[static_cast<std::size_t>(23 - trial)];
    std::vector<std::vector<Object>> prefs(4);
    for (std::size_t i = 0; i < 4; ++i) {
      for (Object o : inst.preferences()[pi[i]]) prefs[i].push_back(phi[o]);
    }
    const Matrix image = probabilistic_serial(Instance(prefs));
    for (std::size_t i = 0; i < 4; ++i) {
      for (Object o = 0; o < 4; ++o) EXPECT_EQ(image(i, phi[o]), m(pi[i], o));
    }
  }
}

TEST(Enumerate, StreamsAndMaterialises) {
  EXPECT_EQ(enumerate_profiles(2, false).size(), 4u);
  EXPECT_EQ(enumerate_profiles(3, true).size(), canonical_profiles(3).size());
  EXPECT_THROW(enumerate_profiles(5, false), ResourceError);
  std::size_t visited = 0;
  for_each_profile(3, false, [&](const Instance&) { ++visited; });
  EXPECT_EQ(visited, 216u);
}

TEST(Search, ThreeAgentPsExhaustive) {
  const SearchReport r = verify_ps_ef_decomposable(3);
  EXPECT_TRUE(r.verified());
  EXPECT_EQ(r.profiles_examined, 216u);
  EXPECT_EQ(r.profiles_represented, 216u);
  EXPECT_EQ(r.envy_summary.rbegin()->first, Rational(1, 2));
}

TEST(Search, RandomPriorityExhaustiveSmall) {
  const SearchReport r2 = verify_rp_dec_ef(2);
  EXPECT_TRUE(r2.verified());
  EXPECT_EQ(r2.profiles_examined, 4u);
  EXPECT_TRUE(verify_rp_dec_ef(3).verified());
}

TEST(Search, CanonicalAndExhaustiveAgreeOnInjectedFailures) {
  // Fails exactly when some two agents share a favourite object: an
  // orbit-invariant predicate, so both sweeps must agree.
  auto check = [](const Instance& inst) {
    std::set<Object> tops;
    for (Agent i = 0; i < inst.size(); ++i) tops.insert(inst.preference(i)[0]);
    CheckOutcome out{Rational(static_cast<long>(tops.size())), std::nullopt};
    if (tops.size() < inst.size()) {
      out.failure = SearchFailure{inst, Matrix::uniform(inst.size()), "distinct-tops", "shared"};
    }
    return out;
  };
  const SearchReport full = run_search(3, "distinct-tops", {}, check);
  SearchOptions canonical;
  canonical.canonical = true;
  const SearchReport reduced = run_search(3, "distinct-tops", canonical, check);
  std::uint64_t failing_profiles = 0;
  for (const auto& f : reduced.failures) failing_profiles += orbit_size(f.instance.preferences());
  EXPECT_EQ(failing_profiles, full.failures.size());
  EXPECT_EQ(full.failures.size(), 216u - 48u);  // 3! * 2!^3 profiles with distinct tops
  EXPECT_TRUE(verify_ps_ef_decomposable(3, canonical).verified());
}

TEST(Search, ReportsAreReproducibleAcrossWorkerCounts) {
  auto check = [](const Instance& inst) {
    CheckOutcome out{Rational(static_cast<long>(inst.preference(0)[0])), std::nullopt};
    if (inst.preference(1)[0] == inst.preference(2)[0]) {
      out.failure = SearchFailure{inst, Matrix::uniform(3), "p", "c"};
    }
    return out;
  };
  SearchOptions one, many;
  many.jobs = 4;
  const SearchReport a = run_search(3, "x", one, check);
  const SearchReport b = run_search(3, "x", many, check);
  EXPECT_EQ(a.envy_summary, b.envy_summary);
  ASSERT_EQ(a.failures.size(), b.failures.size());
  for (std::size_t k = 0; k < a.failures.size(); ++k) {
    EXPECT_EQ(a.failures[k].instance, b.failures[k].instance);
  }
}

TEST(Search, SamplingIsSeeded) {
  SearchOptions opts;
  opts.sample = 20;
  const SearchReport a = verify_rp_dec_ef(4, opts);
  const SearchReport b = verify_rp_dec_ef(4, opts);
  EXPECT_TRUE(a.sampled);
  EXPECT_EQ(a.profiles_examined, 20u);
  EXPECT_EQ(a.envy_summary, b.envy_summary);
}

TEST(Search, ExhaustiveFiveIsRefused) {
  EXPECT_THROW(verify_rp_dec_ef(5), ResourceError);
}

}  // namespace
}  // namespace randassign::search
