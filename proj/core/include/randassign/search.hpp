#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "randassign/types.hpp"

namespace randassign::search {

/// Largest n accepted by the profile enumerators.
inline constexpr std::size_t kProfileCap = 5;

using Profile = std::vector<std::vector<Object>>;

/// (n!)^n.
std::uint64_t profile_count(std::size_t n);

/// The index-th profile in mixed radix n!: agent 0 is the most significant
/// digit, each digit is a preference in lexicographic permutation order.
Profile profile_at(std::size_t n, std::uint64_t index);

/// Lexicographically minimal encoding of the profile's orbit under object
/// relabelling and agent permutation.
Profile canonical_form(const Profile& profile);

/// Orbit size under object relabelling x agent permutation.
std::uint64_t orbit_size(const Profile& profile);

/// One representative (the canonical form) per equivalence class, in
/// lexicographic order. Throws ResourceError when n > kProfileCap.
std::vector<Profile> canonical_profiles(std::size_t n);

/// Streams every profile (or every class representative) to `visit`.
void for_each_profile(std::size_t n, bool canonicalize,
                      const std::function<void(const Instance&)>& visit);

/// Materialised stream; n <= 4 without canonicalization.
std::vector<Instance> enumerate_profiles(std::size_t n, bool canonicalize);

struct SearchFailure {
  Instance instance;
  AssignmentMatrix matrix;
  std::string property;
  std::string certificate;
};

struct SearchReport {
  std::size_t n = 0;
  std::string check;
  bool canonical = false;
  bool sampled = false;
  std::uint64_t profiles_examined = 0;
  /// Number of classes examined (canonical mode), else 0.
  std::uint64_t canonical_classes = 0;
  /// Profiles covered: orbit sizes summed in canonical mode.
  std::uint64_t profiles_represented = 0;
  std::vector<SearchFailure> failures;
  std::chrono::duration<double> wall_time{0};
  /// Per examined profile or class: the check's envy statistic and how often
  /// it occurred (minimax envy for PS, maximum envy for RP).
  std::map<Rational, std::uint64_t> envy_summary;

  bool verified() const noexcept { return failures.empty(); }
};

struct SearchOptions {
  bool canonical = false;
  std::size_t jobs = 1;
  /// Check this many uniformly random profiles instead of enumerating.
  std::optional<std::uint64_t> sample;
  std::uint64_t seed = 20240601;
};

/// Outcome of one profile's check.
struct CheckOutcome {
  Rational statistic;
  std::optional<SearchFailure> failure;
};

using ProfileCheck = std::function<CheckOutcome(const Instance&)>;

/// Runs `check` over the selected profiles on `jobs` workers; results are
/// merged in enumeration order, so reports are reproducible.
SearchReport run_search(std::size_t n, const std::string& name, const SearchOptions& options,
                        const ProfileCheck& check);

/// PS output is EF-decomposable (minimax envy at most 1/2) for every profile.
SearchReport verify_ps_ef_decomposable(std::size_t n, const SearchOptions& options = {});

/// Random priority's lottery is Dec-EF for every profile.
SearchReport verify_rp_dec_ef(std::size_t n, const SearchOptions& options = {});

CheckOutcome check_ps_ef_decomposable(const Instance& instance);
CheckOutcome check_rp_dec_ef(const Instance& instance);

}  // namespace randassign::search
