#include "randassign/search.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <functional>
#include <thread>

#include "randassign/errors.hpp"
#include "randassign/oracles.hpp"
#include "randassign/rules.hpp"

namespace randassign::search {
namespace {

std::vector<std::vector<Object>> permutations_of(std::size_t n) {
  std::vector<Object> p(n);
  std::iota(p.begin(), p.end(), Object{0});
  std::vector<std::vector<Object>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

void require_profile_cap(std::size_t n) {
  if (n < 2) throw ArgumentError("profiles need n >= 2");
  if (n > kProfileCap) {
    throw ResourceError("profile enumeration supports n <= " + std::to_string(kProfileCap) +
                        ", got " + std::to_string(n));
  }
}

// Relabel objects so that `pref` becomes 0, 1, ..., n-1.
std::vector<Object> relabeling_from(const std::vector<Object>& pref) {
  std::vector<Object> phi(pref.size());
  for (std::size_t k = 0; k < pref.size(); ++k) phi[pref[k]] = k;
  return phi;
}

std::vector<Object> relabel(const std::vector<Object>& phi, const std::vector<Object>& pref) {
  std::vector<Object> out(pref.size());
  for (std::size_t k = 0; k < pref.size(); ++k) out[k] = phi[pref[k]];
  return out;
}

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

std::uint64_t profile_count(std::size_t n) {
  require_profile_cap(n);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= factorial(n);
  return total;
}

Profile profile_at(std::size_t n, std::uint64_t index) {
  require_profile_cap(n);
  if (index >= profile_count(n)) throw ArgumentError("profile index out of range");
  const std::uint64_t base = factorial(n);
  Profile profile(n);
  for (std::size_t i = n; i-- > 0;) {
    std::uint64_t digit = index % base;
    index /= base;
    // Decode the digit-th permutation in lexicographic order (factoradic).
    std::vector<Object> pool(n);
    std::iota(pool.begin(), pool.end(), Object{0});
    std::vector<Object> pref;
    for (std::size_t k = n; k > 0; --k) {
      const std::uint64_t block = factorial(k - 1);
      const std::size_t pick = static_cast<std::size_t>(digit / block);
      digit %= block;
      pref.push_back(pool[pick]);
      pool.erase(pool.begin() + static_cast<long>(pick));
    }
    profile[i] = std::move(pref);
  }
  return profile;
}

Profile canonical_form(const Profile& profile) {
  // The minimal encoding starts with the identity preference: choose which
  // agent goes first, relabel objects to make it the identity (the relabelling
  // is then forced), and sort the remaining agents.
  std::optional<Profile> best;
  for (std::size_t first = 0; first < profile.size(); ++first) {
    const auto phi = relabeling_from(profile[first]);
    Profile candidate;
    candidate.reserve(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i) {
      if (i != first) candidate.push_back(relabel(phi, profile[i]));
    }
    std::sort(candidate.begin(), candidate.end());
    candidate.insert(candidate.begin(), relabel(phi, profile[first]));
    if (!best || candidate < *best) best = std::move(candidate);
  }
  return *best;
}

std::uint64_t orbit_size(const Profile& profile) {
  const std::size_t n = profile.size();
  // Orbit-stabiliser: |Stab| = #{relabellings preserving the multiset of
  // preferences} * prod(multiplicity!). A preserving relabelling is fixed by
  // where it sends profile[0], and must send it to a list in the multiset.
  std::map<std::vector<Object>, std::uint64_t> multiplicity;
  for (const auto& p : profile) ++multiplicity[p];
  Profile sorted = profile;
  std::sort(sorted.begin(), sorted.end());

  std::uint64_t relabelings = 0;
  for (const auto& [target, count] : multiplicity) {
    std::vector<Object> phi(n);
    for (std::size_t k = 0; k < n; ++k) phi[profile[0][k]] = target[k];
    Profile image;
    for (const auto& p : profile) image.push_back(relabel(phi, p));
    std::sort(image.begin(), image.end());
    if (image == sorted) ++relabelings;
  }
  std::uint64_t agent_symmetries = 1;
  for (const auto& [pref, count] : multiplicity) agent_symmetries *= factorial(count);
  return factorial(n) * factorial(n) / (relabelings * agent_symmetries);
}

std::vector<Profile> canonical_profiles(std::size_t n) {
  require_profile_cap(n);
  const auto perms = permutations_of(n);
  const std::size_t m = perms.size();
  std::vector<Profile> out;
  // Non-decreasing index tuples for agents 1..n-1; agent 0 is the identity.
  std::vector<std::size_t> idx(n - 1, 0);
  for (;;) {
    Profile p;
    p.reserve(n);
    p.push_back(perms[0]);
    for (std::size_t k : idx) p.push_back(perms[k]);
    if (canonical_form(p) == p) out.push_back(std::move(p));

    std::size_t pos = idx.size();
    while (pos > 0 && idx[pos - 1] == m - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t k = pos; k < idx.size(); ++k) idx[k] = idx[pos - 1];
  }
  return out;
}

void for_each_profile(std::size_t n, bool canonicalize,
                      const std::function<void(const Instance&)>& visit) {
  require_profile_cap(n);
  if (canonicalize) {
    for (auto& p : canonical_profiles(n)) visit(Instance(std::move(p)));
    return;
  }
  const std::uint64_t total = profile_count(n);
  for (std::uint64_t k = 0; k < total; ++k) visit(Instance(profile_at(n, k)));
}

std::vector<Instance> enumerate_profiles(std::size_t n, bool canonicalize) {
  if (!canonicalize && n > 4) {
    throw ResourceError("materialising all profiles is limited to n <= 4");
  }
  std::vector<Instance> out;
  for_each_profile(n, canonicalize, [&](const Instance& inst) { out.push_back(inst); });
  return out;
}

SearchReport run_search(std::size_t n, const std::string& name, const SearchOptions& options,
                        const ProfileCheck& check) {
  require_profile_cap(n);
  const auto start = std::chrono::steady_clock::now();

  SearchReport report;
  report.n = n;
  report.check = name;
  report.sampled = options.sample.has_value();
  report.canonical = options.canonical && !report.sampled;

  // Work items: explicit profiles (canonical/sampled) or indices.
  std::vector<Profile> explicit_profiles;
  std::uint64_t total = 0;
  if (report.sampled) {
    std::mt19937_64 rng(options.seed);
    const auto perms = permutations_of(n);
    std::uniform_int_distribution<std::size_t> pick(0, perms.size() - 1);
    for (std::uint64_t k = 0; k < *options.sample; ++k) {
      Profile p;
      for (std::size_t i = 0; i < n; ++i) p.push_back(perms[pick(rng)]);
      explicit_profiles.push_back(std::move(p));
    }
    total = explicit_profiles.size();
  } else if (report.canonical) {
    explicit_profiles = canonical_profiles(n);
    total = explicit_profiles.size();
  } else {
    if (n > 4) {
      throw ResourceError("exhaustive search is limited to n <= 4; use sampling for n = 5");
    }
    total = profile_count(n);
  }

  // Each worker keeps a partial report; partials merge associatively and
  // failures are ordered by enumeration index afterwards.
  struct Partial {
    std::map<Rational, std::uint64_t> summary;
    std::vector<std::pair<std::uint64_t, SearchFailure>> failures;
  };
  const std::size_t jobs = std::max<std::size_t>(1, options.jobs);
  std::vector<Partial> partials(jobs);
  std::atomic<std::uint64_t> next{0};
  constexpr std::uint64_t kChunk = 64;
  auto worker = [&](Partial& out) {
    for (;;) {
      const std::uint64_t begin = next.fetch_add(kChunk);
      if (begin >= total) return;
      const std::uint64_t end = std::min(total, begin + kChunk);
      for (std::uint64_t k = begin; k < end; ++k) {
        Instance inst(explicit_profiles.empty() ? profile_at(n, k) : explicit_profiles[k]);
        CheckOutcome r = check(inst);
        ++out.summary[r.statistic];
        if (r.failure) out.failures.emplace_back(k, std::move(*r.failure));
      }
    }
  };
  if (jobs == 1) {
    worker(partials.front());
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker, std::ref(partials[j]));
    for (auto& t : pool) t.join();
  }

  report.profiles_examined = total;
  if (report.canonical) {
    report.canonical_classes = total;
    for (const auto& p : explicit_profiles) report.profiles_represented += orbit_size(p);
  } else {
    report.profiles_represented = total;
  }
  std::vector<std::pair<std::uint64_t, SearchFailure>> failures;
  for (auto& part : partials) {
    for (const auto& [value, count] : part.summary) report.envy_summary[value] += count;
    for (auto& f : part.failures) failures.push_back(std::move(f));
  }
  std::sort(failures.begin(), failures.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& f : failures) report.failures.push_back(std::move(f.second));
  report.wall_time = std::chrono::steady_clock::now() - start;
  return report;
}

CheckOutcome check_ps_ef_decomposable(const Instance& instance) {
  AssignmentMatrix ps = probabilistic_serial(instance);
  MinimaxEnvy best = minimax_envy(instance, ps);
  CheckOutcome out{best.value, std::nullopt};
  if (best.value > Rational(1, 2)) {
    out.failure = SearchFailure{instance, std::move(ps), "ef-decomposable",
                                "minimax envy " + to_string(best.value) + " > 1/2"};
  }
  return out;
}

CheckOutcome check_rp_dec_ef(const Instance& instance) {
  const Lottery rp = random_priority(instance);
  const EnvyMatrix e = envy_matrix(instance, rp);
  Rational worst = 0;
  std::pair<Agent, Agent> at{0, 0};
  for (std::size_t i = 0; i < e.rows(); ++i) {
    for (std::size_t k = 0; k < e.cols(); ++k) {
      if (e(i, k) > worst) {
        worst = e(i, k);
        at = {i, k};
      }
    }
  }
  CheckOutcome out{worst, std::nullopt};
  if (worst > Rational(1, 2)) {
    out.failure = SearchFailure{instance, matrix_of(rp), "dec-ef",
                                "agent " + std::to_string(at.first + 1) + " envies agent " +
                                    std::to_string(at.second + 1) + " with probability " +
                                    to_string(worst)};
  }
  return out;
}

SearchReport verify_ps_ef_decomposable(std::size_t n, const SearchOptions& options) {
  return run_search(n, "ps-ef-decomposable", options, check_ps_ef_decomposable);
}

SearchReport verify_rp_dec_ef(std::size_t n, const SearchOptions& options) {
  return run_search(n, "rp-dec-ef", options, check_rp_dec_ef);
}

}  // namespace randassign::search
