#include "randassign/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include "randassign/decomposers.hpp"
#include "randassign/errors.hpp"
#include "randassign/formats.hpp"
#include "randassign/oracles.hpp"
#include "randassign/properties.hpp"
#include "randassign/rules.hpp"
#include "randassign/search.hpp"

namespace randassign::cli {
namespace {

// A command's result: human-readable text plus the same content as stable
// key/value fields for --format structured.
struct Output {
  std::string text;
  std::vector<std::pair<std::string, std::string>> fields;
  int code = kSuccess;

  void field(std::string key, std::string value) {
    fields.emplace_back(std::move(key), std::move(value));
  }
};

// Exceptions carrying an exit code other than the generic mapping.
struct CliFailure {
  int code;
  std::string message;
};

std::string join_row(std::span<const Rational> row) {
  std::string out;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (j) out += ' ';
    out += to_string(row[j]);
  }
  return out;
}

std::string pair_text(const AgentPair& p) {
  return std::to_string(p.first + 1) + " " + std::to_string(p.second + 1);
}

void add_matrix(Output& o, const std::string& prefix, const Matrix& m) {
  o.field(prefix + "rows", std::to_string(m.rows()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    o.field(prefix + "row." + std::to_string(i + 1), join_row(m.row(i)));
  }
}

void add_lottery(Output& o, const std::string& prefix, const Lottery& lottery,
                 const Instance& instance) {
  o.field(prefix + "entries", std::to_string(lottery.support_size()));
  std::size_t k = 0;
  for (const auto& [a, w] : lottery) {
    const std::string key = prefix + "entry." + std::to_string(++k);
    o.field(key + ".weight", to_string(w));
    o.field(key + ".assignment", io::format_assignment(a, instance));
  }
}

Output matrix_output(const Matrix& m) {
  Output o;
  o.text = io::format_matrix(m);
  o.field("kind", "matrix");
  o.field("n", std::to_string(m.rows()));
  add_matrix(o, "", m);
  return o;
}

Output lottery_output(const Lottery& lottery, const Instance& instance) {
  Output o;
  o.text = io::format_lottery(lottery, instance);
  o.field("kind", "lottery");
  o.field("n", std::to_string(lottery.size()));
  add_lottery(o, "", lottery, instance);
  return o;
}

std::string farkas_summary(const std::vector<Rational>& y) {
  std::size_t nonzero = 0;
  for (const auto& v : y) nonzero += v != 0;
  return std::to_string(nonzero) + " of " + std::to_string(y.size()) + " multipliers nonzero";
}

Instance load_instance(const std::string& path) {
  try {
    return io::parse_instance(io::read_file(path));
  } catch (const ParseError& e) {
    throw CliFailure{kUsage, path + ":" + std::to_string(e.line()) + ":" +
                                 std::to_string(e.column()) + ": " + e.what()};
  }
}

Matrix load_matrix(const std::string& path, const Instance& instance) {
  Matrix m;
  try {
    m = io::parse_matrix(io::read_file(path));
  } catch (const ParseError& e) {
    throw CliFailure{kUsage, path + ":" + std::to_string(e.line()) + ":" +
                                 std::to_string(e.column()) + ": " + e.what()};
  }
  require_size(instance, m.rows(), "matrix");
  require_bistochastic(m);
  return m;
}

Lottery load_lottery(const std::string& path, const Instance& instance) {
  try {
    return io::parse_lottery(io::read_file(path), instance);
  } catch (const ParseError& e) {
    throw CliFailure{kUsage, path + ":" + std::to_string(e.line()) + ":" +
                                 std::to_string(e.column()) + ": " + e.what()};
  }
}

// -- solve --------------------------------------------------------------------

Output cmd_solve(const std::string& instance_path, const std::string& rule) {
  const Instance instance = load_instance(instance_path);
  if (rule == "ps") return matrix_output(probabilistic_serial(instance));
  return lottery_output(random_priority(instance), instance);
}

// -- decompose ------------------------------------------------------------------

Output cmd_decompose(const std::string& instance_path, const std::string& matrix_path,
                     const std::string& method) {
  const Instance instance = load_instance(instance_path);
  const Matrix m = load_matrix(matrix_path, instance);

  std::optional<Lottery> lottery;
  if (method == "birkhoff") {
    lottery = birkhoff(m);
  } else if (method == "three-agent") {
    if (instance.size() != 3) {
      throw CliFailure{kPrecondition, "precondition failed: three-agent requires n = 3"};
    }
    lottery = decompose_three_agent(instance, m);
  } else if (method == "two-type") {
    lottery = decompose_two_type(instance, m);
  } else if (method == "uniform") {
    if (m != Matrix::uniform(m.rows())) {
      throw CliFailure{kPrecondition, "precondition failed: uniform requires the uniform matrix"};
    }
    lottery = uniform_decomposition(m.rows());
  } else {
    EfDecomposability r = ef_decomposable(instance, m);
    if (!r.decomposable) {
      Output o;
      o.code = kInfeasible;
      o.text = "infeasible: no Dec-EF decomposition exists\ncertificate: Farkas, " +
               farkas_summary(r.farkas) + "\n";
      o.field("kind", "infeasibility");
      o.field("method", method);
      o.field("certificate.type", "farkas");
      std::string y;
      for (const auto& v : r.farkas) y += (y.empty() ? "" : " ") + to_string(v);
      o.field("certificate.multipliers", y);
      return o;
    }
    lottery = std::move(*r.witness);
  }
  if (matrix_of(*lottery) != m) throw std::logic_error("decomposition does not reconstruct");
  return lottery_output(*lottery, instance);
}

// -- check --------------------------------------------------------------------

const std::vector<std::string> kMatrixProperties = {
    "sd-ef", "weak-sd-ef", "etoe", "sd-efficient", "ef-decomposable", "reversal-symmetric"};
const std::vector<std::string> kLotteryProperties = {"dec-ef", "ex-post-efficient"};

struct Verdict {
  bool holds = false;
  std::vector<std::pair<std::string, std::string>> certificate;
};

Verdict check_matrix(const Instance& instance, const Matrix& m, const std::string& property) {
  Verdict v;
  auto with_pair = [&](const std::optional<AgentPair>& p) {
    v.holds = !p;
    if (p) v.certificate.emplace_back("pair", pair_text(*p));
  };
  if (property == "sd-ef") {
    with_pair(sd_ef_violation(instance, m));
  } else if (property == "weak-sd-ef") {
    with_pair(weak_sd_ef_violation(instance, m));
  } else if (property == "etoe") {
    with_pair(equal_treatment_violation(instance, m));
  } else if (property == "sd-efficient") {
    SdEfficiency r = sd_efficiency(instance, m);
    v.holds = r.efficient;
    v.certificate.emplace_back("slack", to_string(r.slack));
    if (r.dominating) {
      for (std::size_t i = 0; i < r.dominating->rows(); ++i) {
        v.certificate.emplace_back("dominating.row." + std::to_string(i + 1),
                                   join_row(r.dominating->row(i)));
      }
    }
  } else if (property == "ef-decomposable") {
    EfDecomposability r = ef_decomposable(instance, m);
    v.holds = r.decomposable;
    if (r.witness) {
      v.certificate.emplace_back("type", "witness");
      std::size_t k = 0;
      for (const auto& [a, w] : *r.witness) {
        const std::string key = "entry." + std::to_string(++k);
        v.certificate.emplace_back(key + ".weight", to_string(w));
        v.certificate.emplace_back(key + ".assignment", io::format_assignment(a, instance));
      }
    } else {
      v.certificate.emplace_back("type", "farkas");
      v.certificate.emplace_back("summary", farkas_summary(r.farkas));
    }
  } else {
    ReversalSymmetry r = reversal_symmetric_implementable(instance, m);
    v.holds = r.implementable;
    if (r.implementable) {
      v.certificate.emplace_back("type", "order-weights");
      std::size_t k = 0;
      for (const auto& [order, w] : r.order_weights) {
        if (w == 0) continue;
        std::string text;
        for (Agent i : order) text += (text.empty() ? "" : " ") + std::to_string(i + 1);
        const std::string key = "order." + std::to_string(++k);
        v.certificate.emplace_back(key + ".weight", to_string(w));
        v.certificate.emplace_back(key + ".agents", text);
      }
    } else {
      v.certificate.emplace_back("type", "farkas");
      v.certificate.emplace_back("summary", farkas_summary(r.farkas));
    }
  }
  return v;
}

Verdict check_lottery(const Instance& instance, const Lottery& lottery,
                      const std::string& property) {
  Verdict v;
  if (property == "dec-ef") {
    const EnvyMatrix e = envy_matrix(instance, lottery);
    Rational worst = 0;
    AgentPair at{0, 0};
    for (std::size_t i = 0; i < e.rows(); ++i) {
      for (std::size_t k = 0; k < e.cols(); ++k) {
        if (e(i, k) > worst) {
          worst = e(i, k);
          at = {i, k};
        }
      }
    }
    v.holds = worst <= Rational(1, 2);
    v.certificate.emplace_back("max-envy", to_string(worst));
    if (worst > 0) v.certificate.emplace_back("pair", pair_text(at));
  } else {
    v.holds = true;
    for (const auto& [a, w] : lottery) {
      if (auto cycle = trading_cycle(instance, a)) {
        v.holds = false;
        std::string agents;
        for (Agent i : *cycle) agents += (agents.empty() ? "" : " ") + std::to_string(i + 1);
        v.certificate.emplace_back("assignment", io::format_assignment(a, instance));
        v.certificate.emplace_back("cycle", agents);
        break;
      }
    }
  }
  return v;
}

Output cmd_check(const std::string& instance_path, const std::string& target_path,
                 const std::string& property) {
  const Instance instance = load_instance(instance_path);
  const std::string target = io::read_file(target_path);
  const bool is_lottery = io::looks_like_lottery(target);
  const bool wants_lottery = std::find(kLotteryProperties.begin(), kLotteryProperties.end(),
                                       property) != kLotteryProperties.end();
  if (is_lottery != wants_lottery) {
    throw CliFailure{kUsage, "property '" + property + "' needs a " +
                                 (wants_lottery ? "lottery" : "matrix") + " target, got a " +
                                 (is_lottery ? "lottery" : "matrix")};
  }
  const Verdict v = wants_lottery
                        ? check_lottery(instance, load_lottery(target_path, instance), property)
                        : check_matrix(instance, load_matrix(target_path, instance), property);
  Output o;
  o.code = v.holds ? kSuccess : kFalse;
  o.text = v.holds ? "true\n" : "false\n";
  o.field("kind", "verdict");
  o.field("property", property);
  o.field("verdict", v.holds ? "true" : "false");
  for (const auto& [key, value] : v.certificate) {
    o.text += key + ": " + value + "\n";
    o.field("certificate." + key, value);
  }
  return o;
}

// -- envy ---------------------------------------------------------------------

Output cmd_envy(const std::string& instance_path, const std::string& lottery_path) {
  const Instance instance = load_instance(instance_path);
  const Lottery lottery = load_lottery(lottery_path, instance);
  Output o = matrix_output(envy_matrix(instance, lottery));
  o.fields.front().second = "envy-matrix";
  return o;
}

// -- search -------------------------------------------------------------------

Output cmd_search(std::size_t n, const std::string& check, const search::SearchOptions& options) {
  if (n > 4 && !options.sample) {
    throw CliFailure{kUsage, "n = " + std::to_string(n) +
                                 " is beyond exhaustive search; pass --sample"};
  }
  const search::SearchReport r = check == "ps-ef-decomposable"
                                     ? search::verify_ps_ef_decomposable(n, options)
                                     : search::verify_rp_dec_ef(n, options);
  Output o;
  const std::string mode = r.sampled ? "sampled" : r.canonical ? "canonical" : "exhaustive";
  o.field("kind", "search-report");
  o.field("check", r.check);
  o.field("n", std::to_string(r.n));
  o.field("mode", mode);
  o.field("profiles-examined", std::to_string(r.profiles_examined));
  o.field("failures", std::to_string(r.failures.size()));
  if (r.canonical) o.field("classes", std::to_string(r.canonical_classes));
  o.field("profiles-represented", std::to_string(r.profiles_represented));
  if (!r.envy_summary.empty()) o.field("statistic.max", to_string(r.envy_summary.rbegin()->first));
  for (const auto& [value, count] : r.envy_summary) {
    o.field("statistic.count." + to_string(value), std::to_string(count));
  }
  std::ostringstream seconds;
  seconds << std::fixed << std::setprecision(3) << r.wall_time.count();
  o.field("wall-time-seconds", seconds.str());

  std::ostringstream text;
  text << "check: " << r.check << "\nn: " << r.n << "\nmode: " << mode << '\n';
  text << "failures: " << r.failures.size() << " / " << r.profiles_examined << '\n';
  if (r.canonical) text << "classes: " << r.canonical_classes << '\n';
  text << "profiles-represented: " << r.profiles_represented << '\n';
  if (!r.envy_summary.empty()) {
    text << "max-statistic: " << to_string(r.envy_summary.rbegin()->first) << '\n';
  }
  text << "wall-time: " << seconds.str() << "s\n";

  std::size_t k = 0;
  for (const auto& f : r.failures) {
    const std::string key = "failure." + std::to_string(++k);
    std::string prefs;
    for (Agent i = 0; i < f.instance.size(); ++i) {
      if (i) prefs += " | ";
      for (std::size_t t = 0; t < f.instance.size(); ++t) {
        if (t) prefs += ' ';
        prefs += f.instance.object_name(f.instance.preference(i)[t]);
      }
    }
    o.field(key + ".profile", prefs);
    add_matrix(o, key + ".matrix.", f.matrix);
    o.field(key + ".property", f.property);
    o.field(key + ".certificate", f.certificate);
    text << "failure " << k << ": " << prefs << "\n  " << f.certificate << '\n';
  }
  o.text = text.str();
  o.code = r.verified() ? kSuccess : kFalse;
  return o;
}

void emit(const Output& o, const std::string& format, std::ostream& out) {
  if (format == "text") {
    out << o.text;
    return;
  }
  for (const auto& [key, value] : o.fields) out << key << ": " << value << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact random assignment: rules, decompositions, and fairness checks",
               "randassign"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}));

  std::string instance_path, target_path, rule = "ps", method = "birkhoff", property;
  auto* solve = app.add_subcommand("solve", "Compute the PS matrix or the RP lottery");
  solve->add_option("instance", instance_path, "Instance file")->required();
  solve->add_option("--rule", rule, "Assignment rule")->check(CLI::IsMember({"ps", "rp"}));

  auto* decompose = app.add_subcommand("decompose", "Decompose a bistochastic matrix");
  decompose->add_option("instance", instance_path, "Instance file")->required();
  decompose->add_option("matrix", target_path, "Matrix file")->required();
  decompose->add_option("--method", method, "Decomposition method")
      ->check(CLI::IsMember({"birkhoff", "three-agent", "two-type", "lp-dec-ef", "uniform"}));

  auto* check = app.add_subcommand("check", "Decide a fairness or efficiency property");
  check->add_option("instance", instance_path, "Instance file")->required();
  check->add_option("target", target_path, "Matrix or lottery file")->required();
  std::vector<std::string> all_properties = kMatrixProperties;
  all_properties.insert(all_properties.end(), kLotteryProperties.begin(),
                        kLotteryProperties.end());
  check->add_option("--property", property, "Property to check")
      ->required()
      ->check(CLI::IsMember(all_properties));

  auto* envy = app.add_subcommand("envy", "Envy matrix of a lottery");
  envy->add_option("instance", instance_path, "Instance file")->required();
  envy->add_option("lottery", target_path, "Lottery file")->required();

  std::size_t n = 0;
  std::string search_check = "ps-ef-decomposable";
  search::SearchOptions options;
  std::uint64_t sample = 0;
  auto* search_cmd = app.add_subcommand("search", "Verify a claim over all preference profiles");
  search_cmd->add_option("--n", n, "Number of agents")->required()->check(CLI::Range(2, 5));
  search_cmd->add_option("--check", search_check, "Claim to verify")
      ->check(CLI::IsMember({"ps-ef-decomposable", "rp-dec-ef"}));
  search_cmd->add_flag("--canonical", options.canonical,
                       "One representative per relabelling class");
  search_cmd->add_option("--jobs", options.jobs, "Worker threads")->check(CLI::Range(1, 256));
  auto* sample_opt = search_cmd->add_option("--sample", sample, "Random profiles to check")
                         ->check(CLI::PositiveNumber);
  search_cmd->add_option("--seed", options.seed, "Sampling seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    Output result;
    if (*solve) {
      result = cmd_solve(instance_path, rule);
    } else if (*decompose) {
      result = cmd_decompose(instance_path, target_path, method);
    } else if (*check) {
      result = cmd_check(instance_path, target_path, property);
    } else if (*envy) {
      result = cmd_envy(instance_path, target_path);
    } else {
      if (*sample_opt) options.sample = sample;
      result = cmd_search(n, search_check, options);
    }
    emit(result, format, out);
    return result.code;
  } catch (const CliFailure& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kPrecondition;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kUsage;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace randassign::cli
