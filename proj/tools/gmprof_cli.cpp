// gmprof: command-line front end.
//
// Exit codes: 0 success / homeomorphic / equivalent, 1 distinct / not rigid /
// census mismatch, 2 input error, 3 budget exceeded, 4 internal error.

#include "gmprof/decider.hpp"
#include "gmprof/document.hpp"
#include "gmprof/error.hpp"
#include "gmprof/genus.hpp"
#include "gmprof/invariants.hpp"
#include "gmprof/presentation.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace gmprof;

enum Exit { Ok = 0, Negative = 1, InputError = 2, BudgetExceeded = 3, InternalError = 4 };

struct Options {
  bool quiet = false;
  std::string format = "json";
  std::optional<std::uint64_t> budget;
};

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open '" + path + "'");
  ss << in.rdbuf();
  return ss.str();
}

GraphManifold load(const std::string& path) {
  try {
    return parse_manifold(read_input(path));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void flatten(const nlohmann::json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

void emit(const Options& opt, const std::string& report) {
  if (opt.quiet) return;
  if (opt.format == "text") flatten(nlohmann::json::parse(report), "", std::cout);
  else std::cout << report;
}

SearchLimits limits(const Options& opt) {
  SearchLimits l;
  if (opt.budget) l.max_modulus = static_cast<std::int64_t>(std::min<std::uint64_t>(*opt.budget, INT64_MAX));
  return l;
}

CountBudget count_budget(const Options& opt) {
  CountBudget b;
  if (opt.budget) b.max_nodes = *opt.budget;
  return b;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

TwistTarget parse_target(const std::string& kind, const std::string& value) {
  if (kind == "cone") {
    try {
      std::size_t used = 0;
      const unsigned long i = std::stoul(value, &used);
      if (used == value.size()) return ConeTarget{i};
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::Precondition, "bad cone index '" + value + "'");
  }
  if (kind == "end") {
    if (!value.empty() && value.back() == '~') return EndTarget{value.substr(0, value.size() - 1), Side::To};
    return EndTarget{value, Side::From};
  }
  throw Error(ErrorCode::Precondition, "twist target must be cone:<i> or end:<edge>[~]");
}

// V:cone:I|end:E[~]:cone:I|end:E[~]:K
GraphManifold apply_twist(const GraphManifold& m, const std::string& spec) {
  const std::vector<std::string> parts = split(spec, ':');
  if (parts.size() != 6)
    throw Error(ErrorCode::Precondition, "twist must look like V:cone:0:end:e:1, got '" + spec + "'");
  Integer k;
  try {
    k = Integer(parts[5]);
  } catch (const std::exception&) {
    throw Error(ErrorCode::Precondition, "bad twist amount '" + parts[5] + "'");
  }
  return twist_move(m, parts[0], parse_target(parts[1], parts[2]), parse_target(parts[3], parts[4]), k);
}

int run(int argc, char** argv) {
  CLI::App app{"Homeomorphism and profinite isomorphism of graph manifolds"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("-q,--quiet", opt.quiet, "Print nothing; report through the exit code");
  app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--budget", opt.budget, "Largest kappa modulus and hom-count search size");

  std::string file, file2;
  auto* validate_cmd = app.add_subcommand("validate", "Check a manifold document");
  validate_cmd->add_option("FILE", file, "Document, or - for stdin")->required();

  std::optional<std::int64_t> prime;
  auto* info_cmd = app.add_subcommand("info", "Slopes, Euler characteristics, bipartition");
  info_cmd->add_option("FILE", file)->required();
  info_cmd->add_option("--prime", prime, "Add the residual p-finiteness table");

  std::string mode = "profinite";
  auto* compare_cmd = app.add_subcommand("compare", "Compare two manifolds");
  compare_cmd->add_option("--mode", mode)->check(CLI::IsMember({"homeo", "profinite"}));
  compare_cmd->add_option("FILE1", file)->required();
  compare_cmd->add_option("FILE2", file2)->required();

  auto* genus_cmd = app.add_subcommand("genus", "Enumerate the profinite genus");
  genus_cmd->add_option("FILE", file)->required();

  std::string groups;
  std::size_t max_index = 0;
  auto* census_cmd = app.add_subcommand("census", "Finite-quotient fingerprint");
  census_cmd->add_option("FILE", file)->required();
  census_cmd->add_option("FILE2", file2, "Second manifold to compare against");
  census_cmd->add_option("--groups", groups, "Comma separated group names (default: catalogue)");
  census_cmd->add_option("--max-index", max_index, "Count subgroups of index 2..N");

  std::vector<std::string> flips, twists;
  bool do_mirror = false;
  auto* moves_cmd = app.add_subcommand("moves", "Apply moves and print the resulting document");
  moves_cmd->add_option("FILE", file)->required();
  moves_cmd->add_option("--flip", flips, "Fibre flip at a vertex (repeatable)");
  moves_cmd->add_option("--twist", twists, "V:cone:I|end:E[~]:cone:I|end:E[~]:K (repeatable)");
  moves_cmd->add_flag("--mirror", do_mirror, "Reverse the orientation last");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? Ok : InputError;
  }

  try {
    if (*validate_cmd) {
      ValidationReport report = validate(decode_manifold(read_input(file)));
      emit(opt, report_validation(report));
      return report.ok ? Ok : InputError;
    }
    if (*info_cmd) {
      GraphManifold m = load(file);
      InfoOptions io;
      if (prime) {
        if (!is_prime(Integer(*prime))) throw Error(ErrorCode::Precondition, "--prime must be prime");
        io.prime = Integer(*prime);
      }
      emit(opt, report_info(m, io));
      return Ok;
    }
    if (*compare_cmd) {
      GraphManifold a = load(file), b = load(file2);
      if (mode == "homeo") {
        auto w = check_homeomorphic(a, b);
        emit(opt, report_homeo(a, b, w));
        return w ? Ok : Negative;
      }
      ProfiniteVerdict v = check_profinite_iso(a, b, limits(opt));
      emit(opt, report_profinite(a, b, v));
      return v.kind == VerdictKind::Distinct ? Negative : Ok;
    }
    if (*genus_cmd) {
      GenusResult g = profinite_genus(load(file), limits(opt));
      emit(opt, report_genus(g));
      return g.rigid ? Ok : Negative;
    }
    if (*census_cmd) {
      std::vector<FiniteGroupSpec> catalogue;
      if (groups.empty()) catalogue = builtin_catalogue();
      else
        for (const std::string& name : split(groups, ',')) catalogue.push_back(group_by_name(name));
      std::vector<GraphManifold> ms{load(file)};
      if (!file2.empty()) ms.push_back(load(file2));
      std::vector<CensusReport> reports;
      for (const GraphManifold& m : ms) {
        CensusReport r{m.name, hom_census(m, catalogue, count_budget(opt)), {}};
        const Presentation p = build_presentation(m);
        for (std::size_t n = 2; n <= max_index; ++n)
          r.subgroups.push_back({n, count_index_subgroups(p, n, count_budget(opt))});
        reports.push_back(std::move(r));
      }
      emit(opt, report_census(reports));
      if (reports.size() == 2 &&
          (reports[0].homs != reports[1].homs || reports[0].subgroups != reports[1].subgroups))
        return Negative;
      return Ok;
    }
    if (*moves_cmd) {
      GraphManifold m = load(file);
      for (const std::string& v : flips) m = fiber_flip(m, v);
      for (const std::string& t : twists) m = apply_twist(m, t);
      if (do_mirror) m = mirror(m);
      if (!opt.quiet) std::cout << print_manifold(m);
      return Ok;
    }
  } catch (const Error& e) {
    std::cerr << "gmprof: " << to_string(e.code()) << ": " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::Parse:
      case ErrorCode::Schema:
      case ErrorCode::Invalid:
      case ErrorCode::Precondition: return InputError;
      case ErrorCode::Budget: return BudgetExceeded;
      case ErrorCode::Internal: return InternalError;
    }
  } catch (const std::exception& e) {
    std::cerr << "gmprof: internal error: " << e.what() << '\n';
    return InternalError;
  }
  return InternalError;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
