// Command-line front end: solve instances, trace choice runs, audit rule
// properties / stability / manipulability, reproduce the bundled markets,
// and generate random instances. Every report ends with a machine-readable
// "VERDICT: pass|fail <witness-count>" line; exit code 0 means pass.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "asylum/asylum.hpp"

using namespace asylum;

namespace {

Instance load(const std::string& path, bool allow_invalid) {
  std::ifstream in(path);
  if (!in.good()) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), allow_invalid ? Validation::lenient : Validation::strict);
}

int state_index_or_die(const Instance& inst, const std::string& id) {
  auto m = inst.state_index(id);
  if (!m) throw LookupError("UnknownState", id);
  return *m;
}

int verdict(bool pass, std::size_t witnesses) {
  std::cout << "VERDICT: " << (pass ? "pass" : "fail") << " " << witnesses << "\n";
  return pass ? 0 : 1;
}

int emit(const AuditReport& report) {
  std::cout << render_audit_report(report);
  return report.passed() ? 0 : 1;
}

Contract parse_contract(const Instance& inst, const std::string& text) {
  auto first = text.find(':');
  auto second = text.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos)
    throw Error("contract must be seeker:state:wait, got " + text);
  auto a = inst.seeker_index(text.substr(0, first));
  auto m = inst.state_index(text.substr(first + 1, second - first - 1));
  auto wv = parse_rational(text.substr(second + 1));
  if (!a || !m || !wv) throw Error("contract references undeclared entities: " + text);
  auto w = inst.wait_index(*wv);
  if (!w) throw Error("contract references undeclared wait time: " + text);
  return Contract{*a, *m, *w};
}

struct ClaimLog {
  std::size_t failed = 0;

  void claim(bool ok, const std::string& what) {
    std::cout << (ok ? "ok: " : "FAIL: ") << what << "\n";
    if (!ok) ++failed;
  }
};

int reproduce(const std::string& name) {
  BundledExample ex = bundled_example(name);
  const Instance& inst = ex.instance;
  ClaimLog log;

  if (ex.name == "example1") {
    auto run = [&](std::vector<std::string> labels) {
      return choose_result(inst, 0, ex.contract_set(labels));
    };
    log.claim(run({"x1", "x2", "x4"}) == ex.contract_set({"x1", "x4"}), "choice from {x1,x2,x4} is {x1,x4}");
    log.claim(run({"x2", "x4"}) == ex.contract_set({"x2"}), "choice from {x2,x4} is {x2}");
    log.claim(run({"x2", "x3"}) == ex.contract_set({"x2", "x3"}), "choice from {x2,x3} is {x2,x3}");
    log.claim(run({"x1", "x2", "x3"}) == ex.contract_set({"x1"}), "choice from {x1,x2,x3} is {x1}");
    ContractSet universe = full_contract_universe(inst);
    AuditReport sub = is_substitutable(inst, 0, make_choice_rule(inst, 0), universe);
    log.claim(!sub.passed() && !sub.witnesses.empty() &&
                  sub.witnesses[0].field("X'") == set_str(inst, ex.contract_set({"x2"})) &&
                  sub.witnesses[0].field("x") == inst.contract_str(ex.contract("x4")),
              "substitutability fails at X'={x2}, x=x4, x'=x1");
    AuditReport lad = satisfies_LAD(inst, 0, make_choice_rule(inst, 0), universe);
    log.claim(!lad.passed() && !lad.witnesses.empty() &&
                  lad.witnesses[0].field("X'") == set_str(inst, ex.contract_set({"x2", "x3"})),
              "aggregate demand drops at X'={x2,x3}, x=x1");
  } else if (ex.name == "example2") {
    auto run = [&](std::vector<std::string> labels) {
      return choose_completed_result(inst, 0, ex.contract_set(labels));
    };
    log.claim(run({"x1", "x2", "x4"}) == ex.contract_set({"x1", "x2"}), "completed choice from {x1,x2,x4} is {x1,x2}");
    log.claim(run({"x2", "x4"}) == ex.contract_set({"x2"}), "completed choice from {x2,x4} is {x2}");
    log.claim(run({"x1", "x2", "x3"}) == ex.contract_set({"x1", "x2"}), "completed choice from {x1,x2,x3} is {x1,x2}");
    ContractSet universe = full_contract_universe(inst);
    ChoiceRule completed = make_completed_rule(inst, 0);
    log.claim(is_substitutable(inst, 0, completed, universe).passed(), "completed rule is substitutable");
    log.claim(satisfies_LAD(inst, 0, completed, universe).passed(), "completed rule satisfies aggregate demand");
    log.claim(satisfies_IRC(inst, 0, completed, universe).passed(), "completed rule ignores rejected contracts");
    log.claim(is_completion_on(inst, 0, completed, make_choice_rule(inst, 0), universe).passed(),
              "completed rule is a completion of the base rule");
  } else if (ex.name == "example3") {
    ContractSet universe = ex.contract_set({"x1", "x2", "x3"});
    AuditReport pinned = pinned_completion_witness(inst, 0, PinnedProperty::substitutability, universe);
    log.claim(!pinned.passed() && !pinned.witnesses.empty() &&
                  pinned.witnesses[0].field("X1") == set_str(inst, ex.contract_set({"x2", "x3"})) &&
                  pinned.witnesses[0].field("chose-X2") == set_str(inst, ex.contract_set({"x1", "x3"})),
              "no completion can be substitutable: pinned pair ({x2,x3}, {x1,x2,x3})");
    log.claim(!is_unilaterally_substitutable(inst, 0, make_choice_rule(inst, 0), universe).passed(),
              "unilateral substitutability fails too");
  } else if (ex.name == "example4") {
    ContractSet universe = ex.contract_set({"x1", "x2", "x3"});
    AuditReport pinned = pinned_completion_witness(inst, 0, PinnedProperty::lad, universe);
    log.claim(!pinned.passed() && !pinned.witnesses.empty() &&
                  pinned.witnesses[0].field("X1") == set_str(inst, ex.contract_set({"x2", "x3"})) &&
                  pinned.witnesses[0].field("chose-X2") == set_str(inst, ex.contract_set({"x1"})),
              "no completion can satisfy aggregate demand: pinned pair ({x2,x3}, {x1,x2,x3})");
  } else if (ex.name == "example5") {
    log.claim(enumerate_stable(inst, base_rules(inst)).empty(), "no stable allocation exists");
  } else {
    int a1 = *inst.seeker_index("a1");
    int a2 = *inst.seeker_index("a2");
    auto truthful = enumerate_stable(inst, base_rules(inst));
    log.claim(truthful.size() == 1 && truthful[0] == ex.allocations.at("Y1"),
              "the truthful market has exactly one stable allocation");
    log.claim(run_with_rule_variants(inst, RuleVariant::base).outcome == ex.allocations.at("Y1"),
              "cumulative offer lands on it");

    std::vector<Preference> shifted = inst.preferences;
    shifted[a2].ranking = ex.misreports.at("a2_hat");
    auto two = enumerate_stable(inst, shifted, base_rules(inst));
    log.claim(two.size() == 2 && two[0] == ex.allocations.at("Y1") && two[1] == ex.allocations.at("Y2"),
              "the misreported market has exactly the two published stable allocations");

    MisreportDomain domain = truncation_permutation_domain(inst);
    auto y2_branch = audit_strategy_proofness(inst, stable_selecting_mechanism(StableSelection::lex_max), domain);
    bool a2_hit = false;
    for (const auto& rep : y2_branch)
      a2_hit |= rep.seeker == a2 && rep.misreport == ex.misreports.at("a2_hat");
    log.claim(a2_hit, "a2 profits against the rival-preferring selection");

    Instance shifted_inst = inst;
    shifted_inst.preferences = shifted;
    auto y1_branch = audit_strategy_proofness(
        shifted_inst, stable_selecting_mechanism(StableSelection::lex_min),
        truncation_permutation_domain(shifted_inst));
    bool a1_hit = false;
    for (const auto& rep : y1_branch)
      a1_hit |= rep.seeker == a1 && rep.misreport == ex.misreports.at("a1_hat");
    log.claim(a1_hit, "a1 profits against the original-preferring selection");
  }
  return verdict(log.failed == 0, log.failed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matching-with-contracts engine for asylum assignment"};
  app.require_subcommand(1);

  std::string file, state_id, property = "axioms", variant = "base", order = "round-robin";
  std::string example_name, profile_name = "unrestricted", domain = "4", mechanism_name = "cumulative";
  std::vector<std::string> offers;
  bool allow_invalid = false, with_trace = false, enumerate = false;
  std::uint64_t seed = 1;
  GenDims dims;

  auto* solve = app.add_subcommand("solve", "run the cumulative offer mechanism on an instance");
  solve->add_option("file", file)->required();
  solve->add_option("--variant", variant)->check(CLI::IsMember({"base", "completed"}));
  solve->add_option("--order", order)->check(CLI::IsMember({"round-robin", "lowest-id", "highest-id"}));
  solve->add_flag("--trace", with_trace, "print the per-round proposal table");
  solve->add_flag("--allow-invalid", allow_invalid, "load instances that break the model bounds");

  auto* trace_cmd = app.add_subcommand("trace", "trace one member state's choice run");
  trace_cmd->add_option("file", file)->required();
  trace_cmd->add_option("--state", state_id)->required();
  trace_cmd->add_option("--variant", variant)->check(CLI::IsMember({"base", "completed"}));
  trace_cmd->add_option("--offer", offers, "offered contracts seeker:state:wait (default: all of the state's)");
  trace_cmd->add_flag("--allow-invalid", allow_invalid);

  auto* audit = app.add_subcommand("audit", "run property or mechanism audits");
  audit->require_subcommand(1);

  auto* audit_choice = audit->add_subcommand("choice", "choice rule properties over one state");
  audit_choice->add_option("file", file)->required();
  audit_choice->add_option("--state", state_id)->required();
  audit_choice->add_option("--property", property)
      ->check(CLI::IsMember({"sub", "usub", "lad", "irc", "axioms", "completion"}));
  audit_choice->add_option("--variant", variant)->check(CLI::IsMember({"base", "completed"}));
  audit_choice->add_flag("--allow-invalid", allow_invalid);

  auto* audit_stability = audit->add_subcommand("stability", "stability of the mechanism outcome");
  audit_stability->add_option("file", file)->required();
  audit_stability->add_flag("--enumerate", enumerate, "also enumerate every stable allocation");
  audit_stability->add_option("--variant", variant)->check(CLI::IsMember({"base", "completed"}));
  audit_stability->add_flag("--allow-invalid", allow_invalid);

  auto* audit_sp = audit->add_subcommand("sp", "exhaustive misreport search");
  audit_sp->add_option("file", file)->required();
  audit_sp->add_option("--domain", domain, "misreport length cap, or 'full'");
  audit_sp->add_option("--mechanism", mechanism_name)
      ->check(CLI::IsMember({"cumulative", "stable-min", "stable-max"}));
  audit_sp->add_flag("--allow-invalid", allow_invalid);

  auto* audit_nom_cmd = audit->add_subcommand("nom", "worst/best-case manipulation sweep");
  audit_nom_cmd->add_option("file", file)->required();
  audit_nom_cmd->add_option("--domain", domain, "misreport length cap, or 'full'");
  audit_nom_cmd->add_option("--mechanism", mechanism_name)
      ->check(CLI::IsMember({"cumulative", "stable-min", "stable-max"}));
  audit_nom_cmd->add_flag("--allow-invalid", allow_invalid);

  auto* repro = app.add_subcommand("reproduce", "re-run a bundled market's published claims");
  repro->add_option("name", example_name, "example1..example6")->required();

  std::string dims_text = "3x2x2";
  auto* gen = app.add_subcommand("generate", "emit a deterministic random instance");
  gen->add_option("--seed", seed);
  gen->add_option("--profile", profile_name)
      ->check(CLI::IsMember({"homogeneous", "large-priority", "small-priority", "unrestricted"}));
  gen->add_option("--dims", dims_text, "seekers x states x waits, e.g. 4x3x2");
  gen->add_option("--max-burden", dims.max_burden);
  gen->add_option("--max-ranking", dims.max_ranking);

  try {
    app.parse(argc, argv);

    RuleVariant rv = variant == "completed" ? RuleVariant::completed : RuleVariant::base;
    OrderPolicy policy = order == "lowest-id"    ? OrderPolicy::lowest_id
                         : order == "highest-id" ? OrderPolicy::highest_id
                                                 : OrderPolicy::round_robin;
    auto pick_mechanism = [&]() {
      if (mechanism_name == "stable-min") return stable_selecting_mechanism(StableSelection::lex_min);
      if (mechanism_name == "stable-max") return stable_selecting_mechanism(StableSelection::lex_max);
      return cumulative_offer_mechanism();
    };
    auto domain_for = [&](const Instance& inst) {
      int cap = domain == "full" ? -1 : std::stoi(domain);
      return truncation_permutation_domain(inst, cap);
    };

    if (*solve) {
      Instance inst = load(file, allow_invalid);
      MechanismTrace trace = run_with_rule_variants(inst, rv, policy);
      if (with_trace)
        std::cout << render_mechanism_trace(inst, trace);
      else
        std::cout << "outcome:\n" << render_allocation(inst, trace.outcome);
      return verdict(true, 0);
    }

    if (*trace_cmd) {
      Instance inst = load(file, allow_invalid);
      int m = state_index_or_die(inst, state_id);
      ContractSet offered;
      if (offers.empty())
        offered = state_contract_universe(inst, m);
      else
        for (const auto& text : offers) insert(offered, parse_contract(inst, text));
      ChoiceTrace trace = rv == RuleVariant::completed ? choose_completed(inst, m, offered)
                                                       : choose(inst, m, offered);
      std::cout << render_choice_trace(inst, trace);
      return verdict(true, 0);
    }

    if (*audit_choice) {
      Instance inst = load(file, allow_invalid);
      int m = state_index_or_die(inst, state_id);
      ContractSet universe = state_contract_universe(inst, m);
      ChoiceRule rule = rv == RuleVariant::completed ? make_completed_rule(inst, m)
                                                     : make_choice_rule(inst, m);
      AuditReport report;
      if (property == "sub")
        report = is_substitutable(inst, m, rule, universe);
      else if (property == "usub")
        report = is_unilaterally_substitutable(inst, m, rule, universe);
      else if (property == "lad")
        report = satisfies_LAD(inst, m, rule, universe);
      else if (property == "irc")
        report = satisfies_IRC(inst, m, rule, universe);
      else if (property == "completion")
        report = is_completion_on(inst, m, make_completed_rule(inst, m),
                                  make_choice_rule(inst, m), universe);
      else
        report = check_axioms(inst, m, rule, universe);
      return emit(report);
    }

    if (*audit_stability) {
      Instance inst = load(file, allow_invalid);
      Allocation outcome = run_with_rule_variants(inst, rv).outcome;
      std::cout << "mechanism outcome:\n" << render_allocation(inst, outcome);
      if (enumerate) {
        auto stable = enumerate_stable(inst, base_rules(inst));
        std::cout << stable.size() << " stable allocation(s):\n";
        for (const auto& y : stable) std::cout << "  " << set_str(inst, y) << "\n";
      }
      return emit(is_stable(inst, base_rules(inst), outcome));
    }

    if (*audit_sp) {
      Instance inst = load(file, allow_invalid);
      MisreportDomain dom = domain_for(inst);
      std::cout << "domain: " << dom.description << "\n";
      auto reports = audit_strategy_proofness(inst, pick_mechanism(), dom);
      std::cout << render_manipulations(inst, reports, /*obvious_only_fails=*/false);
      return reports.empty() ? 0 : 1;
    }

    if (*audit_nom_cmd) {
      Instance inst = load(file, allow_invalid);
      MisreportDomain dom = domain_for(inst);
      std::cout << "domain: " << dom.description << "\n";
      auto reports = audit_nom(inst, pick_mechanism(), dom);
      std::cout << render_manipulations(inst, reports, /*obvious_only_fails=*/true);
      return any_obvious(reports) ? 1 : 0;
    }

    if (*repro) return reproduce(example_name);

    if (*gen) {
      GenProfile profile = profile_name == "homogeneous"      ? GenProfile::homogeneous
                           : profile_name == "large-priority" ? GenProfile::large_priority
                           : profile_name == "small-priority" ? GenProfile::small_priority
                                                              : GenProfile::unrestricted;
      if (sscanf(dims_text.c_str(), "%dx%dx%d", &dims.seekers, &dims.states, &dims.waits) != 3)
        throw Error("--dims must be AxMxW, e.g. 4x3x2");
      std::cout << serialize_instance(generate_instance(seed, profile, dims));
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
