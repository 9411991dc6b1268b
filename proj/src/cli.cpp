#include "marginvote/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <thread>

#include "CLI11.hpp"
#include "marginvote/axioms.hpp"
#include "marginvote/canonical.hpp"
#include "marginvote/data.hpp"
#include "marginvote/noncomp.hpp"
#include "marginvote/serialize.hpp"

namespace marginvote {

namespace fs = std::filesystem;

namespace {

struct Config {
  std::string format = "table";
  std::vector<std::string> files;
  std::string rule;
  std::string axiom;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  unsigned jobs = 1;
  std::string kind = "margin";
  bool dot = false;
  std::string out_path;
  bool emit_trace = false;
  std::string trace_path;
  bool linearize = false;
  std::string dataset;
};

fs::path resolve(const std::string& name) {
  fs::path p(name);
  if (fs::exists(p) || p.is_absolute()) return p;
  if (const char* dir = std::getenv("MARGINVOTE_DATA_DIR")) {
    auto q = fs::path(dir) / p;
    if (fs::exists(q)) return q;
  }
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read '" + p.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Profile load_profile(const std::string& name) {
  const auto path = resolve(name);
  if (path.extension() == ".json") {
    try {
      return profile_from_json(Json::parse(read_file(path)));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path.string() + ": " + e.what(), 0);
    }
  }
  auto p = to_lobi(load_election(path));
  if (p.empty()) throw EmptyProfileError("'" + path.string() + "' has no ballots");
  return p;
}

RelProfile load_rel_profile(const std::string& name) {
  const auto path = resolve(name);
  if (path.extension() == ".json") {
    try {
      const auto j = Json::parse(read_file(path));
      const auto& ballots = j.at("ballots");
      if (!ballots.empty() && ballots.front().contains("ranking")) return embed(profile_from_json(j));
      return rel_profile_from_json(j);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string() + ": " + e.what(), 0);
    }
  }
  return to_rel(load_election(path));
}

bool is_election_file(const fs::path& p) {
  const auto ext = p.extension();
  return ext == ".soi" || ext == ".toi" || ext == ".csv" || ext == ".soc" || ext == ".toc";
}

std::vector<ScanInput> scan_sources(std::vector<std::string> files) {
  if (files.empty()) {
    const char* dir = std::getenv("MARGINVOTE_DATA_DIR");
    if (!dir) throw Error("no election files given and MARGINVOTE_DATA_DIR is unset");
    files.emplace_back(dir);
  }
  std::vector<fs::path> paths;
  for (const auto& f : files) {
    const auto p = resolve(f);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(p))
        if (entry.is_regular_file() && is_election_file(entry.path())) found.push_back(entry.path());
      std::sort(found.begin(), found.end());
      paths.insert(paths.end(), found.begin(), found.end());
    } else {
      paths.push_back(p);
    }
  }
  std::vector<ScanInput> inputs;
  for (const auto& p : paths) {
    ScanInput in{p.stem().string(), std::nullopt, {}};
    try {
      in.election = load_election(p);
      in.election->name = in.name;
    } catch (const Error& e) {
      in.error = e.what();
    }
    inputs.push_back(std::move(in));
  }
  return inputs;
}

void require_format(const Config& c, std::initializer_list<std::string_view> allowed) {
  for (auto f : allowed)
    if (c.format == f) return;
  throw UnknownIdentifierError("format '" + c.format + "' is not available for this command");
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int cmd_rules_list(const Config& c, std::ostream& out) {
  require_format(c, {"table", "json"});
  Json rules = Json::array();
  for (const auto& r : rule_registry())
    rules.push_back({{"name", r.name}, {"domain", std::string(to_string(r.domain))}});
  for (const auto& r : rel_rule_registry())
    rules.push_back({{"name", r.name}, {"domain", std::string(to_string(r.domain))}});
  if (c.format == "json") {
    print_json(out, rules);
  } else {
    for (const auto& r : rules) out << r["name"].get<std::string>() << '\t' << r["domain"].get<std::string>() << '\n';
  }
  return kExitOk;
}

int print_outcome(const Config& c, std::ostream& out, std::ostream& err, const std::string& rule,
                  const RuleOutput& result) {
  if (!result.ok() && result.failure() == RuleFailure::DomainError) {
    err << "error: " << (result.detail().empty() ? "profile outside the rule's domain" : result.detail()) << '\n';
    return kExitError;
  }
  if (c.format == "json") {
    auto j = to_json(result);
    j["rule"] = rule;
    print_json(out, j);
  } else if (result.ok()) {
    out << "winners: " << to_string(result.winners()) << '\n';
  } else {
    out << "outcome: " << to_string(result.failure()) << '\n';
  }
  return kExitOk;
}

int cmd_rules_run(const Config& c, std::ostream& out, std::ostream& err) {
  require_format(c, {"table", "json"});
  if (c.files.size() != 1) throw Error("rules run takes exactly one profile file");
  if (c.rule.rfind("rel-", 0) == 0) {
    const auto& rule = find_rel_rule(c.rule);
    return print_outcome(c, out, err, rule.name, rule(load_rel_profile(c.files[0])));
  }
  const auto& rule = find_rule(c.rule);
  return print_outcome(c, out, err, rule.name, rule(load_profile(c.files[0])));
}

int cmd_margins(const Config& c, std::ostream& out) {
  require_format(c, {"table", "json"});
  if (c.files.size() != 1) throw Error("margins takes exactly one profile file");
  const auto p = load_profile(c.files[0]);
  const auto m = margins(p);
  if (c.format == "json") {
    auto j = to_json(m);
    j["voters"] = p.voter_count();
    print_json(out, j);
  } else {
    out << to_string(m);
  }
  return kExitOk;
}

int cmd_graph(const Config& c, std::ostream& out) {
  if (c.files.size() != 1) throw Error("graph takes exactly one profile file");
  if (c.kind != "margin" && c.kind != "wv") throw UnknownIdentifierError("unknown graph kind '" + c.kind + "'");
  const auto p = load_profile(c.files[0]);
  const auto g = c.kind == "margin" ? margin_graph(p) : winning_votes_graph(p);
  const auto format = c.dot ? std::string("dot") : c.format;
  if (format == "dot") {
    out << to_dot(g, c.kind == "margin" ? "margins" : "winning_votes");
  } else if (format == "json") {
    print_json(out, to_json(g));
  } else {
    for (const auto& e : g.edges) out << e.from.name << " -> " << e.to.name << "  " << e.weight << '\n';
  }
  return kExitOk;
}

int cmd_smith(const Config& c, std::ostream& out) {
  require_format(c, {"table", "json"});
  if (c.files.size() != 1) throw Error("smith takes exactly one profile file");
  const auto p = load_profile(c.files[0]);
  const auto s = smith_set(p);
  const auto cw = condorcet_winner(margins(p));
  if (c.format == "json") {
    print_json(out, {{"smith", to_json(s)}, {"condorcet_winner", cw ? Json(cw->name) : Json(nullptr)}});
  } else {
    out << "smith: " << to_string(s) << '\n';
    out << "condorcet winner: " << (cw ? cw->name : std::string("none")) << '\n';
  }
  return kExitOk;
}

int cmd_axiom_check(const Config& c, std::ostream& out) {
  require_format(c, {"table", "json"});
  const auto axiom = parse_axiom(c.axiom);
  CheckOptions options;
  options.seed = c.seed;
  options.budget = c.budget ? c.budget : 1000;
  options.jobs = c.jobs;
  const bool relational = c.rule.rfind("rel-", 0) == 0;
  std::size_t witnesses = 0;
  if (relational) {
    const auto& rule = find_rel_rule(c.rule);
    std::vector<RelProfile> pool;
    for (const auto& f : c.files) pool.push_back(load_rel_profile(f));
    const auto report = check_rel_axiom(rule, axiom, pool, options);
    witnesses = report.witness_count;
    if (c.format == "json") {
      auto j = to_json(report);
      j["seed"] = options.seed;
      j["budget"] = options.budget;
      print_json(out, j);
    } else {
      out << "seed: " << options.seed << "\nbudget: " << options.budget << "\nrule: " << report.rule
          << "\naxiom: " << to_string(report.axiom) << "\ntried: " << report.tried << "\nskipped: " << report.skipped
          << "\nwitnesses: " << report.witness_count << '\n';
      for (const auto& w : report.witnesses)
        out << "- " << w.scenario.description << ": " << to_string(w.outputs[0]) << " vs " << to_string(w.outputs[1])
            << '\n';
    }
  } else {
    const auto& rule = find_rule(c.rule);
    require_applicable(rule, axiom);
    std::vector<Profile> pool;
    for (const auto& f : c.files) pool.push_back(load_profile(f));
    const auto report = check_axiom(rule, axiom, pool, options);
    witnesses = report.witness_count;
    if (c.format == "json") {
      print_json(out, to_json(report));
    } else {
      out << "seed: " << report.seed << "\nbudget: " << report.budget << "\nrule: " << report.rule
          << "\naxiom: " << to_string(report.axiom) << "\ntried: " << report.tried << "\nskipped: " << report.skipped
          << "\nwitnesses: " << report.witness_count << '\n';
      for (const auto& w : report.witnesses)
        out << "- " << w.scenario.description << ": " << to_string(w.outputs[0]) << " vs " << to_string(w.outputs[1])
            << '\n';
    }
  }
  return witnesses ? kExitWitness : kExitOk;
}

int cmd_classify(const Config& c, std::ostream& out) {
  require_format(c, {"table", "json"});
  if (c.files.empty()) throw Error("classify needs at least one profile file");
  if (c.rule.empty()) {
    Json rows = Json::array();
    for (const auto& f : c.files) {
      const auto p = load_profile(f);
      rows.push_back({{"file", f},
                      {"voters", p.voter_count()},
                      {"domain", std::string(to_string(classify_domain(p)))},
                      {"relational", std::string(to_string(classify_rel(load_rel_profile(f))))}});
    }
    if (c.format == "json") {
      print_json(out, rows);
    } else {
      for (const auto& r : rows)
        out << r["file"].get<std::string>() << ": " << r["domain"].get<std::string>() << " ("
            << r["relational"].get<std::string>() << " as relations)\n";
    }
    return kExitOk;
  }
  const auto& rule = find_rule(c.rule);
  std::vector<Profile> pool;
  for (const auto& f : c.files) pool.push_back(load_profile(f));
  const auto report = classify_invariance(rule, pool);
  if (c.format == "json") {
    print_json(out, to_json(report));
  } else {
    out << "rule: " << report.rule << "\nprofiles: " << report.profiles << "\nskipped: " << report.skipped << '\n';
    for (const auto& l : report.levels)
      out << to_string(l.level) << ": " << (l.passed() ? "consistent" : "violated") << " (" << l.counterexample_count
          << " of " << l.comparisons << " comparisons differ)\n";
  }
  return kExitOk;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot write '" + p.string() + "'");
  f << text;
}

int cmd_canonicalize(const Config& c, std::ostream& out) {
  require_format(c, {"table", "json"});
  if (c.files.size() != 1) throw Error("canonicalize takes exactly one profile file");
  auto p = load_profile(c.files[0]);
  MoveTrace prefix{margins(p), {}};
  if (classify_domain(p) != Domain::Linear) {
    if (!c.linearize) throw DomainError("profile has ties; pass --linearize to double and break them first");
    auto lin = linearize_ties(p);
    prefix = std::move(lin.trace);
    p = std::move(lin.profile);
  }
  auto result = canonicalize_linear(p, c.emit_trace);
  const auto text = to_json(result.form.profile()).dump(2) + '\n';
  if (c.out_path.empty())
    out << text;
  else
    write_text(c.out_path, text);
  if (c.emit_trace) {
    for (auto& s : result.trace.steps) prefix.steps.push_back(std::move(s));
    auto path = c.trace_path;
    if (path.empty()) path = resolve(c.files[0]).stem().string() + ".trace.jsonl";
    write_text(path, trace_jsonl(prefix));
  }
  return kExitOk;
}

int cmd_scan(const Config& c, std::ostream& out, bool irv_scan) {
  require_format(c, {"table", "json"});
  const auto inputs = scan_sources(c.files);
  const auto report = irv_scan ? scan_irv_violations(inputs, c.budget ? c.budget : 3, c.jobs, c.dataset)
                               : scan_minimax_divergence(inputs, c.jobs, c.dataset);
  if (c.format == "json")
    print_json(out, to_json(report));
  else
    out << to_table(report);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Margin-based voting rules: tabulation, axiom checks and canonical profiles", "marginvote"};
  app.require_subcommand(1);
  Config c;
  app.add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "table", "dot"}))
      ->capture_default_str();

  auto* rules = app.add_subcommand("rules", "Voting rules");
  rules->require_subcommand(1);
  auto* rules_list = rules->add_subcommand("list", "List registered rules");
  auto* rules_run = rules->add_subcommand("run", "Evaluate a rule on a profile");
  rules_run->add_option("--rule", c.rule, "Rule name")->required();
  rules_run->add_option("file", c.files, "Profile file (.soi, .toi, .csv or .json)")->required();

  auto* margins_cmd = app.add_subcommand("margins", "Print the margin matrix");
  margins_cmd->add_option("file", c.files)->required();

  auto* graph = app.add_subcommand("graph", "Margin or winning-votes graph");
  graph->add_option("--kind", c.kind, "margin or wv")->check(CLI::IsMember({"margin", "wv"}))->capture_default_str();
  graph->add_flag("--dot", c.dot, "Emit Graphviz DOT");
  graph->add_option("file", c.files)->required();

  auto* smith = app.add_subcommand("smith", "Smith set and Condorcet winner");
  smith->add_option("file", c.files)->required();

  auto* axiom = app.add_subcommand("axiom", "Axiom checks");
  axiom->require_subcommand(1);
  auto* check = axiom->add_subcommand("check", "Search for axiom witnesses");
  check->add_option("--rule", c.rule)->required();
  check->add_option("--axiom", c.axiom)->required();
  check->add_option("--seed", c.seed)->capture_default_str();
  check->add_option("--budget", c.budget, "Scenario budget (default 1000)");
  check->add_option("--jobs", c.jobs)->capture_default_str();
  check->add_option("files", c.files, "Profiles seeding the scenario pool");

  auto* classify = app.add_subcommand("classify", "Profile domains, or invariance classes of a rule");
  classify->add_option("--rule", c.rule, "Classify this rule on the given profiles");
  classify->add_option("files", c.files)->required();

  auto* canon = app.add_subcommand("canonicalize", "Margin-determined canonical profile");
  canon->add_option("file", c.files)->required();
  canon->add_option("--out", c.out_path, "Write the canonical profile here");
  canon->add_option("--emit-trace", c.trace_path, "Write the move trace (JSON lines)")->expected(0, 1);
  canon->add_flag("--linearize", c.linearize, "Double the profile and break ties first");

  auto* scan = app.add_subcommand("scan", "Dataset scans");
  scan->require_subcommand(1);
  auto* scan_minimax = scan->add_subcommand("minimax", "Minimax margins vs winning votes");
  auto* scan_irv = scan->add_subcommand("irv", "IRV equality and compensation violations");
  for (auto* s : {scan_minimax, scan_irv}) {
    s->add_option("files", c.files, "Election files or directories");
    s->add_option("--jobs", c.jobs)->capture_default_str();
    s->add_option("--dataset", c.dataset, "Dataset label");
  }
  scan_irv->add_option("--budget", c.budget, "Largest coalition size (default 3)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }
  c.emit_trace = canon->count("--emit-trace") > 0;
  if (c.jobs == 0) c.jobs = std::max(1u, std::thread::hardware_concurrency());

  try {
    if (*rules_list) return cmd_rules_list(c, out);
    if (*rules_run) return cmd_rules_run(c, out, err);
    if (*margins_cmd) return cmd_margins(c, out);
    if (*graph) return cmd_graph(c, out);
    if (*smith) return cmd_smith(c, out);
    if (*check) return cmd_axiom_check(c, out);
    if (*classify) return cmd_classify(c, out);
    if (*canon) return cmd_canonicalize(c, out);
    if (*scan_minimax) return cmd_scan(c, out, false);
    if (*scan_irv) return cmd_scan(c, out, true);
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace marginvote
