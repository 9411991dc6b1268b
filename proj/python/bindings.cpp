#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "marginvote/axioms.hpp"
#include "marginvote/canonical.hpp"
#include "marginvote/data.hpp"
#include "marginvote/serialize.hpp"

namespace py = pybind11;
using namespace marginvote;

namespace {

using Grid = std::vector<std::vector<std::int64_t>>;

Grid grid(const PairMatrix& m) {
  const auto n = m.scope()->size();
  Grid out(n, std::vector<std::int64_t>(n, 0));
  const auto& cells = m.cells();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) out[x][y] = cells[x * n + y];
  return out;
}

std::vector<std::string> names(const CandidateSet& s) {
  std::vector<std::string> out;
  for (const auto& c : s) out.push_back(c.name);
  return out;
}

Profile make_profile(const std::vector<std::string>& candidates,
                     const std::vector<std::pair<std::int64_t, std::string>>& groups) {
  return profile_from_counts(CandidateSet::from_names(candidates), groups);
}

std::vector<std::pair<std::string, std::string>> ballots(const Profile& p) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [v, r] : p.ballots()) out.emplace_back(to_string(v), to_string(r));
  return out;
}

py::object winners_or_failure(const RuleOutput& out) {
  if (out.ok()) return py::cast(names(out.winners()));
  return py::str(std::string(to_string(out.failure())));
}

std::string check(const std::string& rule, const std::string& axiom, const std::vector<Profile>& pool,
                  std::uint64_t seed, std::size_t budget, unsigned jobs) {
  CheckOptions o;
  o.seed = seed;
  o.budget = budget;
  o.jobs = jobs;
  py::gil_scoped_release release;
  return to_json(check_axiom(find_rule(rule), parse_axiom(axiom), pool, o)).dump();
}

std::vector<ScanInput> inputs(const std::vector<std::string>& paths) {
  std::vector<ScanInput> out;
  for (const auto& path : paths) {
    ScanInput in{std::filesystem::path(path).stem().string(), std::nullopt, {}};
    try {
      in.election = load_election(path);
      in.election->name = in.name;
    } catch (const Error& e) {
      in.error = e.what();
    }
    out.push_back(std::move(in));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Margin-based voting rules: tabulation, axiom checks and canonical profiles";

  py::register_exception<Error>(m, "MarginvoteError");

  py::class_<Profile>(m, "Profile")
      .def(py::init(&make_profile), py::arg("candidates"), py::arg("groups"),
           "Profile from (count, ranking) groups such as (3, \"b>a~c\")")
      .def_property_readonly("candidates", [](const Profile& p) { return names(p.candidates()); })
      .def_property_readonly("voter_count", &Profile::voter_count)
      .def("ballots", &ballots, "(voter id, ranking) pairs in voter order")
      .def("domain", [](const Profile& p) { return std::string(to_string(classify_domain(p))); })
      .def("to_json", [](const Profile& p) { return to_json(p).dump(); })
      .def("__eq__", [](const Profile& a, const Profile& b) { return a == b; })
      .def("__len__", &Profile::voter_count)
      .def("__repr__", [](const Profile& p) {
        return "<Profile " + std::to_string(p.voter_count()) + " voters over {" + to_string(p.candidates()) + "}>";
      });

  m.def("load_profile", [](const std::string& path) { return to_lobi(load_election(path)); }, py::arg("path"),
        "Reads an order file or CSV; unlisted candidates tie at the bottom");
  m.def("profile_from_json", [](const std::string& text) { return profile_from_json(Json::parse(text)); });

  m.def("margins", [](const Profile& p) { return grid(margins(p)); }, py::arg("profile"));
  m.def("support", [](const Profile& p) { return grid(support(p)); }, py::arg("profile"));
  m.def("smith_set", [](const Profile& p) { return names(smith_set(p)); }, py::arg("profile"));
  m.def(
      "condorcet_winner",
      [](const Profile& p) -> std::optional<std::string> {
        const auto w = condorcet_winner(margins(p));
        if (!w) return std::nullopt;
        return w->name;
      },
      py::arg("profile"));
  m.def("to_dot", [](const Profile& p, bool wv) {
    return wv ? to_dot(winning_votes_graph(p), "winning_votes") : to_dot(margin_graph(p), "margins");
  }, py::arg("profile"), py::arg("winning_votes") = false);

  m.def("rule_names", [] {
    std::vector<std::string> out;
    for (const auto& r : rule_registry()) out.push_back(r.name);
    return out;
  });
  m.def(
      "run_rule", [](const std::string& name, const Profile& p) { return winners_or_failure(find_rule(name)(p)); },
      py::arg("rule"), py::arg("profile"), "Winner names, or the failure name such as \"tie-ambiguous\"");

  m.def("check_axiom", &check, py::arg("rule"), py::arg("axiom"), py::arg("pool"), py::arg("seed") = 0,
        py::arg("budget") = 1000, py::arg("jobs") = 1, "Axiom report as a JSON string");

  m.def(
      "canonicalize",
      [](const Profile& p) {
        auto result = canonicalize_linear(p, false);
        return result.form.profile();
      },
      py::arg("profile"));
  m.def(
      "debord",
      [](const std::vector<std::string>& candidates, const Grid& g) {
        std::vector<std::int64_t> cells;
        for (const auto& row : g) cells.insert(cells.end(), row.begin(), row.end());
        return debord(MarginMatrix::from_cells(make_scope(CandidateSet::from_names(candidates)), cells));
      },
      py::arg("candidates"), py::arg("margins"));
  m.def("equalize_h2h", &equalize_h2h, py::arg("p"), py::arg("q"));

  m.def(
      "scan_minimax",
      [](const std::vector<std::string>& paths, unsigned jobs) {
        return to_json(scan_minimax_divergence(inputs(paths), jobs)).dump();
      },
      py::arg("paths"), py::arg("jobs") = 1);
  m.def(
      "scan_irv",
      [](const std::vector<std::string>& paths, std::size_t budget, unsigned jobs) {
        return to_json(scan_irv_violations(inputs(paths), budget, jobs)).dump();
      },
      py::arg("paths"), py::arg("budget") = 3, py::arg("jobs") = 1);
}
