// latkit command line tool: pair-sum construction, identification, Smith
// invariants, overlattice search, tensor products, and reproduction of the
// worked-case fixture suite.
//
// Exit codes: 0 all checks passed (or flagged), 1 failures, 2 usage errors.

#include "latkit/harness.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <thread>

namespace {

using namespace latkit;

int cmd_construct(const std::string& lattice_arg, const std::string& isometry_arg) {
  Lattice l = load_lattice_arg(lattice_arg);
  Isometry h = from_spec(l, load_isometry_arg(isometry_arg));
  PairSumResult ps = pair_sum(l, h);
  std::cout << pair_sum_to_json(ps).dump(2) << "\n";
  return 0;
}

int cmd_identify(const std::string& lattice_arg) {
  Lattice l = load_lattice_arg(lattice_arg);
  std::cout << identification_to_json(identify(l)).dump(2) << "\n";
  return 0;
}

int cmd_smith(const std::string& lattice_arg, const std::string& matrix_arg) {
  Mat m;
  if (!matrix_arg.empty()) {
    m = matrix_from_json(json::parse(matrix_arg));
  } else {
    m = load_lattice_arg(lattice_arg).gram();
  }
  SmithDecomposition snf = smith_normal_form(m);
  json out;
  json inv = json::array();
  for (const auto& d : snf.invariants) inv.push_back(d.str());
  out["invariants"] = std::move(inv);
  out["left"] = matrix_to_json(snf.left);
  out["right"] = matrix_to_json(snf.right);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_overlattice(const std::string& lattice_arg, const std::string& strategy, long long index) {
  Lattice l = load_lattice_arg(lattice_arg);
  json out = json::array();
  if (strategy == "double4") {
    Mat us = dual_vectors_of_order(l, 4);
    // Independent order-4 classes: greedily adjoin while the index grows.
    std::vector<OverlatticeStep> steps;
    Lattice cur = l;
    for (std::size_t i = 0; i < us.rows(); ++i) {
      Mat one(1, l.ambient_dim());
      one.set_row(0, us.row(i));
      std::vector<Rat> u2 = us.row(i);
      for (auto& q : u2) q *= 2;
      if (cur.contains(u2)) continue;
      auto s = integral_overlattice_by_doubling(cur, one);
      steps.insert(steps.end(), s.begin(), s.end());
      cur = steps.back().result;
    }
    for (const auto& s : steps) {
      json step;
      step["order_mod_base"] = s.order_mod_base.str();
      step["result"] = lattice_to_json(s.result);
      step["integral"] = s.integral;
      out.push_back(std::move(step));
    }
  } else if (strategy == "search") {
    for (const auto& h : integral_overlattice_search(l, Int(index))) {
      json entry = lattice_to_json(h);
      entry["identify"] = identification_to_json(identify(h));
      out.push_back(std::move(entry));
    }
  } else {
    std::cerr << "unknown strategy (use double4 or search)\n";
    return 2;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_tensor(const std::string& a_arg, const std::string& b_arg) {
  Lattice t = tensor(load_lattice_arg(a_arg), load_lattice_arg(b_arg));
  std::cout << lattice_to_json(t).dump(2) << "\n";
  return 0;
}

int cmd_reproduce(const std::string& section, const std::string& format, std::size_t jobs,
                  const std::string& fixtures_path) {
  std::string path = fixtures_path.empty() ? default_fixtures_path() : fixtures_path;
  std::vector<FixtureCase> all = load_fixtures(path);
  std::vector<FixtureCase> selected;
  for (const auto& c : all)
    if (section == "all" || section == c.section) selected.push_back(c);
  if (selected.empty() && section != "theorems") {
    std::cerr << "no fixtures matched section \"" << section << "\"\n";
    return 2;
  }
  Report report = run_fixtures(selected, jobs);
  if (section == "all" || section == "theorems") {
    Report thms = run_theorem_suites(all, jobs);
    report.cases.insert(report.cases.end(), thms.cases.begin(), thms.cases.end());
  }
  if (format == "json")
    std::cout << emit_report_json(report).dump(2) << "\n";
  else
    std::cout << emit_report_text(report);
  return report.all_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic toolkit for pair-sum lattices K = M + N"};
  app.require_subcommand(1);

  std::string lattice_arg, isometry_arg, matrix_arg, second_arg;
  std::string strategy = "search", section = "all", format = "text", fixtures_path;
  long long index = 2;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());

  auto* construct = app.add_subcommand("construct", "build K = M + N from (L, h)");
  construct->add_option("--lattice", lattice_arg, "catalog name or JSON file")->required();
  construct->add_option("--isometry", isometry_arg, "isometry spec JSON or file")->required();

  auto* identify_cmd = app.add_subcommand("identify", "identify a lattice against the catalog");
  identify_cmd->add_option("--lattice", lattice_arg, "catalog name or JSON file")->required();

  auto* smith = app.add_subcommand("smith", "Smith invariants of a Gram matrix");
  smith->add_option("--lattice", lattice_arg, "catalog name or JSON file");
  smith->add_option("--matrix", matrix_arg, "inline JSON matrix");

  auto* over = app.add_subcommand("overlattice", "integral overlattices of a lattice");
  over->add_option("--lattice", lattice_arg, "catalog name or JSON file")->required();
  over->add_option("--strategy", strategy, "double4 | search");
  over->add_option("--index", index, "target index for search");

  auto* tensor_cmd = app.add_subcommand("tensor", "tensor product of two lattices");
  tensor_cmd->add_option("--left", lattice_arg, "catalog name or JSON file")->required();
  tensor_cmd->add_option("--right", second_arg, "catalog name or JSON file")->required();

  auto* reproduce = app.add_subcommand("reproduce", "re-run the worked-case suite");
  reproduce->add_option("--section", section, "z2|a2|a3|a4|d4|z5d5|theorems|all");
  reproduce->add_option("--format", format, "text|json");
  reproduce->add_option("--jobs", jobs, "worker threads");
  reproduce->add_option("--fixtures", fixtures_path, "fixture file (default: LATKIT_FIXTURES)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (construct->parsed()) return cmd_construct(lattice_arg, isometry_arg);
    if (identify_cmd->parsed()) return cmd_identify(lattice_arg);
    if (smith->parsed()) {
      if (lattice_arg.empty() && matrix_arg.empty()) {
        std::cerr << "smith needs --lattice or --matrix\n";
        return 2;
      }
      return cmd_smith(lattice_arg, matrix_arg);
    }
    if (over->parsed()) return cmd_overlattice(lattice_arg, strategy, index);
    if (tensor_cmd->parsed()) return cmd_tensor(lattice_arg, second_arg);
    if (reproduce->parsed()) return cmd_reproduce(section, format, jobs, fixtures_path);
  } catch (const latkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
