// Command-line front end: loads a scenario, dispatches one command, and
// writes plot-ready CSV/JSON plus a reloadable run manifest.

#include <array>
#include <charconv>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fractb/cost_effectiveness.hpp"
#include "fractb/errors.hpp"
#include "fractb/focp.hpp"
#include "fractb/mittag_leffler.hpp"
#include "fractb/scenario.hpp"
#include "fractb/sensitivity.hpp"
#include "fractb/tb_model.hpp"
#include "fractb/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest round-trip formatting, used where exact reload matters.
std::string fmt_exact(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

// 10 significant digits, the fixed precision of CSV payloads.
std::string fmt_csv(double v) {
  std::array<char, 64> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.10g", v);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

// Complete files only: write to a sibling temp path, then rename into place.
void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open `" + tmp.string() + "` for writing");
    out << content;
    out.flush();
    if (!out) throw IoFailure("failed writing `" + tmp.string() + "`");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoFailure("cannot rename `" + tmp.string() + "`: " + ec.message());
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? text.size() - pos : comma - pos);
    pos = comma == std::string::npos ? text.size() + 1 : comma + 1;
    double v = 0.0;
    const char* first = item.data();
    const char* last = first + item.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
      throw fractb::ParseError(flag + ": `" + item + "` is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw fractb::ParseError(flag + ": empty list");
  return out;
}

std::string manifest_text(const fractb::Scenario& sc, const std::string& command,
                          const std::vector<std::string>& diagnostics) {
  std::string out;
  out += "# fractb " + std::string(fractb::version) + " run manifest\n";
  out += "# command = " + command + "\n";
  out += "# created_utc = " + utc_now() + "\n";
  for (const auto& d : diagnostics) out += "# " + d + "\n";
  out += serialize_scenario(sc);
  return out;
}

std::string trajectory_csv(const fractb::GridFunction& states,
                           std::span<const double> control,
                           std::span<const double> efficacy_values) {
  std::string out = "t,S,L,I,T,u,F\n";
  for (std::size_t j = 0; j < states.grid.nodes(); ++j) {
    const auto x = states.at(j);
    out += fmt_csv(states.grid.node(j));
    for (std::size_t c = 0; c < 4; ++c) out += "," + fmt_csv(x[c]);
    out += "," + fmt_csv(control[j]);
    out += "," + fmt_csv(efficacy_values[j]);
    out += "\n";
  }
  return out;
}

ordered_json summary_json(const fractb::Scenario& sc, const fractb::CostEffReport& r,
                          std::size_t iterations, bool converged) {
  ordered_json j;
  j["r0"] = fractb::r0(sc.params);
  j["alpha"] = r.alpha;
  j["B"] = r.B;
  j["J"] = r.J;
  j["A"] = r.A;
  j["TC"] = r.TC;
  if (r.acer)
    j["ACER"] = *r.acer;
  else
    j["ACER"] = nullptr;
  j["Fbar"] = r.Fbar;
  j["iterations"] = iterations;
  j["converged"] = converged;
  return j;
}

void print_report(const fractb::CostEffReport& r, std::size_t iterations,
                  bool converged) {
  std::cout << "J = " << fmt_csv(r.J) << "\n"
            << "A = " << fmt_csv(r.A) << "\n"
            << "TC = " << fmt_csv(r.TC) << "\n"
            << "ACER = " << (r.acer ? fmt_csv(*r.acer) : std::string("undefined"))
            << "\n"
            << "Fbar = " << fmt_csv(r.Fbar) << "\n"
            << "iterations = " << iterations << "\n"
            << "converged = " << (converged ? "true" : "false") << "\n";
}

fs::path out_file(const fractb::Scenario& sc, const char* name) {
  const fs::path dir(sc.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoFailure("cannot create output directory `" + dir.string() + "`");
  return dir / name;
}

void note_written(const fs::path& p) { std::cout << "wrote " << p.string() << "\n"; }

int run_command(const std::string& command, const fractb::Scenario& sc,
                const std::string& perturb_param, double perturb_pct,
                const std::string& b_list, const std::string& alpha_list) {
  const fractb::ModelParams& params = sc.params;
  const fractb::TimeGrid& grid = sc.focp.grid;
  const double alpha = sc.focp.alpha;

  if (command == "r0") {
    std::printf("%.4f\n", fractb::r0(params));
    return 0;
  }

  if (command == "equilibrium") {
    const fractb::StateVec eq = fractb::endemic_equilibrium(params);
    std::cout << "S* = " << fmt_csv(eq.S) << "\n"
              << "L* = " << fmt_csv(eq.L) << "\n"
              << "I* = " << fmt_csv(eq.I) << "\n"
              << "T* = " << fmt_csv(eq.T) << "\n";
    ordered_json j;
    j["S"] = eq.S;
    j["L"] = eq.L;
    j["I"] = eq.I;
    j["T"] = eq.T;
    j["r0"] = fractb::r0(params);
    const auto json_path = out_file(sc, "equilibrium.json");
    write_atomic(json_path, j.dump(2) + "\n");
    note_written(json_path);
    const auto manifest_path = out_file(sc, "manifest.txt");
    write_atomic(manifest_path, manifest_text(sc, command, {}));
    note_written(manifest_path);
    return 0;
  }

  if (command == "simulate") {
    const fractb::GridFunction states = simulate(params, sc.x0, alpha, grid);
    const std::vector<double> treatment(grid.nodes(), params.gamma);
    const fractb::EfficacySeries F = fractb::efficacy(states);
    const auto csv_path = out_file(sc, "trajectory.csv");
    write_atomic(csv_path, trajectory_csv(states, treatment, F.values));
    note_written(csv_path);
    const auto manifest_path = out_file(sc, "manifest.txt");
    write_atomic(manifest_path, manifest_text(sc, command, {}));
    note_written(manifest_path);
    return 0;
  }

  if (command == "sensitivity") {
    const auto table = fractb::sensitivity_table(params);
    std::string csv = "param,index\n";
    for (const auto& row : table) {
      csv += row.param_name + "," + fmt_csv(row.index) + "\n";
      std::cout << row.param_name << " " << fmt_csv(row.index) << "\n";
    }
    const auto csv_path = out_file(sc, "sensitivity.csv");
    write_atomic(csv_path, csv);
    note_written(csv_path);
    const auto manifest_path = out_file(sc, "manifest.txt");
    write_atomic(manifest_path, manifest_text(sc, command, {}));
    note_written(manifest_path);
    return 0;
  }

  if (command == "perturb") {
    const fractb::PerturbationResult res =
        fractb::perturbation_experiment(params, perturb_param, perturb_pct, alpha, grid);
    std::string csv = "t,I_baseline,I_perturbed\n";
    for (std::size_t j = 0; j < grid.nodes(); ++j)
      csv += fmt_csv(grid.node(j)) + "," + fmt_csv(res.baseline_I.values[j]) + "," +
             fmt_csv(res.perturbed_I.values[j]) + "\n";
    std::cout << "rel_l2_diff = " << fmt_csv(res.rel_l2_diff) << "\n";
    const auto csv_path = out_file(sc, "perturb.csv");
    write_atomic(csv_path, csv);
    note_written(csv_path);
    const auto manifest_path = out_file(sc, "manifest.txt");
    write_atomic(manifest_path,
                 manifest_text(sc, command,
                               {"perturb_param = " + res.param_name,
                                "perturb_pct = " + fmt_exact(res.pct_change),
                                "rel_l2_diff = " + fmt_exact(res.rel_l2_diff)}));
    note_written(manifest_path);
    return 0;
  }

  if (command == "optimize" || command == "cost-eff") {
    const fractb::FocpSolution sol = fractb::solve_focp(params, sc.x0, sc.focp);
    const fractb::CostEffReport report = summarize(sol.states, sol.control, sc.focp);
    print_report(report, sol.iterations, sol.converged);

    if (command == "optimize") {
      const fractb::EfficacySeries F = fractb::efficacy(sol.states);
      const auto csv_path = out_file(sc, "optimal_trajectory.csv");
      write_atomic(csv_path, trajectory_csv(sol.states, sol.control.values, F.values));
      note_written(csv_path);
    }
    const auto json_path = out_file(sc, "summary.json");
    write_atomic(json_path, summary_json(sc, report, sol.iterations, sol.converged).dump(2) + "\n");
    note_written(json_path);
    const auto manifest_path = out_file(sc, "manifest.txt");
    write_atomic(manifest_path,
                 manifest_text(sc, command,
                               {std::string("converged = ") +
                                    (sol.converged ? "true" : "false"),
                                "iterations = " + std::to_string(sol.iterations)}));
    note_written(manifest_path);
    return 0;
  }

  if (command == "sweep-b") {
    const std::vector<double> alphas =
        alpha_list.empty() ? std::vector<double>{1.0, 0.9, 0.8}
                           : parse_list(alpha_list, "--alphas");
    const std::vector<double> weights =
        b_list.empty() ? fractb::default_weight_grid() : parse_list(b_list, "--b-values");
    const auto rows = fractb::weight_sweep(params, sc.x0, alphas, weights, sc.focp);

    std::string csv = "alpha,B,J,A,TC,ACER,Fbar\n";
    std::size_t converged_rows = 0;
    std::vector<std::string> diagnostics;
    for (const auto& row : rows) {
      const auto& r = row.report;
      csv += fmt_csv(r.alpha) + "," + fmt_csv(r.B) + "," + fmt_csv(r.J) + "," +
             fmt_csv(r.A) + "," + fmt_csv(r.TC) + "," +
             (r.acer ? fmt_csv(*r.acer) : std::string()) + "," + fmt_csv(r.Fbar) + "\n";
      if (row.converged) {
        ++converged_rows;
      } else {
        std::cerr << "warning: no convergence at alpha=" << fmt_exact(r.alpha)
                  << " B=" << fmt_exact(r.B) << " (" << row.iterations
                  << " iterations)\n";
        diagnostics.push_back("not_converged = alpha=" + fmt_exact(r.alpha) +
                              ",B=" + fmt_exact(r.B));
      }
    }
    diagnostics.insert(diagnostics.begin(),
                       "converged_pairs = " + std::to_string(converged_rows) + "/" +
                           std::to_string(rows.size()));

    const auto csv_path = out_file(sc, "sweep.csv");
    write_atomic(csv_path, csv);
    std::cout << "wrote " << csv_path.string() << " (" << rows.size() << " rows)\n";
    const auto manifest_path = out_file(sc, "manifest.txt");
    write_atomic(manifest_path, manifest_text(sc, command, diagnostics));
    note_written(manifest_path);
    // The table is written in full either way; the exit code still reports
    // convergence trouble so batch runs can notice.
    return converged_rows == rows.size() ? 0 : 3;
  }

  throw fractb::ParseError("unknown command `" + command + "`");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional-order tuberculosis model toolkit"};
  app.set_version_flag("--version", std::string(fractb::version));
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  double alpha_flag = 0.0;
  double tf_flag = 0.0;
  std::size_t steps_flag = 0;
  std::string out_flag;
  app.add_option("--config", config_path, "scenario file (key = value lines)");
  auto* set_opt =
      app.add_option("--set", sets, "override one scenario key (repeatable)")
          ->type_size(1);
  auto* alpha_opt = app.add_option("--alpha", alpha_flag, "fractional order in (0, 1]");
  auto* tf_opt = app.add_option("--tf", tf_flag, "time horizon in years");
  auto* steps_opt = app.add_option("--steps", steps_flag, "number of grid steps");
  auto* out_opt = app.add_option("--out", out_flag, "output directory");

  const char* commands[] = {"simulate", "equilibrium", "r0",       "sensitivity",
                            "perturb",  "optimize",    "cost-eff", "sweep-b"};
  const char* descriptions[] = {
      "integrate the model under the constant treatment rate",
      "print and save the endemic equilibrium",
      "print the basic reproduction number",
      "tabulate R0 sensitivity indices",
      "compare infectious trajectories under a parameter change",
      "solve the optimal treatment problem and save the trajectory",
      "solve the optimal treatment problem and save summary measures",
      "tabulate cost-effectiveness across control cost weights"};
  for (std::size_t i = 0; i < 8; ++i)
    app.add_subcommand(commands[i], descriptions[i])->fallthrough();

  std::string perturb_param;
  double perturb_pct = 15.0;
  CLI::App* perturb = app.get_subcommand("perturb");
  perturb->add_option("--param", perturb_param, "parameter to perturb")->required();
  perturb->add_option("--pct", perturb_pct, "percent change");

  std::string b_list;
  std::string alpha_list;
  CLI::App* sweep = app.get_subcommand("sweep-b");
  sweep->add_option("--b-values", b_list, "comma-separated B weights");
  sweep->add_option("--alphas", alpha_list, "comma-separated fractional orders");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    // Later overrides win; dedicated flags beat --set entries.
    std::vector<std::string> overrides(sets.begin(), sets.end());
    if (alpha_opt->count() > 0) overrides.push_back("alpha=" + fmt_exact(alpha_flag));
    if (tf_opt->count() > 0) overrides.push_back("tf=" + fmt_exact(tf_flag));
    if (steps_opt->count() > 0)
      overrides.push_back("steps=" + std::to_string(steps_flag));
    if (out_opt->count() > 0) overrides.push_back("out=" + out_flag);
    (void)set_opt;

    const fractb::Scenario sc = fractb::load_scenario(config_path, overrides);
    const std::string command = app.get_subcommands().front()->get_name();
    return run_command(command, sc, perturb_param, perturb_pct, b_list, alpha_list);
  } catch (const fractb::NotConverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const fractb::NoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const fractb::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fractb::UnknownKey& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fractb::InvariantViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fractb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
