// singpot — command-line front end for the singular-potential library.
//
//   singpot <command> --config <path> [--out <path>] [--format csv|json]
//
// Commands: fa-eval, q-eval, gauss-identity, solve-ball, solve-general,
// verify.  SINGPOT_THREADS overrides the worker count.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "singpot/config.hpp"
#include "singpot/verify.hpp"

namespace {

using nlohmann::json;
using namespace singpot;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << "\n";
    }
    return out.str();
  }

  json to_json() const {
    json arr = json::array();
    for (const auto& row : rows) {
      json obj;
      for (std::size_t i = 0; i < header.size(); ++i) {
        // numbers stay numbers where they parse
        try {
          std::size_t used = 0;
          const double v = std::stod(row[i], &used);
          if (used == row[i].size()) {
            obj[header[i]] = v;
            continue;
          }
        } catch (...) {
        }
        obj[header[i]] = row[i];
      }
      arr.push_back(std::move(obj));
    }
    return arr;
  }
};

void point_columns(Table& t, const char* prefix, int m) {
  for (int i = 0; i < m; ++i) t.header.push_back(std::string(prefix) + std::to_string(i + 1));
}

Table run_fa_eval(const RunConfig& cfg) {
  Table t;
  const int n = static_cast<int>(cfg.fa_b.size());
  point_columns(t, "y", n);
  t.header.insert(t.header.end(), {"value", "error_est", "flags"});
  FAParams p{cfg.fa_a, cfg.fa_b, cfg.fa_c};
  for (const Point& y : cfg.fa_y) {
    double asum = 0.0;
    bool nonpos = true;
    for (double v : y) {
      asum += std::abs(v);
      nonpos = nonpos && v <= 0.0;
    }
    double value;
    std::string how;
    if (asum < 1.0) {
      value = fa_direct(p, y, cfg.ctrl);
      how = "direct";
    } else if (nonpos) {
      value = fa_transformed(p, y, cfg.ctrl);
      how = "transformed";
    } else {
      value = fa_decomposed(p, y, cfg.ctrl);
      how = "decomposed";
    }
    std::vector<std::string> row;
    for (double v : y) row.push_back(fmt(v));
    row.push_back(fmt(value));
    row.push_back(fmt(std::abs(value) * cfg.ctrl.rel_tol));
    row.push_back(how);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table run_q_eval(const RunConfig& cfg) {
  Table t;
  point_columns(t, "xi", cfg.m);
  point_columns(t, "x", cfg.m);
  t.header.insert(t.header.end(), {"value", "error_est", "flags"});
  const KernelSet K(SingularParams(cfg.m, cfg.alpha), cfg.ctrl);
  for (const Point& pole : cfg.poles) {
    for (const Point& x : cfg.points) {
      const double v = K.fundamental(pole, x);
      std::vector<std::string> row;
      for (double c : pole) row.push_back(fmt(c));
      for (double c : x) row.push_back(fmt(c));
      row.push_back(fmt(v));
      row.push_back(fmt(std::abs(v) * cfg.ctrl.rel_tol));
      row.push_back("ok");
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table run_gauss_identity(const RunConfig& cfg) {
  Table t;
  point_columns(t, "x", cfg.m);
  t.header.insert(t.header.end(), {"region", "layer", "hyperplane", "identity_residual"});
  const OctantBallDomain dom(cfg.R, SingularParams(cfg.m, cfg.alpha));
  for (const Point& x : cfg.points) {
    Region region;
    double expected_shift;
    const double rad = norm(x);
    if (std::abs(rad - cfg.R) < 1e-12) {
      region = Region::Boundary;
      expected_shift = -0.5;
    } else if (dom.contains(x)) {
      region = Region::Interior;
      expected_shift = -1.0;
    } else {
      region = Region::Exterior;
      expected_shift = 0.0;
    }
    const GaussIntegral g = gauss_integral(dom, x, region, cfg.order, cfg.ctrl);
    std::vector<std::string> row;
    for (double c : x) row.push_back(fmt(c));
    row.push_back(region == Region::Interior    ? "interior"
                  : region == Region::Boundary ? "boundary"
                                               : "exterior");
    row.push_back(fmt(g.layer));
    row.push_back(fmt(g.hyperplane));
    row.push_back(fmt(std::abs(g.layer - (g.hyperplane + expected_shift))));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table run_solve(const RunConfig& cfg, bool general) {
  Table t;
  point_columns(t, "x", cfg.m);
  t.header.insert(t.header.end(), {"value", "error_est", "flags"});
  const OctantBallDomain dom(cfg.R, SingularParams(cfg.m, cfg.alpha));
  BoundaryData data = make_boundary_data(cfg);
  data.check_matching(dom);

  std::unique_ptr<GeneralSolver> solver;
  if (general) solver = std::make_unique<GeneralSolver>(dom, data, cfg.order, cfg.ctrl);

  for (const Point& x : cfg.points) {
    const SolveResult res = general ? solver->evaluate(x)
                                    : solve_dirichlet_ball(data, x, dom, cfg.order, cfg.ctrl);
    std::vector<std::string> row;
    for (double c : x) row.push_back(fmt(c));
    row.push_back(fmt(res.value));
    row.push_back(fmt(std::abs(res.value) * cfg.ctrl.rel_tol));
    row.push_back(res.degraded ? "degraded" : "ok");
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table run_verify_table(const std::vector<CriterionResult>& results) {
  Table t;
  t.header = {"criterion", "pass", "worst_ratio", "seconds", "budget_seconds", "detail"};
  for (const auto& r : results) {
    std::string note = r.note;
    for (auto& ch : note)
      if (ch == ',') ch = ';';
    t.rows.push_back({r.name, r.passed ? "1" : "0", fmt(r.measured), fmt(r.seconds),
                      fmt(r.budget_seconds), note});
  }
  return t;
}

void write_output(const RunConfig& cfg, const Table& table) {
  std::string payload;
  if (cfg.format == "json") {
    json out;
    out["results"] = table.to_json();
    out["config"] = emit_config(cfg);
    payload = out.dump(2) + "\n";
  } else {
    payload = table.to_csv();
  }
  if (cfg.output.empty()) {
    std::cout << payload;
  } else {
    std::ofstream f(cfg.output);
    if (!f) throw ConfigError("cannot open output file '" + cfg.output + "'");
    f << payload;
    // effective configuration alongside the results, re-parseable
    std::ofstream meta(cfg.output + ".run.cfg");
    meta << emit_config(cfg);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"layer potentials and Dirichlet solvers for singular elliptic operators"};
  app.require_subcommand(1);

  std::string config_path, out_path, format;
  const std::vector<std::string> commands = {"fa-eval",    "q-eval",        "gauss-identity",
                                             "solve-ball", "solve-general", "verify"};
  std::vector<CLI::App*> subs;
  for (const auto& name : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "run configuration file");
    sub->add_option("--out", out_path, "output path (default: stdout)");
    sub->add_option("--format", format, "csv or json");
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = parse_config_file(config_path);
    cfg.problem = command;
    if (!out_path.empty()) cfg.output = out_path;
    if (!format.empty()) cfg.format = format;
    cfg.validate();

    if (command == "verify") {
      const auto results = run_acceptance(&std::cerr);
      write_output(cfg, run_verify_table(results));
      return all_passed(results) ? 0 : 2;
    }
    Table table;
    if (command == "fa-eval") table = run_fa_eval(cfg);
    else if (command == "q-eval") table = run_q_eval(cfg);
    else if (command == "gauss-identity") table = run_gauss_identity(cfg);
    else if (command == "solve-ball") table = run_solve(cfg, false);
    else if (command == "solve-general") table = run_solve(cfg, true);
    write_output(cfg, table);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const PoleError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
