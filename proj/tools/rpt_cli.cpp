// Command-line front end over the engine library. Every verb is a thin
// wrapper: parse, dispatch, serialize. Output is deterministic: sorted
// JSON keys, canonical rational strings, quadrature floats with 17
// significant digits. Exit codes: 0 success, 1 precondition or contract
// violation, 2 I/O or parse failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rpt/combinatorics.hpp"
#include "rpt/cumulants.hpp"
#include "rpt/diagram.hpp"
#include "rpt/json_io.hpp"
#include "rpt/power_counting.hpp"
#include "rpt/variational.hpp"

namespace {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path);
  if (!file) throw std::ios_base::failure("cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void emit(const json& payload) { std::cout << payload.dump(2) << "\n"; }

int run_bell(int max_n, const std::string& format) {
  if (max_n < 0) throw std::invalid_argument("negative Bell index");
  if (max_n > 500) throw std::domain_error("Bell table is capped at n = 500");
  const std::vector<rpt::BigInt> bells = rpt::bell_table(max_n);
  if (format == "csv") {
    std::cout << "n,bell_n\n";
    for (int n = 0; n <= max_n; ++n) {
      std::cout << n << "," << bells[static_cast<size_t>(n)].get_str() << "\n";
    }
  } else {
    json rows = json::array();
    for (int n = 0; n <= max_n; ++n) {
      rows.push_back({{"n", n}, {"value", bells[static_cast<size_t>(n)].get_str()}});
    }
    emit(json{{"bell", rows}});
  }
  return 0;
}

int run_cumulants(const std::string& input, const std::string& method) {
  const rpt::MomentTable moments = rpt::moment_table_from_json(json::parse(read_input(input)));
  json out;
  if (method == "series") {
    out = rpt::cumulant_table_to_json(rpt::cumulants_from_moments_series(moments));
  } else if (method == "partition") {
    out = rpt::cumulant_table_to_json(rpt::cumulants_from_moments_partition(moments));
  } else {
    out = rpt::cumulant_table_to_json(rpt::cumulants_from_moments_series(moments));
    const auto discrepancy = rpt::compare_cumulant_methods(moments);
    if (discrepancy) {
      out["discrepancy"] = {
          {"index", json(discrepancy->index)},
          {"partition_value", rpt::rational_to_string(discrepancy->partition_value)},
          {"series_value", rpt::rational_to_string(discrepancy->series_value)}};
    } else {
      out["discrepancy"] = nullptr;
    }
  }
  emit(out);
  return 0;
}

int run_diagram(const std::string& input, bool dot, const std::string& sobolev,
                const std::string& lattice_label) {
  const rpt::Diagram diagram = rpt::diagram_from_json(json::parse(read_input(input)));
  if (dot) {
    std::cout << rpt::diagram_to_dot(diagram);
    return 0;
  }
  json out;
  const bool connected = rpt::is_connected(diagram);
  out["el"] = diagram.el();
  out["connected"] = connected;
  out["prime"] = rpt::is_prime(diagram);
  if (connected) {
    out["one_particle_irreducible"] = rpt::is_one_particle_irreducible(diagram);
    std::optional<std::string> label;
    if (!lattice_label.empty()) label = lattice_label;
    out["divergence"] = rpt::divergence_report_to_json(
        rpt::analyze_divergence(diagram, rpt::rational_from_string(sobolev), label));
  } else {
    out["one_particle_irreducible"] = nullptr;
    out["divergence"] = nullptr;
  }
  emit(out);
  return 0;
}

int run_identities(const std::string& check, int order, int n) {
  if (order > 32) throw std::domain_error("identity checks are capped at order 32");
  json reports = json::array();
  if (check == "bell-egf") {
    // n! [X^n] exp(e^X - 1) against the Bell triangle.
    const rpt::Series vacuum = rpt::vacuum_series(order);
    const std::vector<rpt::BigInt> bells = rpt::bell_table(order);
    rpt::VariationReport report;
    report.identity = "bell-egf";
    report.members = "series coefficients vs triangle recurrence";
    report.checked_order = order;
    for (int k = 0; k <= order; ++k) {
      const rpt::Rational lhs =
          vacuum.coefficient(rpt::MultiIndex{k}) * rpt::Rational(rpt::factorial(k));
      const rpt::Rational rhs{rpt::Rational(bells[static_cast<size_t>(k)])};
      if (lhs != rhs) {
        report.mismatch = rpt::SeriesMismatch{rpt::MultiIndex{k}, lhs, rhs};
        break;
      }
    }
    reports.push_back(rpt::variation_report_to_json(report));
  } else if (check == "2var") {
    const rpt::TwoVarAudit audit = rpt::check_2var_identity(order);
    reports.push_back(rpt::variation_report_to_json(audit.variation_vs_reindexed));
    reports.push_back(rpt::variation_report_to_json(audit.reindexed_vs_closed));
    reports.push_back(rpt::variation_report_to_json(audit.variation_vs_closed));
  } else {
    reports.push_back(rpt::variation_report_to_json(rpt::check_2nvar_identity(n, order)));
  }
  emit(reports);
  return 0;
}

int run_feynman(bool sweep, const std::string& mixture, double alpha, double beta, int points) {
  if (sweep) {
    std::cout << "alpha,beta,value,reference,abs_error\n";
    for (int i = 0; i < 20; ++i) {
      for (int j = 0; j < 20; ++j) {
        const double a = std::pow(10.0, -1.0 + 2.0 * i / 19.0);
        const double b = std::pow(10.0, -1.0 + 2.0 * j / 19.0);
        const rpt::QuadratureCheck q = rpt::feynman_combine(a, b, points);
        std::cout << format_double(a) << "," << format_double(b) << "," << format_double(q.value)
                  << "," << format_double(q.reference) << "," << format_double(q.abs_error)
                  << "\n";
      }
    }
    return 0;
  }
  if (!mixture.empty()) {
    std::vector<double> alphas;
    std::stringstream ss(mixture);
    std::string item;
    while (std::getline(ss, item, ',')) {
      size_t used = 0;
      alphas.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("bad mixture entry: " + item);
    }
    const rpt::QuadratureCheck q = rpt::symmetric_mixture(alphas, points);
    emit(json{{"alphas", mixture},
              {"value", format_double(q.value)},
              {"reference", format_double(q.reference)},
              {"abs_error", format_double(q.abs_error)}});
    return 0;
  }
  const rpt::QuadratureCheck q = rpt::feynman_combine(alpha, beta, points);
  emit(json{{"alpha", format_double(alpha)},
            {"beta", format_double(beta)},
            {"value", format_double(q.value)},
            {"reference", format_double(q.reference)},
            {"abs_error", format_double(q.abs_error)}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact combinatorics, diagram algebra and power counting for "
               "renormalized perturbation theory"};
  app.require_subcommand(1);

  auto* bell = app.add_subcommand("bell", "Bell number table");
  int bell_max = 0;
  std::string bell_format = "csv";
  bell->add_option("--max", bell_max, "largest index n")->required();
  bell->add_option("--format", bell_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* cumulants = app.add_subcommand("cumulants", "moment table to cumulant table");
  std::string cumulants_input;
  std::string cumulants_method = "both";
  cumulants->add_option("--input", cumulants_input, "moment-table JSON file or -")->required();
  cumulants->add_option("--method", cumulants_method, "series, partition or both")
      ->check(CLI::IsMember({"series", "partition", "both"}));

  auto* diagram = app.add_subcommand("diagram", "connectivity, irreducibility, power counting");
  std::string diagram_input;
  bool diagram_analyze = false;
  bool diagram_dot = false;
  std::string diagram_sobolev = "0";
  std::string diagram_lattice;
  diagram->add_option("--input", diagram_input, "diagram JSON file or -")->required();
  diagram->add_flag("--analyze", diagram_analyze, "emit the analysis document (default)");
  diagram->add_flag("--dot", diagram_dot, "emit DOT instead of the analysis document");
  diagram->add_option("--sobolev-index", diagram_sobolev, "rational norm index shift per loop");
  diagram->add_option("--lambda", diagram_lattice, "lattice-spacing annotation for the report");

  auto* identities = app.add_subcommand("identities", "generating-function identity audits");
  std::string identities_check;
  int identities_order = 0;
  int identities_n = 1;
  identities->add_option("--check", identities_check, "bell-egf, 2var or 2nvar")
      ->required()
      ->check(CLI::IsMember({"bell-egf", "2var", "2nvar"}));
  identities->add_option("--order", identities_order, "comparison order")->required();
  identities->add_option("--n", identities_n, "variation half-order for 2nvar");

  auto* feynman = app.add_subcommand("feynman", "Feynman-parameter quadrature checks");
  double feynman_alpha = 0.0;
  double feynman_beta = 0.0;
  int feynman_points = 0;
  bool feynman_sweep = false;
  std::string feynman_mixture;
  auto* alpha_opt = feynman->add_option("--alpha", feynman_alpha, "first propagator weight");
  feynman->add_option("--beta", feynman_beta, "second propagator weight")->needs(alpha_opt);
  feynman->add_option("--points", feynman_points, "quadrature points (default 128, mixture 64)");
  feynman->add_flag("--sweep", feynman_sweep, "CSV grid over [0.1,10]^2");
  feynman->add_option("--mixture", feynman_mixture, "comma list of 2..4 propagator weights");

  try {
    app.parse(argc, argv);
    if (bell->parsed()) return run_bell(bell_max, bell_format);
    if (cumulants->parsed()) return run_cumulants(cumulants_input, cumulants_method);
    if (diagram->parsed()) {
      return run_diagram(diagram_input, diagram_dot, diagram_sobolev, diagram_lattice);
    }
    if (identities->parsed()) return run_identities(identities_check, identities_order, identities_n);
    if (feynman->parsed()) {
      const bool single = alpha_opt->count() > 0;
      if (static_cast<int>(single) + static_cast<int>(feynman_sweep) +
              static_cast<int>(!feynman_mixture.empty()) !=
          1) {
        throw CLI::ValidationError("feynman needs exactly one of --alpha/--beta, --sweep, --mixture");
      }
      const int default_points = feynman_mixture.empty() ? 128 : 64;
      return run_feynman(feynman_sweep, feynman_mixture, feynman_alpha, feynman_beta,
                         feynman_points > 0 ? feynman_points : default_points);
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "contract error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "contract error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "contract error: " << e.what() << "\n";
    return 1;
  }
}
