#ifndef RPT_POWER_COUNTING_HPP
#define RPT_POWER_COUNTING_HPP

#include <optional>
#include <string>
#include <vector>

#include "rpt/diagram.hpp"
#include "rpt/rational.hpp"

namespace rpt {

enum class DivergenceClass { convergent, logarithmic, power_divergent };

/// Two degree notions are carried side by side and never conflated: the
/// whole-diagram degree 2(el-2) keyed to external legs, and the standard
/// 4-dimensional loop degree 4L - 2I from the topology. The Sobolev index
/// shifts the loop degree by s per momentum integration variable.
struct DivergenceReport {
  int el = 0;
  int paper_degree = 0;
  std::optional<Rational> per_line_exponent;  // absent for el = 0
  int loop_degree = 0;
  Rational sobolev_index = Rational(0);
  Rational shifted_degree = Rational(0);
  DivergenceClass classification = DivergenceClass::logarithmic;
  /// Optional lattice-spacing annotation, carried verbatim on reports;
  /// nothing in the engine computes with it.
  std::optional<std::string> lattice_label;
};

/// Whole-diagram divergence 2(el-2). el must be even and non-negative.
int paper_degree(int el);

/// Convergence per line (el-2)/el; undefined for vacuum diagrams (el = 0).
Rational per_line_exponent(int el);

/// First Betti number I - V + 1 of a connected diagram.
int loop_count(const Diagram& d);

/// 4L - 2I: four powers per loop measure, two per propagator.
int loop_degree(const Diagram& d);

/// degree + index * num_momentum_vars.
Rational sobolev_shift(const Rational& degree, const Rational& index, int num_momentum_vars);

DivergenceClass classify_degree(const Rational& shifted_degree);

DivergenceReport analyze_divergence(const Diagram& d, const Rational& sobolev_index = Rational(0),
                                    std::optional<std::string> lattice_label = std::nullopt);

struct QuadratureCheck {
  double value = 0.0;
  double reference = 0.0;
  double abs_error = 0.0;
};

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_rule(int points, std::vector<double>& nodes, std::vector<double>& weights);

/// Quadrature of int_0^1 dx / (alpha x + beta (1-x))^2 against the closed
/// form 1/(alpha beta). The defaults hold the error below 1e-12 for
/// alpha, beta in [0.1, 10].
QuadratureCheck feynman_combine(double alpha, double beta, int quadrature_points = 128);

/// (n-1)! int over the simplex of (sum x_i alpha_i)^-n against 1/prod
/// alpha_i, by iterated Gauss-Legendre substitution. n = 2..4.
QuadratureCheck symmetric_mixture(const std::vector<double>& alphas, int quadrature_points = 64);

/// True iff every pairwise ratio lies in [1/ratio_bound, ratio_bound]:
/// the proportionality precondition for the improved per-line asymptotics.
bool uniformity_probe(const std::vector<double>& alphas, double ratio_bound);

}  // namespace rpt

#endif
