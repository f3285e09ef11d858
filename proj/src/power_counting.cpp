#include "rpt/power_counting.hpp"

#include <cmath>
#include <stdexcept>

namespace rpt {

int paper_degree(int el) {
  if (el < 0) throw std::invalid_argument("negative external leg count");
  if (el % 2 != 0) {
    throw std::domain_error("odd external leg counts do not occur in gauge-invariant terms");
  }
  return 2 * (el - 2);
}

Rational per_line_exponent(int el) {
  if (el == 0) throw std::domain_error("per-line exponent is undefined for vacuum diagrams");
  if (el < 0 || el % 2 != 0) {
    throw std::domain_error("per-line exponent needs a positive even external leg count");
  }
  Rational r(el - 2, el);
  r.canonicalize();
  return r;
}

int loop_count(const Diagram& d) {
  if (!is_connected(d)) {
    throw std::domain_error("loop counting is defined for connected diagrams");
  }
  if (d.vertices().empty()) return 0;
  return static_cast<int>(d.edges().size()) - static_cast<int>(d.vertices().size()) + 1;
}

int loop_degree(const Diagram& d) {
  return 4 * loop_count(d) - 2 * static_cast<int>(d.edges().size());
}

Rational sobolev_shift(const Rational& degree, const Rational& index, int num_momentum_vars) {
  if (num_momentum_vars < 0) throw std::invalid_argument("negative variable count");
  return degree + index * num_momentum_vars;
}

DivergenceClass classify_degree(const Rational& shifted_degree) {
  const int s = sgn(shifted_degree);
  if (s < 0) return DivergenceClass::convergent;
  if (s == 0) return DivergenceClass::logarithmic;
  return DivergenceClass::power_divergent;
}

DivergenceReport analyze_divergence(const Diagram& d, const Rational& sobolev_index,
                                    std::optional<std::string> lattice_label) {
  DivergenceReport report;
  report.el = d.el();
  report.paper_degree = 2 * (report.el - 2);
  if (report.el > 0) {
    Rational r(report.el - 2, report.el);
    r.canonicalize();
    report.per_line_exponent = r;
  }
  const int loops = loop_count(d);
  report.loop_degree = loop_degree(d);
  report.sobolev_index = sobolev_index;
  report.shifted_degree = sobolev_shift(Rational(report.loop_degree), sobolev_index, loops);
  report.classification = classify_degree(report.shifted_degree);
  report.lattice_label = std::move(lattice_label);
  return report;
}

void gauss_legendre_rule(int points, std::vector<double>& nodes, std::vector<double>& weights) {
  if (points < 1) throw std::invalid_argument("quadrature needs at least one point");
  nodes.assign(static_cast<size_t>(points), 0.0);
  weights.assign(static_cast<size_t>(points), 0.0);
  const int half = (points + 1) / 2;
  const double n = points;
  for (int i = 1; i <= half; ++i) {
    // Newton iteration on P_n from the Chebyshev-based starting guess.
    double z = std::cos(M_PI * (i - 0.25) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= points; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    // Map [-1, 1] to [0, 1].
    nodes[static_cast<size_t>(i - 1)] = 0.5 * (1.0 - z);
    nodes[static_cast<size_t>(points - i)] = 0.5 * (1.0 + z);
    const double w = 1.0 / ((1.0 - z * z) * pp * pp);
    weights[static_cast<size_t>(i - 1)] = w;
    weights[static_cast<size_t>(points - i)] = w;
  }
}

QuadratureCheck feynman_combine(double alpha, double beta, int quadrature_points) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::domain_error("feynman_combine needs positive alpha and beta");
  }
  if (quadrature_points < 16) throw std::invalid_argument("needs at least 16 quadrature points");
  std::vector<double> nodes;
  std::vector<double> weights;
  gauss_legendre_rule(quadrature_points, nodes, weights);
  double value = 0.0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    const double x = nodes[i];
    const double denom = alpha * x + beta * (1.0 - x);
    value += weights[i] / (denom * denom);
  }
  QuadratureCheck out;
  out.value = value;
  out.reference = 1.0 / (alpha * beta);
  out.abs_error = std::abs(out.value - out.reference);
  return out;
}

namespace {

// Iterated substitution over the simplex: level i integrates
// x_i = remaining * t with jacobian `remaining`; the last coordinate is
// the leftover mass.
double simplex_integral(const std::vector<double>& alphas, size_t level, double remaining,
                        double partial, const std::vector<double>& nodes,
                        const std::vector<double>& weights) {
  const size_t n = alphas.size();
  if (level + 1 == n) {
    const double denom = partial + remaining * alphas[level];
    return std::pow(denom, -static_cast<double>(n));
  }
  double sum = 0.0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    const double x = remaining * nodes[i];
    sum += weights[i] *
           simplex_integral(alphas, level + 1, remaining - x, partial + x * alphas[level], nodes,
                            weights);
  }
  return remaining * sum;
}

}  // namespace

QuadratureCheck symmetric_mixture(const std::vector<double>& alphas, int quadrature_points) {
  const size_t n = alphas.size();
  if (n < 2) throw std::invalid_argument("symmetric mixture needs at least two propagators");
  if (n > 4) throw std::domain_error("symmetric mixture is guarded to n <= 4 at desk scale");
  double product = 1.0;
  for (double a : alphas) {
    if (!(a > 0.0)) throw std::domain_error("symmetric mixture needs positive weights");
    product *= a;
  }
  if (quadrature_points < 16) throw std::invalid_argument("needs at least 16 quadrature points");
  std::vector<double> nodes;
  std::vector<double> weights;
  gauss_legendre_rule(quadrature_points, nodes, weights);
  double factorial = 1.0;
  for (size_t k = 2; k < n; ++k) factorial *= static_cast<double>(k);
  QuadratureCheck out;
  out.value = factorial * simplex_integral(alphas, 0, 1.0, 0.0, nodes, weights);
  out.reference = 1.0 / product;
  out.abs_error = std::abs(out.value - out.reference);
  return out;
}

bool uniformity_probe(const std::vector<double>& alphas, double ratio_bound) {
  if (!(ratio_bound >= 1.0)) throw std::invalid_argument("ratio bound must be at least 1");
  if (alphas.empty()) return true;
  double lo = alphas[0];
  double hi = alphas[0];
  for (double a : alphas) {
    if (!(a > 0.0)) return false;
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  return hi <= ratio_bound * lo;
}

}  // namespace rpt
