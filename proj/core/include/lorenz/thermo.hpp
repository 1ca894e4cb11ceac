#pragma once

// Thermodynamic resource calculus on quasiclassical states: Gibbs weights,
// exact and work-assisted convertibility, probabilistic and approximate
// transformation optima, inequality suite, canonical recovery map, and
// asymptotic i.i.d. rates.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <lorenz/core.hpp>
#include <lorenz/submaj.hpp>

namespace lorenz::thermo {

// A state distribution r paired with its Gibbs distribution g.
// Both normalized; g strictly positive.
struct resource {
  core::weights r;
  core::weights g;
  std::string label;
};

void check_resource(const resource& a);
core::vpair as_pair(const resource& a);

// Normalized Boltzmann weights exp(-beta*e_k)/Z, computed with an energy
// shift so the largest weight is exactly representable.
core::weights gibbs(const std::vector<double>& energies, double beta);

// Exact convertibility a -> b under Gibbs-preserving maps.
submaj::decision can_transform(const resource& a, const resource& b);

// Extraction of work w (w < 0 expends work) alongside a -> b. Using
// z = exp(-beta*w), feasibility reduces to (r,g) sub-majorizing (r', z*g').
bool work_assisted_feasible(const resource& a, const resource& b, double w,
                            double beta);

// Optimal transformation quantities on caller-supplied grids:
//   lambda_star_at_z : best success probability at work scale z
//   z_star_at_lambda : best work scale at success probability lambda
//   eps_star_at_z    : least first-kind error at work scale z
//   eta_hat_star_at_z: least battery-independent second-kind error at z
struct transform_report {
  std::vector<std::pair<double, double>> lambda_star_at_z;
  std::vector<std::pair<double, double>> z_star_at_lambda;
  std::vector<std::pair<double, double>> eps_star_at_z;
  std::vector<std::pair<double, double>> eta_hat_star_at_z;
};

transform_report transform(const resource& a, const resource& b,
                           const std::vector<double>& z_grid,
                           const std::vector<double>& lambda_grid);

// Battery at energy level e with inverse temperature beta and partition
// function zb. The physical second-kind error is eta_hat * battery_scale.
struct battery_context {
  double beta;
  double energy;
  double partition;
};

double battery_scale(const battery_context& b);

// Work extractable from a alone: z_star = beta_lambda(r,g) at success
// probability lambda; lambda_star = alpha_z(r,g) at work scale z;
// eta_hat = 1 - z. Requires z, lambda in (0,1].
struct work_value_result {
  double z_star;
  double lambda_star;
  double eta_hat;
};

work_value_result work_value(const resource& a, double z, double lambda);

// Work needed to create a from equilibrium: z_star = lambda * max_k r_k/g_k;
// for z >= 1 the least first- and second-kind errors both equal phi(a, z).
struct work_cost_result {
  double z_star;
  double eps_star;
  double eta_star;
};

work_cost_result work_cost(const resource& a, double lambda, double z);

// phi_z = sum((r_k - z*g_k)_+), the creation-cost conjugate of the curve.
double phi(const resource& a, double z);

// Slope dx/dy of the lower-boundary segment containing q-coordinate z;
// 0 once z exceeds the total Gibbs weight. This is the conjugate scale at
// which the creation/extraction trade-off is tight.
double lorenz_tangent_slope(const resource& a, double z);

// One inequality instance: satisfied means it holds within 1e-9 in the
// stated direction; gated entries that do not apply are skipped with
// lhs = rhs = 0 and satisfied = true.
struct bound_entry {
  std::string id;
  double lhs;
  double rhs;
  bool satisfied;
  bool skipped;
};

// Inequality suite relating the transformation optima of a and b at the
// probe point (lambda, z, z_prime). Entries, in order:
//   fenchel           (1-alpha_z(a)) + phi_{z'}(a) >= 1 - z*z'
//   feasible-product   lambda*_z * z*_lambda <= lambda*z  when (lambda,z) works
//   infeasible-product lambda*_z * z*_lambda >= lambda*z  otherwise
//   achievable-excess  (1 - eta_hat*_z) * z*_1 >= z       when z <= z*_1
//   chain-z            z*_{l^2}(a->a) <= z*_l(a->b) * z*_l(b->a)
//   chain-lambda       l*_{zz'}(a->a) >= l*_z(a->b) * l*_{z'}(b->a)
//   reverse-product    z*_l(a->b) * z*_l(b->a) >= l^2
//   reverse-ratio      lambda * l*_z(b->a) <= z * z*_lambda(a->b)
//   reverse-excess     eta_hat*_z(b->a) >= beta_1(b) * (1 - z*z*_1(a->b))
//   pinsker-deficit    eps*_{1/z}(b->a) <= sqrt(dD/2)     when a reaches b at z
//   pinsker-excess     eta_hat*_1(b->a) <= sqrt(dD'/2)    when a converts to b
std::vector<bound_entry> bounds_report(const resource& a, const resource& b,
                                       double lambda, double z,
                                       double z_prime);

// Canonical reversal of a column-stochastic map t relative to reference q:
// t_hat[k][j] = q_k * t[j][k] / (t q)_j. Maps t q back to q exactly.
submaj::witness petz_recovery(const submaj::witness& t,
                              const core::weights& q);

// Work-gain rates -(1/n)*(ln beta_{1/2}(a^n) - ln beta_{1/2}(b^n)) for
// n = 1..n_max, with the analytic limit D(r,g) - D(r',g').
struct rate_table {
  std::vector<std::pair<int, double>> rates;
  double limit;
};

rate_table asymptotic_work_rate(const resource& a, const resource& b,
                                int n_max);

// Erasure/cooling rates -(1/n)*ln beta_{1/2}(g^n, r^n) with limit D(g,r);
// entries and limit are infinite when the error hits exactly zero.
struct erasure_table {
  std::vector<std::pair<int, core::xreal>> rates;
  core::xreal limit;
};

erasure_table erasure_cooling_rates(const resource& a, int n_max);

// Sparse entry of a map from input level k to output level j while the
// battery takes up work w = work_values[w_index].
struct gibbs_map_entry {
  std::size_t j;
  std::size_t w_index;
  std::size_t k;
  double value;
};

// Checks that a column-normalized battery-assisted map preserves Gibbs
// weights: sum_{k,w} exp(beta*w) * m(j,w|k) * exp(-beta*e_k) equals
// exp(-beta*e'_j) for every output level j, within 1e-9.
bool gibbs_stochastic_check(const std::vector<gibbs_map_entry>& m_hat,
                            const std::vector<double>& energies_in,
                            const std::vector<double>& energies_out,
                            const std::vector<double>& work_values,
                            double beta);

}  // namespace lorenz::thermo
