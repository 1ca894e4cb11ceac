#include <lorenz/thermo.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace lorenz::thermo {

namespace {

constexpr double tol = 1e-9;

core::vpair scaled_pair(const resource& b, double z) {
  core::weights q(b.g.size());
  for (std::size_t k = 0; k < b.g.size(); ++k) q[k] = z * b.g[k];
  return {b.r, q};
}

void require_unit(double v, const char* where) {
  if (!std::isfinite(v) || v <= 0.0 || v > 1.0)
    throw std::invalid_argument(std::string(where) + " must lie in (0,1]");
}

void require_positive(double v, const char* where) {
  if (!std::isfinite(v) || v <= 0.0)
    throw std::invalid_argument(std::string(where) + " must be positive");
}

bound_entry ge_entry(const char* id, double lhs, double rhs) {
  return {id, lhs, rhs, lhs >= rhs - tol, false};
}

bound_entry le_entry(const char* id, double lhs, double rhs) {
  return {id, lhs, rhs, lhs <= rhs + tol, false};
}

bound_entry skipped_entry(const char* id) { return {id, 0.0, 0.0, true, true}; }

}  // namespace

void check_resource(const resource& a) {
  core::check_weights(a.r, "r");
  core::check_weights(a.g, "g");
  if (a.r.size() != a.g.size())
    throw std::invalid_argument("resource: r and g must have equal length");
  for (std::size_t k = 0; k < a.g.size(); ++k)
    if (a.g[k] <= 0.0)
      throw std::invalid_argument("resource: g[" + std::to_string(k) +
                                  "] must be positive");
  if (std::abs(core::total(a.r) - 1.0) > tol)
    throw std::invalid_argument("resource: r must be normalized");
  if (std::abs(core::total(a.g) - 1.0) > tol)
    throw std::invalid_argument("resource: g must be normalized");
}

core::vpair as_pair(const resource& a) { return {a.r, a.g}; }

core::weights gibbs(const std::vector<double>& energies, double beta) {
  if (energies.empty())
    throw std::invalid_argument("gibbs: energies must be nonempty");
  require_positive(beta, "gibbs: beta");
  for (double e : energies)
    if (!std::isfinite(e))
      throw std::invalid_argument("gibbs: energies must be finite");
  double shift = *std::min_element(energies.begin(), energies.end());
  core::weights w(energies.size());
  double norm = 0.0;
  for (std::size_t k = 0; k < energies.size(); ++k) {
    w[k] = std::exp(-beta * (energies[k] - shift));
    norm += w[k];
  }
  for (double& v : w) v /= norm;
  return w;
}

submaj::decision can_transform(const resource& a, const resource& b) {
  check_resource(a);
  check_resource(b);
  return submaj::relatively_majorizes(as_pair(a), as_pair(b));
}

bool work_assisted_feasible(const resource& a, const resource& b, double w,
                            double beta) {
  check_resource(a);
  check_resource(b);
  require_positive(beta, "work_assisted_feasible: beta");
  if (!std::isfinite(w))
    throw std::invalid_argument("work_assisted_feasible: w must be finite");
  double z = std::exp(-beta * w);
  return submaj::submajorizes(as_pair(a), scaled_pair(b, z)).yes;
}

transform_report transform(const resource& a, const resource& b,
                           const std::vector<double>& z_grid,
                           const std::vector<double>& lambda_grid) {
  check_resource(a);
  check_resource(b);
  if (z_grid.empty() || lambda_grid.empty())
    throw std::invalid_argument("transform: grids must be nonempty");
  for (double z : z_grid) require_positive(z, "transform: z");
  for (double l : lambda_grid) require_unit(l, "transform: lambda");
  auto pa = as_pair(a);
  auto pb = as_pair(b);
  transform_report out;
  for (double z : z_grid) {
    out.lambda_star_at_z.emplace_back(z, submaj::lambda_star(pa, pb, z));
    auto err = submaj::optimal_errors(pa, scaled_pair(b, z));
    out.eps_star_at_z.emplace_back(z, err.eps_star);
    out.eta_hat_star_at_z.emplace_back(z, err.eta_hat_star.value());
  }
  for (double l : lambda_grid)
    out.z_star_at_lambda.emplace_back(l, submaj::z_star(pa, pb, l));
  return out;
}

double battery_scale(const battery_context& b) {
  require_positive(b.beta, "battery_scale: beta");
  require_positive(b.partition, "battery_scale: partition");
  if (!std::isfinite(b.energy))
    throw std::invalid_argument("battery_scale: energy must be finite");
  return std::exp(-b.beta * b.energy) / b.partition;
}

work_value_result work_value(const resource& a, double z, double lambda) {
  check_resource(a);
  require_unit(z, "work_value: z");
  require_unit(lambda, "work_value: lambda");
  auto pa = as_pair(a);
  work_value_result out;
  out.z_star = core::beta_at(pa, lambda).value();
  out.lambda_star = core::alpha_at(pa, z).value();
  out.eta_hat = 1.0 - z;
  return out;
}

work_cost_result work_cost(const resource& a, double lambda, double z) {
  check_resource(a);
  require_unit(lambda, "work_cost: lambda");
  if (!std::isfinite(z) || z < 1.0)
    throw std::invalid_argument("work_cost: z must be at least 1");
  double ratio = 0.0;
  for (std::size_t k = 0; k < a.r.size(); ++k)
    ratio = std::max(ratio, a.r[k] / a.g[k]);
  double err = phi(a, z);
  return {lambda * ratio, err, err};
}

double phi(const resource& a, double z) {
  check_resource(a);
  if (!std::isfinite(z) || z < 0.0)
    throw std::invalid_argument("phi: z must be nonnegative");
  double s = 0.0;
  for (std::size_t k = 0; k < a.r.size(); ++k)
    s += std::max(a.r[k] - z * a.g[k], 0.0);
  return s;
}

double lorenz_tangent_slope(const resource& a, double z) {
  check_resource(a);
  if (!std::isfinite(z) || z < 0.0)
    throw std::invalid_argument("lorenz_tangent_slope: z must be nonnegative");
  auto curve = core::elbows(as_pair(a));
  double x0 = 0.0;
  double y0 = 0.0;
  for (const auto& e : curve.points) {
    if (y0 <= z && z <= e.y && e.y > y0 + 1e-15)
      return (e.x - x0) / (e.y - y0);
    x0 = e.x;
    y0 = e.y;
  }
  return 0.0;
}

std::vector<bound_entry> bounds_report(const resource& a, const resource& b,
                                       double lambda, double z,
                                       double z_prime) {
  check_resource(a);
  check_resource(b);
  require_unit(lambda, "bounds_report: lambda");
  require_positive(z, "bounds_report: z");
  require_positive(z_prime, "bounds_report: z_prime");
  auto pa = as_pair(a);
  auto pb = as_pair(b);
  std::vector<bound_entry> out;

  double az = core::alpha_at(pa, z).value();
  out.push_back(
      ge_entry("fenchel", (1.0 - az) + phi(a, z_prime), 1.0 - z * z_prime));

  double ls = submaj::lambda_star(pa, pb, z);
  double zs = submaj::z_star(pa, pb, lambda);
  core::vpair probe{core::weights(b.r.size()), core::weights(b.g.size())};
  for (std::size_t k = 0; k < b.r.size(); ++k) {
    probe.p[k] = lambda * b.r[k];
    probe.q[k] = z * b.g[k];
  }
  if (submaj::submajorizes(pa, probe).yes) {
    out.push_back(le_entry("feasible-product", ls * zs, lambda * z));
    out.push_back(skipped_entry("infeasible-product"));
  } else {
    out.push_back(skipped_entry("feasible-product"));
    out.push_back(ge_entry("infeasible-product", ls * zs, lambda * z));
  }

  double z1 = submaj::z_star(pa, pb, 1.0);
  if (z <= z1 + 1e-12) {
    auto err = submaj::optimal_errors(pa, scaled_pair(b, z));
    out.push_back(ge_entry("achievable-excess",
                           (1.0 - err.eta_hat_star.value()) * z1, z));
  } else {
    out.push_back(skipped_entry("achievable-excess"));
  }

  out.push_back(le_entry("chain-z", submaj::z_star(pa, pa, lambda * lambda),
                         zs * submaj::z_star(pb, pa, lambda)));
  out.push_back(ge_entry("chain-lambda",
                         submaj::lambda_star(pa, pa, z * z_prime),
                         ls * submaj::lambda_star(pb, pa, z_prime)));
  out.push_back(ge_entry("reverse-product", zs * submaj::z_star(pb, pa, lambda),
                         lambda * lambda));
  out.push_back(le_entry("reverse-ratio", lambda * submaj::lambda_star(pb, pa, z),
                         z * zs));

  {
    auto err = submaj::optimal_errors(pb, scaled_pair(a, z));
    double b1 = core::beta_at(pb, 1.0).value();
    out.push_back(ge_entry("reverse-excess", err.eta_hat_star.value(),
                           b1 * (1.0 - z * z1)));
  }

  if (submaj::submajorizes(pa, scaled_pair(b, z)).yes) {
    auto err = submaj::optimal_errors(pb, scaled_pair(a, 1.0 / z));
    double dd = core::relative_entropy(a.r, a.g).value() -
                core::relative_entropy(b.r, b.g).value() + std::log(z);
    out.push_back(le_entry("pinsker-deficit", err.eps_star,
                           std::sqrt(std::max(dd, 0.0) / 2.0)));
  } else {
    out.push_back(skipped_entry("pinsker-deficit"));
  }

  if (submaj::relatively_majorizes(pa, pb).yes) {
    auto dga = core::relative_entropy(a.g, a.r);
    auto dgb = core::relative_entropy(b.g, b.r);
    if (dga.finite() && dgb.finite()) {
      auto err = submaj::optimal_errors(pb, pa);
      double dd = dga.value() - dgb.value();
      out.push_back(le_entry("pinsker-excess", err.eta_hat_star.value(),
                             std::sqrt(std::max(dd, 0.0) / 2.0)));
    } else {
      out.push_back(skipped_entry("pinsker-excess"));
    }
  } else {
    out.push_back(skipped_entry("pinsker-excess"));
  }

  return out;
}

submaj::witness petz_recovery(const submaj::witness& t,
                              const core::weights& q) {
  const auto& m = t.m;
  if (m.empty() || m.front().empty())
    throw std::invalid_argument("petz_recovery: transform must be nonempty");
  std::size_t rows = m.size();
  std::size_t cols = m.front().size();
  for (const auto& row : m)
    if (row.size() != cols)
      throw std::invalid_argument(
          "petz_recovery: transform rows must have equal length");
  core::check_weights(q, "q");
  if (q.size() != cols)
    throw std::invalid_argument(
        "petz_recovery: q length must match transform columns");
  for (double v : q)
    if (v <= 0.0)
      throw std::invalid_argument("petz_recovery: q must be strictly positive");
  for (std::size_t k = 0; k < cols; ++k) {
    double colsum = 0.0;
    for (std::size_t j = 0; j < rows; ++j) {
      if (m[j][k] < -1e-12)
        throw std::invalid_argument(
            "petz_recovery: transform entries must be nonnegative");
      colsum += m[j][k];
    }
    if (std::abs(colsum - 1.0) > tol)
      throw std::invalid_argument(
          "petz_recovery: transform must be column-stochastic");
  }
  core::weights tq(rows, 0.0);
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t k = 0; k < cols; ++k) tq[j] += m[j][k] * q[k];
  for (double v : tq)
    if (v <= 0.0)
      throw std::domain_error(
          "petz_recovery: transform maps q to a vanishing output level");
  submaj::witness out;
  out.cls = submaj::witness::matrix_class::stochastic;
  out.m.assign(cols, std::vector<double>(rows, 0.0));
  for (std::size_t k = 0; k < cols; ++k)
    for (std::size_t j = 0; j < rows; ++j)
      out.m[k][j] = q[k] * m[j][k] / tq[j];
  return out;
}

rate_table asymptotic_work_rate(const resource& a, const resource& b,
                                int n_max) {
  check_resource(a);
  check_resource(b);
  if (n_max < 1)
    throw std::invalid_argument("asymptotic_work_rate: n_max must be positive");
  auto pa = as_pair(a);
  auto pb = as_pair(b);
  rate_table out;
  out.limit = core::relative_entropy(a.r, a.g).value() -
              core::relative_entropy(b.r, b.g).value();
  for (int n = 1; n <= n_max; ++n) {
    double ba = core::beta_at(core::tensor_power(pa, n), 0.5).value();
    double bb = core::beta_at(core::tensor_power(pb, n), 0.5).value();
    out.rates.emplace_back(n, -(std::log(ba) - std::log(bb)) / n);
  }
  return out;
}

erasure_table erasure_cooling_rates(const resource& a, int n_max) {
  check_resource(a);
  if (n_max < 1)
    throw std::invalid_argument(
        "erasure_cooling_rates: n_max must be positive");
  core::vpair swapped{a.g, a.r};
  erasure_table out;
  out.limit = core::relative_entropy(a.g, a.r);
  for (int n = 1; n <= n_max; ++n) {
    double eps = core::beta_at(core::tensor_power(swapped, n), 0.5).value();
    out.rates.emplace_back(n, eps > 0.0 ? core::xreal::of(-std::log(eps) / n)
                                        : core::xreal::inf());
  }
  return out;
}

bool gibbs_stochastic_check(const std::vector<gibbs_map_entry>& m_hat,
                            const std::vector<double>& energies_in,
                            const std::vector<double>& energies_out,
                            const std::vector<double>& work_values,
                            double beta) {
  if (energies_in.empty() || energies_out.empty())
    throw std::invalid_argument(
        "gibbs_stochastic_check: energy lists must be nonempty");
  require_positive(beta, "gibbs_stochastic_check: beta");
  for (double e : energies_in)
    if (!std::isfinite(e))
      throw std::invalid_argument(
          "gibbs_stochastic_check: energies_in must be finite");
  for (double e : energies_out)
    if (!std::isfinite(e))
      throw std::invalid_argument(
          "gibbs_stochastic_check: energies_out must be finite");
  for (double w : work_values)
    if (!std::isfinite(w))
      throw std::invalid_argument(
          "gibbs_stochastic_check: work_values must be finite");
  std::vector<std::array<std::size_t, 3>> keys;
  keys.reserve(m_hat.size());
  for (const auto& e : m_hat) {
    if (e.j >= energies_out.size() || e.k >= energies_in.size() ||
        e.w_index >= work_values.size())
      throw std::invalid_argument("gibbs_stochastic_check: index out of range");
    if (!std::isfinite(e.value) || e.value < -1e-12)
      throw std::invalid_argument(
          "gibbs_stochastic_check: entries must be nonnegative");
    keys.push_back({e.j, e.w_index, e.k});
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
    throw std::invalid_argument("gibbs_stochastic_check: duplicate map index");
  std::vector<double> colsum(energies_in.size(), 0.0);
  for (const auto& e : m_hat) colsum[e.k] += e.value;
  for (double s : colsum)
    if (std::abs(s - 1.0) > tol)
      throw std::invalid_argument(
          "gibbs_stochastic_check: map must be column-normalized");
  double shift = std::min(
      *std::min_element(energies_in.begin(), energies_in.end()),
      *std::min_element(energies_out.begin(), energies_out.end()));
  std::vector<double> lhs(energies_out.size(), 0.0);
  for (const auto& e : m_hat)
    lhs[e.j] += std::exp(beta * work_values[e.w_index]) * e.value *
                std::exp(-beta * (energies_in[e.k] - shift));
  for (std::size_t j = 0; j < energies_out.size(); ++j)
    if (std::abs(lhs[j] - std::exp(-beta * (energies_out[j] - shift))) > tol)
      return false;
  return true;
}

}  // namespace lorenz::thermo
