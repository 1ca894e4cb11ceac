#include <lorenz/entangle.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace lorenz::entangle {

namespace {

constexpr double tol = 1e-9;

core::weights sorted_desc(const core::weights& w, std::size_t m) {
  core::weights out(w);
  out.resize(m, 0.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

void check_schmidt(const schmidt_vector& v) {
  core::check_weights(v.coefficients, "coefficients");
  if (std::abs(core::total(v.coefficients) - 1.0) > tol)
    throw std::invalid_argument("schmidt_vector: coefficients must sum to 1");
}

bool locc_possible(const schmidt_vector& source, const schmidt_vector& target) {
  check_schmidt(source);
  check_schmidt(target);
  std::size_t m = std::max(source.coefficients.size(),
                           target.coefficients.size());
  auto s = sorted_desc(source.coefficients, m);
  auto t = sorted_desc(target.coefficients, m);
  double cs = 0.0;
  double ct = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    cs += s[k];
    ct += t[k];
    if (ct < cs - tol) return false;
  }
  return true;
}

double vidal_probability(const schmidt_vector& source,
                         const schmidt_vector& target) {
  check_schmidt(source);
  check_schmidt(target);
  std::size_t m = std::max(source.coefficients.size(),
                           target.coefficients.size());
  auto s = sorted_desc(source.coefficients, m);
  auto t = sorted_desc(target.coefficients, m);
  double tail_s = 0.0;
  double tail_t = 0.0;
  double best = 1.0;
  for (std::size_t k = m; k-- > 0;) {
    tail_s += s[k];
    tail_t += t[k];
    if (tail_t > 1e-15) best = std::min(best, tail_s / tail_t);
  }
  return std::max(best, 0.0);
}

double entanglement_cost(const schmidt_vector& source,
                         const schmidt_vector& target) {
  check_schmidt(source);
  check_schmidt(target);
  std::size_t m = std::max(source.coefficients.size(),
                           target.coefficients.size());
  core::weights sp(source.coefficients);
  sp.resize(m, 0.0);
  core::weights tp(target.coefficients);
  tp.resize(m, 0.0);
  core::weights ones(m, 1.0);
  core::vpair src{sp, ones};
  core::vpair tgt{tp, ones};
  std::vector<double> xs;
  for (const auto& e : core::elbows(src).points) xs.push_back(e.x);
  for (const auto& e : core::elbows(tgt).points) xs.push_back(e.x);
  std::sort(xs.begin(), xs.end());
  double best = 0.0;
  for (double x : xs) {
    if (x <= 1e-15 || x > 1.0 + 1e-12) continue;
    double num = core::beta_at(tgt, x).value();
    double den = core::beta_at(src, x).value();
    if (den <= 1e-15) continue;
    best = std::max(best, num / den);
  }
  return best;
}

fidelity_report fidelity_bounds(const schmidt_vector& source,
                                const schmidt_vector& target, double z) {
  check_schmidt(source);
  check_schmidt(target);
  if (!std::isfinite(z) || z <= 0.0)
    throw std::invalid_argument("fidelity_bounds: z must be positive");
  std::size_t m = std::max(source.coefficients.size(),
                           target.coefficients.size());
  auto s = sorted_desc(source.coefficients, m);
  auto t = sorted_desc(target.coefficients, m);

  fidelity_report out;
  double worst = 0.0;
  double cs = 0.0;
  double ct = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    cs += s[k];
    ct += t[k];
    worst = std::max(worst, cs / z - ct);
  }
  out.shift_bound = 1.0 - worst;

  if (locc_possible(source, target)) {
    double gap = core::shannon_entropy(target.coefficients) -
                 core::shannon_entropy(source.coefficients);
    out.entropy_bound = 1.0 - 2.0 * gap * gap;
  }

  double zs = entanglement_cost(source, target);
  if (z <= zs + tol) out.cost_bound = z / zs;

  double b = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    double pk = k < source.coefficients.size() ? source.coefficients[k] : 0.0;
    double qk = k < target.coefficients.size() ? target.coefficients[k] : 0.0;
    b += std::sqrt(pk * qk);
  }
  out.bhattacharyya = b;
  return out;
}

}  // namespace lorenz::entangle
