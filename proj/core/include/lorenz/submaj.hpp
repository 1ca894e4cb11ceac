#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lorenz/core.hpp"
#include "lorenz/lp.hpp"

namespace lorenz::submaj {

enum class method { lp, geometric };

// A candidate transformation, rows indexed by the target, columns by the
// source.  stochastic: Mp = p', Mq = q', unit column sums.  substochastic:
// Mp >= p', Mq <= q', column sums <= 1.
struct witness {
    enum class matrix_class { stochastic, substochastic };
    matrix_class cls = matrix_class::substochastic;
    std::vector<std::vector<double>> m;
};

bool witness_valid(const witness& w, const core::vpair& a, const core::vpair& b,
                   double tol = 1e-7);

struct decision {
    bool yes = false;
    std::optional<witness> transform; // populated by the lp method on yes
};

// Exact transformation by a stochastic matrix.  Mismatched totals of p or q
// (beyond 1e-9) decide no without solving.
decision relatively_majorizes(const core::vpair& a, const core::vpair& b);

// Transformation by a substochastic matrix.  The geometric method compares
// the lower boundary curves at every elbow of either pair; the lp method
// solves the feasibility program and returns the witness.
decision submajorizes(const core::vpair& a, const core::vpair& b,
                      method how = method::geometric);

// Extension of a substochastic transformation to a stochastic one on padded
// pairs: a_tilde = (p ++ 0, q ++ z q), b_tilde = (p' ++ s', q' ++ q'/z) with
// z = |q'|/|q| and s' proportional to q'.  Requires submajorizes(a, b) and
// positive |q|, |q'|.
struct dilation {
    core::vpair a_tilde;
    core::vpair b_tilde;
    core::weights s_prime;
    witness transform; // stochastic witness for the padded pairs
};

dilation dilate(const core::vpair& a, const core::vpair& b);

// Builds a substochastic witness directly from the two boundary curves:
// each target segment line is extended until it meets the source curve, and
// the interpolated nested tests become the rows of M.  Requires
// submajorizes(a, b) and equal p totals (within 1e-9); then Mp = p' exactly
// and Mq <= q'.
witness witness_from_curves(const core::vpair& a, const core::vpair& b);

struct approx_params {
    double epsilon = 0.0;
    double eta = 0.0;
};

// Substochastic transformation up to additive errors: Mp >= p' - a with
// |a| <= epsilon and Mq <= q' + b with |b| <= eta.
decision approx_submajorizes(const core::vpair& a, const core::vpair& b,
                             const approx_params& params,
                             method how = method::geometric);

// Smallest achievable errors of each kind separately.  eta_hat_star is +inf
// exactly when |p| < |p'|.
struct error_pair {
    double eps_star = 0.0;
    core::xreal eta_hat_star;
};

error_pair optimal_errors(const core::vpair& a, const core::vpair& b);

// Same two optima through explicit linear programs; used to cross-check the
// curve formulas.
error_pair optimal_errors_lp(const core::vpair& a, const core::vpair& b);

// Largest lambda with (p, q) above (lambda p', z q'), both pairs normalized.
// Evaluated at the target elbow heights and clamped to [0, 1].
double lambda_star(const core::vpair& a, const core::vpair& b, double z);

// Smallest z with (p, q) above (lambda p', z q'), both pairs normalized,
// lambda in (0, 1].  Evaluated at the target elbow abscissas.
double z_star(const core::vpair& a, const core::vpair& b, double lambda);

// Boundary samples (z, lambda_star(z)) of the feasible parameter region.
struct feasible_boundary {
    std::vector<std::pair<double, double>> samples;
};

feasible_boundary region_boundary(const core::vpair& a, const core::vpair& b,
                                  const std::vector<double>& z_grid);

} // namespace lorenz::submaj
