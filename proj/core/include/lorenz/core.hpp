#pragma once

#include <cstddef>
#include <vector>

namespace lorenz::core {

// Extended real value: a finite double or a signed infinity sentinel.
// Infinities never enter floating arithmetic; callers branch on the state.
class xreal {
public:
    xreal() = default;

    static xreal of(double v);
    static xreal inf();
    static xreal neg_inf();

    bool finite() const { return state_ == kind::finite; }
    bool is_inf() const { return state_ == kind::pos_inf; }
    bool is_neg_inf() const { return state_ == kind::neg_inf; }

    // Throws std::logic_error when not finite.
    double value() const;

    // Total order with -inf below every finite value and +inf above.
    bool less_than(const xreal& other) const;

private:
    enum class kind { finite, pos_inf, neg_inf };
    kind state_ = kind::finite;
    double v_ = 0.0;
};

using weights = std::vector<double>;

// Sum of all entries.
double total(const weights& w);

// Validates nonnegative finite entries and length >= 1; throws
// std::invalid_argument naming the offending field.
void check_weights(const weights& w, const char* name);

// A weighted vector pair (p, q) of equal length.
struct vpair {
    weights p;
    weights q;
};

void check_pair(const vpair& a);

struct elbow_point {
    double x;
    double y;
};

// Cumulative sums of (p, q) in nonincreasing p/q ratio order.  Entries with
// q = 0 < p sort first, ties break by ascending index, entries with
// p = q = 0 are dropped.  points excludes the origin; order lists the kept
// source indices in traversal order.
struct elbow_curve {
    std::vector<elbow_point> points;
    std::vector<std::size_t> order;
};

elbow_curve elbows(const vpair& a);

// Smallest q-mass of a test passing x units of p-mass: 0 for x <= 0,
// piecewise linear through the elbows on [0, |p|], +inf beyond |p|.
// Convex and nondecreasing in x.
xreal beta_at(const vpair& a, double x);

// Largest p-mass of a test costing at most y units of q-mass: -inf for
// y < 0, |p| for y >= |q|, the inverse of beta_at in between.  Concave and
// nondecreasing in y.
xreal alpha_at(const vpair& a, double y);

// Sum of positive parts of (a_k - b_k).
double variational_distance(const weights& a, const weights& b);

// Sum of a_k ln(a_k / b_k) over a_k > 0; +inf when b vanishes where a does
// not.  Natural logarithm.
xreal relative_entropy(const weights& a, const weights& b);

// -sum p_k ln p_k for a normalized distribution; throws when |p| is not 1
// within 1e-9.
double shannon_entropy(const weights& p);

// Concatenation (p1 ++ p2, q1 ++ q2).
vpair direct_sum(const vpair& a, const vpair& b);

// Entrywise products over the index product, row major in the first factor.
vpair tensor(const vpair& a, const vpair& b);

// N-fold tensor power aggregated over type classes: one entry per
// composition of N into size(a) parts, weighted by the multinomial
// coefficient.  Products are accumulated in the log domain so that small
// weights survive far below 1e-300 before the final exponentiation.
// Throws std::length_error when the class count exceeds max_entries.
vpair tensor_power(const vpair& a, int n, std::size_t max_entries = 2000000);

} // namespace lorenz::core
