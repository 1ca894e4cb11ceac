#include "lorenz/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lorenz::core {

xreal xreal::of(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("xreal::of: value not finite");
    xreal r;
    r.state_ = kind::finite;
    r.v_ = v;
    return r;
}

xreal xreal::inf() {
    xreal r;
    r.state_ = kind::pos_inf;
    return r;
}

xreal xreal::neg_inf() {
    xreal r;
    r.state_ = kind::neg_inf;
    return r;
}

double xreal::value() const {
    if (state_ != kind::finite) throw std::logic_error("xreal::value: not finite");
    return v_;
}

bool xreal::less_than(const xreal& other) const {
    if (state_ == kind::neg_inf) return other.state_ != kind::neg_inf;
    if (state_ == kind::pos_inf) return false;
    if (other.state_ == kind::pos_inf) return true;
    if (other.state_ == kind::neg_inf) return false;
    return v_ < other.v_;
}

double total(const weights& w) {
    return std::accumulate(w.begin(), w.end(), 0.0);
}

void check_weights(const weights& w, const char* name) {
    if (w.empty()) throw std::invalid_argument(std::string(name) + ": empty weight vector");
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (!std::isfinite(w[k]))
            throw std::invalid_argument(std::string(name) + ": entry " + std::to_string(k) + " not finite");
        if (w[k] < 0.0)
            throw std::invalid_argument(std::string(name) + ": entry " + std::to_string(k) + " negative");
    }
}

void check_pair(const vpair& a) {
    check_weights(a.p, "p");
    check_weights(a.q, "q");
    if (a.p.size() != a.q.size())
        throw std::invalid_argument("pair: p and q lengths differ");
}

elbow_curve elbows(const vpair& a) {
    check_pair(a);
    std::vector<std::size_t> idx;
    idx.reserve(a.p.size());
    for (std::size_t k = 0; k < a.p.size(); ++k) {
        if (a.p[k] == 0.0 && a.q[k] == 0.0) continue;
        idx.push_back(k);
    }
    // Ratio p/q nonincreasing; q = 0 < p counts as +inf and leads.  Cross
    // multiplication avoids dividing by zero and keeps ties exact.
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        const bool inf_i = a.q[i] == 0.0;
        const bool inf_j = a.q[j] == 0.0;
        if (inf_i != inf_j) return inf_i;
        if (inf_i) return i < j;
        const double cross = a.p[i] * a.q[j] - a.p[j] * a.q[i];
        if (cross != 0.0) return cross > 0.0;
        return i < j;
    });
    elbow_curve c;
    c.order = idx;
    c.points.reserve(idx.size());
    double x = 0.0, y = 0.0;
    for (std::size_t k : idx) {
        x += a.p[k];
        y += a.q[k];
        c.points.push_back({x, y});
    }
    return c;
}

xreal beta_at(const vpair& a, double x) {
    const elbow_curve c = elbows(a);
    if (x <= 0.0) return xreal::of(0.0);
    const double tp = total(a.p);
    // The curve endpoint is the sorted-order sum of p and can differ from
    // the insertion-order total by a few ulp; clamp against the endpoint so
    // a query at exactly the total lands on the final positive-width
    // segment instead of a vertical run.
    const double xe = c.points.empty() ? 0.0 : c.points.back().x;
    const double slack = 1e-9 * std::max(1.0, tp);
    if (x > std::max(tp, xe) + slack) return xreal::inf();
    if (x > xe) x = xe;
    double px = 0.0, py = 0.0;
    for (const elbow_point& e : c.points) {
        if (x <= e.x) {
            // Vertical runs (p contribution zero) sit at the very end, so a
            // matching x always lands on a segment with positive width.
            const double t = (x - px) / (e.x - px);
            return xreal::of(py + t * (e.y - py));
        }
        px = e.x;
        py = e.y;
    }
    return xreal::of(py);
}

xreal alpha_at(const vpair& a, double y) {
    const elbow_curve c = elbows(a);
    if (y < -1e-12) return xreal::neg_inf();
    if (y < 0.0) y = 0.0;
    const double tp = total(a.p);
    double px = 0.0, py = 0.0;
    for (const elbow_point& e : c.points) {
        if (e.y > y) {
            // First segment rising above y; horizontal runs at level y were
            // consumed already, so this picks the rightmost admissible x.
            const double t = (y - py) / (e.y - py);
            return xreal::of(px + t * (e.x - px));
        }
        px = e.x;
        py = e.y;
    }
    return xreal::of(tp);
}

double variational_distance(const weights& a, const weights& b) {
    check_weights(a, "a");
    check_weights(b, "b");
    if (a.size() != b.size())
        throw std::invalid_argument("variational_distance: lengths differ");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::max(a[k] - b[k], 0.0);
    return s;
}

xreal relative_entropy(const weights& a, const weights& b) {
    check_weights(a, "a");
    check_weights(b, "b");
    if (a.size() != b.size())
        throw std::invalid_argument("relative_entropy: lengths differ");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] == 0.0) continue;
        if (b[k] == 0.0) return xreal::inf();
        s += a[k] * std::log(a[k] / b[k]);
    }
    return xreal::of(s);
}

double shannon_entropy(const weights& p) {
    check_weights(p, "p");
    if (std::abs(total(p) - 1.0) > 1e-9)
        throw std::invalid_argument("shannon_entropy: weights not normalized");
    double h = 0.0;
    for (double v : p)
        if (v > 0.0) h -= v * std::log(v);
    return h;
}

vpair direct_sum(const vpair& a, const vpair& b) {
    check_pair(a);
    check_pair(b);
    vpair r = a;
    r.p.insert(r.p.end(), b.p.begin(), b.p.end());
    r.q.insert(r.q.end(), b.q.begin(), b.q.end());
    return r;
}

vpair tensor(const vpair& a, const vpair& b) {
    check_pair(a);
    check_pair(b);
    vpair r;
    r.p.reserve(a.p.size() * b.p.size());
    r.q.reserve(a.p.size() * b.p.size());
    for (std::size_t i = 0; i < a.p.size(); ++i) {
        for (std::size_t j = 0; j < b.p.size(); ++j) {
            r.p.push_back(a.p[i] * b.p[j]);
            r.q.push_back(a.q[i] * b.q[j]);
        }
    }
    return r;
}

namespace {

// log of the weight of one type class, or unset when a zero base entry
// appears with positive count.
bool class_log_weight(const weights& w, const std::vector<int>& counts,
                      double log_multinomial, double* out) {
    double s = log_multinomial;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (counts[i] == 0) continue;
        if (w[i] == 0.0) return false;
        s += counts[i] * std::log(w[i]);
    }
    *out = s;
    return true;
}

void enumerate_compositions(int remaining, std::size_t slot, std::vector<int>& counts,
                            const vpair& a, double log_nfact, vpair& out) {
    if (slot + 1 == counts.size()) {
        counts[slot] = remaining;
        double log_mult = log_nfact;
        for (int c : counts) log_mult -= std::lgamma(static_cast<double>(c) + 1.0);
        double lp = 0.0, lq = 0.0;
        const bool has_p = class_log_weight(a.p, counts, log_mult, &lp);
        const bool has_q = class_log_weight(a.q, counts, log_mult, &lq);
        out.p.push_back(has_p ? std::exp(lp) : 0.0);
        out.q.push_back(has_q ? std::exp(lq) : 0.0);
        return;
    }
    for (int c = remaining; c >= 0; --c) {
        counts[slot] = c;
        enumerate_compositions(remaining - c, slot + 1, counts, a, log_nfact, out);
    }
}

} // namespace

vpair tensor_power(const vpair& a, int n, std::size_t max_entries) {
    check_pair(a);
    if (n < 1) throw std::invalid_argument("tensor_power: power must be >= 1");
    if (n == 1) return a;
    const std::size_t parts = a.p.size();
    // Class count is C(n + parts - 1, parts - 1); estimate in logs first.
    double log_classes = std::lgamma(static_cast<double>(n + parts)) -
                         std::lgamma(static_cast<double>(n + 1)) -
                         std::lgamma(static_cast<double>(parts));
    if (log_classes > std::log(static_cast<double>(max_entries)) + 1e-9)
        throw std::length_error("tensor_power: type class count exceeds cap");
    vpair out;
    std::vector<int> counts(parts, 0);
    const double log_nfact = std::lgamma(static_cast<double>(n) + 1.0);
    enumerate_compositions(n, 0, counts, a, log_nfact, out);
    if (out.p.size() > max_entries)
        throw std::length_error("tensor_power: type class count exceeds cap");
    return out;
}

} // namespace lorenz::core
