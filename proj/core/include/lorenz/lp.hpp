#pragma once

#include <atomic>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lorenz::lp {

using rational = boost::multiprecision::cpp_rational;

enum class sense { minimize, maximize };
enum class rel { le, eq, ge };
enum class lp_status { optimal, infeasible, unbounded };

template <class T> struct basic_constraint {
    std::vector<T> a;
    rel r = rel::le;
    T b{};
};

// Variables are implicitly nonnegative.
template <class T> struct basic_program {
    sense goal = sense::minimize;
    std::vector<T> c;
    std::vector<basic_constraint<T>> rows;

    void add(std::vector<T> a, rel r, T b) { rows.push_back({std::move(a), r, std::move(b)}); }
};

// status == optimal: x is a feasible point, y the row duals, objective = c.x.
// status == infeasible: y is a Farkas certificate in the original row
// orientation: sum_i y_i a_ij <= 0 for every column j, y_i <= 0 on le rows,
// y_i >= 0 on ge rows, and y.b > 0.
template <class T> struct basic_solution {
    lp_status status = lp_status::optimal;
    std::vector<T> x;
    std::vector<T> y;
    T objective{};
};

using program = basic_program<double>;
using solution = basic_solution<double>;
using rational_program = basic_program<rational>;
using rational_solution = basic_solution<rational>;

// Row-major flattening for matrix-valued variable blocks.
inline std::size_t flat_index(std::size_t i, std::size_t j, std::size_t cols) {
    return i * cols + j;
}

// Count of optimality verifications passed by solve(); every optimal solve
// self-checks strong duality and complementary slackness before returning.
inline std::atomic<unsigned long long> verified_optimal_solves{0};

namespace detail {

template <class T> struct scalar_traits;

template <> struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double eps() { return 1e-9; }
    static double verify_tol() { return 1e-7; }
    static double abs(double v) { return std::abs(v); }
};

template <> struct scalar_traits<rational> {
    static constexpr bool exact = true;
    static rational eps() { return rational(0); }
    static rational verify_tol() { return rational(0); }
    static rational abs(const rational& v) { return v < 0 ? rational(-v) : v; }
};

} // namespace detail

// Throws std::runtime_error when sol is not a verified optimum of lp:
// primal feasibility, dual sign conditions, strong duality and
// complementary slackness, all within scalar tolerance.
template <class T>
void check_optimality(const basic_program<T>& lp, const basic_solution<T>& sol) {
    using tr = detail::scalar_traits<T>;
    if (sol.status != lp_status::optimal)
        throw std::runtime_error("lp: check_optimality on non-optimal solution");
    const std::size_t nv = lp.c.size();
    const T vt = tr::verify_tol();
    if (sol.x.size() != nv || sol.y.size() != lp.rows.size())
        throw std::runtime_error("lp: solution shape mismatch");
    for (const T& v : sol.x)
        if (v < T(0) - vt) throw std::runtime_error("lp: negative primal entry");

    T cx{};
    for (std::size_t j = 0; j < nv; ++j) cx += lp.c[j] * sol.x[j];
    T by{};
    for (std::size_t i = 0; i < lp.rows.size(); ++i) by += lp.rows[i].b * sol.y[i];

    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        const auto& row = lp.rows[i];
        if (row.a.size() != nv) throw std::runtime_error("lp: row width mismatch");
        T ax{};
        for (std::size_t j = 0; j < nv; ++j) ax += row.a[j] * sol.x[j];
        const T slack = ax - row.b;
        const T rt = vt * (T(1) + tr::abs(row.b));
        if (row.r == rel::le && slack > rt) throw std::runtime_error("lp: le row violated");
        if (row.r == rel::ge && slack < -rt) throw std::runtime_error("lp: ge row violated");
        if (row.r == rel::eq && tr::abs(slack) > rt) throw std::runtime_error("lp: eq row violated");
        // Dual sign convention: minimize pairs ge rows with y >= 0 and le
        // rows with y <= 0; maximize flips both.
        const T ysigned = lp.goal == sense::minimize ? sol.y[i] : T(0) - sol.y[i];
        if (row.r == rel::ge && ysigned < -vt) throw std::runtime_error("lp: dual sign (ge)");
        if (row.r == rel::le && ysigned > vt) throw std::runtime_error("lp: dual sign (le)");
        if (tr::abs(sol.y[i] * slack) > vt * (T(1) + tr::abs(sol.y[i])))
            throw std::runtime_error("lp: row slackness violated");
    }
    for (std::size_t j = 0; j < nv; ++j) {
        T aty{};
        for (std::size_t i = 0; i < lp.rows.size(); ++i) aty += lp.rows[i].a[j] * sol.y[i];
        const T d = lp.c[j] - aty;
        if (lp.goal == sense::minimize && d < -vt * (T(1) + tr::abs(lp.c[j])))
            throw std::runtime_error("lp: reduced cost negative");
        if (lp.goal == sense::maximize && d > vt * (T(1) + tr::abs(lp.c[j])))
            throw std::runtime_error("lp: reduced cost positive");
        if (tr::abs(sol.x[j] * d) > vt * (T(1) + tr::abs(sol.x[j])))
            throw std::runtime_error("lp: column slackness violated");
    }
    if (tr::abs(cx - by) > vt * (T(1) + tr::abs(cx)))
        throw std::runtime_error("lp: duality gap");
    if (tr::abs(cx - sol.objective) > vt * (T(1) + tr::abs(cx)))
        throw std::runtime_error("lp: objective mismatch");
}

namespace detail {

// Dense two-phase primal simplex on the full tableau, Bland's rule for both
// the entering and the leaving choice, hard iteration cap.
template <class T> class simplex {
    using tr = scalar_traits<T>;

public:
    explicit simplex(const basic_program<T>& lp) : lp_(lp) { canonicalize(); }

    basic_solution<T> run() {
        basic_solution<T> out;
        if (!phase1()) {
            out.status = lp_status::infeasible;
            out.y = farkas();
            return out;
        }
        expel_artificials();
        const int ph2 = phase2();
        if (ph2 < 0) {
            out.status = lp_status::unbounded;
            return out;
        }
        out.status = lp_status::optimal;
        out.x.assign(lp_.c.size(), T(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < lp_.c.size()) out.x[basis_[i]] = rhs_[i];
        for (T& v : out.x)
            if (v < T(0)) v = T(0);
        for (std::size_t j = 0; j < lp_.c.size(); ++j) out.objective += lp_.c[j] * out.x[j];
        out.y = duals();
        check_optimality(lp_, out);
        verified_optimal_solves.fetch_add(1, std::memory_order_relaxed);
        return out;
    }

private:
    const basic_program<T>& lp_;
    std::size_t m_ = 0;
    std::size_t ncols_ = 0;
    std::size_t art_begin_ = 0;
    std::vector<std::vector<T>> tab_;   // m rows of ncols coefficients
    std::vector<T> rhs_;                // nonnegative at every step
    std::vector<T> sign_;               // +-1 applied to each original row
    std::vector<std::size_t> basis_;    // basic column per row
    std::vector<std::size_t> unit_col_; // initial identity column per row
    std::vector<T> cost_;               // current phase costs per column
    std::size_t pivots_ = 0;
    std::size_t cap_ = 0;

    void canonicalize() {
        const std::size_t nv = lp_.c.size();
        m_ = lp_.rows.size();
        std::size_t nslack = 0;
        for (const auto& row : lp_.rows) {
            if (row.a.size() != nv) throw std::invalid_argument("lp: row width mismatch");
            if (row.r != rel::eq) ++nslack;
        }
        art_begin_ = nv + nslack;
        ncols_ = art_begin_; // artificial columns appended on demand
        tab_.assign(m_, std::vector<T>());
        rhs_.assign(m_, T(0));
        sign_.assign(m_, T(1));
        basis_.assign(m_, 0);
        unit_col_.assign(m_, 0);

        std::size_t next_slack = nv;
        std::vector<std::size_t> slack_col(m_, SIZE_MAX);
        std::vector<T> slack_coef(m_, T(0));
        for (std::size_t i = 0; i < m_; ++i) {
            const auto& row = lp_.rows[i];
            if (row.r != rel::eq) {
                slack_col[i] = next_slack++;
                slack_coef[i] = row.r == rel::le ? T(1) : T(-1);
            }
            sign_[i] = row.b < T(0) ? T(-1) : T(1);
        }
        std::size_t nart = 0;
        for (std::size_t i = 0; i < m_; ++i)
            if (!(slack_col[i] != SIZE_MAX && sign_[i] * slack_coef[i] == T(1))) ++nart;
        ncols_ = art_begin_ + nart;

        std::size_t next_art = art_begin_;
        for (std::size_t i = 0; i < m_; ++i) {
            const auto& row = lp_.rows[i];
            tab_[i].assign(ncols_, T(0));
            for (std::size_t j = 0; j < nv; ++j) tab_[i][j] = sign_[i] * row.a[j];
            if (slack_col[i] != SIZE_MAX) tab_[i][slack_col[i]] = sign_[i] * slack_coef[i];
            rhs_[i] = sign_[i] * row.b;
            if (slack_col[i] != SIZE_MAX && sign_[i] * slack_coef[i] == T(1)) {
                basis_[i] = slack_col[i];
                unit_col_[i] = slack_col[i];
            } else {
                tab_[i][next_art] = T(1);
                basis_[i] = next_art;
                unit_col_[i] = next_art;
                ++next_art;
            }
        }
        cap_ = 10 * (m_ + ncols_) * (m_ + ncols_);
    }

    T reduced_cost(std::size_t j) const {
        T d = cost_[j];
        for (std::size_t i = 0; i < m_; ++i)
            if (cost_[basis_[i]] != T(0)) d -= cost_[basis_[i]] * tab_[i][j];
        return d;
    }

    void pivot(std::size_t row, std::size_t col) {
        if (++pivots_ > cap_) throw std::runtime_error("lp: pivot cap exceeded");
        const T piv = tab_[row][col];
        for (T& v : tab_[row]) v /= piv;
        rhs_[row] /= piv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row) continue;
            const T f = tab_[i][col];
            if (f == T(0)) continue;
            for (std::size_t j = 0; j < ncols_; ++j) tab_[i][j] -= f * tab_[row][j];
            rhs_[i] -= f * rhs_[row];
            if (rhs_[i] < T(0) && rhs_[i] > -tr::eps()) rhs_[i] = T(0);
        }
        basis_[row] = col;
    }

    // Bland: smallest eligible entering column, leaving row with the
    // smallest basic column among the ratio-test minima.  Returns 0 at
    // optimality, -1 when the entering column is unbounded.
    int iterate(std::size_t col_limit) {
        for (;;) {
            std::size_t enter = SIZE_MAX;
            for (std::size_t j = 0; j < col_limit; ++j) {
                if (reduced_cost(j) < -tr::eps()) {
                    enter = j;
                    break;
                }
            }
            if (enter == SIZE_MAX) return 0;
            std::size_t leave = SIZE_MAX;
            T best{};
            for (std::size_t i = 0; i < m_; ++i) {
                if (tab_[i][enter] <= tr::eps()) continue;
                const T ratio = rhs_[i] / tab_[i][enter];
                if (leave == SIZE_MAX || ratio < best ||
                    (ratio == best && better_tie(i, leave, enter))) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == SIZE_MAX) return -1;
            pivot(leave, enter);
        }
    }

    // Exact scalars keep Bland's index rule so cycling stays impossible;
    // floating point instead takes the largest pivot element among the tied
    // rows, which keeps degenerate pivots well conditioned.
    bool better_tie(std::size_t i, std::size_t leave, std::size_t enter) const {
        if constexpr (tr::exact) return basis_[i] < basis_[leave];
        else return tab_[i][enter] > tab_[leave][enter];
    }

    bool phase1() {
        if (ncols_ == art_begin_) {
            // No artificials; initial slack basis is already feasible.
            return true;
        }
        cost_.assign(ncols_, T(0));
        for (std::size_t j = art_begin_; j < ncols_; ++j) cost_[j] = T(1);
        if (iterate(ncols_) < 0) throw std::runtime_error("lp: phase one unbounded");
        T z{};
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] >= art_begin_) z += rhs_[i];
        T scale = T(1);
        for (std::size_t i = 0; i < m_; ++i) scale += tr::abs(rhs_[i]);
        return !(z > tr::eps() * scale);
    }

    // After a feasible phase one, any artificial still basic sits at level
    // zero.  Pivot it out on some real column so phase two cannot raise it;
    // rows with no real entry left are redundant and stay inert.
    void expel_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < art_begin_) continue;
            std::size_t pick = SIZE_MAX;
            for (std::size_t j = 0; j < art_begin_; ++j) {
                if (tr::abs(tab_[i][j]) > tr::eps() &&
                    (pick == SIZE_MAX || tr::abs(tab_[i][j]) > tr::abs(tab_[i][pick])))
                    pick = j;
            }
            if (pick != SIZE_MAX) pivot(i, pick);
        }
    }

    int phase2() {
        cost_.assign(ncols_, T(0));
        for (std::size_t j = 0; j < lp_.c.size(); ++j)
            cost_[j] = lp_.goal == sense::minimize ? lp_.c[j] : -lp_.c[j];
        // Artificial columns are excluded from entering via col_limit.
        return iterate(art_begin_);
    }

    // y = cost of final basis times the basis inverse, read off the columns
    // that formed the initial identity, then mapped back through row signs.
    std::vector<T> price(const std::vector<T>& costs) const {
        std::vector<T> y(m_, T(0));
        for (std::size_t i = 0; i < m_; ++i) {
            T v{};
            for (std::size_t r = 0; r < m_; ++r) {
                const T cb = costs[basis_[r]];
                if (cb != T(0)) v += cb * tab_[r][unit_col_[i]];
            }
            y[i] = sign_[i] * v;
        }
        return y;
    }

    std::vector<T> duals() const {
        std::vector<T> y = price(cost_);
        if (lp_.goal == sense::maximize)
            for (T& v : y) v = -v;
        return y;
    }

    std::vector<T> farkas() const {
        std::vector<T> art_cost(ncols_, T(0));
        for (std::size_t j = art_begin_; j < ncols_; ++j) art_cost[j] = T(1);
        return price(art_cost);
    }
};

} // namespace detail

template <class T> basic_solution<T> solve(const basic_program<T>& lp) {
    detail::simplex<T> s(lp);
    return s.run();
}

template <class T> struct feasibility {
    bool yes = false;
    std::vector<T> x;           // feasible point when yes
    std::vector<T> certificate; // Farkas multipliers when not
};

// Feasibility of {x >= 0, rows} ignoring the objective.
template <class T> feasibility<T> feasible(const basic_program<T>& lp) {
    basic_program<T> zero = lp;
    zero.goal = sense::minimize;
    zero.c.assign(lp.c.size(), T(0));
    basic_solution<T> sol = solve(zero);
    feasibility<T> out;
    if (sol.status == lp_status::optimal) {
        out.yes = true;
        out.x = std::move(sol.x);
    } else {
        out.yes = false;
        out.certificate = std::move(sol.y);
    }
    return out;
}

} // namespace lorenz::lp
