#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <lorenz/lp.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace lorenz;
using lp::rational;

namespace {

bool near(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

// The documented infeasibility certificate: y.b > 0, A^T y <= 0 columnwise,
// y <= 0 on le rows, y >= 0 on ge rows, y free on eq rows.
void check_farkas(const lp::program& prog, const std::vector<double>& y) {
    REQUIRE(y.size() == prog.rows.size());
    double yb = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) yb += y[i] * prog.rows[i].b;
    CHECK(yb > 1e-9);
    for (std::size_t j = 0; j < prog.c.size(); ++j) {
        double aty = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) aty += y[i] * prog.rows[i].a[j];
        CHECK(aty <= 1e-7);
    }
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (prog.rows[i].r == lp::rel::le) CHECK(y[i] <= 1e-9);
        if (prog.rows[i].r == lp::rel::ge) CHECK(y[i] >= -1e-9);
    }
}

} // namespace

TEST_CASE("flat_index is row major") {
    CHECK(lp::flat_index(0, 0, 4) == 0);
    CHECK(lp::flat_index(1, 0, 4) == 4);
    CHECK(lp::flat_index(2, 3, 4) == 11);
}

TEST_CASE("minimization with mixed rows reaches the known optimum") {
    lp::program prog;
    prog.goal = lp::sense::minimize;
    prog.c = {1.0, 2.0};
    prog.add({1.0, 1.0}, lp::rel::ge, 1.0);
    prog.add({1.0, 0.0}, lp::rel::le, 2.0);
    auto sol = lp::solve(prog);
    REQUIRE(sol.status == lp::lp_status::optimal);
    CHECK(near(sol.objective, 1.0));
    CHECK(near(sol.x[0], 1.0));
    CHECK(near(sol.x[1], 0.0));
    CHECK_NOTHROW(lp::check_optimality(prog, sol));
}

TEST_CASE("maximization reaches the vertex optimum with valid duals") {
    lp::program prog;
    prog.goal = lp::sense::maximize;
    prog.c = {3.0, 2.0};
    prog.add({1.0, 1.0}, lp::rel::le, 4.0);
    prog.add({1.0, -1.0}, lp::rel::le, 2.0);
    auto sol = lp::solve(prog);
    REQUIRE(sol.status == lp::lp_status::optimal);
    CHECK(near(sol.objective, 11.0));
    CHECK(near(sol.x[0], 3.0));
    CHECK(near(sol.x[1], 1.0));
    // Strong duality: y.b equals the objective.
    double yb = sol.y[0] * 4.0 + sol.y[1] * 2.0;
    CHECK(near(yb, 11.0, 1e-7));
}

TEST_CASE("equality rows bind exactly") {
    lp::program prog;
    prog.goal = lp::sense::maximize;
    prog.c = {2.0, 3.0};
    prog.add({1.0, 1.0}, lp::rel::eq, 1.0);
    auto sol = lp::solve(prog);
    REQUIRE(sol.status == lp::lp_status::optimal);
    CHECK(near(sol.objective, 3.0));
    CHECK(near(sol.x[0] + sol.x[1], 1.0));
}

TEST_CASE("infeasible programs return a certificate") {
    lp::program prog;
    prog.goal = lp::sense::minimize;
    prog.c = {1.0};
    prog.add({1.0}, lp::rel::ge, 2.0);
    prog.add({1.0}, lp::rel::le, 1.0);
    auto sol = lp::solve(prog);
    REQUIRE(sol.status == lp::lp_status::infeasible);
    check_farkas(prog, sol.y);

    lp::program neg;
    neg.goal = lp::sense::minimize;
    neg.c = {0.0, 0.0};
    neg.add({1.0, 1.0}, lp::rel::le, -1.0);
    auto nsol = lp::solve(neg);
    REQUIRE(nsol.status == lp::lp_status::infeasible);
    check_farkas(neg, nsol.y);
}

TEST_CASE("unbounded programs are flagged") {
    lp::program prog;
    prog.goal = lp::sense::maximize;
    prog.c = {1.0, 1.0};
    prog.add({1.0, -1.0}, lp::rel::le, 1.0);
    auto sol = lp::solve(prog);
    CHECK(sol.status == lp::lp_status::unbounded);
}

TEST_CASE("feasible reports a point or a certificate") {
    lp::program prog;
    prog.goal = lp::sense::minimize;
    prog.c = {5.0, -1.0};
    prog.add({1.0, 2.0}, lp::rel::ge, 1.0);
    prog.add({1.0, 0.0}, lp::rel::le, 3.0);
    prog.add({0.0, 1.0}, lp::rel::le, 3.0);
    auto fs = lp::feasible(prog);
    REQUIRE(fs.yes);
    CHECK(fs.x[0] + 2.0 * fs.x[1] >= 1.0 - 1e-9);

    lp::program bad;
    bad.goal = lp::sense::minimize;
    bad.c = {0.0};
    bad.add({1.0}, lp::rel::ge, 1.0);
    bad.add({2.0}, lp::rel::le, 1.0);
    auto nf = lp::feasible(bad);
    REQUIRE_FALSE(nf.yes);
    CHECK(nf.certificate.size() == 2);
}

TEST_CASE("every optimal solve is self verified and counted") {
    auto before = lp::verified_optimal_solves.load();
    lp::program prog;
    prog.goal = lp::sense::minimize;
    prog.c = {1.0, 1.0};
    prog.add({1.0, 3.0}, lp::rel::ge, 1.0);
    auto sol = lp::solve(prog);
    REQUIRE(sol.status == lp::lp_status::optimal);
    CHECK(lp::verified_optimal_solves.load() == before + 1);
}

TEST_CASE("rational arithmetic produces exact fractions") {
    lp::rational_program prog;
    prog.goal = lp::sense::minimize;
    prog.c = {rational(1)};
    prog.add({rational(3)}, lp::rel::ge, rational(1));
    auto sol = lp::solve(prog);
    REQUIRE(sol.status == lp::lp_status::optimal);
    CHECK(sol.objective == rational(1, 3));

    lp::rational_program deg;
    deg.goal = lp::sense::maximize;
    deg.c = {rational(2), rational(3), rational(0)};
    deg.add({rational(1), rational(1), rational(1)}, lp::rel::eq, rational(1));
    deg.add({rational(1), rational(-1), rational(0)}, lp::rel::ge, rational(1, 7));
    auto dsol = lp::solve(deg);
    REQUIRE(dsol.status == lp::lp_status::optimal);
    // x = (4/7, 3/7, 0) maximizes 2x1 + 3x2 on the constrained simplex.
    CHECK(dsol.objective == rational(17, 7));
}

TEST_CASE("double and rational solves agree on random bounded programs") {
    std::mt19937_64 rng(88);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> dim(1, 4);
    std::uniform_int_distribution<int> extra(0, 2);
    for (int it = 0; it < 200; ++it) {
        int n = dim(rng);
        lp::program prog;
        prog.goal = lp::sense::minimize;
        lp::rational_program rprog;
        rprog.goal = lp::sense::minimize;
        auto push = [&](std::vector<double> a, lp::rel r, double b) {
            std::vector<rational> ra;
            for (double v : a) ra.emplace_back(v);
            prog.add(a, r, b);
            rprog.add(std::move(ra), r, rational(b));
        };
        std::vector<double> cost, point;
        for (int j = 0; j < n; ++j) {
            cost.push_back(std::round(8.0 * (unit(rng) - 0.3)) / 4.0);
            point.push_back(std::round(8.0 * unit(rng)) / 8.0);
        }
        prog.c = cost;
        for (double v : cost) rprog.c.emplace_back(v);
        for (int j = 0; j < n; ++j) {
            std::vector<double> row(n, 0.0);
            row[j] = 1.0;
            push(row, lp::rel::le, point[j] + 1.0);
        }
        int rows = extra(rng);
        for (int r = 0; r < rows; ++r) {
            std::vector<double> a;
            double ax = 0.0;
            for (int j = 0; j < n; ++j) {
                a.push_back(std::round(4.0 * unit(rng)) / 4.0);
                ax += a.back() * point[j];
            }
            int kind = static_cast<int>(3.0 * unit(rng));
            if (kind == 0) push(a, lp::rel::eq, ax);
            if (kind == 1) push(a, lp::rel::ge, ax - 0.25);
            if (kind == 2) push(a, lp::rel::le, ax + 0.25);
        }
        auto sol = lp::solve(prog);
        auto rsol = lp::solve(rprog);
        REQUIRE(sol.status == rsol.status);
        if (sol.status == lp::lp_status::optimal)
            CHECK(near(sol.objective, static_cast<double>(rsol.objective), 1e-9));
    }
}
