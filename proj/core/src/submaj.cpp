#include "lorenz/submaj.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lorenz::submaj {

namespace {

using core::vpair;
using core::weights;
using core::xreal;

double scale_of(const vpair& a, const vpair& b) {
    return std::max({1.0, core::total(a.p), core::total(a.q),
                     core::total(b.p), core::total(b.q)});
}

void require_normalized(const vpair& x, const char* who) {
    if (std::abs(core::total(x.p) - 1.0) > 1e-9 ||
        std::abs(core::total(x.q) - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(who) + ": pair must be normalized");
}

std::vector<double> union_elbow_xs(const vpair& a, const vpair& b) {
    std::vector<double> xs{0.0};
    for (const auto& e : core::elbows(a).points) xs.push_back(e.x);
    for (const auto& e : core::elbows(b).points) xs.push_back(e.x);
    std::sort(xs.begin(), xs.end());
    return xs;
}

std::vector<double> union_elbow_ys(const vpair& a, const vpair& b) {
    std::vector<double> ys{0.0};
    for (const auto& e : core::elbows(a).points) ys.push_back(e.y);
    for (const auto& e : core::elbows(b).points) ys.push_back(e.y);
    std::sort(ys.begin(), ys.end());
    return ys;
}

// Feasibility program for M with rows indexed by the target pair.  exact
// selects equality rows and unit column sums.
lp::program transform_program(const vpair& a, const vpair& b, bool exact) {
    const std::size_t n = a.p.size(), np = b.p.size();
    lp::program prog;
    prog.c.assign(np * n, 0.0);
    for (std::size_t i = 0; i < np; ++i) {
        std::vector<double> row(np * n, 0.0);
        for (std::size_t j = 0; j < n; ++j) row[lp::flat_index(i, j, n)] = a.p[j];
        prog.add(std::move(row), exact ? lp::rel::eq : lp::rel::ge, b.p[i]);
    }
    for (std::size_t i = 0; i < np; ++i) {
        std::vector<double> row(np * n, 0.0);
        for (std::size_t j = 0; j < n; ++j) row[lp::flat_index(i, j, n)] = a.q[j];
        prog.add(std::move(row), exact ? lp::rel::eq : lp::rel::le, b.q[i]);
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> row(np * n, 0.0);
        for (std::size_t i = 0; i < np; ++i) row[lp::flat_index(i, j, n)] = 1.0;
        prog.add(std::move(row), exact ? lp::rel::eq : lp::rel::le, 1.0);
    }
    return prog;
}

witness unflatten(const std::vector<double>& x, std::size_t np, std::size_t n,
                  witness::matrix_class cls) {
    witness w;
    w.cls = cls;
    w.m.assign(np, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < n; ++j)
            w.m[i][j] = std::max(0.0, x[lp::flat_index(i, j, n)]);
    return w;
}

} // namespace

bool witness_valid(const witness& w, const vpair& a, const vpair& b, double tol) {
    const std::size_t n = a.p.size(), np = b.p.size();
    if (w.m.size() != np) return false;
    for (const auto& row : w.m)
        if (row.size() != n) return false;
    const bool exact = w.cls == witness::matrix_class::stochastic;
    for (std::size_t i = 0; i < np; ++i) {
        double mp = 0.0, mq = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (w.m[i][j] < -tol) return false;
            mp += w.m[i][j] * a.p[j];
            mq += w.m[i][j] * a.q[j];
        }
        if (exact ? std::abs(mp - b.p[i]) > tol : mp < b.p[i] - tol) return false;
        if (exact ? std::abs(mq - b.q[i]) > tol : mq > b.q[i] + tol) return false;
    }
    for (std::size_t j = 0; j < n; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < np; ++i) col += w.m[i][j];
        if (exact ? std::abs(col - 1.0) > tol : col > 1.0 + tol) return false;
    }
    return true;
}

decision relatively_majorizes(const vpair& a, const vpair& b) {
    core::check_pair(a);
    core::check_pair(b);
    const double sc = scale_of(a, b);
    if (std::abs(core::total(a.p) - core::total(b.p)) > 1e-9 * sc ||
        std::abs(core::total(a.q) - core::total(b.q)) > 1e-9 * sc)
        return {false, std::nullopt};
    auto feas = lp::feasible(transform_program(a, b, true));
    if (!feas.yes) return {false, std::nullopt};
    return {true, unflatten(feas.x, b.p.size(), a.p.size(),
                            witness::matrix_class::stochastic)};
}

decision submajorizes(const vpair& a, const vpair& b, method how) {
    core::check_pair(a);
    core::check_pair(b);
    if (how == method::lp) {
        auto feas = lp::feasible(transform_program(a, b, false));
        if (!feas.yes) return {false, std::nullopt};
        return {true, unflatten(feas.x, b.p.size(), a.p.size(),
                                witness::matrix_class::substochastic)};
    }
    const double tol = 1e-9 * scale_of(a, b);
    for (double x : union_elbow_xs(a, b)) {
        const xreal bt = core::beta_at(b, x);
        if (bt.is_inf()) continue;
        const xreal bs = core::beta_at(a, x);
        if (bs.is_inf()) return {false, std::nullopt};
        if (bs.value() > bt.value() + tol) return {false, std::nullopt};
    }
    return {true, std::nullopt};
}

dilation dilate(const vpair& a, const vpair& b) {
    core::check_pair(a);
    core::check_pair(b);
    const double tq = core::total(a.q), tqp = core::total(b.q);
    if (tq <= 0.0 || tqp <= 0.0)
        throw std::domain_error("dilate: q totals must be positive");
    decision d = submajorizes(a, b, method::lp);
    if (!d.yes) throw std::domain_error("dilate: pairs are not related");

    const std::size_t n = a.p.size(), np = b.p.size();
    std::vector<std::vector<double>> f = d.transform->m;
    // Scale each row down so that Fp hits the target exactly; Fq and the
    // column sums only shrink.
    for (std::size_t i = 0; i < np; ++i) {
        double fp = 0.0;
        for (std::size_t j = 0; j < n; ++j) fp += f[i][j] * a.p[j];
        if (fp > 0.0) {
            const double g = std::clamp(b.p[i] / fp, 0.0, 1.0);
            for (double& v : f[i]) v *= g;
        }
    }
    weights u(np, 0.0), v(n, 0.0);
    double fq_total = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
        double fq = 0.0;
        for (std::size_t j = 0; j < n; ++j) fq += f[i][j] * a.q[j];
        u[i] = std::max(0.0, b.q[i] - fq);
        fq_total += fq;
    }
    double vp = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < np; ++i) col += f[i][j];
        v[j] = std::max(0.0, 1.0 - col);
        vp += v[j] * a.p[j];
    }
    const double z = tqp / tq;

    dilation out;
    out.s_prime.assign(np, 0.0);
    for (std::size_t i = 0; i < np; ++i) out.s_prime[i] = b.q[i] * vp / tqp;

    out.a_tilde.p = a.p;
    out.a_tilde.p.insert(out.a_tilde.p.end(), n, 0.0);
    out.a_tilde.q = a.q;
    for (std::size_t j = 0; j < n; ++j) out.a_tilde.q.push_back(z * a.q[j]);

    out.b_tilde.p = b.p;
    out.b_tilde.p.insert(out.b_tilde.p.end(), out.s_prime.begin(), out.s_prime.end());
    out.b_tilde.q = b.q;
    for (std::size_t i = 0; i < np; ++i) out.b_tilde.q.push_back(b.q[i] / z);

    out.transform.cls = witness::matrix_class::stochastic;
    out.transform.m.assign(2 * np, std::vector<double>(2 * n, 0.0));
    for (std::size_t i = 0; i < np; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.transform.m[i][j] = f[i][j];
            out.transform.m[i][n + j] = u[i] / tqp;
            out.transform.m[np + i][j] = b.q[i] * v[j] / tqp;
            out.transform.m[np + i][n + j] = fq_total * b.q[i] / (tqp * tqp);
        }
    }
    if (!witness_valid(out.transform, out.a_tilde, out.b_tilde))
        throw std::runtime_error("dilate: constructed witness failed validation");
    return out;
}

witness witness_from_curves(const vpair& a, const vpair& b) {
    core::check_pair(a);
    core::check_pair(b);
    const double sc = scale_of(a, b);
    if (std::abs(core::total(a.p) - core::total(b.p)) > 1e-9 * sc)
        throw std::domain_error("witness_from_curves: p totals differ");
    if (!submajorizes(a, b, method::geometric).yes)
        throw std::domain_error("witness_from_curves: pairs are not related");

    // Source curve vertices, origin first, vertical tail dropped so the last
    // vertex carries the q mass on the support of p.
    const core::elbow_curve src = core::elbows(a);
    std::vector<double> vx{0.0}, vy{0.0};
    std::vector<std::size_t> walk;
    for (std::size_t idx : src.order) {
        if (a.p[idx] == 0.0) continue;
        walk.push_back(idx);
        vx.push_back(vx.back() + a.p[idx]);
        vy.push_back(vy.back() + a.q[idx]);
    }
    const double end_x = vx.back(), end_y = vy.back();

    auto curve_test = [&](double x) {
        std::vector<double> t(a.p.size(), 0.0);
        double cum = 0.0;
        for (std::size_t idx : walk) {
            const double w = a.p[idx];
            if (x >= cum + w - 1e-15 * sc) {
                t[idx] = 1.0;
                cum += w;
                continue;
            }
            if (x > cum) t[idx] = (x - cum) / w;
            break;
        }
        return t;
    };

    const core::elbow_curve tgt = core::elbows(b);
    const double tol = 1e-9 * sc;
    witness w;
    w.cls = witness::matrix_class::substochastic;
    w.m.assign(b.p.size(), std::vector<double>(a.p.size(), 0.0));

    std::vector<double> t(a.p.size(), 0.0);
    double cx = 0.0, cy = 0.0;
    bool saturated = false;

    for (std::size_t idx : tgt.order) {
        const double dp = b.p[idx], dq = b.q[idx];
        if (dp <= 0.0) continue; // zero row
        double hat_x, hat_y;
        if (!saturated) {
            // Extend the target segment line from the current point and find
            // the last source-curve point on or below it.
            const double s = dq / dp;
            double cross_x = cx, cross_y = cy;
            bool rode_past_end = false;
            for (std::size_t seg = 1; seg < vx.size(); ++seg) {
                if (vx[seg] <= cx) continue;
                const double x0 = std::max(vx[seg - 1], cx);
                const double frac = (x0 - vx[seg - 1]) / (vx[seg] - vx[seg - 1]);
                const double y0 = vy[seg - 1] + frac * (vy[seg] - vy[seg - 1]);
                const double g0 = y0 - (cy + s * (x0 - cx));
                const double g1 = vy[seg] - (cy + s * (vx[seg] - cx));
                if (g0 > tol) break;
                if (g1 <= tol) {
                    cross_x = vx[seg];
                    cross_y = vy[seg];
                    if (seg + 1 == vx.size()) rode_past_end = g1 < -tol;
                    continue;
                }
                const double xc = x0 + (vx[seg] - x0) * std::max(0.0, -g0) / (g1 - g0);
                cross_x = std::max(cross_x, xc);
                cross_y = cy + s * (cross_x - cx);
                break;
            }
            if (rode_past_end) {
                // The line outruns the whole curve; ride the chord into the
                // terminal vertex from here on.
                saturated = true;
            } else {
                hat_x = cross_x;
                hat_y = cross_y;
            }
        }
        if (saturated) {
            hat_x = end_x;
            hat_y = end_y;
        }
        const double denom = hat_x - cx;
        if (denom <= tol) {
            if (dp > 1e-7 * sc)
                throw std::runtime_error("witness_from_curves: step collapsed");
            continue;
        }
        const std::vector<double> hat = curve_test(hat_x);
        const double theta = std::min(1.0, dp / denom);
        for (std::size_t j = 0; j < a.p.size(); ++j) {
            const double inc = std::max(0.0, theta * (hat[j] - t[j]));
            w.m[idx][j] = inc;
            t[j] = std::min(1.0, t[j] + inc);
        }
        cx += dp;
        cy = saturated ? cy + theta * (hat_y - cy) : cy + dq;
    }
    if (!witness_valid(w, a, b))
        throw std::runtime_error("witness_from_curves: construction failed validation");
    return w;
}

decision approx_submajorizes(const vpair& a, const vpair& b,
                             const approx_params& params, method how) {
    core::check_pair(a);
    core::check_pair(b);
    if (params.epsilon < 0.0 || params.eta < 0.0)
        throw std::invalid_argument("approx_submajorizes: negative error budget");
    const std::size_t n = a.p.size(), np = b.p.size();
    if (how == method::lp) {
        // Variables: M, then the p deficit a_i, then the q excess b_i.
        const std::size_t nm = np * n;
        lp::program prog;
        prog.c.assign(nm + 2 * np, 0.0);
        for (std::size_t i = 0; i < np; ++i) {
            std::vector<double> row(prog.c.size(), 0.0);
            for (std::size_t j = 0; j < n; ++j) row[lp::flat_index(i, j, n)] = a.p[j];
            row[nm + i] = 1.0;
            prog.add(std::move(row), lp::rel::ge, b.p[i]);
        }
        for (std::size_t i = 0; i < np; ++i) {
            std::vector<double> row(prog.c.size(), 0.0);
            for (std::size_t j = 0; j < n; ++j) row[lp::flat_index(i, j, n)] = a.q[j];
            row[nm + np + i] = -1.0;
            prog.add(std::move(row), lp::rel::le, b.q[i]);
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<double> row(prog.c.size(), 0.0);
            for (std::size_t i = 0; i < np; ++i) row[lp::flat_index(i, j, n)] = 1.0;
            prog.add(std::move(row), lp::rel::le, 1.0);
        }
        std::vector<double> eps_row(prog.c.size(), 0.0), eta_row(prog.c.size(), 0.0);
        for (std::size_t i = 0; i < np; ++i) {
            eps_row[nm + i] = 1.0;
            eta_row[nm + np + i] = 1.0;
        }
        prog.add(std::move(eps_row), lp::rel::le, params.epsilon);
        prog.add(std::move(eta_row), lp::rel::le, params.eta);
        auto feas = lp::feasible(prog);
        if (!feas.yes) return {false, std::nullopt};
        return {true, unflatten(feas.x, np, n, witness::matrix_class::substochastic)};
    }
    // Kinks of the shifted comparison sit at source elbows and at target
    // elbows moved left by epsilon.
    std::vector<double> xs{0.0};
    for (const auto& e : core::elbows(a).points) xs.push_back(e.x);
    for (const auto& e : core::elbows(b).points) xs.push_back(e.x - params.epsilon);
    const double tol = 1e-9 * scale_of(a, b);
    for (double x : xs) {
        const xreal bt = core::beta_at(b, x + params.epsilon);
        if (bt.is_inf()) continue;
        const xreal bs = core::beta_at(a, x);
        if (bs.is_inf()) return {false, std::nullopt};
        if (bs.value() > bt.value() + params.eta + tol) return {false, std::nullopt};
    }
    return {true, std::nullopt};
}

error_pair optimal_errors(const vpair& a, const vpair& b) {
    core::check_pair(a);
    core::check_pair(b);
    error_pair out;
    double eps = 0.0;
    for (double y : union_elbow_ys(a, b)) {
        const double gap = core::alpha_at(b, y).value() - core::alpha_at(a, y).value();
        eps = std::max(eps, gap);
    }
    out.eps_star = eps;
    const double sc = scale_of(a, b);
    if (core::total(a.p) < core::total(b.p) - 1e-9 * sc) {
        out.eta_hat_star = xreal::inf();
        return out;
    }
    double eta = 0.0;
    for (double x : union_elbow_xs(a, b)) {
        const xreal bt = core::beta_at(b, x);
        if (bt.is_inf()) continue;
        const xreal bs = core::beta_at(a, x);
        if (bs.is_inf()) continue; // x beyond |p| yet within |p'| is excluded above
        eta = std::max(eta, bs.value() - bt.value());
    }
    out.eta_hat_star = xreal::of(eta);
    return out;
}

error_pair optimal_errors_lp(const vpair& a, const vpair& b) {
    core::check_pair(a);
    core::check_pair(b);
    const std::size_t n = a.p.size(), np = b.p.size();
    const std::size_t nm = np * n;

    auto base = [&](bool slack_on_p) {
        lp::program prog;
        prog.c.assign(nm + np, 0.0);
        for (std::size_t i = 0; i < np; ++i) prog.c[nm + i] = 1.0;
        for (std::size_t i = 0; i < np; ++i) {
            std::vector<double> row(prog.c.size(), 0.0);
            for (std::size_t j = 0; j < n; ++j) row[lp::flat_index(i, j, n)] = a.p[j];
            if (slack_on_p) row[nm + i] = 1.0;
            prog.add(std::move(row), lp::rel::ge, b.p[i]);
        }
        for (std::size_t i = 0; i < np; ++i) {
            std::vector<double> row(prog.c.size(), 0.0);
            for (std::size_t j = 0; j < n; ++j) row[lp::flat_index(i, j, n)] = a.q[j];
            if (!slack_on_p) row[nm + i] = -1.0;
            prog.add(std::move(row), lp::rel::le, b.q[i]);
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<double> row(prog.c.size(), 0.0);
            for (std::size_t i = 0; i < np; ++i) row[lp::flat_index(i, j, n)] = 1.0;
            prog.add(std::move(row), lp::rel::le, 1.0);
        }
        return prog;
    };

    error_pair out;
    auto eps_sol = lp::solve(base(true));
    if (eps_sol.status != lp::lp_status::optimal)
        throw std::runtime_error("optimal_errors_lp: deficit program not optimal");
    out.eps_star = std::max(0.0, eps_sol.objective);

    auto eta_sol = lp::solve(base(false));
    if (eta_sol.status == lp::lp_status::infeasible) {
        out.eta_hat_star = xreal::inf();
    } else if (eta_sol.status == lp::lp_status::optimal) {
        out.eta_hat_star = xreal::of(std::max(0.0, eta_sol.objective));
    } else {
        throw std::runtime_error("optimal_errors_lp: excess program unbounded");
    }
    return out;
}

double lambda_star(const vpair& a, const vpair& b, double z) {
    require_normalized(a, "lambda_star");
    require_normalized(b, "lambda_star");
    if (!(z > 0.0)) throw std::invalid_argument("lambda_star: z must be positive");
    vpair scaled{a.p, a.q};
    for (double& v : scaled.q) v /= z;
    double best = 1.0;
    for (const auto& e : core::elbows(b).points) {
        if (e.y <= 1e-15) continue;
        const double num = core::alpha_at(scaled, e.y).value();
        const double den = core::alpha_at(b, e.y).value();
        if (den <= 1e-15) continue;
        best = std::min(best, num / den);
    }
    return std::clamp(best, 0.0, 1.0);
}

double z_star(const vpair& a, const vpair& b, double lambda) {
    require_normalized(a, "z_star");
    require_normalized(b, "z_star");
    if (!(lambda > 0.0) || lambda > 1.0 + 1e-12)
        throw std::invalid_argument("z_star: lambda must lie in (0, 1]");
    vpair scaled{a.p, a.q};
    for (double& v : scaled.p) v /= lambda;
    double best = 0.0;
    for (const auto& e : core::elbows(b).points) {
        const double num = core::beta_at(scaled, e.x).value();
        const double den = core::beta_at(b, e.x).value();
        if (den <= 1e-15) {
            if (num > 1e-12)
                throw std::domain_error("z_star: no finite scale reaches the target");
            continue;
        }
        best = std::max(best, num / den);
    }
    return best;
}

feasible_boundary region_boundary(const vpair& a, const vpair& b,
                                  const std::vector<double>& z_grid) {
    feasible_boundary out;
    out.samples.reserve(z_grid.size());
    for (double z : z_grid) out.samples.emplace_back(z, lambda_star(a, b, z));
    return out;
}

} // namespace lorenz::submaj
