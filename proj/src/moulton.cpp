#include "cnb/moulton.hpp"

#include "cnb/inertia.hpp"
#include "cnb/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace cnb {

Configuration to_configuration(const GeodesicHConfig& g) {
    std::vector<Vec4> pts;
    for (double t : g.thetas) pts.emplace_back(std::sinh(t), 0.0, 0.0, std::cosh(t));
    return make_config(Space::H3, g.masses, pts);
}

namespace {

double u_of(const std::vector<double>& th, const std::vector<double>& m) {
    double u = 0.0;
    for (std::size_t i = 0; i < th.size(); ++i)
        for (std::size_t j = i + 1; j < th.size(); ++j) u += m[i] * m[j] / std::tanh(std::abs(th[i] - th[j]));
    return u;
}

// dU/dtheta
Eigen::VectorXd du_of(const std::vector<double>& th, const std::vector<double>& m) {
    const std::size_t n = th.size();
    Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double d = th[i] - th[j];
            double s = std::sinh(std::abs(d));
            g[static_cast<Eigen::Index>(i)] -= m[i] * m[j] * (d > 0 ? 1.0 : -1.0) / (s * s);
        }
    return g;
}

bool ordered(const std::vector<double>& th, const std::vector<int>& ord) {
    for (std::size_t k = 1; k < ord.size(); ++k)
        if (!(th[static_cast<std::size_t>(ord[k - 1])] < th[static_cast<std::size_t>(ord[k])])) return false;
    return true;
}

void scale_to_level(std::vector<double>& u, const std::vector<double>& m, double c) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += m[i] * u[i] * u[i];
    double f = std::sqrt(c / s);
    for (double& v : u) v *= f;
}

std::vector<double> thetas_of(const std::vector<double>& u) {
    std::vector<double> t(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) t[i] = std::asinh(u[i]);
    return t;
}

} // namespace

Eigen::MatrixXd hessian_geodesic_h(const GeodesicHConfig& g, double lambda) {
    const auto n = static_cast<Eigen::Index>(g.thetas.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) continue;
            double d = std::abs(g.thetas[static_cast<std::size_t>(i)] - g.thetas[static_cast<std::size_t>(j)]);
            double s = std::sinh(d);
            double k = 2.0 * g.masses[static_cast<std::size_t>(i)] * g.masses[static_cast<std::size_t>(j)] *
                       std::cosh(d) / (s * s * s);
            h(i, j) = -k;
            h(i, i) += k;
        }
    for (Eigen::Index i = 0; i < n; ++i)
        h(i, i) -= 2.0 * lambda * g.masses[static_cast<std::size_t>(i)] *
                   std::cosh(2.0 * g.thetas[static_cast<std::size_t>(i)]);
    return h;
}

GeodesicHConfig solve_geodesic_h(const std::vector<double>& masses, double c, const std::vector<int>& ordering,
                                 std::optional<std::uint64_t> seed) {
    const std::size_t n = masses.size();
    if (n < 2 || ordering.size() != n) throw Error(ErrorCode::InvalidInput, "ordering must be a permutation of the bodies");
    if (!(c > 0.0)) throw Error(ErrorCode::InvalidInput, "level c must be positive");
    for (double m : masses)
        if (!(m > 0.0)) throw Error(ErrorCode::InvalidInput, "masses must be positive");
    {
        auto s = ordering;
        std::sort(s.begin(), s.end());
        for (std::size_t k = 0; k < n; ++k)
            if (s[k] != static_cast<int>(k)) throw Error(ErrorCode::InvalidInput, "ordering is not a permutation");
    }

    // start: increasing u along the ordering, on the ellipsoid sum m u^2 = c
    std::vector<double> u(n);
    std::vector<double> pos(n);
    if (seed) {
        std::mt19937_64 rng(*seed);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (auto& p : pos) p = uni(rng);
        std::sort(pos.begin(), pos.end());
        for (std::size_t k = 1; k < n; ++k)
            if (pos[k] - pos[k - 1] < 1e-3) pos[k] = pos[k - 1] + 1e-3;
    } else {
        for (std::size_t k = 0; k < n; ++k) pos[k] = static_cast<double>(k) - 0.5 * static_cast<double>(n - 1);
    }
    for (std::size_t k = 0; k < n; ++k) u[static_cast<std::size_t>(ordering[k])] = pos[k];
    scale_to_level(u, masses, c);

    // projected gradient descent on the ellipsoid; trial steps that break the
    // ordering are rejected in the line search
    auto th = thetas_of(u);
    double f = u_of(th, masses);
    double t = 1e-2;
    for (int it = 0; it < 5000; ++it) {
        Eigen::VectorXd g = du_of(th, masses);
        Eigen::VectorXd nrm(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            auto ii = static_cast<Eigen::Index>(i);
            g[ii] /= std::cosh(th[i]);
            nrm[ii] = 2.0 * masses[i] * u[i];
        }
        g -= (g.dot(nrm) / nrm.squaredNorm()) * nrm;
        double gn2 = g.squaredNorm();
        if (std::sqrt(gn2) < 1e-6) break;
        t = std::min(2.0 * t, 0.1 / g.cwiseAbs().maxCoeff());
        bool acc = false;
        while (t > 1e-18) {
            std::vector<double> ut = u;
            for (std::size_t i = 0; i < n; ++i) ut[i] -= t * g[static_cast<Eigen::Index>(i)];
            scale_to_level(ut, masses, c);
            auto tht = thetas_of(ut);
            if (ordered(tht, ordering)) {
                double ft = u_of(tht, masses);
                if (ft <= f - 1e-4 * t * gn2) {
                    u = ut;
                    th = tht;
                    f = ft;
                    acc = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if (!acc) break;
    }

    // Newton on grad U = lambda grad I, I = c in theta
    GeodesicHConfig out{th, masses, 0.0};
    {
        Eigen::VectorXd gu = du_of(th, masses), gi(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) gi[static_cast<Eigen::Index>(i)] = masses[i] * std::sinh(2.0 * th[i]);
        out.lambda = gu.dot(gi) / gi.squaredNorm();
    }
    auto kkt = [&](const std::vector<double>& tt, double lam) {
        Eigen::VectorXd r(static_cast<Eigen::Index>(n + 1));
        Eigen::VectorXd gu = du_of(tt, masses);
        double I = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            auto ii = static_cast<Eigen::Index>(i);
            r[ii] = gu[ii] - lam * masses[i] * std::sinh(2.0 * tt[i]);
            I += masses[i] * std::sinh(tt[i]) * std::sinh(tt[i]);
        }
        r[static_cast<Eigen::Index>(n)] = I - c;
        return r;
    };
    Eigen::VectorXd r = kkt(out.thetas, out.lambda);
    for (int it = 0; it < 100 && r.norm() > 1e-15; ++it) {
        const auto nn = static_cast<Eigen::Index>(n);
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(nn + 1, nn + 1);
        J.topLeftCorner(nn, nn) = hessian_geodesic_h(out, out.lambda);
        for (Eigen::Index i = 0; i < nn; ++i) {
            double gi = masses[static_cast<std::size_t>(i)] * std::sinh(2.0 * out.thetas[static_cast<std::size_t>(i)]);
            J(i, nn) = -gi;
            J(nn, i) = gi;
        }
        Eigen::VectorXd dx = -J.fullPivLu().solve(r);
        double step = 1.0;
        bool acc = false;
        for (int k = 0; k < 40; ++k, step *= 0.5) {
            std::vector<double> tt = out.thetas;
            for (std::size_t i = 0; i < n; ++i) tt[i] += step * dx[static_cast<Eigen::Index>(i)];
            double lt = out.lambda + step * dx[nn];
            if (!ordered(tt, ordering)) continue;
            Eigen::VectorXd rt = kkt(tt, lt);
            if (rt.norm() < r.norm() || (k == 0 && rt.norm() <= 1.0001 * r.norm())) {
                out.thetas = tt;
                out.lambda = lt;
                r = rt;
                acc = true;
                break;
            }
        }
        if (!acc) break;
    }
    if (!(r.norm() < 1e-10)) throw Error(ErrorCode::NoConvergence, "geodesic solver did not converge");
    return out;
}

std::vector<MoultonClass> moulton_catalog_h(const std::vector<double>& masses, double c) {
    std::vector<int> perm(masses.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    std::vector<std::vector<int>> orders;
    do orders.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<GeodesicHConfig> sols(orders.size());
    parallel_for(orders.size(), [&](std::size_t k) { sols[k] = solve_geodesic_h(masses, c, orders[k]); });

    std::vector<MoultonClass> out;
    for (std::size_t k = 0; k < orders.size(); ++k) {
        bool dup = false;
        for (const auto& o : out) {
            double same = 0.0, mirror = 0.0;
            for (std::size_t i = 0; i < masses.size(); ++i) {
                same = std::max(same, std::abs(o.config.thetas[i] - sols[k].thetas[i]));
                mirror = std::max(mirror, std::abs(o.config.thetas[i] + sols[k].thetas[i]));
            }
            if (same < 1e-8 || mirror < 1e-8) dup = true;
        }
        if (dup) continue;
        MoultonClass mc;
        mc.ordering = orders[k];
        mc.config = sols[k];
        auto cfg = to_configuration(sols[k]);
        mc.I = moment_of_inertia(cfg);
        mc.U = force_function(cfg);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hessian_geodesic_h(sols[k], sols[k].lambda),
                                                          Eigen::EigenvaluesOnly);
        mc.min_hessian_eig = es.eigenvalues().minCoeff();
        out.push_back(std::move(mc));
    }
    return out;
}

Configuration to_configuration(const TwoBodySConfig& t) {
    return make_config(Space::S3, {t.m1, t.m2},
                       {Vec4(-std::sin(t.theta1), 0.0, std::cos(t.theta1), 0.0),
                        Vec4(-std::sin(t.theta2), 0.0, std::cos(t.theta2), 0.0)});
}

TwoBodySolution solve_two_body_s(double m1, double m2, double c) {
    if (!(m1 > 0.0) || !(m2 > 0.0)) throw Error(ErrorCode::InvalidInput, "masses must be positive");
    const double M = m1 + m2;
    if (!(c > 0.0) || !(c < M)) throw Error(ErrorCode::OutOfRange, "need 0 < c < m1 + m2");
    TwoBodySolution out;
    const double lo = std::min(m1, m2), hi = std::max(m1, m2);
    if (m1 == m2) {
        if (c == m1) {
            out.continuum = true;
            return out;
        }
    } else if (c >= lo && c <= hi) {
        return out;
    }
    double s2 = c * (m1 - c) / (m2 * (M - 2.0 * c));
    double s1 = c * (m2 - c) / (m1 * (M - 2.0 * c));
    if (!(s1 > 0.0 && s1 < 1.0 && s2 > 0.0 && s2 < 1.0)) return out;
    const double pi = std::numbers::pi;
    double th1 = std::asin(std::sqrt(s1));
    double base = pi - std::asin(std::sqrt(s2));
    for (double th2 : {base, base + pi}) {
        double eq = m1 * std::sin(2.0 * th1) + m2 * std::sin(2.0 * th2);
        if (std::abs(eq) < 1e-9 * M) out.solutions.push_back({th1, th2, m1, m2, c});
    }
    return out;
}

TwoBodySConfig two_body_continuum_member(double m, double theta1, bool three_quarter_turn) {
    const double pi = std::numbers::pi;
    return {theta1, theta1 + (three_quarter_turn ? 1.5 * pi : 0.5 * pi), m, m, m};
}

} // namespace cnb
