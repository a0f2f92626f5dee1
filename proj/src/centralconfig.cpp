#include "cnb/centralconfig.hpp"

#include "cnb/inertia.hpp"
#include "cnb/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

namespace cnb {

const char* to_string(CCClass c) {
    switch (c) {
    case CCClass::Geodesic: return "Geodesic";
    case CCClass::SphereS2: return "SphereS2";
    case CCClass::HyperbolicH2: return "HyperbolicH2";
    case CCClass::FullS3: return "FullS3";
    case CCClass::FullH3: return "FullH3";
    }
    return "Unknown";
}

CCResidual cc_residual(const Configuration& c, double lambda) {
    CCResidual r;
    r.entries = grad_U(c);
    auto gi = grad_I(c);
    for (std::size_t i = 0; i < c.size(); ++i) {
        r.entries[i] -= lambda * gi[i];
        r.max = std::max(r.max, r.entries[i].norm());
    }
    return r;
}

namespace {

struct Trig {
    double c, s3;
};

Trig trig(const Configuration& cf, std::size_t i, std::size_t j) {
    double d = distance(cf.pos(i), cf.pos(j), cf.space);
    double s = sn(d, cf.space);
    return {cos_distance(cf.pos(i), cf.pos(j), cf.space), s * s * s};
}

} // namespace

double lambda_estimate(const Configuration& c) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Vec4& qi = c.pos(i);
        auto si = cylindrical_split(qi, c.space);
        den += 2.0 * c.mass(i) * si.r2 * si.rho2;
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            const Vec4& qj = c.pos(j);
            double rj2 = qj[0] * qj[0] + qj[1] * qj[1];
            auto t = trig(c, i, j);
            num += c.mass(i) * c.mass(j) *
                   (2.0 * qi[0] * qj[0] + 2.0 * qi[1] * qj[1] - (si.r2 + rj2) * t.c) / t.s3;
        }
    }
    if (den < 1e-14 * std::max(1.0, c.total_mass()))
        throw Error(ErrorCode::DegenerateDenominator, "every body lies on an axis");
    return num / den;
}

bool is_special_cc(const Configuration& c, double tol) {
    for (const auto& g : grad_U(c))
        if (!(g.norm() < tol)) return false;
    return true;
}

std::vector<double> criterion_residual(const Configuration& c, double lambda) {
    constexpr double axis_eps = 1e-9;
    std::vector<double> out;
    out.reserve(3 * c.size());
    std::optional<std::vector<Vec4>> gu;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Vec4& qi = c.pos(i);
        double mi = c.mass(i);
        auto si = cylindrical_split(qi, c.space);
        bool on_axis = si.r < axis_eps || (c.space == Space::S3 && si.rho < axis_eps);
        if (on_axis) {
            if (!gu) gu = grad_U(c);
            int drop = 0;
            for (int k = 1; k < 4; ++k)
                if (std::abs(qi[k]) > std::abs(qi[drop])) drop = k;
            for (int k = 0; k < 4; ++k)
                if (k != drop) out.push_back((*gu)[i][k]);
            continue;
        }
        double radial = 0.0, dxy = 0.0, dzw = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (j == i) continue;
            const Vec4& qj = c.pos(j);
            auto t = trig(c, i, j);
            double k = mi * c.mass(j) / t.s3;
            radial += k * (qi[0] * qj[0] + qi[1] * qj[1] - si.r2 * t.c);
            dxy += k * (qi[0] * qj[1] - qj[0] * qi[1]);
            dzw += k * (qi[2] * qj[3] - qj[2] * qi[3]);
        }
        radial -= 2.0 * lambda * mi * si.r2 * si.rho2;
        out.push_back(radial);
        out.push_back(dxy);
        out.push_back(dzw);
    }
    return out;
}

std::array<double, 4> orthogonality_relations(const Configuration& c) {
    std::array<double, 4> o{};
    for (const auto& b : c.bodies) {
        const Vec4& q = b.pos;
        o[0] += b.mass * q[0] * q[2];
        o[1] += b.mass * q[0] * q[3];
        o[2] += b.mass * q[1] * q[2];
        o[3] += b.mass * q[1] * q[3];
    }
    return o;
}

CCClass classify(const Configuration& c, double eps_flat) {
    const auto n = static_cast<Eigen::Index>(c.size());
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) g(i, j) = inner(c.pos(i), c.pos(j), c.space);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
    double top = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    int rank = 0;
    for (Eigen::Index k = 0; k < n; ++k)
        if (std::abs(es.eigenvalues()[k]) > eps_flat * top) ++rank;
    if (rank <= 2) return CCClass::Geodesic;
    if (rank == 3) return c.space == Space::S3 ? CCClass::SphereS2 : CCClass::HyperbolicH2;
    return c.space == Space::S3 ? CCClass::FullS3 : CCClass::FullH3;
}

Canonical canonicalize(const Configuration& c) {
    constexpr double eps = 1e-9;
    Mat4 t = Mat4::Identity();
    for (const auto& b : c.bodies) {
        double r = std::hypot(b.pos[0], b.pos[1]);
        if (r > eps) {
            double ca = b.pos[0] / r, sa = b.pos[1] / r;
            t(0, 0) = ca; t(0, 1) = sa; t(1, 0) = -sa; t(1, 1) = ca;
            break;
        }
    }
    if (c.space == Space::S3) {
        for (const auto& b : c.bodies) {
            double rho = std::hypot(b.pos[2], b.pos[3]);
            if (rho > eps) {
                double cb = b.pos[2] / rho, sb = b.pos[3] / rho;
                t(2, 2) = cb; t(2, 3) = sb; t(3, 2) = -sb; t(3, 3) = cb;
                break;
            }
        }
    } else {
        // boost by theta: z' w' summed with masses is (A/2) sinh 2theta + B cosh 2theta,
        // which has the single root tanh 2theta = -2B/A since |2B| < A on H3.
        double a = 0.0, b = 0.0;
        for (const auto& bd : c.bodies) {
            a += bd.mass * (bd.pos[2] * bd.pos[2] + bd.pos[3] * bd.pos[3]);
            b += bd.mass * bd.pos[2] * bd.pos[3];
        }
        double th = 0.5 * std::atanh(std::clamp(-2.0 * b / a, -1.0 + 1e-16, 1.0 - 1e-16));
        double ch = std::cosh(th), sh = std::sinh(th);
        t(2, 2) = ch; t(2, 3) = sh; t(3, 2) = sh; t(3, 3) = ch;
    }
    Canonical out{c, t};
    for (auto& b : out.config.bodies) b.pos = t * b.pos;
    return out;
}

double canonical_distance(const Configuration& a, const Configuration& b) {
    if (a.size() != b.size() || a.space != b.space) return INFINITY;
    auto ca = canonicalize(a).config, cb = canonicalize(b).config;
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, (ca.pos(i) - cb.pos(i)).cwiseAbs().maxCoeff());
    return d;
}

CCReport make_report(const Configuration& c, double special_tol) {
    CCReport r;
    r.config = c;
    try {
        r.lambda = lambda_estimate(c);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateDenominator) throw;
        r.lambda = 0.0;
    }
    r.residual_max = cc_residual(c, r.lambda).max;
    r.is_special = is_special_cc(c, special_tol);
    r.cc_class = classify(c);
    r.orth = orthogonality_relations(c);
    r.I = moment_of_inertia(c);
    r.U = force_function(c);
    return r;
}

void validate_level_set(const std::vector<double>& masses, Space s, const LevelSetSpec& spec) {
    if (!(spec.tol > 0.0)) throw Error(ErrorCode::InvalidInput, "tolerance must be positive");
    if (!(spec.c > 0.0)) throw Error(ErrorCode::InvalidInput, "level c must be positive");
    if (s == Space::H3) return;
    if (masses.size() > 24) return;
    const std::size_t n = masses.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) sum += masses[i];
        if (std::abs(sum - spec.c) < 1e-9)
            throw Error(ErrorCode::InvalidInput, "level c equals a partial mass sum; I = c is not smooth there");
    }
    double total = 0.0;
    for (double m : masses) total += m;
    if (spec.c >= total) throw Error(ErrorCode::InvalidInput, "level c exceeds the total mass");
}

void restore_level(Configuration& c, double target) {
    for (int it = 0; it < 100; ++it) {
        double I = moment_of_inertia(c);
        if (std::abs(I - target) <= 1e-15 * std::max(1.0, target)) return;
        auto g = grad_I(c);
        double gg = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) gg += inner(g[i], g[i], c.space);
        if (!(gg > 1e-300)) throw Error(ErrorCode::NoConvergence, "grad I vanishes; cannot reach the level set");
        double s = (target - I) / gg;
        for (std::size_t i = 0; i < c.size(); ++i)
            c.bodies[i].pos = project_point(c.pos(i) + s * g[i], c.space);
    }
    if (std::abs(moment_of_inertia(c) - target) > 1e-12 * std::max(1.0, target))
        throw Error(ErrorCode::NoConvergence, "could not restore the level set");
}

Configuration seed_config(const std::vector<double>& masses, Space s, double c, std::uint64_t seed,
                          SeedLayout layout) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<Vec4> pts;
    for (std::size_t i = 0; i < masses.size(); ++i) {
        if (s == Space::S3) {
            double x = 0.4 * uni(rng), y = 0.4 * uni(rng);
            pts.emplace_back(x, y, std::sqrt(1.0 - x * x - y * y), 0.0);
        } else if (layout == SeedLayout::Default) {
            double x = 2.0 * uni(rng);
            pts.emplace_back(x, 0.0, 0.0, std::sqrt(1.0 + x * x));
        } else {
            double x = 2.0 * uni(rng), y = 2.0 * uni(rng);
            pts.emplace_back(x, y, 0.0, std::sqrt(1.0 + x * x + y * y));
        }
    }
    auto cfg = make_config(s, masses, pts);
    restore_level(cfg, c);
    return cfg;
}

namespace {

double max_crit(const Configuration& c) {
    double lam = lambda_estimate(c);
    double m = 0.0;
    for (double v : criterion_residual(c, lam)) m = std::max(m, std::abs(v));
    return m;
}

double min_pair_sn(const Configuration& c) {
    double m = INFINITY;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            double d = distance_unchecked(c.pos(i), c.pos(j), c.space);
            m = std::min(m, std::abs(sn(d, c.space)));
        }
    return m;
}

// grad U - mu grad I with mu the least-squares multiplier
std::vector<Vec4> projected_gradient(const Configuration& c, double* mu_out) {
    auto gu = grad_U(c);
    auto gi = grad_I(c);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        num += inner(gu[i], gi[i], c.space);
        den += inner(gi[i], gi[i], c.space);
    }
    double mu = den > 0.0 ? num / den : 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) gu[i] -= mu * gi[i];
    if (mu_out) *mu_out = mu;
    return gu;
}

void descend(Configuration& q, double level, int max_iter) {
    const Space sp = q.space;
    double t = 1e-2;
    double u = force_function(q);
    for (int k = 0; k < max_iter; ++k) {
        auto g = projected_gradient(q, nullptr);
        double gn2 = 0.0, gmax = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            gn2 += inner(g[i], g[i], sp);
            gmax = std::max(gmax, g[i].norm());
        }
        if (gmax < 1e-7) return;
        t = std::min(2.0 * t, 0.1 / gmax);
        bool accepted = false;
        while (t > 1e-16) {
            Configuration trial = q;
            try {
                for (std::size_t i = 0; i < q.size(); ++i)
                    trial.bodies[i].pos = project_point(q.pos(i) - t * g[i], sp);
                restore_level(trial, level);
                if (!is_singular(trial)) {
                    double ut = force_function(trial);
                    if (ut <= u - 1e-4 * t * gn2) {
                        q = std::move(trial);
                        u = ut;
                        accepted = true;
                        break;
                    }
                }
            } catch (const Error&) {
            }
            t *= 0.5;
        }
        if (!accepted) return;
    }
}

// Levenberg-Marquardt on [grad U - mu grad I; q.q - sigma; I - c] in the
// ambient coordinates plus mu. Returns false if no progress is possible.
bool polish(Configuration& q, double level, double tol, int max_iter, int* iters) {
    const Space sp = q.space;
    const int sg = sigma(sp);
    const auto n = static_cast<Eigen::Index>(q.size());
    const Eigen::Index nx = 4 * n + 1, nr = 5 * n + 1;

    auto pack = [&](const Configuration& c, double mu) {
        Eigen::VectorXd x(nx);
        for (Eigen::Index i = 0; i < n; ++i) x.segment<4>(4 * i) = c.pos(i);
        x[4 * n] = mu;
        return x;
    };
    auto unpack = [&](const Eigen::VectorXd& x) {
        Configuration c = q;
        for (Eigen::Index i = 0; i < n; ++i) c.bodies[i].pos = x.segment<4>(4 * i);
        return c;
    };
    auto resid = [&](const Eigen::VectorXd& x) {
        Configuration c = unpack(x);
        double mu = x[4 * n];
        Eigen::VectorXd r(nr);
        auto gu = grad_U(c);
        for (Eigen::Index i = 0; i < n; ++i) {
            r.segment<4>(4 * i) = gu[i] - mu * grad_I_body(c.pos(i), c.mass(i), sp);
            r[4 * n + i] = inner(c.pos(i), c.pos(i), sp) - sg;
        }
        r[5 * n] = moment_of_inertia(c) - level;
        return r;
    };

    double mu0;
    projected_gradient(q, &mu0);
    Eigen::VectorXd x = pack(q, mu0);
    Eigen::VectorXd r = resid(x);
    double nu = 1e-6;
    int extra = 0;
    for (int it = 0; it < max_iter; ++it) {
        if (iters) ++*iters;
        Eigen::MatrixXd J(nr, nx);
        for (Eigen::Index k = 0; k < nx; ++k) {
            double h = 1e-7 * std::max(1.0, std::abs(x[k]));
            Eigen::VectorXd xp = x, xm = x;
            xp[k] += h;
            xm[k] -= h;
            J.col(k) = (resid(xp) - resid(xm)) / (2.0 * h);
        }
        Eigen::MatrixXd A = J.transpose() * J;
        Eigen::VectorXd g = J.transpose() * r;
        Eigen::VectorXd d = A.diagonal().array() + 1e-12;
        bool accepted = false;
        double step = 0.0;
        for (int tries = 0; tries < 40; ++tries) {
            Eigen::MatrixXd M = A;
            M.diagonal() += nu * d;
            Eigen::VectorXd dx = -M.ldlt().solve(g);
            Eigen::VectorXd xt = x + dx;
            try {
                Configuration c = unpack(xt);
                for (auto& b : c.bodies) b.pos = project_point(b.pos, sp);
                restore_level(c, level);
                if (is_singular(c)) throw Error(ErrorCode::SingularApproach, "");
                xt = pack(c, xt[4 * n]);
                Eigen::VectorXd rt = resid(xt);
                if (rt.norm() <= r.norm()) {
                    step = (xt - x).norm();
                    x = xt;
                    r = rt;
                    nu = std::max(nu / 3.0, 1e-15);
                    accepted = true;
                    break;
                }
            } catch (const Error&) {
            }
            nu *= 4.0;
        }
        Configuration c = unpack(x);
        double crit = max_crit(c);
        bool ok = crit < tol && std::abs(moment_of_inertia(c) - level) < tol;
        if (ok && (!accepted || step < 1e-14 || ++extra >= 3)) {
            q = c;
            return true;
        }
        if (!accepted) {
            q = c;
            return false;
        }
    }
    q = unpack(x);
    return max_crit(q) < tol;
}

} // namespace

FindResult find_cc(const std::vector<double>& masses, Space s, const LevelSetSpec& spec,
                   const Configuration& seed, const FindOptions& opt) {
    validate_level_set(masses, s, spec);
    if (seed.size() != masses.size() || seed.space != s)
        throw Error(ErrorCode::InvalidInput, "seed does not match masses/space");
    Configuration q = seed;
    for (std::size_t i = 0; i < q.size(); ++i) {
        q.bodies[i].mass = masses[i];
        q.bodies[i].pos = project_point(q.pos(i), s);
    }
    if (is_singular(q)) throw Error(ErrorCode::SingularApproach, "seed is singular");
    restore_level(q, spec.c);

    FindResult res;
    if (!opt.saddle) descend(q, spec.c, opt.max_descent);
    bool ok = polish(q, spec.c, spec.tol, opt.max_polish, &res.iterations);
    if (is_singular(q) || min_pair_sn(q) < 1e-6)
        throw Error(ErrorCode::SingularApproach, "iterate approached a collision or antipodal pair");
    if (!ok) throw Error(ErrorCode::NoConvergence, "residual did not reach tolerance");
    res.config = q;
    res.report = make_report(q);
    return res;
}

std::vector<FindResult> find_cc_multi(const std::vector<double>& masses, Space s, const LevelSetSpec& spec,
                                      int seeds, std::uint64_t base_seed, SeedLayout layout,
                                      const FindOptions& opt) {
    validate_level_set(masses, s, spec);
    std::vector<std::optional<FindResult>> slots(static_cast<std::size_t>(std::max(0, seeds)));
    parallel_for(slots.size(), [&](std::size_t k) {
        try {
            auto seed = seed_config(masses, s, spec.c, base_seed + k, layout);
            slots[k] = find_cc(masses, s, spec, seed, opt);
        } catch (const Error&) {
        }
    });
    std::vector<FindResult> out;
    for (auto& r : slots) {
        if (!r) continue;
        bool dup = false;
        for (const auto& o : out)
            if (canonical_distance(o.config, r->config) < 1e-6) dup = true;
        if (!dup) out.push_back(std::move(*r));
    }
    if (out.empty()) throw Error(ErrorCode::NoConvergence, "no seed converged");
    return out;
}

} // namespace cnb
