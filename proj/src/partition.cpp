#include "selfcontract/partition.hpp"
#include "selfcontract/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sc {

namespace {

// unit vectors whose delta/2-caps cover S^{k-1}; the radius may grow to respect `cap`
std::vector<Vec> direction_net(int k, double& delta, unsigned seed, int cap)
{
    std::vector<Vec> net;
    if (k == 1) {
        net = {Vec::Ones(1), -Vec::Ones(1)};
        return net;
    }
    if (k == 2) {
        int N = static_cast<int>(std::ceil(2 * kPi / delta - 1e-9));
        if (N > cap) {
            N = cap;
            delta = 2 * kPi / N;
        }
        for (int i = 0; i < N; ++i) {
            double a = 2 * kPi * i / N;
            Vec v(2);
            v << std::cos(a), std::sin(a);
            net.push_back(v);
        }
        return net;
    }
    // greedy net over random samples; 0.4*delta leaves room for the sampling gap
    int M = k == 3 ? 20000 : 60000;
    while (true) {
        Rng rng(seed);
        net.clear();
        double c = std::cos(0.4 * delta);
        bool overflow = false;
        Mat store(k, cap);
        for (int s = 0; s < M; ++s) {
            Vec u = random_unit(rng, k);
            int m = static_cast<int>(net.size());
            bool covered = m > 0 && (store.leftCols(m).transpose() * u).maxCoeff() >= c;
            if (!covered) {
                if (m == cap) {
                    overflow = true;
                    break;
                }
                store.col(m) = u;
                net.push_back(u);
            }
        }
        if (!overflow) return net;
        delta *= 1.25;
    }
}

}  // namespace

double vector_subspace_angle(const Vec& v, const Subspace& s)
{
    if (s.dim() == 0) return kPi / 2;
    return line_angle(v, s);
}

Partition Partition::build(const Gauge& g, double delta, unsigned seed, int max_patches)
{
    if (!(delta > 0 && delta < kPi / 2)) throw input_error("partition delta must lie in (0, pi/2)");
    Partition P;
    P.g_ = g;
    P.delta_ = delta;
    int n = g.dim();
    auto add = [&](const Vec& nu, int facet) {
        BoundaryPatch b;
        b.index = static_cast<int>(P.patches_.size()) + 1;
        b.normal = nu.normalized();
        b.facet = facet;
        P.patches_.push_back(b);
    };
    if (g.is_polyhedral()) {
        for (int i = 0; i < g.facets().rows(); ++i) add(g.facets().row(i).transpose(), i);
        if (g.kind() == Gauge::Kind::cylinder) P.side_count_ = P.N() - 2;
    } else if (g.kind() == Gauge::Kind::cylinder) {
        double d = delta;
        for (const Vec& v : direction_net(n - 1, d, seed, max_patches)) {
            Vec w = Vec::Zero(n);
            w.head(n - 1) = v;
            add(w, -1);
        }
        P.side_count_ = P.N();
        Vec top = Vec::Zero(n);
        top(n - 1) = 1.0;
        add(top, -1);
        add(-top, -1);
        P.delta_ = d;
    } else {
        double d = delta;
        for (const Vec& v : direction_net(n, d, seed, max_patches)) add(v, -1);
        P.delta_ = d;
    }
    for (auto& b : P.patches_) b.delta = P.delta_;
    return P;
}

int Partition::nearest_normal(const Vec& nu, int count) const
{
    int best = 0;
    double bd = -2.0;
    for (int i = 0; i < count; ++i) {
        double d = patches_[i].normal.dot(nu);
        if (d > bd + 1e-15) {  // ties go to the lowest index
            bd = d;
            best = i;
        }
    }
    return best + 1;
}

int Partition::classify_direction(const Vec& d) const
{
    int n = g_.dim();
    if (g_.kind() == Gauge::Kind::cylinder) {
        // the rim belongs to the caps
        Vec dp = d.head(n - 1);
        double side = g_.rho() * g_.base()(dp);
        double t = d(n - 1);
        int ns = side_count_;
        if (t > 0 && t >= side * (1.0 - 1e-12)) return ns + 1;
        if (t < 0 && -t >= side * (1.0 - 1e-12)) return ns + 2;
        if (g_.is_polyhedral()) {
            Vec x = d / g_(d);
            for (int i = 0; i < ns; ++i)
                if (g_.facets().row(i).dot(x) >= 1.0 - 1e-9) return i + 1;
            Eigen::Index k;
            (g_.facets().topRows(ns) * x).maxCoeff(&k);
            return static_cast<int>(k) + 1;
        }
        Vec nu = g_.base().boundary_point(dp).normals.front();
        Vec w = Vec::Zero(n);
        w.head(n - 1) = nu;
        return nearest_normal(w, ns);
    }
    if (g_.is_polyhedral()) {
        Vec x = d / g_(d);
        for (int i = 0; i < g_.facets().rows(); ++i)
            if (g_.facets().row(i).dot(x) >= 1.0 - 1e-9) return i + 1;
        Eigen::Index k;
        (g_.facets() * x).maxCoeff(&k);
        return static_cast<int>(k) + 1;
    }
    BoundaryPoint bp = g_.boundary_point(d);
    return nearest_normal(bp.normals.front(), N());
}

int Partition::classify(const Vec& apex, const Vec& x) const
{
    Vec d = x - apex;
    if (d.norm() == 0.0) return 0;
    return classify_direction(d);
}

bool Partition::normal_condition(int idx, const Vec& d) const
{
    const Vec& nu = normal(idx);
    BoundaryPoint bp = g_.boundary_point(d);
    for (const Vec& v : bp.normals)
        if (angle_between(v, nu) < delta_) return true;
    return false;
}

std::vector<int> admissible_indices(const Partition& part, const Subspace& sub, double eps,
                                    int samples, unsigned seed)
{
    int n = part.gauge().dim();
    std::set<int> out;
    if (sub.dim() == n) {
        for (int i = 1; i <= part.N(); ++i) out.insert(i);
        return {out.begin(), out.end()};
    }
    Subspace perp = sub.complement();
    Rng rng(seed);
    auto probe = [&](const Vec& p, double theta) {
        Vec q = perp.basis() * gaussian_vec(rng, perp.dim());
        Vec u = p;
        if (q.norm() > 1e-12) u = std::cos(theta) * p + std::sin(theta) * q.normalized();
        out.insert(part.classify_direction(u));
    };
    // facet-directed probes: the ray inside Pi that best aligns with each normal
    for (const auto& b : part.patches()) {
        Vec p = sub.project(b.normal);
        if (p.norm() > 1e-12) {
            probe(p.normalized(), 0.0);
            if (eps > 0) probe(p.normalized(), eps);
        }
    }
    for (int j = 0; j < sub.dim(); ++j) {
        probe(sub.basis().col(j), 0.0);
        probe(-sub.basis().col(j), 0.0);
    }
    for (int s = 0; s < samples; ++s) {
        Vec p = (sub.basis() * gaussian_vec(rng, sub.dim())).normalized();
        double th = (s % 4 == 0) ? eps : uniform(rng, 0.0, eps);
        probe(p, th);
    }
    return {out.begin(), out.end()};
}

bool is_admissible(const Partition& part, const std::vector<int>& tuple, double xi, int* failing_level)
{
    int n = part.gauge().dim();
    if (tuple.empty()) throw input_error("empty tuple");
    if (static_cast<int>(tuple.size()) > n) throw input_error("tuple longer than the dimension");
    for (int a : tuple)
        if (a < 1 || a > part.N()) throw input_error("tuple index out of range");
    // tuple[k] must make an angle < xi with span{tuple[k+1..]}^perp
    for (int k = static_cast<int>(tuple.size()) - 2; k >= 0; --k) {
        std::vector<Vec> later;
        for (size_t m = k + 1; m < tuple.size(); ++m) later.push_back(part.normal(tuple[m]));
        Subspace pi = Subspace::span(later, n).complement();
        if (!(vector_subspace_angle(part.normal(tuple[k]), pi) < xi)) {
            if (failing_level) *failing_level = k;
            return false;
        }
    }
    return true;
}

Frame frame_from_tuple(const Partition& part, const std::vector<int>& tuple, double xi)
{
    int lvl = -1;
    if (!is_admissible(part, tuple, xi, &lvl))
        throw lemma_error("inadmissible tuple at level " + std::to_string(lvl), lvl);
    int n = part.gauge().dim();
    Frame f;
    f.tuple = tuple;
    f.xi = xi;
    for (int a : tuple) f.axes.push_back(part.normal(a));
    for (size_t k = 0; k < tuple.size(); ++k) {
        std::vector<Vec> later(f.axes.begin() + k, f.axes.end());
        f.pi.push_back(Subspace::span(later, n).complement());
    }
    if (static_cast<int>(tuple.size()) == n) {
        // x^1: Gram-Schmidt of x^2..x^n followed by the standard basis, first survivor
        std::vector<Vec> vs(f.axes.begin() + 1, f.axes.end());
        Subspace s = Subspace::span(vs, n);
        for (int i = 0; i < n; ++i) {
            Vec e = Vec::Unit(n, i);
            Vec r = e - s.project(e);
            if (r.norm() > 1e-8) {
                f.x1 = r.normalized();
                break;
            }
        }
    }
    return f;
}

double c_k(int k, double zeta)
{
    if (k <= 1) return 1.0;
    return std::pow(1.0 + std::tan(zeta) + 1.0 / std::cos(zeta), k - 1);
}

double Constants::c_of_zeta(double zeta) const { return c_k(n, zeta); }

Constants compute_constants(int n, double eps0, double xi_bar, double eps1, double eps_bar)
{
    if (n < 1) throw input_error("dimension must be positive");
    Constants c;
    c.n = n;
    c.eps0 = eps0;
    c.xi_bar = xi_bar;
    c.eps1 = eps1;
    c.eps_bar = eps_bar;
    c.xi = xi_bar / 2 + kPi / 4;
    c.delta_bar = kPi / 4 - xi_bar / 2;
    c.c_xi = c_k(n, c.xi);
    c.delta0 = c.recompute_delta0();
    return c;
}

double Constants::recompute_delta0() const
{
    double d = delta_bar;
    if (n > 1) {
        double cx = c_k(n, xi);
        double m = 8.0 * (n - 1) * cx;
        d = std::min(d, std::atan(std::sin(eps0) / m));
        double c1 = 3.0 / std::tan(eps1) + 8.0 / std::sin(eps1);
        d = std::min(d, std::atan(1.0 / (m * c1)));
    }
    return d;
}

Eps0Estimate estimate_eps0_xibar(const Gauge& g, int samples, unsigned seed)
{
    const int K = 31;
    const double step = kPi / 64, margin = kPi / 32, pad = kPi / 256;
    int n = g.dim();
    std::vector<double> xi(K + 1, 0.0);  // xi[k] for eps = k*step; xi[0] for eps = 0
    Rng rng(seed);

    // vertices of polyhedral balls give the corner normal fans
    std::vector<Vec> corners;
    if (g.is_polyhedral() && n >= 2) {
        for (int t = 0; t < 400; ++t) {
            Vec u = random_unit(rng, n);
            Vec x = u / g(u);
            // walk to a vertex by pushing along the active face
            for (int it = 0; it < n; ++it) {
                auto act = g.active_facets(x, 1e-9);
                Mat A(act.size(), n);
                for (size_t i = 0; i < act.size(); ++i) A.row(i) = g.facets().row(act[i]);
                Eigen::FullPivLU<Mat> lu(A);
                if (lu.rank() >= n) break;
                Mat ker = lu.kernel();
                Vec dir = ker * gaussian_vec(rng, static_cast<int>(ker.cols()));
                double best = kInf;
                for (int i = 0; i < g.facets().rows(); ++i) {
                    double rate = g.facets().row(i).dot(dir);
                    if (rate > 1e-12) best = std::min(best, (1.0 - g.facets().row(i).dot(x)) / rate);
                }
                if (!std::isfinite(best)) break;
                x += best * dir;
            }
            corners.push_back(x);
        }
    }

    auto record = [&](const Subspace& pi, const Vec& x, double theta) {
        BoundaryPoint bp = g.boundary_point(x);
        double worst = 0.0;
        for (const Vec& v : bp.normals) worst = std::max(worst, vector_subspace_angle(v, pi));
        if (bp.normals.size() > 1) {
            for (int t = 0; t < 8; ++t) {
                Vec c = Vec::Zero(n);
                for (const Vec& v : bp.normals) c += uniform(rng) * v;
                if (c.norm() > 1e-12) worst = std::max(worst, vector_subspace_angle(c, pi));
            }
        }
        int k0 = static_cast<int>(std::ceil(theta / step - 1e-12));
        for (int k = std::max(k0, 0); k <= K; ++k) xi[k] = std::max(xi[k], worst);
    };

    auto random_subspace = [&](int d) {
        std::vector<Vec> vs;
        for (int j = 0; j < d; ++j) vs.push_back(gaussian_vec(rng, n));
        return Subspace::span(vs, n);
    };

    for (int s = 0; s < samples; ++s) {
        if (n == 1) {
            record(Subspace::full(1), Vec::Ones(1) * (s % 2 ? -1.0 : 1.0), 0.0);
            continue;
        }
        int d = 1 + static_cast<int>(uniform(rng) * (n - 1));
        if (d > n - 1) d = n - 1;
        double theta = (s % 2 == 0) ? step * (1 + static_cast<int>(uniform(rng) * K)) : uniform(rng, 0.0, K * step);
        if (theta > K * step) theta = K * step;
        int mode = s % 4;
        Subspace pi;
        Vec u;
        if (mode == 3 && !corners.empty()) {
            // a subspace passing within theta of a vertex direction
            const Vec& c = corners[static_cast<size_t>(uniform(rng) * corners.size()) % corners.size()];
            Vec cu = c.normalized();
            Vec w = random_unit(rng, n);
            w -= w.dot(cu) * cu;
            if (w.norm() < 1e-9) continue;
            Vec p = std::cos(theta) * cu + std::sin(theta) * w.normalized();
            std::vector<Vec> vs{p};
            for (int j = 1; j < d; ++j) vs.push_back(gaussian_vec(rng, n));
            pi = Subspace::span(vs, n);
            u = cu;
        } else {
            if (mode == 1) {
                // coordinate subspace
                std::vector<int> idx(n);
                for (int i = 0; i < n; ++i) idx[i] = i;
                std::shuffle(idx.begin(), idx.end(), rng);
                std::vector<Vec> vs;
                for (int j = 0; j < d; ++j) vs.push_back(Vec::Unit(n, idx[j]));
                pi = Subspace::span(vs, n);
            } else if (mode == 2 && g.is_polyhedral()) {
                std::vector<Vec> vs;
                for (int j = 0; j < d; ++j)
                    vs.push_back(g.facets().row(static_cast<int>(uniform(rng) * g.facets().rows()) %
                                                g.facets().rows()).transpose());
                pi = Subspace::span(vs, n);
            } else {
                pi = random_subspace(d);
            }
            if (pi.dim() == 0 || pi.dim() == n) continue;
            Subspace perp = pi.complement();
            Vec p = (pi.basis() * gaussian_vec(rng, pi.dim())).normalized();
            Vec q = (perp.basis() * gaussian_vec(rng, perp.dim())).normalized();
            u = std::cos(theta) * p + std::sin(theta) * q;
        }
        record(pi, u, theta);
    }

    Eps0Estimate est;
    est.xi_of_eps.assign(xi.begin() + 1, xi.end());
    int best = 0;
    for (int k = 1; k <= K; ++k)
        if (xi[k] + pad <= kPi / 2 - margin) best = k;
    if (best == 0) throw std::runtime_error("estimate_eps0_xibar: no grid value passes");
    est.eps0 = best * step;
    est.xi_bar = std::max(xi[best] + pad, 1e-6);
    return est;
}

Eps1Estimate estimate_eps1(const Gauge& g, int samples, double xi_bar, unsigned seed)
{
    if (!g.symmetric()) throw input_error("estimate_eps1 needs a symmetric gauge");
    int n = g.dim();
    Rng rng(seed);
    double eps_min = kPi / 2;
    // does the ray from B = 0 at angle theta from nu meet M(nu, 0) beyond |BC| = 3/4 ?
    auto fails = [&](const Vec& nu, double theta) {
        std::vector<Vec> rays;
        if (n == 1) return false;
        if (n == 2) {
            for (double sgn : {1.0, -1.0}) {
                double c = std::cos(theta), s = sgn * std::sin(theta);
                Vec u(2);
                u << c * nu(0) - s * nu(1), s * nu(0) + c * nu(1);
                rays.push_back(u);
            }
        } else {
            for (int t = 0; t < 4; ++t) {
                Vec w = random_unit(rng, n);
                w -= w.dot(nu) * nu;
                if (w.norm() < 1e-9) continue;
                rays.push_back(std::cos(theta) * nu + std::sin(theta) * w.normalized());
            }
        }
        for (const Vec& u : rays) {
            double at = g(nu - 0.75 * u) - g(0.75 * u);
            double far = g(nu - 1e6 * u) - g(1e6 * u);
            if (at >= -1e-12 && far <= 1e-9) return true;
        }
        return false;
    };
    for (int s = 0; s < samples; ++s) {
        Vec nu;
        if (n == 2) {
            double a = 2 * kPi * s / samples;
            nu = Vec(2);
            nu << std::cos(a), std::sin(a);
        } else {
            nu = random_unit(rng, n);
        }
        double th = 0.0;
        bool failed = false;
        while (th + 0.01 < kPi / 2) {
            if (fails(nu, th + 0.01)) {
                failed = true;
                break;
            }
            th += 0.01;
        }
        if (failed) {
            while (!fails(nu, th + 0.001)) th += 0.001;
        } else {
            th = kPi / 2;
        }
        eps_min = std::min(eps_min, th);
    }
    Eps1Estimate e;
    e.eps_bar = eps_min / 2;
    e.alpha = (kPi / 2 - xi_bar) / 2;
    e.eps1 = std::min(e.eps_bar, e.alpha / 2);
    return e;
}

Constants estimate_constants(const Gauge& g, int samples, unsigned seed)
{
    Eps0Estimate e0 = estimate_eps0_xibar(g, samples, seed);
    Eps1Estimate e1 = estimate_eps1(g, std::max(16, samples / 50), e0.xi_bar, seed + 1);
    Constants c = compute_constants(g.dim(), e0.eps0, e0.xi_bar, e1.eps1, e1.eps_bar);
    c.seed = seed;
    c.budget = samples;
    return c;
}

DescentCheck check_cone_descent(const Partition& part, const Polyline& poly, int apex_patch, double delta)
{
    DescentCheck res;
    int r = poly.size();
    if (r == 0) return res;
    const Vec& apex = poly.back();
    for (int j = 0; j < r; ++j) {
        int c = part.classify(apex, poly[j]);
        if (c != 0 && c != apex_patch) {
            res.ok = false;
            res.index = j;
            res.why = "point outside the cone";
            return res;
        }
    }
    const Vec& nu = part.normal(apex_patch);
    Subspace perp = Subspace::axis(nu).complement();
    for (int j = 0; j + 1 < r; ++j) {
        Vec d = poly[j + 1] - poly[j];
        if (d.norm() == 0.0) continue;
        if (line_angle(d, perp) > delta && !((poly[j] - poly[j + 1]).dot(nu) > 0)) {
            res.ok = false;
            res.index = j;
            res.why = "delta-vertical segment does not descend";
            return res;
        }
    }
    return res;
}

Domination projection_domination(const std::vector<Vec>& axes, double zeta, const Vec& A)
{
    int k = static_cast<int>(axes.size());
    if (k == 0) throw input_error("no axes");
    int n = static_cast<int>(A.size());
    for (int i = 0; i + 1 < k; ++i) {
        std::vector<Vec> later(axes.begin() + i + 1, axes.end());
        Subspace c = Subspace::span(later, n).complement();
        if (vector_subspace_angle(axes[i], c) > zeta + 1e-12)
            throw lemma_error("axis violates the zeta-angle condition", i);
    }
    Subspace pi = Subspace::span(axes, n);
    Domination d;
    d.lhs = pi.project(A).norm();
    double s = 0.0;
    for (const Vec& v : axes) s += std::abs(A.dot(v.normalized()));
    d.rhs = c_k(k, zeta) * s;
    return d;
}

Domination projection_domination(const Frame& f, const Vec& A) { return projection_domination(f.axes, f.xi, A); }

}  // namespace sc
