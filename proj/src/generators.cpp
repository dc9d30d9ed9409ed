#include "selfcontract/generators.hpp"
#include "selfcontract/sampling.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace sc {

Polyline square_path()
{
    return Polyline::from_rows({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
}

Polyline harmonic_staircase(int n)
{
    if (n < 1) throw input_error("staircase dimension must be positive");
    std::vector<Vec> pts;
    Vec p = Vec::Zero(n);
    pts.push_back(p);
    for (int j = 1; j <= n; ++j) {
        p(j - 1) = 1.0 / j;
        pts.push_back(p);
    }
    return Polyline(n, std::move(pts));
}

double ratio(const Polyline& p)
{
    double d = (p.back() - p.front()).norm();
    return d > 0 ? length(p) / d : kInf;
}

namespace {

// j -> ||z - A_j|| nonincreasing over the prefix
bool accepts(const Gauge& g, const std::vector<Vec>& pts, const Vec& z)
{
    double prev = kInf;
    for (const Vec& a : pts) {
        double d = g(z - a);
        if (d > prev) return false;
        prev = d;
    }
    return true;
}

// row k of the distance matrix is nonincreasing
bool row_ok(const Gauge& g, const Polyline& p, int k)
{
    double prev = kInf;
    for (int j = 0; j < k; ++j) {
        double d = g(p[k] - p[j]);
        if (d > prev) return false;
        prev = d;
    }
    return true;
}

}  // namespace

Generated greedy_random(const Gauge& g, int r, unsigned seed, double proposal_scale, int max_rejections)
{
    if (r < 2) throw input_error("need r >= 2");
    if (!(proposal_scale > 0)) throw input_error("proposal scale must be positive");
    if (max_rejections < 0) max_rejections = 400 * r;
    int n = g.dim();
    Rng rng(seed);
    std::vector<Vec> pts{Vec::Zero(n)};
    double s = proposal_scale;
    int rejected = 0, streak = 0;
    Generated out;
    while (static_cast<int>(pts.size()) < r) {
        Vec z = pts.back() + s * gaussian_vec(rng, n);
        if (accepts(g, pts, z)) {
            pts.push_back(z);
            s *= 1.1;
            streak = 0;
            continue;
        }
        if (++rejected > max_rejections) {
            out.starved = true;
            break;
        }
        if (++streak >= 20) {
            s *= 0.7;
            streak = 0;
        }
    }
    out.poly = Polyline(n, std::move(pts));
    SCResult chk = is_self_contracted(out.poly, g);
    if (!chk.ok) throw std::logic_error("greedy generator produced a non-self-contracted polyline");
    return out;
}

Gauge random_symmetric_polytope(int n, unsigned seed, int k)
{
    if (n < 1) throw input_error("dimension must be positive");
    if (k < 0) k = n + 2;
    if (k < n) throw input_error("need at least n functionals");
    Rng rng(seed);
    while (true) {
        Mat a(k, n);
        for (int i = 0; i < k; ++i) a.row(i) = random_unit(rng, n).transpose() * uniform(rng, 0.7, 1.3);
        Eigen::FullPivLU<Mat> lu(a);
        if (lu.rank() == n) return Gauge::symmetric_polytope(a);
    }
}

Trace descent_trace(const FunctionSpec& f, const Vec& x0, StepRule rule, double eta, int max_steps, const Gauge& g)
{
    int n = static_cast<int>(x0.size());
    if (g.dim() != n) throw input_error("start point and gauge dimensions differ");
    if (eta < 0) throw input_error("step size must be nonnegative");
    std::function<Vec(const Vec&)> grad;
    if (f.kind == FunctionSpec::Kind::quadratic) {
        if (f.Q.rows() != n || f.Q.cols() != n || f.c.size() != n) throw input_error("quadratic of wrong size");
        if ((f.Q - f.Q.transpose()).norm() > 1e-12 * std::max(1.0, f.Q.norm())) throw input_error("Q must be symmetric");
        Eigen::SelfAdjointEigenSolver<Mat> es(f.Q);
        if (es.eigenvalues().minCoeff() < -1e-12) throw input_error("Q is not positive semidefinite");
        grad = [&](const Vec& x) -> Vec { return f.Q * (x - f.c); };
    } else {
        if (rule == StepRule::exact) throw input_error("exact line search needs a quadratic");
        if (f.A.cols() != n || f.A.rows() != f.b.size() || f.A.rows() == 0) throw input_error("max-affine of wrong size");
        if (!(f.smoothing > 0)) throw input_error("smoothing must be positive");
        grad = [&](const Vec& x) -> Vec {
            Vec v = (f.A * x + f.b) / f.smoothing;
            Vec w = (v.array() - v.maxCoeff()).exp();
            w /= w.sum();
            return f.A.transpose() * w;
        };
    }
    std::vector<Vec> pts{x0};
    Vec x = x0;
    for (int s = 0; s < max_steps; ++s) {
        Vec gr = grad(x);
        double h = eta;
        if (rule == StepRule::exact) {
            double den = gr.dot(f.Q * gr);
            if (den <= 0) break;
            h = gr.dot(gr) / den;
        }
        Vec nx = x - h * gr;
        if ((nx - x).norm() <= 1e-14 * std::max(1.0, x.norm())) break;
        x = nx;
        pts.push_back(x);
    }
    Trace t;
    t.poly = Polyline(n, std::move(pts));
    t.self_contracted = is_self_contracted(t.poly, g).ok;
    return t;
}

Adversarial adversarial_ratio(const Gauge& g, int r, int budget, unsigned seed, const Polyline& start)
{
    if (budget < 1) throw input_error("budget must be at least 1");
    Rng rng(seed);
    Adversarial best;
    Polyline cur = start.size() > 0 ? start : greedy_random(g, r, seed).poly;
    if (cur.dim != g.dim()) throw input_error("start polyline and gauge dimensions differ");
    if (!is_self_contracted(cur, g).ok) throw input_error("start polyline is not self-contracted");
    double cur_ratio = ratio(cur);
    best.poly = cur;
    best.ratio = cur_ratio;
    unsigned restart = seed;
    for (int it = 0; it < budget; ++it) {
        ++best.evaluations;
        if (uniform(rng) < 0.05) {
            Polyline fresh = greedy_random(g, r, ++restart * 7919u + 1).poly;
            double fr = ratio(fresh);
            if (fr > cur_ratio) {
                cur = fresh;
                cur_ratio = fr;
            }
        } else {
            int v = std::uniform_int_distribution<int>(0, cur.size() - 1)(rng);
            double scale = length(cur) / std::max(1, cur.size() - 1);
            Polyline cand = cur;
            cand[v] += 0.1 * scale * gaussian_vec(rng, cur.dim);
            // only rows touching v can change
            bool ok = row_ok(g, cand, v);
            for (int k = v + 1; ok && k < cand.size(); ++k) ok = row_ok(g, cand, k);
            if (!ok) continue;
            double cr = ratio(cand);
            if (cr >= cur_ratio && std::isfinite(cr)) {
                cur = std::move(cand);
                cur_ratio = cr;
            }
        }
        if (cur_ratio > best.ratio) {
            best.ratio = cur_ratio;
            best.poly = cur;
        }
    }
    return best;
}

}  // namespace sc
