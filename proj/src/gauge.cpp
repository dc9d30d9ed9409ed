#include "selfcontract/gauge.hpp"
#include "selfcontract/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sc {

namespace {

void require_dim(const Gauge& g, const Vec& x)
{
    if (x.size() != g.dim())
        throw input_error("dimension mismatch: gauge is " + std::to_string(g.dim()) +
                          "-dimensional, vector has " + std::to_string(x.size()));
}

double lp(const Vec& x, double p)
{
    if (std::isinf(p)) return x.cwiseAbs().maxCoeff();
    if (p == 1.0) return x.cwiseAbs().sum();
    if (p == 2.0) return x.norm();
    double m = x.cwiseAbs().maxCoeff();
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (int i = 0; i < x.size(); ++i) s += std::pow(std::abs(x(i)) / m, p);
    return m * std::pow(s, 1.0 / p);
}

// iterate over all k-subsets of {0..m-1}; stops when fn returns false
template <class F>
void for_subsets(int m, int k, F fn)
{
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (!fn(idx)) return;
        int i = k - 1;
        while (i >= 0 && idx[i] == m - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

double binom(int m, int k)
{
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (m - k + i) / i;
    return r;
}

}  // namespace

double angle_between(const Vec& u, const Vec& v)
{
    double c = u.dot(v) / (u.norm() * v.norm());
    return std::acos(std::clamp(c, -1.0, 1.0));
}

Gauge Gauge::euclidean(int n)
{
    if (n < 1) throw input_error("dimension must be positive");
    Gauge g;
    g.n_ = n;
    g.kind_ = Kind::euclidean;
    g.p_ = 2.0;
    return g;
}

Gauge Gauge::pnorm(int n, double p)
{
    if (n < 1) throw input_error("dimension must be positive");
    if (!(p >= 1.0)) throw input_error("p-norm needs p >= 1");
    Gauge g;
    g.n_ = n;
    g.kind_ = Kind::pnorm;
    g.p_ = p;
    if (std::isinf(p)) {
        // facet order e1, -e1, e2, -e2, ...
        g.facets_ = Mat::Zero(2 * n, n);
        for (int i = 0; i < n; ++i) {
            g.facets_(2 * i, i) = 1.0;
            g.facets_(2 * i + 1, i) = -1.0;
        }
    } else if (p == 1.0 && n <= 12) {
        int m = 1 << n;
        g.facets_.resize(m, n);
        for (int s = 0; s < m; ++s)
            for (int i = 0; i < n; ++i) g.facets_(s, i) = (s >> i & 1) ? -1.0 : 1.0;
    }
    g.finish_radii();
    return g;
}

Gauge Gauge::polytope(const Mat& a)
{
    if (a.rows() == 0 || a.cols() == 0) throw input_error("polytope needs halfspaces");
    int n = static_cast<int>(a.cols());
    Eigen::FullPivLU<Mat> lu(a);
    if (lu.rank() < n) throw input_error("polytope halfspaces do not span the space");
    // the a_i must positively span R^n, otherwise the ball is unbounded
    Rng rng(12345);
    for (int t = 0; t < 2000 + 2 * n; ++t) {
        Vec u;
        if (t < 2 * n) {
            u = Vec::Zero(n);
            u(t / 2) = (t % 2) ? -1.0 : 1.0;
        } else {
            u = random_unit(rng, n);
        }
        if ((a * u).maxCoeff() <= 1e-12) throw input_error("polytope ball is unbounded");
    }
    Gauge g;
    g.n_ = n;
    g.kind_ = Kind::polytope;
    g.facets_ = a;
    // symmetric iff the facet set is closed under negation
    g.symmetric_ = true;
    for (int i = 0; i < a.rows() && g.symmetric_; ++i) {
        bool found = false;
        for (int j = 0; j < a.rows() && !found; ++j)
            found = (a.row(i) + a.row(j)).norm() <= 1e-12 * (1.0 + a.row(i).norm());
        g.symmetric_ = found;
    }
    g.finish_radii();
    return g;
}

Gauge Gauge::symmetric_polytope(const Mat& a)
{
    // mirrors that are already present are not added twice
    std::vector<Vec> rows;
    auto has = [&](const Vec& v) {
        for (const Vec& w : rows)
            if ((w - v).norm() <= 1e-12 * (1.0 + v.norm())) return true;
        return false;
    };
    for (int i = 0; i < a.rows(); ++i) {
        Vec v = a.row(i).transpose();
        if (!has(v)) rows.push_back(v);
        if (!has(-v)) rows.push_back(-v);
    }
    Mat b(rows.size(), a.cols());
    for (size_t i = 0; i < rows.size(); ++i) b.row(i) = rows[i].transpose();
    return polytope(b);
}

Gauge Gauge::cylinder(const Gauge& base, double rho)
{
    if (!(rho > 0)) throw input_error("cylinder scale must be positive");
    Gauge g;
    int n = base.dim() + 1;
    g.n_ = n;
    g.kind_ = Kind::cylinder;
    g.symmetric_ = base.symmetric();
    g.base_ = std::make_shared<const Gauge>(base);
    g.rho_ = rho;
    if (base.is_polyhedral()) {
        // side facets first, then top and bottom caps
        int m = static_cast<int>(base.facets().rows());
        g.facets_ = Mat::Zero(m + 2, n);
        g.facets_.topLeftCorner(m, n - 1) = rho * base.facets();
        g.facets_(m, n - 1) = 1.0;
        g.facets_(m + 1, n - 1) = -1.0;
    }
    double bi = base.inradius() / rho, bc = base.circumradius() / rho;
    g.inradius_ = std::min(bi, 1.0);
    g.circumradius_ = std::sqrt(bc * bc + 1.0);
    return g;
}

Gauge Gauge::custom(int n, std::function<double(const Vec&)> f, bool symmetric)
{
    if (n < 1) throw input_error("dimension must be positive");
    Gauge g;
    g.n_ = n;
    g.kind_ = Kind::custom;
    g.f_ = std::move(f);
    g.symmetric_ = symmetric;
    g.finish_radii();
    return g;
}

void Gauge::finish_radii()
{
    switch (kind_) {
    case Kind::euclidean:
        inradius_ = circumradius_ = 1.0;
        return;
    case Kind::pnorm: {
        double e = std::pow(static_cast<double>(n_), 0.5 - (std::isinf(p_) ? 0.0 : 1.0 / p_));
        inradius_ = std::min(1.0, e);
        circumradius_ = std::max(1.0, e);
        return;
    }
    case Kind::polytope: {
        inradius_ = kInf;
        for (int i = 0; i < facets_.rows(); ++i)
            inradius_ = std::min(inradius_, 1.0 / facets_.row(i).norm());
        int m = static_cast<int>(facets_.rows());
        circumradius_ = 0.0;
        if (binom(m, n_) <= 3e5) {
            Vec ones = Vec::Ones(n_);
            for_subsets(m, n_, [&](const std::vector<int>& s) {
                Mat A(n_, n_);
                for (int i = 0; i < n_; ++i) A.row(i) = facets_.row(s[i]);
                Eigen::FullPivLU<Mat> lu(A);
                if (lu.rank() < n_) return true;
                Vec v = lu.solve(ones);
                if ((facets_ * v).maxCoeff() <= 1.0 + 1e-9)
                    circumradius_ = std::max(circumradius_, v.norm());
                return true;
            });
        } else {
            Rng rng(777);
            for (int t = 0; t < 20000; ++t) {
                Vec u = random_unit(rng, n_);
                circumradius_ = std::max(circumradius_, 1.0 / (*this)(u));
            }
        }
        return;
    }
    case Kind::custom: {
        Rng rng(777);
        inradius_ = kInf;
        circumradius_ = 0.0;
        for (int t = 0; t < 20000; ++t) {
            Vec u = random_unit(rng, n_);
            double r = 1.0 / (*this)(u);
            inradius_ = std::min(inradius_, r);
            circumradius_ = std::max(circumradius_, r);
        }
        return;
    }
    case Kind::cylinder:
        return;  // set by the factory
    }
}

double Gauge::diameter() const
{
    if (symmetric_) return 2.0 * circumradius_;
    // asymmetric: widest pair of boundary samples (vertices for polytopes)
    std::vector<Vec> pts;
    if (kind_ == Kind::polytope) {
        int m = static_cast<int>(facets_.rows());
        Vec ones = Vec::Ones(n_);
        if (binom(m, n_) <= 3e5) {
            for_subsets(m, n_, [&](const std::vector<int>& s) {
                Mat A(n_, n_);
                for (int i = 0; i < n_; ++i) A.row(i) = facets_.row(s[i]);
                Eigen::FullPivLU<Mat> lu(A);
                if (lu.rank() < n_) return true;
                Vec v = lu.solve(ones);
                if ((facets_ * v).maxCoeff() <= 1.0 + 1e-9) pts.push_back(v);
                return true;
            });
        }
    }
    if (pts.empty()) {
        Rng rng(778);
        for (int t = 0; t < 3000; ++t) {
            Vec u = random_unit(rng, n_);
            pts.push_back(u / (*this)(u));
        }
    }
    double d = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, (pts[i] - pts[j]).norm());
    return d;
}

double Gauge::operator()(const Vec& x) const
{
    require_dim(*this, x);
    switch (kind_) {
    case Kind::euclidean: return x.norm();
    case Kind::pnorm: return lp(x, p_);
    case Kind::polytope: return std::max(0.0, (facets_ * x).maxCoeff());
    case Kind::cylinder: {
        double b = rho_ * (*base_)(x.head(n_ - 1));
        return std::max(b, std::abs(x(n_ - 1)));
    }
    case Kind::custom: return f_(x);
    }
    return 0.0;
}

std::vector<int> Gauge::active_facets(const Vec& x, double tol) const
{
    std::vector<int> out;
    for (int i = 0; i < facets_.rows(); ++i)
        if (facets_.row(i).dot(x) >= 1.0 - tol) out.push_back(i);
    return out;
}

std::vector<Vec> Gauge::smooth_normals(const Vec& x) const
{
    std::vector<Vec> out;
    if (kind_ == Kind::euclidean) {
        out.push_back(x.normalized());
    } else if (kind_ == Kind::pnorm && p_ == 1.0) {
        // large n without stored facets: sign vectors, both signs on zero coordinates
        std::vector<int> zero;
        Vec s(n_);
        for (int i = 0; i < n_; ++i) {
            if (std::abs(x(i)) <= 1e-9) {
                zero.push_back(i);
                s(i) = 1.0;
            } else {
                s(i) = x(i) > 0 ? 1.0 : -1.0;
            }
        }
        int z = std::min<int>(static_cast<int>(zero.size()), 10);
        for (int mask = 0; mask < (1 << z); ++mask) {
            Vec t = s;
            for (int b = 0; b < z; ++b)
                if (mask >> b & 1) t(zero[b]) = -1.0;
            out.push_back(t / std::sqrt(static_cast<double>(n_)));
        }
    } else if (kind_ == Kind::pnorm) {
        Vec gr(n_);
        for (int i = 0; i < n_; ++i) {
            double a = std::abs(x(i));
            gr(i) = (x(i) > 0 ? 1.0 : (x(i) < 0 ? -1.0 : 0.0)) * std::pow(a, p_ - 1.0);
        }
        out.push_back(gr.normalized());
    } else if (kind_ == Kind::cylinder) {
        Vec xb = x.head(n_ - 1);
        double b = rho_ * (*base_)(xb);
        double t = x(n_ - 1);
        if (std::abs(t) >= 1.0 - 1e-9) {
            Vec e = Vec::Zero(n_);
            e(n_ - 1) = t > 0 ? 1.0 : -1.0;
            out.push_back(e);
        }
        if (b >= 1.0 - 1e-9) {
            for (const Vec& v : base_->boundary_point(xb).normals) {
                Vec w = Vec::Zero(n_);
                w.head(n_ - 1) = v;
                out.push_back(w);
            }
        }
    } else {
        // numerical gradient of the custom functional
        Vec gr(n_);
        double h = 1e-6;
        for (int i = 0; i < n_; ++i) {
            Vec a = x, b = x;
            a(i) += h;
            b(i) -= h;
            gr(i) = ((*this)(a) - (*this)(b)) / (2 * h);
        }
        out.push_back(gr.normalized());
    }
    return out;
}

BoundaryPoint Gauge::boundary_point(const Vec& direction) const
{
    require_dim(*this, direction);
    double v = (*this)(direction);
    if (direction.norm() == 0.0 || !(v > 0)) throw input_error("zero direction");
    BoundaryPoint bp;
    bp.point = direction / v;
    if (is_polyhedral()) {
        for (int i : active_facets(bp.point)) bp.normals.push_back(facets_.row(i).transpose().normalized());
        if (bp.normals.empty()) {
            // fall back to the closest facet (rounding far beyond tolerance)
            Eigen::Index k;
            (facets_ * bp.point).maxCoeff(&k);
            bp.normals.push_back(facets_.row(k).transpose().normalized());
        }
    } else {
        bp.normals = smooth_normals(bp.point);
    }
    return bp;
}

std::string Gauge::describe() const
{
    std::ostringstream os;
    switch (kind_) {
    case Kind::euclidean: os << "euclidean"; break;
    case Kind::pnorm:
        if (std::isinf(p_)) os << "max-norm";
        else os << "p=" << p_;
        break;
    case Kind::polytope: os << "polytope(" << facets_.rows() << " facets)"; break;
    case Kind::cylinder: os << "cylinder[" << base_->describe() << "]"; break;
    case Kind::custom: os << "custom"; break;
    }
    os << " in R^" << n_;
    return os.str();
}

bool in_ball(const Gauge& g, const Vec& x) { return g(x) <= 1.0; }

double minkowski_oracle(const std::function<bool(const Vec&)>& inside, const Vec& x)
{
    if (x.norm() == 0.0) return 0.0;
    // x/t is inside exactly when t >= gauge(x): bracket that t, then bisect
    double lo = 1.0, hi = 1.0;
    if (inside(x)) {
        while (inside(x / lo)) {
            hi = lo;
            lo *= 0.5;
            if (lo == 0.0) return 0.0;
        }
    } else {
        while (!inside(x / hi)) {
            lo = hi;
            hi *= 2.0;
            if (!std::isfinite(hi)) throw input_error("minkowski_oracle: set is not absorbing");
        }
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (inside(x / mid)) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

std::optional<Vec> mediatrix_point(const Gauge& g, const Vec& A, const Vec& B,
                                   const Vec& origin, const Vec& dir)
{
    double ab = g(A - B);
    if ((A - B).norm() == 0.0) throw input_error("mediatrix needs A != B");
    if (dir.norm() == 0.0) throw input_error("zero ray direction");
    Vec u = dir.normalized();
    auto f = [&](double t) {
        Vec z = origin + t * u;
        return g(A - z) - g(B - z);
    };
    double tol = 1e-10 * ab;
    double f0 = f(0.0);
    if (std::abs(f0) <= tol) return Vec(origin);
    double scale = (A - B).norm();
    double lo = 0.0, hi = 1e-3 * scale;
    double fhi = f(hi);
    while ((fhi > 0) == (f0 > 0) && std::abs(fhi) > tol) {
        if (hi > 1e6 * scale) return std::nullopt;
        lo = hi;
        hi *= 2.0;
        fhi = f(hi);
    }
    for (int it = 0; it < 300; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (std::abs(fm) <= tol && hi - lo < 1e-13 * scale) {
            lo = hi = mid;
            break;
        }
        if ((fm > 0) == (f0 > 0)) lo = mid;
        else hi = mid;
    }
    return Vec(origin + 0.5 * (lo + hi) * u);
}

namespace {

// exit point of the ray P + s w (P on the sphere, w pointing inward)
Vec ray_exit(const Gauge& g, const Vec& P, const Vec& w)
{
    double hi = 3.0 * g.circumradius() + 1.0, lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (g(P + mid * w) <= 1.0) lo = mid;
        else hi = mid;
    }
    return P + lo * w;
}

}  // namespace

double chord_gap(const Gauge& g, double alpha, int sample_count, unsigned seed)
{
    if (!(alpha > 0 && alpha < kPi / 2)) throw input_error("chord_gap: alpha must lie in (0, pi/2)");
    if (sample_count < 1) throw input_error("chord_gap: sample_count must be positive");
    int n = g.dim();
    Rng rng(seed);
    const int nth = 8;
    double best = kInf;
    for (int s = 0; s < sample_count; ++s) {
        Vec u;
        if (n == 2) {
            double a = 2 * kPi * (s + 0.5) / sample_count;
            u = Vec(2);
            u << std::cos(a), std::sin(a);
        } else {
            u = random_unit(rng, n);
        }
        Vec P = u / g(u);
        Vec inward = -P.normalized();
        // angles concentrate at alpha, where the infimum is attained for round balls
        for (int k = 0; k <= nth; ++k) {
            double th = alpha * (1.0 - static_cast<double>(k * k) / (nth * nth));
            std::vector<Vec> tang;
            if (n == 2) {
                Vec t(2);
                t << -inward(1), inward(0);
                tang = {t, -t};
            } else if (n > 1) {
                Vec t = random_unit(rng, n);
                t -= t.dot(inward) * inward;
                if (t.norm() < 1e-9) continue;
                t.normalize();
                tang = {t, -t};
            }
            if (n == 1) tang = {Vec::Zero(1)};
            for (const Vec& t : tang) {
                Vec w = std::cos(th) * inward + std::sin(th) * t;
                Vec Q = ray_exit(g, P, w);
                best = std::min(best, (Q - P).norm());
            }
        }
    }
    return best;
}

}  // namespace sc
