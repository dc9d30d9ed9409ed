#include "selfcontract/polyline.hpp"

#include <algorithm>
#include <cmath>

namespace sc {

Polyline::Polyline(int n, std::vector<Vec> p) : dim(n), pts(std::move(p))
{
    if (n < 1) throw input_error("polyline dimension must be positive");
    for (const Vec& v : pts)
        if (v.size() != n) throw input_error("polyline points must share the dimension");
}

Polyline Polyline::from_rows(const std::vector<std::vector<double>>& rows)
{
    if (rows.empty()) throw input_error("empty polyline");
    int n = static_cast<int>(rows[0].size());
    std::vector<Vec> p;
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n) throw input_error("ragged polyline rows");
        p.push_back(Eigen::Map<const Vec>(r.data(), n));
    }
    return Polyline(n, std::move(p));
}

Polyline Polyline::sub(const std::vector<int>& idx) const
{
    Polyline out;
    out.dim = dim;
    for (int i : idx) out.pts.push_back(pts.at(i));
    return out;
}

Subspace Subspace::span(const std::vector<Vec>& vs, int n)
{
    // modified Gram-Schmidt, twice for stability
    std::vector<Vec> q;
    for (const Vec& v0 : vs) {
        if (v0.size() != n) throw input_error("subspace vector of wrong dimension");
        Vec v = v0;
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& e : q) v -= v.dot(e) * e;
        if (v.norm() > 1e-10 * std::max(1.0, v0.norm())) q.push_back(v.normalized());
    }
    Subspace s;
    s.q_.resize(n, static_cast<int>(q.size()));
    for (size_t i = 0; i < q.size(); ++i) s.q_.col(i) = q[i];
    return s;
}

Subspace Subspace::full(int n)
{
    Subspace s;
    s.q_ = Mat::Identity(n, n);
    return s;
}

Subspace Subspace::complement() const
{
    int n = ambient();
    std::vector<Vec> vs;
    for (int j = 0; j < dim(); ++j) vs.push_back(q_.col(j));
    for (int i = 0; i < n; ++i) vs.push_back(Vec::Unit(n, i));
    Subspace all = span(vs, n);
    Subspace s;
    s.q_ = all.q_.rightCols(n - dim());
    return s;
}

namespace {

void require_same_dim(const Polyline& p, const Gauge& g)
{
    if (p.dim != g.dim()) throw input_error("polyline and gauge dimensions differ");
}

}  // namespace

double sc_tolerance(const Polyline& p, const Gauge& g, double rel)
{
    double diam = 0.0;
    for (int k = 0; k < p.size(); ++k)
        for (int j = 0; j < k; ++j) diam = std::max(diam, g(p[k] - p[j]));
    return rel * diam;
}

SCResult is_self_contracted(const Polyline& p, const Gauge& g, double rel_tol)
{
    require_same_dim(p, g);
    int r = p.size();
    // distances d[k][j] = ||A_k - A_j|| for j < k
    std::vector<std::vector<double>> d(r);
    double diam = 0.0;
    for (int k = 0; k < r; ++k) {
        d[k].resize(k);
        for (int j = 0; j < k; ++j) {
            d[k][j] = g(p[k] - p[j]);
            diam = std::max(diam, d[k][j]);
        }
    }
    double tol = rel_tol * diam;
    SCResult res;
    for (int k = 2; k < r; ++k) {
        // the first j whose distance exceeds some earlier one fixes the minimal witness
        double best = d[k][0];
        for (int j = 1; j < k; ++j) {
            if (d[k][j] > best + tol) {
                for (int i = 0; i < j; ++i)
                    if (d[k][j] > d[k][i] + tol) {
                        res.ok = false;
                        res.witness = {i + 1, j + 1, k + 1};
                        return res;
                    }
            }
            best = std::min(best, d[k][j]);
        }
    }
    return res;
}

SCResult is_self_contracted_naive(const Polyline& p, const Gauge& g, double rel_tol)
{
    require_same_dim(p, g);
    int r = p.size();
    double tol = sc_tolerance(p, g, rel_tol);
    SCResult res;
    for (int k = 0; k < r; ++k)
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < j; ++i)
                if (g(p[k] - p[j]) > g(p[k] - p[i]) + tol) {
                    res.ok = false;
                    res.witness = {i + 1, j + 1, k + 1};
                    return res;
                }
    return res;
}

double length(const Polyline& p) { return p.size() < 2 ? 0.0 : length(p, 0, p.size() - 1); }

double length(const Polyline& p, int first, int last)
{
    double s = 0.0;
    for (int i = first; i < last; ++i) s += (p[i + 1] - p[i]).norm();
    return s;
}

double projected_length(const Polyline& p, const Subspace& s)
{
    double t = 0.0;
    for (int i = 0; i + 1 < p.size(); ++i) t += (s.basis().transpose() * (p[i + 1] - p[i])).norm();
    return t;
}

double line_angle(const Vec& d, const Subspace& s)
{
    double len = d.norm();
    if (len == 0.0) return 0.0;
    double c = (s.basis().transpose() * d).norm() / len;
    return std::acos(std::clamp(c, 0.0, 1.0));
}

SegClass classify_segment(const Vec& A, const Vec& B, const Subspace& s, double eps)
{
    if ((B - A).norm() == 0.0) throw input_error("classify_segment needs A != B");
    return line_angle(B - A, s) <= eps ? SegClass::horizontal : SegClass::vertical;
}

double variation(const std::vector<double>& x)
{
    double s = 0.0;
    for (size_t i = 1; i < x.size(); ++i) s += std::abs(x[i] - x[i - 1]);
    return s;
}

std::vector<int> extract_alternating(const std::vector<double>& x)
{
    int r = static_cast<int>(x.size());
    std::vector<int> out;
    if (r == 0) return out;
    out.push_back(0);
    int dir = 0;  // sign of the current run
    for (int i = 1; i < r; ++i) {
        double inc = x[i] - x[i - 1];
        int s = inc > 0 ? 1 : (inc < 0 ? -1 : 0);
        if (s == 0) continue;
        if (dir != 0 && s != dir) out.push_back(i - 1);  // turning point
        dir = s;
    }
    if (out.back() != r - 1) out.push_back(r - 1);
    return out;
}

std::vector<int> extract_alternating(const Polyline& p, const Vec& axis)
{
    Vec u = axis.normalized();
    std::vector<double> x;
    for (const Vec& a : p.pts) x.push_back(a.dot(u));
    return extract_alternating(x);
}

double check_reverse_triangle(const Vec& A1, const Vec& A2, const Vec& A3, const Gauge&)
{
    double a = (A2 - A1).norm() + (A3 - A2).norm();
    double b = (A3 - A1).norm();
    if (b == 0.0) return a == 0.0 ? 1.0 : kInf;
    return a / b;
}

bool check_horiz_contraction(const Vec& A1, const Vec& A2, const Vec& A3, const Gauge&, double eps1)
{
    double a = (A2 - A1).norm();
    if (a == 0.0) throw input_error("check_horiz_contraction needs A1 != A2");
    double b = (A3 - A2).norm();
    if (b == 0.0) return true;
    double ang = angle_between(A1 - A2, A3 - A2);
    if (ang > 2 * eps1) return true;
    return b <= 0.75 * a + 1e-9;
}

double geometric_chain_bound(const Polyline& p, const Vec& axis, const Gauge& g, double eps1)
{
    int r = p.size();
    if (r < 2) return 0.0;
    SCResult sc = is_self_contracted(p, g);
    if (!sc.ok) throw lemma_error("chain is not self-contracted", sc.witness[1] - 1);
    Subspace x = Subspace::axis(axis);
    Vec u = axis.normalized();
    for (int k = 0; k + 1 < r; ++k) {
        Vec d = p[k + 1] - p[k];
        if (d.norm() == 0.0 || line_angle(d, x) > eps1)
            throw lemma_error("segment is not eps1-horizontal", k);
        if (k > 0 && (p[k] - p[k - 1]).dot(u) * d.dot(u) >= 0)
            throw lemma_error("projected increments do not alternate", k);
    }
    double a = (p[1] - p[0]).norm();
    for (int k = 1; k + 1 < r; ++k)
        if ((p[k + 1] - p[k]).norm() > 0.75 * (p[k] - p[k - 1]).norm() + 1e-9 * a)
            throw lemma_error("three-quarter contraction fails", k);
    double bound = 4.0 * a;
    if (length(p) > bound + 1e-9 * a) throw lemma_error("length exceeds 4|A1A2|", -1);
    return bound;
}

double vertical_variation_bound(const Polyline& p, const Vec& nu, double delta)
{
    int r = p.size();
    if (r < 2) return 0.0;
    Vec u = nu.normalized();
    Subspace perp = Subspace::axis(u).complement();
    for (int k = 1; k < r; ++k) {
        Vec d = p[k] - p[k - 1];
        if (d.norm() == 0.0) continue;  // zero steps count as horizontal
        if (line_angle(d, perp) > delta && !(d.dot(u) < 0))
            throw lemma_error("delta-vertical segment does not descend along nu", k);
    }
    double lx = 0.0;
    for (int k = 1; k < r; ++k) lx += std::abs((p[k] - p[k - 1]).dot(u));
    double bound = (p.back() - p.front()).norm() + 2.0 * projected_length(p, perp) * std::tan(delta);
    if (lx > bound + 1e-9 * std::max(1.0, bound))
        throw lemma_error("vertical variation bound fails", -1);
    return bound;
}

}  // namespace sc
