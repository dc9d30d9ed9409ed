#include "selfcontract/certificate.hpp"

#include <cmath>
#include <sstream>

namespace sc {

Polyline lift_points(const Polyline& p)
{
    if (p.size() < 2) throw input_error("lift needs at least two points");
    double lam = (p.back() - p.front()).norm();
    if (lam == 0.0) throw input_error("A_1 = A_r: the lift height is undefined");
    int n = p.dim;
    std::vector<Vec> w;
    for (const Vec& a : p.pts) {
        Vec v(n + 1);
        v.head(n) = a - p.back();
        v(n) = lam;
        w.push_back(v);
    }
    w.push_back(Vec::Zero(n + 1));
    return Polyline(n + 1, std::move(w));
}

Lifted lift_to_cylinder(const Gauge& g, const Polyline& p)
{
    if (p.dim != g.dim()) throw input_error("polyline and gauge dimensions differ");
    Polyline w = lift_points(p);
    // base ball scaled to inradius 1 so the Euclidean height dominates the base
    double rho = g.inradius();
    Gauge cyl = Gauge::cylinder(g, rho);
    SCResult s = is_self_contracted(w, cyl);
    if (!s.ok) throw lemma_error("lifted polyline is not self-contracted", s.witness[1] - 1);
    double lam = w[0](p.dim);
    for (int j = 0; j + 1 < w.size(); ++j)
        if (rho * g(w[j].head(p.dim)) > lam * (1 + 1e-12))
            throw lemma_error("lifted point outside the top cone", j);
    return {cyl, w, rho};
}

// ---- ledger ---------------------------------------------------------------

int Ledger::basis(const Mat& b)
{
    // small certificates reuse identical bases
    for (size_t i = 0; i < c_.bases.size(); ++i)
        if (c_.bases[i].rows() == b.rows() && c_.bases[i].cols() == b.cols() && c_.bases[i] == b)
            return static_cast<int>(i);
    c_.bases.push_back(b);
    return static_cast<int>(c_.bases.size()) - 1;
}

double Ledger::value(const Quantity& q) const
{
    const Polyline& w = c_.working;
    double s = 0.0;
    for (size_t t = 0; t + 1 < q.idx.size(); ++t) {
        Vec d = w[q.idx[t + 1]] - w[q.idx[t]];
        s += q.basis < 0 ? d.norm() : (c_.bases[q.basis].transpose() * d).norm();
    }
    return s;
}

int Ledger::add(Spec s)
{
    CertStep st;
    st.id = size();
    st.kind = std::move(s.kind);
    st.tag = std::move(s.tag);
    st.first = s.first;
    st.last = s.last;
    st.sub_indices = std::move(s.sub_indices);
    st.constants_used = std::move(s.constants);
    st.supports = s.supports;
    double lhs = 0, local = 0, comp = 0;
    for (const Term& t : s.lhs) lhs += t.coef * value(t.q);
    for (const Term& t : s.rhs) {
        if (t.ref >= 0) {
            if (t.ref >= st.id) throw std::logic_error("forward reference in certificate");
            if (t.coef < 0) throw std::logic_error("negative coefficient on a referenced bound");
            local += t.coef * lhs_of(t.ref);
            comp += t.coef * rhs_of(t.ref);
            st.children.push_back(t.ref);
        } else {
            double v = t.coef * value(t.q);
            local += v;
            comp += v;
        }
    }
    for (int sp : s.supports) st.children.push_back(sp);
    st.lhs = lhs;
    st.rhs = comp;
    st.lhs_terms = std::move(s.lhs);
    st.rhs_terms = std::move(s.rhs);
    if (!(lhs <= local + tol_))
        throw lemma_error(st.tag + ": " + std::to_string(lhs) + " > " + std::to_string(local), st.first);
    for (int ch : st.children)
        if (c_.steps[ch].parent < 0) c_.steps[ch].parent = st.id;
    c_.steps.push_back(std::move(st));
    return c_.steps.back().id;
}

void Ledger::truncate(int n)
{
    c_.steps.resize(n);
    for (auto& st : c_.steps)
        if (st.parent >= n) st.parent = -1;
}

// ---- independent checker --------------------------------------------------

namespace {

double eval(const Polyline& w, const std::vector<Mat>& bases, const Quantity& q, bool& ok)
{
    double s = 0.0;
    for (size_t t = 0; t < q.idx.size(); ++t)
        if (q.idx[t] < 0 || q.idx[t] >= w.size()) {
            ok = false;
            return 0.0;
        }
    if (q.basis >= static_cast<int>(bases.size())) {
        ok = false;
        return 0.0;
    }
    for (size_t t = 1; t < q.idx.size(); ++t) {
        const Vec& a = w[q.idx[t - 1]];
        const Vec& b = w[q.idx[t]];
        if (q.basis < 0) {
            s += (b - a).norm();
        } else {
            const Mat& B = bases[q.basis];
            if (B.rows() != w.dim) {
                ok = false;
                return 0.0;
            }
            s += (B.transpose() * (b - a)).norm();
        }
    }
    return s;
}

std::string path_to(const Certificate& c, int id)
{
    std::vector<int> chain;
    for (int k = id; k >= 0 && chain.size() <= c.steps.size(); k = c.steps[k].parent) chain.push_back(k);
    std::ostringstream os;
    for (size_t i = chain.size(); i-- > 0;) os << chain[i] << (i ? "/" : "");
    return os.str();
}

}  // namespace

CheckResult check_certificate(const Certificate& c, double tol)
{
    if (tol < 0) tol = c.tol;
    CheckResult res;
    auto fail = [&](int id, std::string why) {
        res.ok = false;
        res.step = id;
        res.path = id >= 0 ? path_to(c, id) : "";
        res.why = std::move(why);
        return res;
    };

    // the working polyline must be the one the mode prescribes
    const Polyline& A = c.original;
    if (A.size() < 2) return fail(-1, "polyline too short");
    double ell = length(A);
    double d1r = (A.back() - A.front()).norm();
    double scale = std::max(ell, d1r);
    double tabs = tol * scale;
    if (std::abs(ell - c.ell) > tabs || std::abs(d1r - c.dist1r) > tabs) return fail(-1, "root claim values do not match the polyline");
    Polyline W;
    if (c.mode == "easy" || c.mode == "window") {
        W = A;
    } else if (c.mode == "general") {
        W = lift_points(A);
    } else {
        return fail(-1, "unknown mode");
    }
    if (W.size() != c.working.size() || W.dim != c.working.dim) return fail(-1, "working polyline mismatch");
    for (int j = 0; j < W.size(); ++j)
        if ((W[j] - c.working[j]).norm() > 1e-12 * std::max(1.0, scale)) return fail(-1, "working polyline mismatch");

    int m = static_cast<int>(c.steps.size());
    std::vector<double> lhs(m), rhs(m);
    for (int i = 0; i < m; ++i) {
        const CertStep& st = c.steps[i];
        if (st.id != i) return fail(i, "step ids are not sequential");
        bool ok = true;
        double l = 0, local = 0, comp = 0;
        for (const Term& t : st.lhs_terms) {
            if (t.ref >= 0) return fail(i, "reference on the left-hand side");
            l += t.coef * eval(W, c.bases, t.q, ok);
        }
        for (const Term& t : st.rhs_terms) {
            if (t.ref >= 0) {
                if (t.ref >= i) return fail(i, "forward reference");
                if (t.coef < 0) return fail(i, "negative coefficient on a referenced bound");
                local += t.coef * lhs[t.ref];
                comp += t.coef * rhs[t.ref];
            } else {
                double v = t.coef * eval(W, c.bases, t.q, ok);
                local += v;
                comp += v;
            }
        }
        for (int s : st.supports)
            if (s < 0 || s >= i) return fail(i, "support is not an earlier step");
        if (!ok) return fail(i, "quantity indices out of range");
        lhs[i] = l;
        rhs[i] = comp;
        // stored values must match the recomputation; large composed bounds get
        // a tolerance relative to their own size
        double tl = tol * std::max(scale, std::abs(l));
        double tr = tol * std::max(scale, std::abs(comp));
        if (std::abs(l - st.lhs) > tl) return fail(i, "stored lhs does not match recomputation");
        if (std::abs(comp - st.rhs) > tr) return fail(i, "stored rhs does not match recomputation");
        if (!(l <= local + tabs)) return fail(i, "inequality fails: " + std::to_string(l) + " > " + std::to_string(local));
    }

    if (c.root < 0 || c.root >= m) return fail(-1, "missing root step");
    const CertStep& root = c.steps[c.root];
    if (std::abs(lhs[c.root] - ell) > tabs) return fail(c.root, "root lhs is not the polyline length");
    double C = rhs[c.root] / d1r;
    if (std::abs(C - c.effective_C) > tol * std::max(1.0, std::abs(C))) return fail(c.root, "effective constant mismatch");
    if (!(ell <= C * d1r + tabs)) return fail(c.root, "root claim fails");
    (void)root;
    return res;
}

}  // namespace sc
