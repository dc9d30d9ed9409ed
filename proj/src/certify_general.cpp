#include "selfcontract/certify.hpp"

#include <algorithm>
#include <cmath>

namespace sc {

namespace {

struct Engine {
    Ledger& L;
    const Partition& part;
    const Constants& k;
    double cd;
    int m;              // ambient dimension of the working polyline
    int budget;
    int min_level = 1;  // windows below this level go direct
    bool partial = false;

    const Polyline& W() const { return L.work(); }

    int identity(const std::vector<int>& S, int dref)
    {
        return L.add({"recurse", "segment-identity", S.front(), S.back(), S, {},
                      {Ledger::q(1, Ledger::len(S))}, {Ledger::r(1, dref)}, {}});
    }

    int direct(const std::vector<int>& S, int dref, const std::string& why)
    {
        double d = L.lhs_of(dref);
        double len = L.value(Ledger::len(S));
        double ratio = d > 0 ? len / d : 1.0;
        ratio = std::max(1.0, ratio) * (1 + 1e-12);
        (void)why;
        return L.add({"recurse", "fallback-direct", S.front(), S.back(), S, {{"measured_ratio", ratio}},
                      {Ledger::q(1, Ledger::len(S))}, {Ledger::r(ratio, dref)}, {}});
    }

    // the window S (increasing indices) with cones tuple[0..] = (alpha_i, ..., alpha_m);
    // its last point and the later anchors are the cone apexes
    int window(const std::vector<int>& S, const std::vector<int>& tuple, int dref)
    {
        if (S.size() <= 2) return identity(S, dref);
        int level = m - static_cast<int>(tuple.size()) + 1;
        if (L.size() > budget || level < min_level) {
            partial = true;
            return direct(S, dref, "budget");
        }
        int mark = L.size();
        try {
            return level == 1 ? base(S, tuple, dref) : inductive(S, tuple, dref);
        } catch (const lemma_error& e) {
            L.truncate(mark);
            return direct(S, dref, e.what());
        }
    }

    std::vector<Vec> axes_of(const std::vector<int>& tuple, size_t from) const
    {
        std::vector<Vec> ax;
        for (size_t j = from; j < tuple.size(); ++j) ax.push_back(part.normal(tuple[j]));
        return ax;
    }

    // largest angle with nu^perp among segments that do not descend along nu
    double descent_slack(const std::vector<int>& T, const Vec& nu) const
    {
        double worst = 0;
        for (size_t t = 0; t + 1 < T.size(); ++t) {
            Vec d = W()[T[t + 1]] - W()[T[t]];
            double len = d.norm();
            if (len == 0.0) continue;
            double s = d.dot(nu);
            if (s < 0) continue;
            worst = std::max(worst, std::asin(std::min(1.0, s / len)));
        }
        return worst;
    }

    double common_slack(const std::vector<int>& T, const std::vector<Vec>& axes) const
    {
        double d = 0;
        for (const Vec& a : axes) d = std::max(d, descent_slack(T, a));
        if (d >= kPi / 2 - 1e-9) throw lemma_error("a vertical segment climbs along a cone normal", T.front());
        return d;
    }

    int inductive(const std::vector<int>& S, const std::vector<int>& tuple, int dref)
    {
        std::vector<Vec> axes = axes_of(tuple, 0);
        Subspace span = Subspace::span(axes, m);
        if (span.dim() != static_cast<int>(axes.size())) throw lemma_error("cone normals are dependent", S.front());
        Subspace pi = span.complement();

        // Step 1: eps0-horizontal blocks, each split into cones of its last point
        BlockSplit bs = horizontal_block_split(W(), S, pi, k.eps0);
        if (bs.blocks.empty()) return residual(S, axes, pi, dref);
        double cprime = 1.0;
        std::vector<int> block_tops, rev;
        for (auto [q, kk] : bs.blocks) {
            int a = S[q], b = S[kk];
            int bd = L.add({"recurse", "block-chord", a, b, {a, b}, {}, {Ledger::q(1, Ledger::dist(a, b))},
                            {Ledger::q(1, Ledger::dist(a, b))}, {}});
            std::vector<int> B(S.begin() + q, S.begin() + kk + 1);
            int top = B.size() <= 2 ? identity(B, bd) : cones(B, tuple, bd);
            block_tops.push_back(top);
            double den = L.rhs_of(bd);
            if (den > 0) cprime = std::max(cprime, L.rhs_of(top) / den);
            if (q > 0) {
                int h = S[q - 1];
                rev.push_back(L.add({"reverse_triangle", "reverse-triangle", h, b, {h, a, b}, {{"C_rev", 1 + cd}},
                                     {Ledger::q(1, Ledger::dist(h, a)), Ledger::q(1, Ledger::dist(a, b))},
                                     {Ledger::q(1 + cd, Ledger::dist(h, b))}, {}}));
            }
        }
        std::vector<int> lam, lamt;
        for (int t : bs.lambda) lam.push_back(S[t]);
        for (int t : bs.lambda_tilde) lamt.push_back(S[t]);

        // Step 4 on the trimmed residual, then Step 3 back up to S
        int s4 = residual(lamt, axes, pi, dref);
        int s3b = L.add({"reverse_triangle", "trimmed-residual", S.front(), S.back(), lam, {{"C_rev", 1 + cd}},
                         {Ledger::q(1, Ledger::len(lam))}, {Ledger::r(1 + cd, s4)}, rev});
        return L.add({"cone_split", "block-assembly", S.front(), S.back(), S, {{"C_prime", cprime}},
                      {Ledger::q(1, Ledger::len(S))}, {Ledger::r(cprime, s3b)}, block_tops});
    }

    // Step 2: cones around the block's last point, recursing one level down
    int cones(const std::vector<int>& B, const std::vector<int>& tuple, int bd)
    {
        int apex = B.back();
        ConeSplit cs = cone_split(B, [&](int a, int j) { return part.classify(W()[a], W()[j]); });
        std::vector<int> supports;
        std::vector<Term> rhs;
        double cbar = std::max(cd, 1.0);
        for (size_t t = 0; t + 1 < B.size(); ++t) {
            int a = B[t], b = B[t + 1];
            if (cs.seg_case[t] == 1) {
                int sj = B[cs.s_of[t]];
                supports.push_back(L.add({"crossing_segment", "return-segment", a, b, {sj, a, b}, {{"C_d", cd}},
                                          {Ledger::q(1, Ledger::dist(a, b))}, {Ledger::q(cd, Ledger::dist(sj, b))},
                                          {}}));
            } else if (cs.seg_case[t] == 2) {
                rhs.push_back(Ledger::r(1, L.add({"crossing_segment", "first-entry-segment", a, b, {a, b},
                                                  {{"C_d", cd}}, {Ledger::q(1, Ledger::dist(a, b))},
                                                  {Ledger::r(cd, bd)}, {}})));
            }
        }
        for (int c : cs.cones) {
            std::vector<int> C;
            for (int t : cs.members(c)) C.push_back(B[t]);
            int cD = L.add({"recurse", "cone-scale", C.front(), apex, {C.front(), apex}, {{"C_d", cd}},
                            {Ledger::q(1, Ledger::dist(C.front(), apex))}, {Ledger::r(cd, bd)}, {}});
            std::vector<int> next{c};
            next.insert(next.end(), tuple.begin(), tuple.end());
            int top;
            if (C.size() <= 2)
                top = identity(C, cD);
            else if (is_admissible(part, next, k.xi))
                top = window(C, next, cD);
            else
                top = direct(C, cD, "inadmissible cone");
            rhs.push_back(Ledger::r(cbar, top));
        }
        return L.add({"cone_split", "cone-decomposition", B.front(), B.back(), B, {{"C_bar1", cbar}},
                      {Ledger::q(1, Ledger::len(B))}, rhs, supports});
    }

    // Step 4: the trimmed residual is vertical after its first segment
    int residual(const std::vector<int>& T, const std::vector<Vec>& axes, const Subspace& pi, int dref)
    {
        if (T.size() <= 2) return identity(T, dref);
        for (size_t t = 1; t + 1 < T.size(); ++t)
            if (line_angle(W()[T[t + 1]] - W()[T[t]], pi) <= k.eps0)
                throw lemma_error("horizontal segment in the trimmed residual", T[t]);
        int s = static_cast<int>(axes.size());
        double delta = common_slack(T, axes);
        double tn = std::tan(delta), cx = k.c_xi, se = std::sin(k.eps0);
        double cls = 2 * cx * tn;
        if (!(cls < 1.0 / (2 * s))) throw lemma_error("linear system coefficient too large", T.front());
        double kappa = 4 * s * cx * tn / se;
        if (!(kappa <= 0.5)) throw lemma_error("single-slot coefficient too large", T.front());

        int f = T.front(), l = T.back();
        int bpi = L.basis(pi);
        int bperp = L.basis(Subspace::span(axes, m));
        std::vector<int> bx, bxp;
        for (const Vec& a : axes) {
            Subspace ax = Subspace::axis(a);
            bx.push_back(L.basis(ax));
            bxp.push_back(L.basis(ax.complement()));
        }
        std::vector<Term> sumx;
        for (int b : bx) sumx.push_back(Ledger::q(1, Ledger::plen(T, b)));
        auto scaled = [&](double c) {
            std::vector<Term> v = sumx;
            for (auto& t : v) t.coef = c;
            return v;
        };

        int s4a = L.add({"projection_bound", "vertical-residual", f, l, T, {{"1/sin_eps0", 1 / se}},
                         {Ledger::q(1, Ledger::plen(T, bpi))},
                         {Ledger::q(1, Ledger::dist(T[0], T[1])), Ledger::q(1 / se, Ledger::plen(T, bperp))}, {}});
        int s4b = L.add({"crossing_segment", "first-residual-segment", T[0], T[1], {T[0], T[1]}, {{"C_d", cd}},
                         {Ledger::q(1, Ledger::dist(T[0], T[1]))}, {Ledger::r(cd, dref)}, {}});
        std::vector<int> vert;
        for (int j = 0; j < s; ++j)
            vert.push_back(L.add({"vertical_sum", "descending-axis", f, l, T, {{"tan_delta", tn}},
                                  {Ledger::q(1, Ledger::plen(T, bx[j]))},
                                  {Ledger::r(1, dref), Ledger::q(2 * tn, Ledger::plen(T, bxp[j]))}, {}}));
        int s4d = L.add({"projection_bound", "frame-domination", f, l, T, {{"C_xi", cx}},
                         {Ledger::q(1, Ledger::plen(T, bperp))}, scaled(cx), {}});
        std::vector<int> prem;
        for (int j = 0; j < s; ++j) {
            std::vector<Term> rhs{Ledger::r(1, dref), Ledger::q(2 * tn, Ledger::plen(T, bpi))};
            for (const Term& t : scaled(cls)) rhs.push_back(t);
            prem.push_back(L.add({"linear_system", "linear-system-premise", f, l, T, {{"C", cls}},
                                  {Ledger::q(1, Ledger::plen(T, bx[j]))}, rhs, {vert[j], s4d}}));
        }
        int s4e = L.add({"linear_system", "linear-system-sum", f, l, T, {{"slots", double(s)}}, sumx,
                         {Ledger::r(2.0 * s, dref), Ledger::q(4.0 * s * tn, Ledger::plen(T, bpi))}, prem});
        int s4f = L.add({"projection_bound", "frame-domination-resolved", f, l, T, {{"C_xi", cx}},
                         {Ledger::q(1, Ledger::plen(T, bperp))}, {Ledger::r(cx, s4e)}, {s4d}});
        double cpi = 2 * cd + 4.0 * s * cx / se;
        int s4g = L.add({"linear_system", "single-slot-resolution", f, l, T, {{"kappa", kappa}},
                         {Ledger::q(1, Ledger::plen(T, bpi))}, {Ledger::r(cpi, dref)}, {s4a, s4b, s4f}});
        int s4h = L.add({"projection_bound", "frame-domination-resolved", f, l, T, {{"C_xi", cx}},
                         {Ledger::q(1, Ledger::plen(T, bperp))},
                         {Ledger::r(2.0 * s * cx, dref), Ledger::r(4.0 * s * cx * tn, s4g)}, {s4e}});
        return L.add({"projection_bound", "orthogonal-split", f, l, T, {},
                      {Ledger::q(1, Ledger::len(T))}, {Ledger::r(1, s4g), Ledger::r(1, s4h)}, {}});
    }

    // the base of the induction: full tuple, x^1 spans the residual line
    int base(const std::vector<int>& S, const std::vector<int>& tuple, int dref)
    {
        std::vector<Vec> axes = axes_of(tuple, 1);
        Subspace perp = Subspace::span(axes, m);
        int s = static_cast<int>(axes.size());
        if (perp.dim() != s || s != m - 1) throw lemma_error("cone normals are dependent", S.front());
        Vec x1 = perp.complement().basis().col(0);
        double delta = common_slack(S, axes);
        double tn = std::tan(delta), cx = k.c_xi;
        double e1 = k.eps1, cot1 = 1 / std::tan(e1), cs1 = 1 / std::sin(e1);
        double c1p = 3 * cot1 + 8 * cs1;
        double cls1 = 2 * cx * tn, cls2 = 4 * tn * c1p * cx;
        if (!(cls1 < 1.0 / (2 * s)) || !(cls2 < 1.0 / (2 * s)))
            throw lemma_error("linear system coefficient too large", S.front());

        int f = S.front(), l = S.back();
        int bx1 = L.basis(Mat(x1));
        int bperp = L.basis(perp);
        std::vector<int> bx, bxp;
        for (const Vec& a : axes) {
            Subspace ax = Subspace::axis(a);
            bx.push_back(L.basis(ax));
            bxp.push_back(L.basis(ax.complement()));
        }
        auto sumx = [&](double c) {
            std::vector<Term> v;
            for (int b : bx) v.push_back(Ledger::q(c, Ledger::plen(S, b)));
            return v;
        };

        std::vector<int> vert;
        for (int j = 0; j < s; ++j)
            vert.push_back(L.add({"vertical_sum", "descending-axis", f, l, S, {{"tan_delta", tn}},
                                  {Ledger::q(1, Ledger::plen(S, bx[j]))},
                                  {Ledger::r(1, dref), Ledger::q(2 * tn, Ledger::plen(S, bxp[j]))}, {}}));
        int est = L.add({"projection_bound", "frame-domination", f, l, S, {{"C_xi", cx}},
                         {Ledger::q(1, Ledger::plen(S, bperp))}, sumx(cx), {}});
        std::vector<int> prem1, each1;
        for (int j = 0; j < s; ++j) {
            std::vector<Term> rhs{Ledger::r(1, dref), Ledger::q(2 * tn, Ledger::plen(S, bx1))};
            for (const Term& t : sumx(cls1)) rhs.push_back(t);
            prem1.push_back(L.add({"linear_system", "linear-system-premise", f, l, S, {{"C", cls1}},
                                   {Ledger::q(1, Ledger::plen(S, bx[j]))}, rhs, {vert[j], est}}));
        }
        for (int j = 0; j < s; ++j)
            each1.push_back(L.add({"linear_system", "linear-system-each", f, l, S, {{"slots", double(s)}},
                                   {Ledger::q(1, Ledger::plen(S, bx[j]))},
                                   {Ledger::r(2, dref), Ledger::q(4 * tn, Ledger::plen(S, bx1))}, prem1}));

        int h4 = horizontal(S, x1, bx1, bperp, dref, c1p);
        int lam12 = lam12_;
        int co = L.add({"projection_bound", "horizontal-axis-bound", f, l, S, {{"C1'", c1p}, {"C_xi", cx}},
                        {Ledger::q(1, Ledger::plen(S, bx1))},
                        [&] {
                            std::vector<Term> v = sumx(c1p * cx);
                            v.push_back(Ledger::r(4, lam12));
                            return v;
                        }(),
                        {h4, est}});
        double l0 = 2 + 16 * cd * tn;
        std::vector<int> prem2;
        for (int j = 0; j < s; ++j) {
            std::vector<Term> rhs{Ledger::r(l0, dref)};
            for (const Term& t : sumx(cls2)) rhs.push_back(t);
            prem2.push_back(L.add({"linear_system", "linear-system-premise", f, l, S, {{"C", cls2}},
                                   {Ledger::q(1, Ledger::plen(S, bx[j]))}, rhs, {each1[j], co}}));
        }
        int ls2 = L.add({"linear_system", "linear-system-sum", f, l, S, {{"slots", double(s)}}, sumx(1),
                         {Ledger::r(2.0 * s * l0, dref)}, prem2});
        int fx1 = L.add({"projection_bound", "horizontal-axis-resolved", f, l, S, {{"C1'", c1p}, {"C_xi", cx}},
                         {Ledger::q(1, Ledger::plen(S, bx1))}, {Ledger::r(c1p * cx, ls2), Ledger::r(4, lam12)},
                         {co}});
        int fperp = L.add({"projection_bound", "frame-domination-resolved", f, l, S, {{"C_xi", cx}},
                           {Ledger::q(1, Ledger::plen(S, bperp))}, {Ledger::r(cx, ls2)}, {est}});
        return L.add({"projection_bound", "orthogonal-split", f, l, S, {},
                      {Ledger::q(1, Ledger::len(S))}, {Ledger::r(1, fx1), Ledger::r(1, fperp)}, {}});
    }

    int lam12_ = -1;

    // l_{x1}(S) <= C1' l_perp(S) + 4 |L1 L2| through same-direction windows and H/V groups
    int horizontal(const std::vector<int>& S, const Vec& x1, int bx1, int bperp, int dref, double c1p)
    {
        double e1 = k.eps1, cot1 = 1 / std::tan(e1), cs1 = 1 / std::sin(e1);
        Subspace xs = Subspace::axis(x1);
        auto xinc = [&](int a, int b) { return (W()[b] - W()[a]).dot(x1); };
        auto is_h = [&](int a, int b) { return line_angle(W()[b] - W()[a], xs) <= e1; };

        HorizontalWindows hw = same_direction_windows(W(), S, x1, e1);
        std::vector<int> supports;
        for (auto [q, kk] : hw.windows) {
            if (kk - q < 2) continue;  // a single segment is its own chord
            std::vector<int> Wn(S.begin() + q, S.begin() + kk + 1);
            int a = S[q], b = S[kk];
            supports.push_back(L.add({"horizontal_geometric", "same-direction-window", a, b, Wn,
                                      {{"2cot_eps1", 2 * cot1}}, {Ledger::q(1, Ledger::plen(Wn, bx1))},
                                      {Ledger::q(1, Ledger::plen({a, b}, bx1)),
                                       Ledger::q(2 * cot1, Ledger::plen(Wn, bperp))},
                                      {}}));
        }
        std::vector<int> Lm;
        for (int t : hw.lambda) Lm.push_back(S[t]);
        int nl = static_cast<int>(Lm.size());
        std::vector<char> H(nl - 1);
        for (int t = 0; t + 1 < nl; ++t) H[t] = is_h(Lm[t], Lm[t + 1]);
        for (int t = 1; t + 1 < nl; ++t) {
            if (!H[t]) continue;
            bool ok = H[t - 1] ? xinc(Lm[t - 1], Lm[t]) * xinc(Lm[t], Lm[t + 1]) <= 0
                               : !is_h(Lm[t - 1], Lm[t + 1]);
            if (!ok) throw lemma_error("horizontal residual segment breaks the grouping hypothesis", Lm[t]);
        }
        std::vector<int> groups;
        int t = 0;
        while (t < nl - 1) {
            int g = t;
            while (t + 1 < nl - 1 && H[t + 1] == H[g]) ++t;
            int h = t;  // segments g..h
            std::vector<int> P(Lm.begin() + g, Lm.begin() + h + 2);
            if (H[g]) {
                std::vector<int> chain;
                for (int u = g + 1; u <= h; ++u)
                    chain.push_back(L.add({"horizontal_geometric", "three-quarter-contraction", Lm[u - 1], Lm[u + 1],
                                           {Lm[u - 1], Lm[u], Lm[u + 1]}, {},
                                           {Ledger::q(1, Ledger::dist(Lm[u], Lm[u + 1]))},
                                           {Ledger::q(0.75, Ledger::dist(Lm[u - 1], Lm[u]))}, {}}));
                groups.push_back(L.add({"horizontal_geometric", "geometric-chain", P.front(), P.back(), P, {},
                                        {Ledger::q(1, Ledger::plen(P, bx1))},
                                        {Ledger::q(4, Ledger::dist(Lm[g], Lm[g + 1]))}, chain}));
                if (g > 0)
                    groups.push_back(L.add({"horizontal_geometric", "group-start", Lm[g - 1], Lm[g + 1],
                                            {Lm[g - 1], Lm[g], Lm[g + 1]}, {{"2/sin_eps1", 2 * cs1}},
                                            {Ledger::q(1, Ledger::dist(Lm[g], Lm[g + 1]))},
                                            {Ledger::q(2 * cs1, Ledger::plen({Lm[g - 1], Lm[g]}, bperp)),
                                             Ledger::q(2 * cs1, Ledger::plen({Lm[g], Lm[g + 1]}, bperp))},
                                            {}}));
            } else {
                groups.push_back(L.add({"horizontal_geometric", "vertical-slope", P.front(), P.back(), P,
                                        {{"cot_eps1", cot1}}, {Ledger::q(1, Ledger::plen(P, bx1))},
                                        {Ledger::q(cot1, Ledger::plen(P, bperp))}, {}}));
            }
            ++t;
        }
        int h3 = L.add({"horizontal_geometric", "horizontal-vertical-groups", Lm.front(), Lm.back(), Lm,
                        {{"cot_eps1+8/sin_eps1", cot1 + 8 * cs1}}, {Ledger::q(1, Ledger::plen(Lm, bx1))},
                        {Ledger::q(cot1 + 8 * cs1, Ledger::plen(Lm, bperp)), Ledger::q(4, Ledger::dist(Lm[0], Lm[1]))},
                        groups});
        supports.push_back(h3);
        lam12_ = L.add({"crossing_segment", "first-residual-segment", Lm[0], Lm[1], {Lm[0], Lm[1]}, {{"C_d", cd}},
                        {Ledger::q(1, Ledger::dist(Lm[0], Lm[1]))}, {Ledger::r(cd, dref)}, {}});
        return L.add({"horizontal_geometric", "horizontal-axis-variation", S.front(), S.back(), S, {{"C1'", c1p}},
                      {Ledger::q(1, Ledger::plen(S, bx1))},
                      {Ledger::q(c1p, Ledger::plen(S, bperp)), Ledger::r(4, lam12_)}, supports});
    }
};

}  // namespace

GeneralContext prepare_general(const Gauge& g, int samples, unsigned seed, double delta, int max_patches,
                               const Constants* given)
{
    if (!g.symmetric()) throw input_error("general certificates need a symmetric norm");
    GeneralContext ctx;
    ctx.base = g;
    ctx.rho = g.inradius();
    ctx.lifted = Gauge::cylinder(g, ctx.rho);
    int m = ctx.lifted.dim();
    if (given) {
        if (given->n != m) throw input_error("constants are for dimension " + std::to_string(given->n) +
                                             ", the lift needs " + std::to_string(m));
        ctx.constants = *given;
    } else {
        ctx.constants = estimate_constants(ctx.lifted, samples, seed);
    }
    if (delta < 0) {
        // delta_0 is far below what a direction net can resolve for smooth balls;
        // the net's own radius is recorded and every step is checked anyway
        delta = ctx.lifted.is_polyhedral() ? std::min(ctx.constants.delta0, kPi / 8)
                                           : std::max(ctx.constants.delta0, m <= 3 ? 2 * kPi / max_patches : kPi / 16);
    }
    ctx.part = Partition::build(ctx.lifted, delta, seed, max_patches);
    ctx.cd = ctx.lifted.diameter() / ctx.lifted.inradius();
    return ctx;
}

Certificate certify_general(const Polyline& p, const Gauge& g, GeneralOptions opt)
{
    return certify_general(p, prepare_general(g), opt);
}

Certificate certify_general(const Polyline& p, const GeneralContext& ctx, GeneralOptions opt)
{
    const Gauge& g = ctx.base;
    if (p.dim != g.dim()) throw input_error("polyline and gauge dimensions differ");
    if (p.size() < 2) throw input_error("need at least two points");
    SCResult s = is_self_contracted(p, g);
    if (!s.ok) throw not_self_contracted(s.witness);
    if ((p.back() - p.front()).norm() == 0.0) throw input_error("A_1 = A_r");

    Certificate c;
    c.mode = "general";
    c.gauge = g;
    c.original = p;
    c.working = lift_points(p);
    c.ell = length(p);
    c.dist1r = (p.back() - p.front()).norm();
    c.constants = ctx.constants;
    c.delta = ctx.part.delta();
    c.partition_N = ctx.part.N();
    c.rho = ctx.rho;
    SCResult ls = is_self_contracted(c.working, ctx.lifted);
    if (!ls.ok) throw lemma_error("lifted polyline is not self-contracted", ls.witness[1] - 1);

    Ledger L(c, c.tol * c.scale());
    int m = c.working.dim;
    Engine e{L, ctx.part, ctx.constants, ctx.cd, m, opt.budget};
    int depth = opt.max_depth < 0 ? m : opt.max_depth;
    e.min_level = std::max(1, m - depth + 1);

    int R = c.working.size() - 1, r = p.size();
    std::vector<int> all(R + 1), orig(r);
    for (int j = 0; j <= R; ++j) all[j] = j;
    for (int j = 0; j < r; ++j) orig[j] = j;
    int D = L.add({"recurse", "anchor-distance", 0, R, {0, R}, {}, {Ledger::q(1, Ledger::dist(0, R))},
                   {Ledger::q(1, Ledger::dist(0, R))}, {}});
    int top_cap = ctx.part.N() - 1;  // caps come last: top, then bottom
    int top = e.window(all, {top_cap}, D);
    c.root = L.add({"lift", "lift-to-cylinder", 0, r - 1, orig, {{"height", c.working[0](m - 1)}},
                    {Ledger::q(1, Ledger::len(orig))}, {Ledger::r(1, top)}, {}});
    c.partial = e.partial;
    for (const auto& st : c.steps)
        if (st.tag == "fallback-direct") ++c.fallback_steps;
    c.effective_C = c.steps[c.root].rhs / c.dist1r;
    return c;
}

Certificate certify_base_case(const Polyline& p, const Gauge& g, const Partition& part,
                              const std::vector<int>& tuple, const Constants& k)
{
    if (p.dim != g.dim()) throw input_error("polyline and gauge dimensions differ");
    if (static_cast<int>(tuple.size()) != g.dim()) throw input_error("the base case needs a full tuple");
    if (p.size() < 2) throw input_error("need at least two points");
    SCResult s = is_self_contracted(p, g);
    if (!s.ok) throw not_self_contracted(s.witness);
    if ((p.back() - p.front()).norm() == 0.0) throw input_error("A_1 = A_r");
    if (!is_admissible(part, tuple, k.xi)) throw lemma_error("tuple is not admissible", -1);

    Certificate c;
    c.mode = "window";
    c.gauge = g;
    c.original = p;
    c.working = p;
    c.ell = length(p);
    c.dist1r = (p.back() - p.front()).norm();
    c.constants = k;
    c.delta = part.delta();
    c.partition_N = part.N();
    Ledger L(c, c.tol * c.scale());
    double cd = g.diameter() / g.inradius();
    Engine e{L, part, k, cd, g.dim(), 1 << 30};
    int r = p.size();
    std::vector<int> all(r);
    for (int j = 0; j < r; ++j) all[j] = j;
    int D = L.add({"recurse", "anchor-distance", 0, r - 1, {0, r - 1}, {}, {Ledger::q(1, Ledger::dist(0, r - 1))},
                   {Ledger::q(1, Ledger::dist(0, r - 1))}, {}});
    // no fallback here: hypothesis failures propagate to the caller
    c.root = r <= 2 ? e.identity(all, D) : e.base(all, tuple, D);
    c.effective_C = c.steps[c.root].rhs / c.dist1r;
    return c;
}

}  // namespace sc
