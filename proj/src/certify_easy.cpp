#include "selfcontract/certify.hpp"

#include <cmath>

namespace sc {

namespace {

const double kSqrt2 = std::sqrt(2.0);

using T = Term;

// Step 2 inside one triangle: l(C) <= l_{x1} + l_{x2} with x2 the facet normal
int certify_triangle(Ledger& L, const std::vector<int>& C, const Vec& nu, int coneD)
{
    const Polyline& W = L.work();
    int first = C.front(), last = C.back();
    if (C.size() <= 2) {
        return L.add({"recurse", "segment-identity", first, last, C, {}, {Ledger::q(1, Ledger::len(C))},
                      {Ledger::r(1, coneD)}, {}});
    }
    Vec perp(2);
    perp << -nu(1), nu(0);
    int bx2 = L.basis(Mat(nu));
    int bx1 = L.basis(Mat(perp));

    // the normal coordinate never increases along the triangle's subvector
    for (size_t t = 0; t + 1 < C.size(); ++t)
        if ((W[C[t + 1]] - W[C[t]]).dot(nu) > L.tol())
            throw lemma_error("normal coordinate increases inside the triangle", C[t]);
    int sx2 = L.add({"vertical_sum", "monotone-normal-coordinate", first, last, C, {},
                     {Ledger::q(1, Ledger::plen(C, bx2))}, {Ledger::r(1, coneD)}, {}});

    std::vector<double> x1;
    for (int j : C) x1.push_back(W[j].dot(perp));
    std::vector<int> qpos = extract_alternating(x1);
    std::vector<int> Q;
    for (int p : qpos) Q.push_back(C[p]);
    int l = static_cast<int>(Q.size());

    // {Q1, Q2} sit in A_r + ||Q1 - A_r|| B, whose Euclidean diameter is 2 sqrt2 times the radius
    int sa1 = L.add({"horizontal_geometric", "first-increment", Q[0], Q[1], {Q[0], Q[1]},
                     {{"2sqrt2", 2 * kSqrt2}}, {Ledger::q(1, Ledger::plen({Q[0], Q[1]}, bx1))},
                     {Ledger::r(2 * kSqrt2, coneD)}, {}});
    std::vector<int> halving;
    std::vector<Term> bsum;
    for (int k = 1; k + 1 < l; ++k) {
        halving.push_back(L.add({"horizontal_geometric", "halving-step", Q[k - 1], Q[k + 1],
                                 {Q[k - 1], Q[k], Q[k + 1]}, {},
                                 {Ledger::q(1, Ledger::plen({Q[k], Q[k + 1]}, bx1))},
                                 {Ledger::q(0.5, Ledger::plen({Q[k - 1], Q[k]}, bx1)),
                                  Ledger::q(1, Ledger::plen({Q[k - 1], Q[k + 1]}, bx2))},
                                 {}}));
        bsum.push_back(Ledger::q(1, Ledger::plen({Q[k - 1], Q[k + 1]}, bx2)));
    }
    std::vector<Term> agg_rhs{Ledger::r(2, sa1)};
    if (!bsum.empty()) {
        // every normal increment is counted at most twice
        int sb = L.add({"vertical_sum", "skip-increments-double-count", first, last, Q, {}, bsum,
                        {Ledger::r(2, sx2)}, {}});
        agg_rhs.push_back(Ledger::r(2, sb));
    }
    int agg = L.add({"horizontal_geometric", "halving-chain-sum", first, last, Q, {},
                     {Ledger::q(1, Ledger::plen(Q, bx1))}, agg_rhs, halving});
    int salt = L.add({"alternating_extract", "alternating-subvector", first, last, Q, {},
                      {Ledger::q(1, Ledger::plen(C, bx1))}, {Ledger::r(1, agg)}, {}});
    return L.add({"projection_bound", "coordinate-split", first, last, C, {},
                  {Ledger::q(1, Ledger::len(C))}, {Ledger::r(1, salt), Ledger::r(1, sx2)}, {}});
}

}  // namespace

Certificate certify_easycase(const Polyline& p)
{
    if (p.dim != 2) throw input_error("the easy case is the max-norm in R^2");
    if (p.size() < 2) throw input_error("need at least two points");
    Gauge g = Gauge::max_norm(2);
    SCResult s = is_self_contracted(p, g);
    if (!s.ok) throw not_self_contracted(s.witness);
    if ((p.back() - p.front()).norm() == 0.0) throw input_error("A_1 = A_r");

    Certificate c;
    c.mode = "easy";
    c.gauge = g;
    c.original = p;
    c.working = p;
    c.ell = length(p);
    c.dist1r = (p.back() - p.front()).norm();
    Partition part = Partition::build(g, kPi / 8);
    c.delta = part.delta();
    c.partition_N = part.N();
    Ledger L(c, c.tol * c.scale());

    int r = p.size();
    std::vector<int> all(r);
    for (int j = 0; j < r; ++j) all[j] = j;
    int D = L.add({"recurse", "anchor-distance", 0, r - 1, {}, {}, {Ledger::q(1, Ledger::dist(0, r - 1))},
                   {Ledger::q(1, Ledger::dist(0, r - 1))}, {}});
    if (r == 2) {
        c.root = L.add({"recurse", "segment-identity", 0, 1, all, {}, {Ledger::q(1, Ledger::len(all))},
                        {Ledger::r(1, D)}, {}});
    } else {
        // Step 1: triangles of the square around the apex A_r
        ConeSplit cs = cone_split(all, [&](int a, int j) { return part.classify(p[a], p[j]); });
        std::vector<int> supports;
        std::vector<Term> rhs;
        for (int t = 0; t + 1 < r; ++t) {
            if (cs.seg_case[t] == 1) {
                int sj = cs.s_of[t];
                supports.push_back(L.add({"crossing_segment", "return-segment", t, t + 1, {sj, t, t + 1},
                                          {{"sqrt2", kSqrt2}}, {Ledger::q(1, Ledger::dist(t, t + 1))},
                                          {Ledger::q(kSqrt2, Ledger::dist(sj, t + 1))}, {}}));
            } else if (cs.seg_case[t] == 2) {
                rhs.push_back(Ledger::r(1, L.add({"crossing_segment", "first-entry-segment", t, t + 1, {t, t + 1},
                                                  {{"2sqrt2", 2 * kSqrt2}}, {Ledger::q(1, Ledger::dist(t, t + 1))},
                                                  {Ledger::r(2 * kSqrt2, D)}, {}})));
            }
        }
        for (int cone : cs.cones) {
            std::vector<int> C = cs.members(cone);
            // Step 3: the triangle's scale against |A_1 A_r|
            int coneD = L.add({"recurse", "cone-scale", C.front(), r - 1, {}, {{"sqrt2", kSqrt2}},
                               {Ledger::q(1, Ledger::dist(C.front(), r - 1))}, {Ledger::r(kSqrt2, D)}, {}});
            int top = certify_triangle(L, C, part.normal(cone), coneD);
            rhs.push_back(Ledger::r(kSqrt2, top));
        }
        c.root = L.add({"cone_split", "cone-decomposition", 0, r - 1, all, {{"sqrt2", kSqrt2}},
                        {Ledger::q(1, Ledger::len(all))}, rhs, supports});
    }
    c.effective_C = c.steps[c.root].rhs / c.dist1r;
    return c;
}

}  // namespace sc
