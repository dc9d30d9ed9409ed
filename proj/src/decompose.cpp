#include "selfcontract/certify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sc {

std::vector<int> ConeSplit::members(int cone) const
{
    std::vector<int> out;
    for (int t = 0; t < static_cast<int>(cls.size()); ++t)
        if (cls[t] == cone || cls[t] == 0) out.push_back(t);
    return out;
}

ConeSplit cone_split(const std::vector<int>& window, const std::function<int(int, int)>& classify)
{
    ConeSplit cs;
    int len = static_cast<int>(window.size());
    if (len == 0) return cs;
    int apex = window.back();
    for (int t = 0; t < len; ++t) cs.cls.push_back(t == len - 1 ? 0 : classify(apex, window[t]));
    std::set<int> used;
    int last_seen = 0;
    for (int t = 0; t + 1 < len; ++t) {
        if (cs.cls[t] != 0) last_seen = cs.cls[t];
        // the segment belongs to the cone of its endpoint; apex copies defer to the start
        int c = cs.cls[t + 1] != 0 ? cs.cls[t + 1] : (cs.cls[t] != 0 ? cs.cls[t] : (last_seen ? last_seen : 1));
        cs.seg_cone.push_back(c);
        used.insert(c);
        if (cs.cls[t] == c || cs.cls[t] == 0) {
            cs.seg_case.push_back(0);
            cs.s_of.push_back(-1);
            continue;
        }
        int s = -1;
        for (int u = t - 1; u >= 0; --u)
            if (cs.cls[u] == c || cs.cls[u] == 0) {
                s = u;
                break;
            }
        cs.seg_case.push_back(s >= 0 ? 1 : 2);
        cs.s_of.push_back(s);
    }
    cs.cones.assign(used.begin(), used.end());
    return cs;
}

BlockSplit horizontal_block_split(const Polyline& w, const std::vector<int>& S, const Subspace& sub, double eps0)
{
    auto horiz = [&](int a, int b) { return line_angle(w[S[b]] - w[S[a]], sub) <= eps0; };
    BlockSplit out;
    int len = static_cast<int>(S.size());
    std::vector<char> interior(len, 0), head(len, 0);
    int end = len - 1;
    while (end >= 1) {
        int k = -1;
        for (int t = end; t >= 1; --t)
            if (horiz(t - 1, t)) {
                k = t;
                break;
            }
        if (k < 0) break;
        int q = k - 1;
        while (q - 1 >= 0 && horiz(q - 1, k)) --q;
        out.blocks.push_back({q, k});
        for (int t = q + 1; t < k; ++t) interior[t] = 1;
        if (q > 0) head[q] = 1;
        end = q - 1;
    }
    for (int t = 0; t < len; ++t) {
        if (interior[t]) continue;
        out.lambda.push_back(t);
        if (!head[t]) out.lambda_tilde.push_back(t);
    }
    return out;
}

HorizontalWindows same_direction_windows(const Polyline& w, const std::vector<int>& S, const Vec& axis, double eps)
{
    Subspace x = Subspace::axis(axis);
    Vec u = axis.normalized();
    auto horiz = [&](int a, int b) { return line_angle(w[S[b]] - w[S[a]], x) <= eps; };
    auto inc = [&](int a) { return (w[S[a + 1]] - w[S[a]]).dot(u); };
    HorizontalWindows out;
    int len = static_cast<int>(S.size());
    std::vector<char> interior(len, 0);
    int end = len - 1;
    while (end >= 1) {
        int k = -1;
        for (int t = end; t >= 1; --t)
            if (horiz(t - 1, t)) {
                k = t;
                break;
            }
        if (k < 0) break;
        double dir = inc(k - 1);
        int q = k - 1;
        while (q - 1 >= 0) {
            int j = q - 1;
            if (!horiz(j, k)) break;
            if (horiz(j, j + 1)) {
                double d = inc(j);
                if (dir == 0.0) {
                    dir = d;
                } else if (d * dir < 0) {
                    break;
                }
            }
            --q;
        }
        out.windows.push_back({q, k});
        for (int t = q + 1; t < k; ++t) interior[t] = 1;
        end = q;  // the next window may end where this one starts
        if (q == 0) break;
    }
    for (int t = 0; t < len; ++t)
        if (!interior[t]) out.lambda.push_back(t);
    return out;
}

LinearSystemBound linear_system_resolve(double L0, const std::vector<double>& L, double C, int slots)
{
    if (slots < 1) throw input_error("slots must be positive");
    if (!(C >= 0 && C < 1.0 / (2 * slots)))
        throw lemma_error("coefficient " + std::to_string(C) + " is not below 1/(2*slots)", -1);
    double sum = 0;
    for (double v : L) sum += v;
    for (size_t j = 0; j < L.size(); ++j)
        if (L[j] > L0 + C * sum + 1e-12) throw lemma_error("premise fails", static_cast<int>(j));
    LinearSystemBound b{2.0 * slots * L0, 2.0 * L0};
    if (sum > b.sum_bound + 1e-12) throw lemma_error("sum bound fails", -1);
    return b;
}

}  // namespace sc
