#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "selfcontract/generators.hpp"
#include "selfcontract/polyline.hpp"
#include "selfcontract/sampling.hpp"

#include <cmath>

using namespace sc;

namespace {

Vec v2(double a, double b)
{
    Vec v(2);
    v << a, b;
    return v;
}

Vec e(int n, int i)
{
    return Vec::Unit(n, i);
}

// a witness (i,j,k), 1-based, must break ||A_k - A_j|| <= ||A_k - A_i||
bool is_violation(const Polyline& p, const Gauge& g, const std::array<int, 3>& w)
{
    int i = w[0] - 1, j = w[1] - 1, k = w[2] - 1;
    return i < j && j < k && g(p[k] - p[j]) > g(p[k] - p[i]);
}

}  // namespace

TEST_CASE("square path: self-contracted for the max-norm only")
{
    Polyline sq = square_path();
    CHECK(is_self_contracted(sq, Gauge::max_norm(2)).ok);
    SCResult r = is_self_contracted(sq, Gauge::euclidean(2));
    CHECK_FALSE(r.ok);
    CHECK(r.witness == std::array<int, 3>{1, 2, 4});
    SCResult n = is_self_contracted_naive(sq, Gauge::euclidean(2));
    CHECK(n.witness == std::array<int, 3>{1, 2, 4});
    CHECK(length(sq) == 3.0);
}

TEST_CASE("harmonic staircase lengths and distances")
{
    Polyline h4 = harmonic_staircase(4);
    CHECK(std::abs(length(h4) - 25.0 / 12.0) < 1e-15);
    double H = 0;
    for (int j = 1; j <= 100; ++j) H += 1.0 / j;
    CHECK(std::abs(length(harmonic_staircase(100)) - H) < 1e-9);
    CHECK(std::abs(H - 5.18738) < 1e-5);

    Polyline h = harmonic_staircase(30);
    for (int l = 0; l < h.size(); ++l)
        for (int k = l; k < h.size(); ++k) {
            double s = 0;
            for (int j = l + 1; j <= k; ++j) s += 1.0 / (double(j) * j);
            CHECK(std::abs((h[k] - h[l]).squaredNorm() - s) < 1e-12);
        }
    CHECK(is_self_contracted(h, Gauge::euclidean(30)).ok);
}

TEST_CASE("lengths and projected lengths")
{
    Polyline one(2, {v2(3, 3)});
    CHECK(length(one) == 0.0);
    Polyline sq = square_path();
    CHECK(projected_length(sq, Subspace::axis(e(2, 0))) == doctest::Approx(1.0));
    CHECK(projected_length(sq, Subspace::axis(e(2, 1))) == doctest::Approx(2.0));
    CHECK(projected_length(sq, Subspace::full(2)) == doctest::Approx(3.0));
    Rng rng(2);
    for (int t = 0; t < 100; ++t) {
        std::vector<Vec> pts;
        for (int i = 0; i < 8; ++i) pts.push_back(gaussian_vec(rng, 4));
        Polyline p(4, pts);
        Subspace s = Subspace::span({gaussian_vec(rng, 4), gaussian_vec(rng, 4)}, 4);
        CHECK(projected_length(p, s) <= length(p) + 1e-12);
        CHECK((s.basis().transpose() * s.basis() - Mat::Identity(2, 2)).norm() < 1e-12);
    }
}

TEST_CASE("segment classification")
{
    Subspace x = Subspace::axis(e(2, 0));
    CHECK(classify_segment(v2(0, 0), v2(1, 0), x, 0.1) == SegClass::horizontal);
    CHECK(classify_segment(v2(0, 0), v2(0, 1), x, 1.5) == SegClass::vertical);
    // the angle is pi/4 up to rounding; the cutoff is inclusive
    CHECK(classify_segment(v2(0, 0), v2(1, 1), x, kPi / 4 + 1e-12) == SegClass::horizontal);
    CHECK(classify_segment(v2(0, 0), v2(1, 1), x, kPi / 4 - 1e-12) == SegClass::vertical);
}

TEST_CASE("alternating extraction examples")
{
    CHECK(extract_alternating(std::vector<double>{0, 2, 1}) == std::vector<int>{0, 1, 2});
    CHECK(extract_alternating(std::vector<double>{0, 1, 2}) == std::vector<int>{0, 2});
    CHECK(extract_alternating(std::vector<double>{0, 1, 2, 1.5}) == std::vector<int>{0, 2, 3});
}

TEST_CASE("alternating extraction against brute-force enumeration")
{
    Rng rng(5);
    for (int t = 0; t < 300; ++t) {
        int r = std::uniform_int_distribution<int>(1, 10)(rng);
        std::vector<double> x;
        for (int i = 0; i < r; ++i) {
            // repeated values exercise the zero-increment rule
            double v = std::round(uniform(rng, -3, 3) * 2) / 2;
            x.push_back(v);
        }
        std::vector<int> got = extract_alternating(x);
        std::vector<double> sub;
        for (int i : got) sub.push_back(x[i]);
        CHECK(got.front() == 0);
        CHECK(got.back() == r - 1);
        CHECK(std::abs(variation(sub) - variation(x)) < 1e-12);
        for (size_t i = 2; i < sub.size(); ++i) CHECK((sub[i] - sub[i - 1]) * (sub[i - 1] - sub[i - 2]) < 0);

        // no subvector with the same endpoints preserving the variation is shorter
        int best = r;
        for (int mask = 0; mask < (1 << r); ++mask) {
            if (!(mask & 1) || !(mask >> (r - 1) & 1)) continue;
            std::vector<double> s;
            for (int i = 0; i < r; ++i)
                if (mask >> i & 1) s.push_back(x[i]);
            if (std::abs(variation(s) - variation(x)) < 1e-12) best = std::min<int>(best, s.size());
        }
        if (r == 1) best = 1;
        CHECK(static_cast<int>(got.size()) == best);
    }
}

TEST_CASE("reverse triangle")
{
    Gauge eu = Gauge::euclidean(2);
    CHECK(check_reverse_triangle(v2(0, 0), v2(1, 0), v2(2, 0), eu) == doctest::Approx(1.0));
    // lengths are euclidean whatever the gauge
    CHECK(check_reverse_triangle(v2(0, 0), v2(0, 1), v2(1, 1), Gauge::max_norm(2)) == doctest::Approx(std::sqrt(2.0)));
    Rng rng(8);
    int seen = 0;
    double worst = 0;
    while (seen < 10000) {
        Vec a = gaussian_vec(rng, 2), b = gaussian_vec(rng, 2), c = gaussian_vec(rng, 2);
        if (eu(c - b) > eu(c - a)) continue;
        ++seen;
        worst = std::max(worst, check_reverse_triangle(a, b, c, eu));
    }
    CHECK(worst <= 3 + 1e-9);
}

TEST_CASE("three-quarter contraction")
{
    Gauge eu = Gauge::euclidean(2);
    double eps1 = std::acos(2.0 / 3.0) / 2;
    CHECK(check_horiz_contraction(v2(0, 0), v2(1, 0), v2(1, 0), eu, eps1));
    // points of the bisector x = 1/2 seen from A2 = (1,0) within 2 eps1 of the direction to A1
    for (double th = 0; th <= 2 * eps1; th += 2 * eps1 / 50) {
        Vec c = v2(1 - 0.5, 0.5 * std::tan(th));
        CHECK(check_horiz_contraction(v2(0, 0), v2(1, 0), c, eu, eps1));
    }
    CHECK(check_horiz_contraction(v2(0, 0), v2(1, 0), v2(1, 5), eu, eps1));
}

TEST_CASE("geometric chain")
{
    Gauge eu = Gauge::euclidean(2);
    Vec ax = e(2, 0);
    CHECK(geometric_chain_bound(Polyline(2, {v2(0, 0), v2(1, 0)}), ax, eu, 0.3) == doctest::Approx(4.0));

    // alternating collinear chain with halving steps is self-contracted
    std::vector<Vec> pts{v2(0, 0)};
    double x = 0, step = 1, sgn = 1;
    for (int k = 0; k < 30; ++k) {
        x += sgn * step;
        pts.push_back(v2(x, 0));
        step *= 0.5;
        sgn = -sgn;
    }
    Polyline z(2, pts);
    REQUIRE(is_self_contracted(z, eu).ok);
    double b = geometric_chain_bound(z, ax, eu, 0.3);
    CHECK(length(z) <= b);
    CHECK(b - length(z) >= 1.0);

    CHECK_THROWS_AS(geometric_chain_bound(square_path(), ax, Gauge::max_norm(2), 0.1), lemma_error);
}

TEST_CASE("vertical variation")
{
    Vec nu = e(2, 1);
    Polyline down(2, {v2(0, 5), v2(1, 4), v2(-1, 2), v2(0.5, 1.5)});
    double b = vertical_variation_bound(down, nu, 0.0);
    CHECK(b == doctest::Approx((down.back() - down.front()).norm()));
    CHECK(3.5 <= b);

    // descending staircase with slightly rising horizontal back-steps
    std::vector<Vec> pts{v2(0, 0)};
    for (int k = 0; k < 10; ++k) {
        pts.push_back(pts.back() + v2(0.05, -1));
        pts.push_back(pts.back() + v2(-1, 0.1));
    }
    Polyline st(2, pts);
    double bound = vertical_variation_bound(st, nu, 0.2);
    double lx = 0;
    for (int k = 1; k < st.size(); ++k) lx += std::abs((st[k] - st[k - 1]).dot(nu));
    CHECK(lx <= bound);

    CHECK(vertical_variation_bound(Polyline(2, {v2(1, 1)}), nu, 0.1) == 0.0);
    CHECK_THROWS_AS(vertical_variation_bound(Polyline(2, {v2(0, 0), v2(0, 1)}), nu, 0.1), lemma_error);
}

TEST_CASE("quadratic and cubic checkers agree")
{
    std::vector<Gauge> gs{Gauge::euclidean(2), Gauge::max_norm(2), Gauge::pnorm(3, 3), Gauge::pnorm(3, 1),
                          random_symmetric_polytope(2, 3)};
    Rng rng(6);
    int agree = 0, positives = 0;
    for (int t = 0; t < 1000; ++t) {
        const Gauge& g = gs[t % gs.size()];
        int r = std::uniform_int_distribution<int>(2, 30)(rng);
        Polyline p = greedy_random(g, r, 1000 + t).poly;
        // perturb a vertex half of the time to get near-misses
        if (t % 2) p[std::uniform_int_distribution<int>(0, p.size() - 1)(rng)] += 0.05 * gaussian_vec(rng, p.dim);
        SCResult a = is_self_contracted(p, g), b = is_self_contracted_naive(p, g);
        agree += a.ok == b.ok;
        positives += a.ok;
        if (!a.ok) CHECK(is_violation(p, g, a.witness));
        if (!b.ok) CHECK(is_violation(p, g, b.witness));
    }
    CHECK(agree == 1000);
    CHECK(positives > 100);
    CHECK(positives < 1000);
}

TEST_CASE("diameter bound for self-contracted polylines")
{
    // every pairwise distance is controlled by the endpoint distance
    for (const Gauge& g : {Gauge::euclidean(2), Gauge::max_norm(3), Gauge::pnorm(2, 3)}) {
        double diam = g.diameter() / g.inradius();
        for (unsigned s = 0; s < 50; ++s) {
            Polyline p = greedy_random(g, 20, s).poly;
            double d = (p.back() - p.front()).norm(), worst = 0;
            for (int j = 0; j < p.size(); ++j)
                for (int m = j; m < p.size(); ++m) worst = std::max(worst, (p[m] - p[j]).norm());
            CHECK(worst <= diam * d + 1e-9);
        }
    }
}
