#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "selfcontract/certify.hpp"
#include "selfcontract/generators.hpp"
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

Vec v3(double a, double b, double c)
{
    Vec v(3);
    v << a, b, c;
    return v;
}

int patch_with_normal(const Partition& p, const Vec& nu)
{
    for (const auto& b : p.patches())
        if ((b.normal - nu).norm() < 1e-12) return b.index;
    return -1;
}

// every single rhs lowered by ten tolerances must be caught at that step
void check_tamper_detection(const Certificate& c)
{
    for (size_t s = 0; s < c.steps.size(); ++s) {
        Certificate t = c;
        t.steps[s].rhs -= 10 * c.tol * std::max(c.scale(), std::abs(c.steps[s].rhs));
        CheckResult r = check_certificate(t);
        CAPTURE(s);
        CHECK_FALSE(r.ok);
        CHECK(r.step == static_cast<int>(s));
    }
}

}  // namespace

TEST_CASE("easy case: the square path")
{
    Certificate c = certify_easycase(square_path());
    CHECK(c.ell == 3.0);
    CHECK(c.dist1r == 1.0);
    CHECK(c.effective_C >= 3.0);
    CHECK(c.fallback_steps == 0);
    CheckResult r = check_certificate(c);
    CHECK(r.ok);
    check_tamper_detection(c);

    Certificate two = certify_easycase(Polyline(2, {v2(0, 0), v2(2, 1)}));
    CHECK(check_certificate(two).ok);
    CHECK(two.effective_C >= 1.0);

    CHECK_THROWS_AS(certify_easycase(Polyline(2, {v2(0, 0), v2(0, 1), v2(1, 1), v2(1, -0.5)})), not_self_contracted);
}

TEST_CASE("easy case: normal coordinate chain is exact on a descending triangle")
{
    Polyline p(2, {v2(0, 2), v2(0.5, 1), v2(0, 0)});
    REQUIRE(is_self_contracted(p, Gauge::max_norm(2)).ok);
    Certificate c = certify_easycase(p);
    REQUIRE(check_certificate(c).ok);
    bool found = false;
    for (const CertStep& s : c.steps)
        if (s.tag == "monotone-normal-coordinate") {
            found = true;
            CHECK(std::abs(s.lhs - 2.0) < 1e-15);
        }
    CHECK(found);
}

TEST_CASE("easy case: random instances")
{
    Gauge g = Gauge::max_norm(2);
    for (unsigned s = 0; s < 100; ++s) {
        Polyline p = greedy_random(g, 3 + s % 38, s).poly;
        Certificate c = certify_easycase(p);
        REQUIRE(check_certificate(c).ok);
        CHECK(ratio(p) <= c.effective_C * (1 + 1e-12));
        CHECK(c.fallback_steps == 0);
    }
}

TEST_CASE("cone split")
{
    std::vector<int> w{0, 1, 2, 3, 4};
    ConeSplit one = cone_split(w, [](int, int) { return 1; });
    CHECK(one.cones == std::vector<int>{1});
    for (int c : one.seg_case) CHECK(c == 0);

    Partition p = Partition::build(Gauge::max_norm(2), 0.3);
    Polyline sq = square_path();
    ConeSplit s = cone_split({0, 1, 2, 3}, [&](int apex, int j) { return p.classify(sq[apex], sq[j]); });
    int crossings = 0;
    for (size_t t = 0; t + 1 < s.cls.size(); ++t) crossings += s.cls[t] != s.cls[t + 1] && s.cls[t + 1] != 0;
    CHECK(crossings <= 3);
    CHECK(s.cls.back() == 0);

    // two cones visited alternately: a revisit returns through the point two back
    ConeSplit z = cone_split({0, 1, 2, 3, 4, 5, 6}, [](int, int j) { return 1 + j % 2; });
    for (int t = 1; t + 1 < 6; ++t) {
        CAPTURE(t);
        CHECK(z.seg_case[t] == 1);
        CHECK(z.s_of[t] == t - 1);
    }
    CHECK(z.seg_case[0] == 2);
}

TEST_CASE("horizontal blocks")
{
    Subspace x = Subspace::axis(Vec::Unit(3, 0));
    Polyline down(3, {v3(0, 0, 3), v3(0, 0, 2), v3(0.01, 0, 1), v3(0, 0, 0)});
    BlockSplit none = horizontal_block_split(down, {0, 1, 2, 3}, x, 0.1);
    CHECK(none.blocks.empty());
    CHECK(none.lambda == std::vector<int>{0, 1, 2, 3});
    CHECK(none.lambda_tilde == none.lambda);

    Polyline flat(3, {v3(0, 0, 0), v3(1, 0, 0), v3(2, 0, 0), v3(3, 0, 0)});
    BlockSplit all = horizontal_block_split(flat, {0, 1, 2, 3}, x, 0.1);
    REQUIRE(all.blocks.size() == 1);
    CHECK(all.blocks[0] == std::pair<int, int>{0, 3});
    CHECK(all.lambda == std::vector<int>{0, 3});

    Polyline two(3, {v3(0, 0, 3), v3(1, 0, 3), v3(2, 0, 3), v3(2, 0, 2), v3(3, 0, 2), v3(4, 0, 2)});
    BlockSplit b = horizontal_block_split(two, {0, 1, 2, 3, 4, 5}, x, 0.1);
    REQUIRE(b.blocks.size() == 2);
    CHECK(b.blocks[0] == std::pair<int, int>{3, 5});
    CHECK(b.blocks[1] == std::pair<int, int>{0, 2});
    CHECK(b.lambda == std::vector<int>{0, 2, 3, 5});
    CHECK(b.lambda_tilde == std::vector<int>{0, 2, 5});
}

TEST_CASE("linear system resolution")
{
    LinearSystemBound a = linear_system_resolve(1, {1, 1}, 0, 2);
    CHECK(a.sum_bound == 4.0);
    CHECK(a.each_bound == 2.0);
    LinearSystemBound b = linear_system_resolve(1, {1.5, 1.5}, 0.2, 2);
    CHECK(b.sum_bound == 4.0);
    CHECK_THROWS_AS(linear_system_resolve(1, {1, 1}, 0.3, 2), lemma_error);
    try {
        linear_system_resolve(1, {1, 3}, 0.2, 2);
        FAIL("premise should fail");
    } catch (const lemma_error& e) {
        CHECK(e.index == 1);
    }
}

TEST_CASE("lift to the cylinder")
{
    Lifted l = lift_to_cylinder(Gauge::max_norm(2), square_path());
    CHECK(l.poly.size() == 5);
    CHECK(l.poly.dim == 3);
    CHECK(is_self_contracted(l.poly, l.gauge).ok);

    Polyline seg(2, {v2(1, 1), v2(4, 5)});
    Lifted s = lift_to_cylinder(Gauge::euclidean(2), seg);
    CHECK(std::abs(length(s.poly) - (length(seg) + 5.0)) < 1e-12);
    CHECK_THROWS_AS(lift_points(Polyline(2, {v2(1, 1), v2(0, 0), v2(1, 1)})), input_error);
}

TEST_CASE("general certificates")
{
    Certificate sq = certify_general(square_path(), Gauge::max_norm(2));
    CHECK(check_certificate(sq).ok);
    CHECK(sq.effective_C >= 3.0);
    CHECK(sq.fallback_steps == 0);
    check_tamper_detection(sq);

    Certificate h = certify_general(harmonic_staircase(10), Gauge::euclidean(10));
    CHECK(check_certificate(h).ok);
    CHECK(h.effective_C >= 2.353);
    CHECK(h.effective_C * h.dist1r >= h.ell - 1e-9);

    CHECK_THROWS_AS(certify_general(square_path(), Gauge::euclidean(2)), not_self_contracted);
    try {
        certify_general(square_path(), Gauge::euclidean(2));
    } catch (const not_self_contracted& e) {
        CHECK(e.witness == std::array<int, 3>{1, 2, 4});
    }

    // no budget: every window is measured directly, still a valid bound
    GeneralContext ctx = prepare_general(Gauge::pnorm(2, 3));
    Polyline p = greedy_random(Gauge::pnorm(2, 3), 20, 4).poly;
    GeneralOptions opt;
    opt.budget = 0;
    Certificate d = certify_general(p, ctx, opt);
    CHECK(check_certificate(d).ok);
    CHECK(d.partial);
    CHECK(d.effective_C * d.dist1r >= d.ell - 1e-9);

    Certificate full = certify_general(p, ctx);
    CHECK(check_certificate(full).ok);
    CHECK_FALSE(full.partial);
}

TEST_CASE("checker is translation invariant")
{
    Vec shift = v2(10.5, -3.25);
    Certificate e = certify_easycase(greedy_random(Gauge::max_norm(2), 15, 2).poly);
    for (Vec& a : e.original.pts) a += shift;
    for (Vec& a : e.working.pts) a += shift;
    CHECK(check_certificate(e).ok);

    Certificate g = certify_general(greedy_random(Gauge::euclidean(2), 15, 2).poly, Gauge::euclidean(2));
    for (Vec& a : g.original.pts) a += shift;  // the lift rebuilds the working polyline from the apex
    CHECK(check_certificate(g).ok);
}

TEST_CASE("base case on a window in one cone")
{
    Gauge g = Gauge::max_norm(2);
    Constants k = estimate_constants(g, 2000, 1);
    Partition part = Partition::build(g, std::min(k.delta0, kPi / 8));
    int top = patch_with_normal(part, v2(0, 1)), right = patch_with_normal(part, v2(1, 0));
    std::vector<int> tuple{right, top};

    Certificate seg = certify_base_case(Polyline(2, {v2(0.2, 1), v2(0, 0)}), g, part, tuple, k);
    CHECK(check_certificate(seg).ok);

    int done = 0;
    for (unsigned s = 0; s < 400 && done < 20; ++s) {
        Polyline p = greedy_random(g, 20, s).poly;
        bool inside = true;
        for (int j = 0; j + 1 < p.size(); ++j) inside = inside && part.classify(p.back(), p[j]) == top;
        if (!inside) continue;
        try {
            Certificate c = certify_base_case(p, g, part, tuple, k);
            CHECK(check_certificate(c).ok);
            ++done;
        } catch (const lemma_error&) {
        }
    }
    MESSAGE("base-case windows certified: " << done);
    CHECK(done > 0);
}
