#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "selfcontract/gauge.hpp"
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

Mat square_halfspaces()
{
    Mat a(4, 2);
    a << 1, 0, -1, 0, 0, 1, 0, -1;
    return a;
}

bool has_normal(const BoundaryPoint& bp, const Vec& nu)
{
    for (const Vec& m : bp.normals)
        if ((m - nu).norm() < 1e-9) return true;
    return false;
}

// membership tests written straight from the ball definitions
std::function<bool(const Vec&)> pnorm_ball(double p)
{
    return [p](const Vec& x) {
        if (std::isinf(p)) return x.cwiseAbs().maxCoeff() <= 1.0;
        double s = 0;
        for (int i = 0; i < x.size(); ++i) s += std::pow(std::abs(x(i)), p);
        return s <= 1.0;
    };
}

std::function<bool(const Vec&)> halfspace_ball(const Mat& a)
{
    return [a](const Vec& x) {
        for (int i = 0; i < a.rows(); ++i)
            if (a.row(i).dot(x) > 1.0) return false;
        return true;
    };
}

}  // namespace

TEST_CASE("evaluation examples")
{
    CHECK(Gauge::max_norm(2)(v2(3, -4)) == doctest::Approx(4.0));
    CHECK(Gauge::euclidean(2)(v2(3, 4)) == doctest::Approx(5.0));
    Gauge sq = Gauge::polytope(square_halfspaces());
    CHECK(sq(v2(0.5, -0.25)) == doctest::Approx(0.5));
    CHECK(sq.symmetric());
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        Vec x = gaussian_vec(rng, 2);
        CHECK(sq(x) == doctest::Approx(Gauge::max_norm(2)(x)).epsilon(1e-14));
    }
}

TEST_CASE("dimension mismatch and zero direction are input errors")
{
    CHECK_THROWS_AS(Gauge::euclidean(3)(v2(1, 1)), input_error);
    CHECK_THROWS_AS(Gauge::max_norm(2).boundary_point(v2(0, 0)), input_error);
}

TEST_CASE("evaluation agrees with the bisection oracle")
{
    Mat skew(3, 2);
    skew << 1, 0.2, -0.5, 1, -0.4, -1.1;  // asymmetric triangle around 0
    std::vector<std::pair<Gauge, std::function<bool(const Vec&)>>> cases{
        {Gauge::euclidean(3), pnorm_ball(2)},
        {Gauge::pnorm(3, 3), pnorm_ball(3)},
        {Gauge::pnorm(4, 1), pnorm_ball(1)},
        {Gauge::pnorm(2, 1.5), pnorm_ball(1.5)},
        {Gauge::max_norm(3), pnorm_ball(kInf)},
        {Gauge::polytope(skew), halfspace_ball(skew)},
    };
    Gauge rp = random_symmetric_polytope(3, 11);
    cases.push_back({rp, halfspace_ball(rp.facets())});
    Gauge cyl = Gauge::cylinder(Gauge::max_norm(2), 0.5);
    cases.push_back({cyl, [](const Vec& x) {
                         return 0.5 * x.head(2).cwiseAbs().maxCoeff() <= 1.0 && std::abs(x(2)) <= 1.0;
                     }});
    Rng rng(7);
    for (auto& [g, inside] : cases) {
        CAPTURE(g.describe());
        for (int i = 0; i < 1000; ++i) {
            Vec x = gaussian_vec(rng, g.dim()) * uniform(rng, 0.01, 10.0);
            double want = minkowski_oracle(inside, x);
            REQUIRE(std::abs(g(x) - want) <= 1e-9 * std::max(1.0, want));
        }
    }
}

TEST_CASE("boundary points and their normals")
{
    BoundaryPoint e = Gauge::euclidean(2).boundary_point(v2(0, 2));
    CHECK((e.point - v2(0, 1)).norm() < 1e-12);
    REQUIRE(e.normals.size() == 1);
    CHECK(has_normal(e, v2(0, 1)));

    Gauge m = Gauge::max_norm(2);
    BoundaryPoint c = m.boundary_point(v2(1, 1));
    CHECK((c.point - v2(1, 1)).norm() < 1e-12);
    CHECK(c.normals.size() == 2);
    CHECK(has_normal(c, v2(1, 0)));
    CHECK(has_normal(c, v2(0, 1)));

    BoundaryPoint f = m.boundary_point(v2(2, 1));
    CHECK((f.point - v2(1, 0.5)).norm() < 1e-12);
    REQUIRE(f.normals.size() == 1);
    CHECK(has_normal(f, v2(1, 0)));
}

TEST_CASE("normals support the ball")
{
    std::vector<Gauge> gs{Gauge::euclidean(3), Gauge::pnorm(3, 3), Gauge::pnorm(2, 1), Gauge::max_norm(3),
                          random_symmetric_polytope(3, 5), Gauge::cylinder(Gauge::euclidean(2), 2.0)};
    Rng rng(9);
    for (const Gauge& g : gs) {
        CAPTURE(g.describe());
        for (int i = 0; i < 1000; ++i) {
            BoundaryPoint bp = g.boundary_point(gaussian_vec(rng, g.dim()));
            CHECK(std::abs(g(bp.point) - 1.0) < 1e-10);
            REQUIRE_FALSE(bp.normals.empty());
            Vec y = gaussian_vec(rng, g.dim());
            y /= std::max(1.0, g(y)) * (1 + 1e-15);
            for (const Vec& nu : bp.normals) {
                CHECK(std::abs(nu.norm() - 1.0) < 1e-12);
                CHECK((y - bp.point).dot(nu) <= 1e-10);
            }
        }
    }
}

TEST_CASE("mediatrix points")
{
    Gauge e = Gauge::euclidean(2);
    auto z = mediatrix_point(e, v2(0, 1), v2(0, 0), v2(0, 0.5), v2(1, 0));
    REQUIRE(z);
    CHECK((*z - v2(0, 0.5)).norm() < 1e-9);

    z = mediatrix_point(e, v2(1, 0), v2(0, 0), v2(0, 0), v2(1, 1));
    REQUIRE(z);
    CHECK((*z - v2(0.5, 0.5)).norm() < 1e-9);

    // on the line through A and B the equidistant point is the midpoint
    z = mediatrix_point(Gauge::max_norm(2), v2(1, 0), v2(0, 0), v2(0, 0), v2(1, 0));
    REQUIRE(z);
    CHECK((*z - v2(0.5, 0)).norm() < 1e-9);

    CHECK_THROWS_AS(mediatrix_point(e, v2(1, 1), v2(1, 1), v2(0, 0), v2(1, 0)), input_error);

    // symmetric gauges: a point of M(A,B) is a point of M(B,A)
    Rng rng(4);
    for (const Gauge& g : {Gauge::max_norm(2), Gauge::pnorm(2, 3), Gauge::euclidean(2)}) {
        for (int i = 0; i < 200; ++i) {
            Vec A = gaussian_vec(rng, 2), B = gaussian_vec(rng, 2);
            auto p = mediatrix_point(g, A, B, B, gaussian_vec(rng, 2));
            if (!p) continue;
            double ab = g(A - B);
            CHECK(std::abs(g(A - *p) - g(B - *p)) <= 1e-9 * ab);
            CHECK(std::abs(g(*p - A) - g(*p - B)) <= 1e-9 * ab);
        }
    }
}

TEST_CASE("euclidean chord gap is 2 cos alpha")
{
    Gauge e = Gauge::euclidean(2);
    for (double a : {kPi / 6, kPi / 4, kPi / 3}) {
        CAPTURE(a);
        CHECK(std::abs(chord_gap(e, a, 2000) - 2 * std::cos(a)) < 1e-3);
    }
    // the infimum over a larger angle set can only be smaller; each angle gets its own
    // sample grid, so allow the grid's resolution
    for (const Gauge& g : {Gauge::max_norm(2), Gauge::pnorm(2, 3)}) {
        double prev = kInf;
        for (double a = 0.1; a < 1.4; a += 0.1) {
            double c = chord_gap(g, a, 500);
            CHECK(c <= prev + 1e-4);
            prev = c;
        }
    }
}
