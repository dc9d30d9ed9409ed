#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "selfcontract/generators.hpp"
#include "selfcontract/partition.hpp"
#include "selfcontract/sampling.hpp"

#include <cmath>
#include <set>

using namespace sc;

namespace {

Vec v2(double a, double b)
{
    Vec v(2);
    v << a, b;
    return v;
}

int patch_with_normal(const Partition& p, const Vec& nu)
{
    for (const auto& b : p.patches())
        if ((b.normal - nu).norm() < 1e-12) return b.index;
    return -1;
}

}  // namespace

TEST_CASE("max-norm partitions follow the facets")
{
    Partition p = Partition::build(Gauge::max_norm(2), 0.3);
    CHECK(p.N() == 4);
    for (Vec nu : {v2(1, 0), v2(-1, 0), v2(0, 1), v2(0, -1)}) CHECK(patch_with_normal(p, nu) > 0);

    // the cylinder over the square: four sides plus top and bottom
    Partition c = Partition::build(Gauge::cylinder(Gauge::max_norm(2)), 0.3);
    CHECK(c.N() == 6);
    CHECK(patch_with_normal(c, Vec::Unit(3, 2)) > 0);
    CHECK(patch_with_normal(c, -Vec::Unit(3, 2)) > 0);

    Gauge rp = random_symmetric_polytope(3, 2);
    CHECK(Partition::build(rp, 0.3).N() == rp.facets().rows());
}

TEST_CASE("euclidean cover with delta = pi/4")
{
    Partition p = Partition::build(Gauge::euclidean(2), kPi / 4);
    CHECK(p.N() <= 8);
    Rng rng(1);
    std::set<int> used;
    for (int i = 0; i < 10000; ++i) {
        Vec d = random_unit(rng, 2);
        int a = p.classify_direction(d);
        REQUIRE(a >= 1);
        REQUIRE(a <= p.N());
        CHECK(p.classify_direction(d) == a);
        CHECK(p.normal_condition(a, d));
        used.insert(a);
    }
    CHECK(static_cast<int>(used.size()) == p.N());
}

TEST_CASE("classification relative to an apex")
{
    Partition p = Partition::build(Gauge::max_norm(2), 0.3);
    int top = patch_with_normal(p, v2(0, 1));
    CHECK(p.classify(v2(0, 0), v2(0.2, 1)) == top);
    CHECK(p.classify(v2(1, 1), v2(1.2, 2)) == top);
    CHECK(p.classify(v2(0, 0), v2(0, 0)) == 0);
    int corner = p.classify(v2(0, 0), v2(1, 1));
    for (int t = 0; t < 5; ++t) CHECK(p.classify(v2(0, 0), v2(1, 1)) == corner);
    CHECK((corner == top || corner == patch_with_normal(p, v2(1, 0))));
}

TEST_CASE("admissible indices")
{
    Partition p = Partition::build(Gauge::max_norm(2), 0.3);
    std::vector<int> near = admissible_indices(p, Subspace::axis(v2(1, 0)), 0.05);
    std::set<int> want{patch_with_normal(p, v2(1, 0)), patch_with_normal(p, v2(-1, 0))};
    CHECK(std::set<int>(near.begin(), near.end()) == want);

    std::vector<int> all = admissible_indices(p, Subspace::full(2), 0.1);
    CHECK(static_cast<int>(all.size()) == p.N());

    // eps = 0 on a generic line: the two patches holding its exit points
    Vec dir = v2(1, 0.3).normalized();
    std::vector<int> exits = admissible_indices(p, Subspace::axis(dir), 0.0);
    std::set<int> ew{p.classify_direction(dir), p.classify_direction(-dir)};
    CHECK(std::set<int>(exits.begin(), exits.end()) == ew);

    // every subspace meets the boundary somewhere
    Partition e = Partition::build(Gauge::euclidean(3), 0.4);
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        int k = std::uniform_int_distribution<int>(1, 2)(rng);
        std::vector<Vec> vs;
        for (int i = 0; i < k; ++i) vs.push_back(gaussian_vec(rng, 3));
        CHECK_FALSE(admissible_indices(e, Subspace::span(vs, 3), 0.2, 500).empty());
    }
}

TEST_CASE("admissible tuples and frames")
{
    Partition p = Partition::build(Gauge::max_norm(2), 0.3);
    int top = patch_with_normal(p, v2(0, 1)), right = patch_with_normal(p, v2(1, 0));
    int bottom = patch_with_normal(p, v2(0, -1));
    double xi = 0.1 / 2 + kPi / 4;
    CHECK(is_admissible(p, {top}, 0.01));
    CHECK(is_admissible(p, {top, right}, xi));
    // parallel axes: the earlier one is orthogonal to the complement of the later one
    int lvl = -1;
    CHECK_FALSE(is_admissible(p, {top, bottom}, 1.5, &lvl));
    CHECK(lvl == 0);

    Frame f = frame_from_tuple(p, {right}, xi);
    REQUIRE(f.axes.size() == 1);
    CHECK((f.axes[0] - v2(1, 0)).norm() < 1e-12);
    CHECK(std::abs(std::abs(f.pi[0].basis().col(0).dot(v2(0, 1))) - 1) < 1e-12);

    Frame s = frame_from_tuple(p, {top}, xi);
    CHECK((s.axes[0] - v2(0, 1)).norm() < 1e-12);

    Frame full = frame_from_tuple(p, {right, top}, xi);
    REQUIRE(full.x1.size() == 2);
    CHECK(std::abs(std::abs(full.x1.dot(v2(1, 0))) - 1) < 1e-12);

    // Pi subspaces are orthogonal to the later axes
    Partition e = Partition::build(Gauge::euclidean(3), 0.5);
    Rng rng(2);
    int checked = 0;
    for (int t = 0; t < 200 && checked < 20; ++t) {
        std::vector<int> tuple;
        for (int i = 0; i < 3; ++i) tuple.push_back(std::uniform_int_distribution<int>(1, e.N())(rng));
        if (!is_admissible(e, tuple, 1.2)) continue;
        ++checked;
        Frame fr = frame_from_tuple(e, tuple, 1.2);
        for (size_t k = 0; k < fr.axes.size(); ++k)
            for (size_t j = k; j < fr.axes.size(); ++j)
                CHECK((fr.pi[k].basis().transpose() * fr.axes[j]).norm() < 1e-10);
    }
    CHECK(checked > 0);
}

TEST_CASE("eps0 and xi_bar")
{
    Eps0Estimate e = estimate_eps0_xibar(Gauge::euclidean(2), 2000);
    // radial normals: the normal angle equals the point angle
    CHECK(e.xi_bar >= e.eps0 - 1e-12);
    CHECK(e.xi_bar <= e.eps0 + kPi / 64 + kPi / 256 + 1e-9);
    for (size_t k = 1; k < e.xi_of_eps.size(); ++k) CHECK(e.xi_of_eps[k] >= e.xi_of_eps[k - 1] - 1e-12);

    Eps0Estimate m = estimate_eps0_xibar(Gauge::max_norm(2), 2000);
    CHECK(m.eps0 > 0);
    CHECK(m.xi_bar < kPi / 2);
    // resample: boundary points within eps0 of a random line have a normal within xi_bar of it
    Gauge g = Gauge::max_norm(2);
    Rng rng(12);
    for (int t = 0; t < 10000; ++t) {
        Vec l = random_unit(rng, 2);
        Subspace pi = Subspace::axis(l);
        double a = uniform(rng, -m.eps0, m.eps0);
        Vec d = std::cos(a) * l + std::sin(a) * v2(-l(1), l(0));
        BoundaryPoint bp = g.boundary_point(d);
        double best = kPi;
        for (const Vec& nu : bp.normals) best = std::min(best, vector_subspace_angle(nu, pi));
        CHECK(best <= m.xi_bar + 1e-9);
    }
}

TEST_CASE("eps1 for the euclidean norm")
{
    Eps1Estimate e = estimate_eps1(Gauge::euclidean(2), 2000, 0.2);
    CHECK(std::abs(e.eps_bar - std::acos(2.0 / 3.0) / 2) < 1e-3);
    CHECK(e.eps1 <= e.eps_bar);
    CHECK(e.eps1 <= (kPi / 2 - 0.2) / 4 + 1e-12);
}

TEST_CASE("constants")
{
    CHECK(c_k(2, kPi / 4) == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-12));
    CHECK(c_k(1, 0.7) == 1.0);
    for (double z : {0.1, 0.5, 1.0})
        CHECK(c_k(3, z) == doctest::Approx(std::pow(1 + std::tan(z) + 1 / std::cos(z), 2)).epsilon(1e-12));

    Constants c = compute_constants(3, 0.3, 0.4, 0.05, 0.3);
    CHECK(c.xi == doctest::Approx(0.2 + kPi / 4));
    CHECK(c.delta_bar == doctest::Approx(kPi / 4 - 0.2));
    CHECK(c.delta0 <= c.delta_bar);
    CHECK(std::abs(c.recompute_delta0() - c.delta0) <= 1e-12);
    CHECK(c.c_xi == doctest::Approx(c_k(3, c.xi)));

    Constants est = estimate_constants(Gauge::max_norm(2), 2000, 4);
    CHECK(est.n == 2);
    CHECK(est.delta0 > 0);
    CHECK(est.delta0 <= est.delta_bar);
    CHECK(est.eps1 <= est.eps_bar);
}

TEST_CASE("cone descent")
{
    Partition p = Partition::build(Gauge::max_norm(2), 0.3);
    int top = patch_with_normal(p, v2(0, 1));
    // apex at the origin, points in the top triangle dropping in x2
    Polyline in(2, {v2(0.5, 3), v2(-1, 2.5), v2(0.3, 1), v2(0, 0)});
    CHECK(check_cone_descent(p, in, top, 0.1).ok);
    CHECK(check_cone_descent(p, Polyline(2, {v2(0, 1), v2(0, 0)}), top, 0.1).ok);
    // a segment at exactly delta to the horizontal is not delta-vertical
    double d = 0.2;
    Polyline flat(2, {v2(-1, 2), v2(-1 + std::cos(d), 2 + std::sin(d)), v2(0, 0)});
    CHECK(check_cone_descent(p, flat, top, d + 1e-12).ok);
    Polyline up(2, {v2(0, 1), v2(0.1, 2), v2(0, 0)});
    DescentCheck bad = check_cone_descent(p, up, top, 0.1);
    CHECK_FALSE(bad.ok);
    CHECK(bad.index == 0);
}

TEST_CASE("projection domination")
{
    std::vector<Vec> ortho{Vec::Unit(3, 0), Vec::Unit(3, 1)};
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        Vec a = gaussian_vec(rng, 3);
        Domination d = projection_domination(ortho, 0.01, a);
        CHECK(d.lhs <= d.rhs + 1e-12);
    }
    Vec on = Vec::Unit(3, 0) * 2.5;
    Domination d = projection_domination(ortho, 0.3, on);
    CHECK(d.lhs == doctest::Approx(2.5));

    // skewed three-axis frame in R^3 with zeta = pi/6
    double z = kPi / 6;
    Vec x3 = Vec::Unit(3, 2);
    double z0 = 0.999 * z;  // stay strictly inside the angle condition
    Vec x2 = std::cos(z0) * Vec::Unit(3, 1) + std::sin(z0) * x3;
    Vec x1 = std::cos(z0) * Vec::Unit(3, 0) + std::sin(z0) * (x2 + x3).normalized();
    std::vector<Vec> skew{x1, x2, x3};
    for (int t = 0; t < 1000; ++t) {
        Domination s = projection_domination(skew, z, gaussian_vec(rng, 3));
        CHECK(s.lhs <= s.rhs + 1e-9);
    }
    CHECK_THROWS_AS(projection_domination({Vec::Unit(2, 0), Vec(v2(1, 1).normalized())}, 0.1, v2(1, 1)),
                    lemma_error);
}
