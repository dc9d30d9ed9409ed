#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "selfcontract/certify.hpp"
#include "selfcontract/generators.hpp"
#include "selfcontract/io.hpp"

using namespace sc;

TEST_CASE("polyline CSV")
{
    Polyline p = parse_polyline("# square\ndim=2\n0,0\n0,1\n1,1\n1,0\n");
    CHECK(p.size() == 4);
    CHECK(p[2](0) == 1.0);
    Polyline h = harmonic_staircase(5);
    Polyline back = parse_polyline(polyline_csv(h, "seed=1"));
    REQUIRE(back.size() == h.size());
    for (int i = 0; i < h.size(); ++i) CHECK(back[i] == h[i]);

    CHECK_THROWS_AS(parse_polyline("dim=2\n0,0\n1\n"), input_error);
    CHECK_THROWS_AS(parse_polyline("dim=2\n0,zero\n"), input_error);
    CHECK_THROWS_AS(parse_polyline(""), input_error);
}

TEST_CASE("polyline JSON")
{
    Polyline p = parse_polyline(R"({"dim": 2, "points": [[0,0],[0,1],[1,1]]})");
    CHECK(p.size() == 3);
    Polyline q = polyline_from_json(polyline_json(p));
    for (int i = 0; i < p.size(); ++i) CHECK(q[i] == p[i]);
    CHECK_THROWS_AS(parse_polyline(R"({"dim": 3, "points": [[0,0]]})"), input_error);
}

TEST_CASE("gauge JSON")
{
    Gauge sq = gauge_from_json(json::parse(R"({"dim":2,"kind":"pnorm","p":"inf","symmetric":true})"));
    CHECK(sq.kind() == Gauge::Kind::pnorm);
    Vec x(2);
    x << 0.5, -0.25;
    CHECK(sq(x) == 0.5);

    Gauge poly = gauge_from_json(json::parse(R"({"dim":2,"kind":"polytope","halfspaces":[[1,0],[0,1]],"symmetric":true})"));
    CHECK(poly.facets().rows() == 4);
    CHECK(poly(x) == 0.5);

    for (const Gauge& g : {Gauge::euclidean(3), Gauge::pnorm(2, 3), Gauge::max_norm(4), poly,
                           random_symmetric_polytope(3, 4), Gauge::cylinder(Gauge::pnorm(2, 1.5), 0.7)}) {
        Gauge r = gauge_from_json(gauge_json(g));
        CHECK(r.dim() == g.dim());
        CHECK(r.facets().rows() == g.facets().rows());
        Vec y = Vec::LinSpaced(g.dim(), -1.0, 2.0);
        CHECK(r(y) == doctest::Approx(g(y)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(gauge_from_json(json::parse(R"({"dim":2,"kind":"banana"})")), input_error);
    CHECK_THROWS_AS(gauge_from_json(json::parse(R"({"kind":"pnorm","p":3})")), input_error);
}

TEST_CASE("constants JSON")
{
    Constants c = estimate_constants(Gauge::max_norm(2), 1000, 3);
    Constants r = constants_from_json(constants_json(c));
    CHECK(r.n == c.n);
    CHECK(r.eps0 == c.eps0);
    CHECK(r.delta0 == c.delta0);
    CHECK(r.c_xi == c.c_xi);
}

TEST_CASE("certificate JSON round trip")
{
    for (bool general : {false, true}) {
        Polyline p = greedy_random(Gauge::max_norm(2), 12, 5).poly;
        Certificate c = general ? certify_general(p, Gauge::max_norm(2)) : certify_easycase(p);
        json j = certificate_json(c);
        CHECK(j.contains("root_claim"));
        CHECK(j.contains("constants_hash"));
        Certificate back = certificate_from_json(json::parse(j.dump()));
        CHECK(back.steps.size() == c.steps.size());
        CHECK(check_certificate(back).ok);

        // edits to the stored numbers are caught after reloading
        json bad = j;
        bad["steps"][back.root]["rhs"] = 0.5 * c.steps[c.root].rhs;
        CHECK_FALSE(check_certificate(certificate_from_json(bad)).ok);
    }
}

TEST_CASE("svg")
{
    std::string s = polyline_svg(square_path(), Gauge::max_norm(2));
    CHECK(s.find("<svg") != std::string::npos);
    CHECK(s.find("polyline") != std::string::npos);
    CHECK_THROWS_AS(polyline_svg(harmonic_staircase(3), Gauge::euclidean(3)), input_error);
}
