#include "experiments.hpp"

#include "selfcontract/certify.hpp"
#include "selfcontract/generators.hpp"
#include "selfcontract/io.hpp"
#include "selfcontract/parallel.hpp"
#include "selfcontract/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>

namespace sc {

namespace {

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string path_in(const std::string& dir, const std::string& name)
{
    return (std::filesystem::path(dir) / name).string();
}

// ---- E1: the harmonic staircase ratio grows without bound -------------------

int harmonic_growth(unsigned, const std::string& out, std::ostream& log)
{
    std::ostringstream csv;
    csv << "n,length,endpoint_distance,ratio,self_contracted\n";
    bool ok = true;
    double prev = 0;
    for (int n = 2; n <= 200; ++n) {
        Polyline p = harmonic_staircase(n);
        Gauge g = Gauge::euclidean(n);
        bool scon = is_self_contracted(p, g).ok;
        double l = length(p), d = (p.back() - p.front()).norm();
        double r = l / d;
        ok = ok && scon && r > prev;
        prev = r;
        csv << n << ',' << num(l) << ',' << num(d) << ',' << num(r) << ',' << (scon ? 1 : 0) << '\n';
        if (n == 100) log << "n=100 ratio " << num(r) << '\n';
    }
    write_file(path_in(out, "E1_harmonic_growth.csv"), csv.str());
    log << "ratio strictly increasing and every staircase self-contracted: " << (ok ? "yes" : "NO") << '\n';
    return ok ? 0 : 1;
}

// ---- E2: easy-case certificates on random max-norm instances ----------------

int easycase_suite(unsigned seed, const std::string& out, std::ostream& log)
{
    const int count = 1000;
    Gauge g = Gauge::max_norm(2);
    struct Row {
        int r = 0;
        unsigned s = 0;
        double ell = 0, d = 0, ratio = 0, C = 0;
        bool valid = false;
        std::string why;
        Polyline poly;
    };
    std::vector<Row> rows(count);
    Rng rng(seed);
    for (Row& row : rows) {
        row.r = std::uniform_int_distribution<int>(3, 40)(rng);
        row.s = static_cast<unsigned>(rng() & 0xffffffffu);
    }
    parallel_for(count, [&](int i) {
        Row& row = rows[i];
        row.poly = greedy_random(g, row.r, row.s).poly;
        row.r = row.poly.size();
        row.ell = length(row.poly);
        row.d = (row.poly.back() - row.poly.front()).norm();
        row.ratio = row.ell / row.d;
        try {
            Certificate c = certify_easycase(row.poly);
            CheckResult chk = check_certificate(c);
            row.valid = chk.ok && row.ratio <= c.effective_C * (1 + 1e-12);
            row.C = c.effective_C;
            if (!chk.ok) row.why = chk.why;
        } catch (const std::exception& e) {
            row.why = e.what();
        }
    });

    std::ostringstream csv;
    csv << "instance,seed,r,length,endpoint_distance,ratio,effective_C,valid\n";
    int valid = 0;
    double worst = 0;
    int worst_i = 0;
    for (int i = 0; i < count; ++i) {
        const Row& row = rows[i];
        valid += row.valid;
        if (row.ratio > worst) worst = row.ratio, worst_i = i;
        csv << i << ',' << row.s << ',' << row.r << ',' << num(row.ell) << ',' << num(row.d) << ','
            << num(row.ratio) << ',' << num(row.C) << ',' << (row.valid ? 1 : 0) << '\n';
        if (!row.valid) log << "instance " << i << " failed: " << row.why << '\n';
    }
    write_file(path_in(out, "E2_easycase_instances.csv"), csv.str());

    // ratio histogram in bins of 0.25
    std::map<int, int> bins;
    for (const Row& row : rows) ++bins[static_cast<int>(std::floor(row.ratio / 0.25))];
    std::ostringstream hist;
    hist << "bin_low,bin_high,count\n";
    for (auto [b, c] : bins) hist << num(b * 0.25) << ',' << num((b + 1) * 0.25) << ',' << c << '\n';
    write_file(path_in(out, "E2_ratio_histogram.csv"), hist.str());
    write_file(path_in(out, "E2_worst_instance.svg"), polyline_svg(rows[worst_i].poly, g));

    log << "valid certificates: " << valid << "/" << count << " (" << num(100.0 * valid / count) << "%)\n";
    log << "largest measured ratio " << num(worst) << " (instance " << worst_i << ")\n";
    return valid == count ? 0 : 1;
}

// ---- E3: Monte-Carlo checks of the pointwise lemmas -------------------------

Vec rotate_towards(const Vec& dir, double theta, Rng& rng)
{
    int n = static_cast<int>(dir.size());
    Vec u = dir.normalized();
    Vec w = random_unit(rng, n);
    w -= w.dot(u) * u;
    if (w.norm() < 1e-9) return u;
    return std::cos(theta) * u + std::sin(theta) * w.normalized();
}

struct LemmaTally {
    std::string gauge, lemma;
    int samples = 0, violations = 0;
    double worst = 0;  // largest lhs / rhs seen
    double constant = 0;
};

// self-contracted triples with angle A1 A2 A3 <= 2 eps; half of them put A3 on
// the mediatrix of A1 A2, where the contraction is tightest
LemmaTally horiz_contraction_suite(const Gauge& g, double eps, int samples, Rng& rng, bool mediatrix_only)
{
    LemmaTally t;
    t.constant = eps;
    int n = g.dim();
    while (t.samples < samples) {
        Vec A2 = gaussian_vec(rng, n);
        Vec A1 = A2 + random_unit(rng, n) * uniform(rng, 0.5, 2.0);
        double theta = uniform(rng, 0.0, 2 * eps);
        Vec u = rotate_towards(A1 - A2, theta, rng);
        Vec A3;
        if (mediatrix_only || uniform(rng) < 0.5) {
            auto z = mediatrix_point(g, A1, A2, A2, u);
            if (!z) continue;
            A3 = *z;
        } else {
            A3 = A2 + uniform(rng, 0.0, 1.2) * (A1 - A2).norm() * u;
            if (g(A3 - A2) > g(A3 - A1)) continue;
        }
        if (angle_between(A1 - A2, A3 - A2) > 2 * eps && (A3 - A2).norm() > 0) continue;
        ++t.samples;
        double lhs = (A3 - A2).norm(), rhs = 0.75 * (A1 - A2).norm();
        t.worst = std::max(t.worst, lhs / rhs);
        bool ok = mediatrix_only ? lhs <= rhs + 1e-9 : check_horiz_contraction(A1, A2, A3, g, eps);
        if (!ok) ++t.violations;
    }
    return t;
}

LemmaTally reverse_triangle_suite(const Gauge& g, int samples, Rng& rng)
{
    LemmaTally t;
    t.constant = 1 + g.diameter() / g.inradius();
    int n = g.dim();
    while (t.samples < samples) {
        Vec A1 = Vec::Zero(n);
        Vec A2 = gaussian_vec(rng, n);
        Vec A3 = A2 + gaussian_vec(rng, n) * uniform(rng, 0.05, 3.0);
        if (g(A3 - A2) > g(A3 - A1)) continue;
        ++t.samples;
        double r = check_reverse_triangle(A1, A2, A3, g);
        t.worst = std::max(t.worst, r / t.constant);
        if (r > t.constant + 1e-9) ++t.violations;
    }
    return t;
}

// axes built from the last one backwards, each within zeta of the complement of the later ones
std::vector<Vec> random_frame(int n, int k, double zeta, Rng& rng)
{
    std::vector<Vec> axes{random_unit(rng, n)};
    while (static_cast<int>(axes.size()) < k) {
        Subspace later = Subspace::span(axes, n);
        Vec c = later.complement().project(random_unit(rng, n));
        Vec w = later.project(random_unit(rng, n));
        if (c.norm() < 1e-6 || w.norm() < 1e-6) continue;
        double th = uniform(rng, 0.0, zeta);
        axes.insert(axes.begin(), std::cos(th) * c.normalized() + std::sin(th) * w.normalized());
    }
    return axes;
}

LemmaTally projection_suite(int frames, int per_frame, Rng& rng)
{
    LemmaTally t;
    t.gauge = "frames n<=6";
    t.constant = kPi / 6;
    for (int f = 0; f < frames; ++f) {
        int n = std::uniform_int_distribution<int>(2, 6)(rng);
        int k = std::uniform_int_distribution<int>(1, n)(rng);
        double zeta = uniform(rng, 0.01, kPi / 6);
        std::vector<Vec> axes = random_frame(n, k, zeta, rng);
        for (int s = 0; s < per_frame; ++s) {
            Domination d = projection_domination(axes, zeta, gaussian_vec(rng, n));
            ++t.samples;
            if (d.rhs > 0) t.worst = std::max(t.worst, d.lhs / d.rhs);
            if (d.lhs > d.rhs + 1e-9) ++t.violations;
        }
    }
    return t;
}

int lemma_validation(unsigned seed, const std::string& out, std::ostream& log)
{
    const int samples = 10000;
    std::vector<std::pair<std::string, Gauge>> gauges{{"euclidean2", Gauge::euclidean(2)},
                                                      {"max2", Gauge::max_norm(2)},
                                                      {"p3_2", Gauge::pnorm(2, 3)},
                                                      {"euclidean3", Gauge::euclidean(3)}};
    int m = static_cast<int>(gauges.size());
    std::vector<std::vector<LemmaTally>> per(m);
    std::vector<Constants> cs(m);
    parallel_for(m, [&](int i) {
        const Gauge& g = gauges[i].second;
        cs[i] = estimate_constants(g, 4000, seed);
        Rng rng(seed * 31u + i);
        LemmaTally h = horiz_contraction_suite(g, cs[i].eps1, samples, rng, false);
        h.lemma = "horizontal-contraction";
        LemmaTally md = horiz_contraction_suite(g, cs[i].eps_bar, samples, rng, true);
        md.lemma = "mediatrix-three-quarters";
        LemmaTally rv = reverse_triangle_suite(g, samples, rng);
        rv.lemma = "reverse-triangle";
        for (LemmaTally* t : {&h, &md, &rv}) t->gauge = gauges[i].first;
        per[i] = {h, md, rv};
    });
    Rng prng(seed * 31u + 1000);
    LemmaTally pr = projection_suite(100, 100, prng);
    pr.lemma = "projection-domination";

    std::ostringstream csv;
    csv << "gauge,lemma,constant,samples,violations,max_lhs_over_rhs\n";
    int bad = 0;
    auto emit = [&](const LemmaTally& t) {
        csv << t.gauge << ',' << t.lemma << ',' << num(t.constant) << ',' << t.samples << ',' << t.violations << ','
            << num(t.worst) << '\n';
        log << t.gauge << ' ' << t.lemma << ": " << t.violations << " violations in " << t.samples << '\n';
        bad += t.violations;
    };
    for (const auto& v : per)
        for (const auto& t : v) emit(t);
    emit(pr);
    write_file(path_in(out, "E3_lemma_validation.csv"), csv.str());

    std::ostringstream cc;
    cc << "gauge,eps0,xi_bar,eps1,eps_bar,delta0\n";
    for (int i = 0; i < m; ++i)
        cc << gauges[i].first << ',' << num(cs[i].eps0) << ',' << num(cs[i].xi_bar) << ',' << num(cs[i].eps1) << ','
           << num(cs[i].eps_bar) << ',' << num(cs[i].delta0) << '\n';
    write_file(path_in(out, "E3_constants.csv"), cc.str());
    return bad == 0 ? 0 : 1;
}

// ---- E4: adversarial lower bounds for the constant --------------------------

int adversarial_constants(unsigned seed, const std::string& out, std::ostream& log)
{
    const int budget = 3000;
    struct Cell {
        std::string gauge, start = "greedy";
        int n = 0, r = 0;
        double ratio = 0, C = 0;
        int evaluations = 0;
        bool valid = false;
    };
    auto make = [&](const std::string& name, int n) {
        if (name == "max") return Gauge::max_norm(n);
        if (name == "euclidean") return Gauge::euclidean(n);
        if (name == "p3") return Gauge::pnorm(n, 3);
        return random_symmetric_polytope(n, 7);
    };
    std::vector<Cell> cells;
    for (std::string gname : {"max", "euclidean", "p3", "polytope"})
        for (int n : {2, 3, 4})
            for (int r : {5, 10, 20}) cells.push_back({gname, "greedy", n, r});
    // runs started from the known extremal examples
    cells.push_back({"max", "square", 2, 4});
    for (int n : {2, 3, 4}) cells.push_back({"euclidean", "harmonic", n, n + 1});

    // one lifted context per (gauge, n)
    std::map<std::pair<std::string, int>, GeneralContext> ctx;
    for (const Cell& c : cells) ctx.emplace(std::make_pair(c.gauge, c.n), GeneralContext{});
    std::vector<std::pair<std::string, int>> keys;
    for (auto& kv : ctx) keys.push_back(kv.first);
    parallel_for(static_cast<int>(keys.size()), [&](int i) {
        ctx.at(keys[i]) = prepare_general(make(keys[i].first, keys[i].second), 4000, seed);
    });

    parallel_for(static_cast<int>(cells.size()), [&](int i) {
        Cell& c = cells[i];
        Gauge g = make(c.gauge, c.n);
        Polyline start;
        if (c.start == "square") start = square_path();
        if (c.start == "harmonic") start = harmonic_staircase(c.n);
        Adversarial a = adversarial_ratio(g, c.r, budget, seed * 7919u + i, start);
        c.ratio = a.ratio;
        c.evaluations = a.evaluations;
        try {
            Certificate cert = certify_general(a.poly, ctx.at({c.gauge, c.n}));
            c.valid = check_certificate(cert).ok;
            c.C = cert.effective_C;
        } catch (const std::exception&) {
            c.valid = false;
        }
    });

    std::ostringstream csv;
    csv << "gauge,n,r,start,budget,evaluations,best_ratio,certificate_effective_C,certificate_valid\n";
    bool ok = true;
    for (const Cell& c : cells) {
        csv << c.gauge << ',' << c.n << ',' << c.r << ',' << c.start << ',' << budget << ',' << c.evaluations << ','
            << num(c.ratio) << ',' << num(c.C) << ',' << (c.valid ? 1 : 0) << '\n';
        ok = ok && c.valid && c.ratio <= c.C * (1 + 1e-12);
        log << c.gauge << " n=" << c.n << " r=" << c.r << " (" << c.start << "): ratio " << num(c.ratio) << '\n';
    }
    write_file(path_in(out, "E4_adversarial_constants.csv"), csv.str());
    return ok ? 0 : 1;
}

}  // namespace

const std::vector<std::string>& experiment_ids()
{
    static const std::vector<std::string> ids{"E1_harmonic_growth", "E2_easycase_suite", "E3_lemma_validation",
                                              "E4_adversarial_constants"};
    return ids;
}

int run_experiment(const std::string& id, unsigned seed, const std::string& out, std::ostream& log)
{
    bool known = false;
    for (const auto& k : experiment_ids()) known = known || k == id;
    if (!known) throw input_error("unknown experiment id '" + id + "'");
    std::filesystem::create_directories(out);
    if (id == "E1_harmonic_growth") return harmonic_growth(seed, out, log);
    if (id == "E2_easycase_suite") return easycase_suite(seed, out, log);
    if (id == "E3_lemma_validation") return lemma_validation(seed, out, log);
    if (id == "E4_adversarial_constants") return adversarial_constants(seed, out, log);
    throw input_error("unknown experiment id '" + id + "'");
}

}  // namespace sc
