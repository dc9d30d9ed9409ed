// sctool: file-level front end.  Exit codes: 0 ok/valid, 1 semantic failure
// (not self-contracted, certificate invalid), 2 bad input.

#include "experiments.hpp"

#include "selfcontract/certify.hpp"
#include "selfcontract/generators.hpp"
#include "selfcontract/io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

using namespace sc;

namespace {

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string gauge_hash(const Gauge& g)
{
    std::ostringstream s;
    s << std::hex << std::hash<std::string>{}(gauge_json(g).dump());
    return s.str();
}

std::string out_file(const std::string& dir, const std::string& name)
{
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

bool is_square_norm(const Gauge& g)
{
    return g.dim() == 2 && g.kind() == Gauge::Kind::pnorm && std::isinf(g.p());
}

Vec parse_point(const std::string& text)
{
    std::vector<double> xs;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            xs.push_back(std::stod(tok, &used));
        } catch (const std::exception&) {
            throw input_error("bad coordinate '" + tok + "'");
        }
    }
    if (xs.empty()) throw input_error("empty point");
    return Eigen::Map<Vec>(xs.data(), xs.size());
}

FunctionSpec function_from_json(const json& j)
{
    auto mat = [](const json& a) {
        Mat m(a.size(), a.at(0).size());
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t k = 0; k < a[i].size(); ++k) m(i, k) = a[i][k].get<double>();
        return m;
    };
    auto vec = [](const json& a) {
        Vec v(a.size());
        for (size_t i = 0; i < a.size(); ++i) v(i) = a[i].get<double>();
        return v;
    };
    try {
        FunctionSpec f;
        std::string kind = j.at("kind");
        if (kind == "quadratic") {
            f.kind = FunctionSpec::Kind::quadratic;
            f.Q = mat(j.at("Q"));
            f.c = j.contains("c") ? vec(j.at("c")) : Vec::Zero(f.Q.rows());
        } else if (kind == "max_affine") {
            f.kind = FunctionSpec::Kind::max_affine;
            f.A = mat(j.at("A"));
            f.b = vec(j.at("b"));
            f.smoothing = j.value("smoothing", 0.05);
        } else {
            throw input_error("function kind must be quadratic or max_affine");
        }
        return f;
    } catch (const json::exception& e) {
        throw input_error(std::string("bad function JSON: ") + e.what());
    }
}

// ---- subcommands ----------------------------------------------------------

struct Opts {
    std::string poly, gauge, constants, out = ".", mode = "general", cert, id, kind = "greedy";
    std::string function, x0, rule = "fixed", svg;
    unsigned seed = 1;
    double tol = -1, delta = -1, eta = 0.1, scale = 1.0;
    int budget = 200000, n = 2, r = 10, steps = 50, samples = 4000;
    bool lifted = false;
};

int cmd_check(const Opts& o)
{
    Polyline p = read_polyline(o.poly);
    Gauge g = read_gauge(o.gauge);
    if (p.dim != g.dim()) throw input_error("polyline and gauge dimensions differ");
    SCResult s = is_self_contracted(p, g);
    double l = length(p), d = (p.back() - p.front()).norm();
    std::cout << "self_contracted: " << (s.ok ? "true" : "false") << '\n';
    if (!s.ok) std::cout << "witness: (" << s.witness[0] << "," << s.witness[1] << "," << s.witness[2] << ")\n";
    std::cout << "length: " << num(l) << '\n' << "endpoint_distance: " << num(d) << '\n';
    std::cout << "ratio: " << (d > 0 ? num(l / d) : std::string("inf")) << '\n';
    return s.ok ? 0 : 1;
}

int cmd_certify(const Opts& o)
{
    Polyline p = read_polyline(o.poly);
    Gauge g = read_gauge(o.gauge);
    if (p.dim != g.dim()) throw input_error("polyline and gauge dimensions differ");
    SCResult s = is_self_contracted(p, g);
    if (!s.ok) {
        std::cout << "not self-contracted: witness (" << s.witness[0] << "," << s.witness[1] << "," << s.witness[2]
                  << ")\n";
        return 1;
    }
    Certificate c;
    try {
        if (o.mode == "easy") {
            if (!is_square_norm(g)) throw input_error("--mode easy needs the max-norm in R^2");
            c = certify_easycase(p);
        } else if (o.mode == "general") {
            Constants given;
            const Constants* gp = nullptr;
            if (!o.constants.empty()) {
                given = constants_from_json(json::parse(read_file(o.constants)));
                gp = &given;
            }
            GeneralContext ctx = prepare_general(g, o.samples, o.seed, o.delta, 4000, gp);
            GeneralOptions opt;
            opt.budget = o.budget;
            c = certify_general(p, ctx, opt);
        } else {
            throw input_error("--mode must be easy or general");
        }
    } catch (const lemma_error& e) {
        std::cout << "uncertifiable: " << e.what() << " at index " << e.index + 1 << '\n';
        return 1;
    } catch (const json::exception& e) {
        throw input_error(std::string("bad constants file: ") + e.what());
    }
    if (o.tol > 0) c.tol = o.tol;
    write_file(out_file(o.out, "certificate.json"), certificate_json(c).dump(1) + "\n");
    CheckResult chk = check_certificate(c);
    std::cout << "steps: " << c.steps.size() << '\n';
    std::cout << "effective_C: " << num(c.effective_C) << '\n';
    std::cout << "measured_ratio: " << num(c.ell / c.dist1r) << '\n';
    std::cout << "fallback_rate: " << num(c.fallback_rate()) << " (" << c.fallback_steps << " steps)\n";
    if (c.partial) std::cout << "partial: step budget exhausted\n";
    std::cout << "check: " << (chk.ok ? "valid" : "INVALID at step " + chk.path + ": " + chk.why) << '\n';
    return chk.ok ? 0 : 1;
}

int cmd_verify(const Opts& o)
{
    Certificate c;
    try {
        c = certificate_from_json(json::parse(read_file(o.cert)));
    } catch (const json::exception& e) {
        throw input_error(std::string("bad certificate file: ") + e.what());
    }
    CheckResult chk = check_certificate(c, o.tol);
    std::cout << "steps: " << c.steps.size() << '\n' << "effective_C: " << num(c.effective_C) << '\n';
    std::cout << "check: " << (chk.ok ? "valid" : "INVALID at step " + chk.path + ": " + chk.why) << '\n';
    return chk.ok ? 0 : 1;
}

int cmd_generate(const Opts& o)
{
    Polyline p;
    std::ostringstream prov;
    prov << "generator=" << o.kind << " seed=" << o.seed;
    std::optional<Gauge> g;
    if (!o.gauge.empty()) g = read_gauge(o.gauge);
    auto need_gauge = [&] {
        if (!g) throw input_error("--gauge is required for this generator");
        return *g;
    };
    bool report_sc = false, sc_flag = true;
    if (o.kind == "square") {
        p = square_path();
    } else if (o.kind == "harmonic") {
        p = harmonic_staircase(o.n);
        prov << " n=" << o.n;
    } else if (o.kind == "greedy") {
        Generated gen = greedy_random(need_gauge(), o.r, o.seed, o.scale);
        p = gen.poly;
        prov << " r=" << o.r << " scale=" << o.scale << (gen.starved ? " starved=1" : "");
    } else if (o.kind == "adversarial") {
        Adversarial a = adversarial_ratio(need_gauge(), o.r, o.budget, o.seed);
        p = a.poly;
        prov << " r=" << o.r << " budget=" << o.budget << " ratio=" << num(a.ratio);
    } else if (o.kind == "descent") {
        if (o.function.empty() || o.x0.empty()) throw input_error("descent needs --function and --x0");
        FunctionSpec f;
        try {
            f = function_from_json(json::parse(read_file(o.function)));
        } catch (const json::exception& e) {
            throw input_error(std::string("bad function file: ") + e.what());
        }
        StepRule rule = o.rule == "exact" ? StepRule::exact : StepRule::fixed;
        if (o.rule != "exact" && o.rule != "fixed") throw input_error("--rule must be fixed or exact");
        Trace t = descent_trace(f, parse_point(o.x0), rule, o.eta, o.steps, need_gauge());
        p = t.poly;
        report_sc = true;
        sc_flag = t.self_contracted;
        prov << " rule=" << o.rule << " eta=" << o.eta << " steps=" << o.steps
             << " self_contracted=" << (t.self_contracted ? 1 : 0);
    } else {
        throw input_error("unknown generator '" + o.kind + "'");
    }
    if (g) prov << " gauge=" << gauge_hash(*g);
    std::string csv = polyline_csv(p, prov.str());
    if (o.out == "-" || o.out == ".") std::cout << csv;
    else write_file(o.out, csv);
    if (!o.svg.empty()) {
        if (p.dim != 2) throw input_error("SVG output is only drawn for n = 2");
        write_file(o.svg, polyline_svg(p, g ? *g : Gauge::euclidean(2)));
    }
    if (report_sc) std::cerr << "self_contracted: " << (sc_flag ? "true" : "false") << '\n';
    return 0;
}

int cmd_partition(const Opts& o)
{
    Gauge g = read_gauge(o.gauge);
    double delta = o.delta > 0 ? o.delta : kPi / 8;
    Partition part = Partition::build(g, delta, o.seed);
    std::string text = partition_json(part).dump(1) + "\n";
    if (o.out == "." || o.out == "-") std::cout << text;
    else write_file(o.out, text);
    std::cerr << "N = " << part.N() << ", delta = " << num(part.delta()) << '\n';
    return 0;
}

int cmd_estimate(const Opts& o)
{
    Gauge g = read_gauge(o.gauge);
    if (o.lifted) {
        if (!g.symmetric()) throw input_error("the lift needs a symmetric norm");
        g = Gauge::cylinder(g, g.inradius());
    }
    Constants c = estimate_constants(g, o.samples, o.seed);
    std::string text = constants_json(c).dump(1) + "\n";
    if (o.out == "." || o.out == "-") std::cout << text;
    else write_file(o.out, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"self-contracted polylines: checks, generators and length certificates"};
    app.require_subcommand(1);
    Opts o;

    auto* check = app.add_subcommand("check", "is the polyline self-contracted under the gauge");
    check->add_option("--poly", o.poly, "polyline file (CSV or JSON)")->required();
    check->add_option("--gauge", o.gauge, "gauge JSON")->required();

    auto* certify = app.add_subcommand("certify", "build and re-check a length certificate");
    certify->add_option("--poly", o.poly)->required();
    certify->add_option("--gauge", o.gauge)->required();
    certify->add_option("--constants", o.constants, "constants JSON for the lifted norm (dim + 1)");
    certify->add_option("--mode", o.mode, "easy | general");
    certify->add_option("--out", o.out, "directory for certificate.json");
    certify->add_option("--budget", o.budget, "step budget before windows go direct");
    certify->add_option("--seed", o.seed);
    certify->add_option("--samples", o.samples, "samples for constant estimation");
    certify->add_option("--delta", o.delta, "partition angle (default picked from the constants)");
    certify->add_option("--tol", o.tol, "relative checker tolerance");

    auto* verify = app.add_subcommand("verify", "re-check a certificate file");
    verify->add_option("--cert", o.cert)->required();
    verify->add_option("--tol", o.tol);

    auto* generate = app.add_subcommand("generate", "write a polyline");
    generate->add_option("--kind", o.kind, "square | harmonic | greedy | descent | adversarial");
    generate->add_option("--gauge", o.gauge);
    generate->add_option("--n", o.n, "staircase dimension");
    generate->add_option("--r", o.r, "number of points");
    generate->add_option("--seed", o.seed);
    generate->add_option("--budget", o.budget, "adversarial evaluations");
    generate->add_option("--scale", o.scale, "greedy proposal scale");
    generate->add_option("--function", o.function, "descent: function JSON");
    generate->add_option("--x0", o.x0, "descent: start point, comma separated");
    generate->add_option("--rule", o.rule, "descent: fixed | exact");
    generate->add_option("--eta", o.eta, "descent: fixed step");
    generate->add_option("--steps", o.steps, "descent: max steps");
    generate->add_option("--out", o.out, "CSV file (default stdout)");
    generate->add_option("--svg", o.svg, "SVG drawing (n = 2)");

    auto* partition = app.add_subcommand("partition", "boundary partition as JSON");
    partition->add_option("--gauge", o.gauge)->required();
    partition->add_option("--delta", o.delta);
    partition->add_option("--seed", o.seed);
    partition->add_option("--out", o.out);

    auto* estimate = app.add_subcommand("estimate", "estimate the proof constants");
    estimate->add_option("--gauge", o.gauge)->required();
    estimate->add_option("--samples", o.samples);
    estimate->add_option("--seed", o.seed);
    estimate->add_flag("--lifted", o.lifted, "for the cylinder used by general certificates");
    estimate->add_option("--out", o.out);

    auto* reproduce = app.add_subcommand("reproduce", "run one of the experiments");
    reproduce->add_option("--id", o.id)->required();
    reproduce->add_option("--seed", o.seed);
    reproduce->add_option("--out", o.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*check) return cmd_check(o);
        if (*certify) return cmd_certify(o);
        if (*verify) return cmd_verify(o);
        if (*generate) return cmd_generate(o);
        if (*partition) return cmd_partition(o);
        if (*estimate) return cmd_estimate(o);
        if (*reproduce) return run_experiment(o.id, o.seed, o.out, std::cout);
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const not_self_contracted& e) {
        std::cout << e.what() << '\n';
        return 1;
    } catch (const lemma_error& e) {
        std::cout << "uncertifiable: " << e.what() << " at index " << e.index + 1 << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
