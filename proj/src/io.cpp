#include "selfcontract/io.hpp"
#include "selfcontract/generators.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

namespace sc {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write " + path);
    out << text;
}

namespace {

std::string trim(const std::string& s)
{
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& tok)
{
    std::string t = trim(tok);
    if (t.empty()) throw input_error("empty CSV field");
    size_t used = 0;
    double v;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw input_error("bad number '" + t + "'");
    }
    if (used != t.size() || !std::isfinite(v)) throw input_error("bad number '" + t + "'");
    return v;
}

std::vector<double> vec_of(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Vec to_vec(const json& j)
{
    if (!j.is_array()) throw input_error("expected a numeric array");
    Vec v(j.size());
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw input_error("expected a number");
        v(i) = j[i].get<double>();
    }
    return v;
}

Mat to_mat(const json& j)
{
    if (!j.is_array() || j.empty()) throw input_error("expected a nonempty matrix");
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j[0].size());
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        Vec r = to_vec(j[i]);
        if (r.size() != cols) throw input_error("ragged matrix");
        m.row(i) = r.transpose();
    }
    return m;
}

json mat_json(const Mat& m)
{
    json a = json::array();
    for (int i = 0; i < m.rows(); ++i) a.push_back(vec_of(m.row(i).transpose()));
    return a;
}

json quantity_json(const Quantity& q)
{
    std::vector<int> idx;
    for (int i : q.idx) idx.push_back(i + 1);
    return {{"idx", idx}, {"basis", q.basis}};
}

Quantity quantity_from_json(const json& j)
{
    Quantity q;
    for (int i : j.at("idx").get<std::vector<int>>()) q.idx.push_back(i - 1);
    q.basis = j.at("basis").get<int>();
    return q;
}

json terms_json(const std::vector<Term>& ts)
{
    json a = json::array();
    for (const Term& t : ts) {
        if (t.ref >= 0)
            a.push_back({{"coef", t.coef}, {"ref", t.ref}});
        else
            a.push_back({{"coef", t.coef}, {"q", quantity_json(t.q)}});
    }
    return a;
}

std::vector<Term> terms_from_json(const json& a)
{
    std::vector<Term> ts;
    for (const json& j : a) {
        Term t;
        t.coef = j.at("coef").get<double>();
        if (j.contains("ref"))
            t.ref = j.at("ref").get<int>();
        else
            t.q = quantity_from_json(j.at("q"));
        ts.push_back(std::move(t));
    }
    return ts;
}

}  // namespace

Polyline parse_polyline(const std::string& text)
{
    std::string t = trim(text);
    if (t.empty()) throw input_error("empty polyline file");
    if (t[0] == '{') {
        json j;
        try {
            j = json::parse(t);
        } catch (const json::exception& e) {
            throw input_error(std::string("bad JSON: ") + e.what());
        }
        return polyline_from_json(j);
    }
    std::istringstream in(t);
    std::string line;
    int dim = -1;
    std::vector<Vec> pts;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (dim < 0) {
            if (line.rfind("dim=", 0) != 0) throw input_error("CSV must start with a dim=n line");
            double d = parse_number(line.substr(4));
            if (d < 1 || d != std::floor(d)) throw input_error("bad dimension");
            dim = static_cast<int>(d);
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) row.push_back(parse_number(tok));
        if (static_cast<int>(row.size()) != dim)
            throw input_error("line " + std::to_string(lineno) + ": expected " + std::to_string(dim) + " fields");
        pts.push_back(Eigen::Map<Vec>(row.data(), dim));
    }
    if (dim < 0) throw input_error("missing dim=n line");
    if (pts.empty()) throw input_error("no points");
    return Polyline(dim, std::move(pts));
}

Polyline read_polyline(const std::string& path) { return parse_polyline(read_file(path)); }

std::string polyline_csv(const Polyline& p, const std::string& comment)
{
    std::ostringstream os;
    os << std::setprecision(17);
    if (!comment.empty()) os << "# " << comment << "\n";
    os << "dim=" << p.dim << "\n";
    for (const Vec& v : p.pts) {
        for (int i = 0; i < v.size(); ++i) os << (i ? "," : "") << v(i);
        os << "\n";
    }
    return os.str();
}

json polyline_json(const Polyline& p)
{
    json pts = json::array();
    for (const Vec& v : p.pts) pts.push_back(vec_of(v));
    return {{"dim", p.dim}, {"points", pts}};
}

Polyline polyline_from_json(const json& j)
{
    try {
        int dim = j.at("dim").get<int>();
        std::vector<Vec> pts;
        for (const json& r : j.at("points")) {
            Vec v = to_vec(r);
            if (v.size() != dim) throw input_error("point of wrong dimension");
            pts.push_back(v);
        }
        if (pts.empty()) throw input_error("no points");
        return Polyline(dim, std::move(pts));
    } catch (const json::exception& e) {
        throw input_error(std::string("bad polyline JSON: ") + e.what());
    }
}

Gauge gauge_from_json(const json& j)
{
    try {
        std::string kind = j.at("kind").get<std::string>();
        auto dim = [&] { return j.contains("dim") ? j.at("dim").get<int>() : j.at("n").get<int>(); };
        Gauge g = Gauge::euclidean(1);
        if (kind == "euclidean") {
            g = Gauge::euclidean(dim());
        } else if (kind == "max") {
            g = Gauge::max_norm(dim());
        } else if (kind == "pnorm") {
            const json& p = j.at("p");
            double pv = p.is_string() && p.get<std::string>() == "inf" ? kInf : p.get<double>();
            g = Gauge::pnorm(dim(), pv);
        } else if (kind == "polytope") {
            Mat a = to_mat(j.contains("halfspaces") ? j.at("halfspaces") : j.at("a"));
            // "symmetric": true asks for the ball closed under x -> -x
            g = j.value("symmetric", false) ? Gauge::symmetric_polytope(a) : Gauge::polytope(a);
        } else if (kind == "cylinder") {
            g = Gauge::cylinder(gauge_from_json(j.at("base")), j.value("rho", 1.0));
        } else if (kind == "random_polytope") {
            g = random_symmetric_polytope(dim(), j.value("seed", 1u), j.value("k", -1));
        } else {
            throw input_error("unknown gauge kind '" + kind + "'");
        }
        if (j.contains("dim") && j.at("dim").get<int>() != g.dim()) throw input_error("gauge dim does not match its data");
        return g;
    } catch (const json::exception& e) {
        throw input_error(std::string("bad gauge JSON: ") + e.what());
    }
}

json gauge_json(const Gauge& g)
{
    switch (g.kind()) {
    case Gauge::Kind::euclidean:
        return {{"dim", g.dim()}, {"kind", "euclidean"}, {"symmetric", true}};
    case Gauge::Kind::pnorm:
        if (std::isinf(g.p())) return {{"dim", g.dim()}, {"kind", "pnorm"}, {"p", "inf"}, {"symmetric", true}};
        return {{"dim", g.dim()}, {"kind", "pnorm"}, {"p", g.p()}, {"symmetric", true}};
    case Gauge::Kind::polytope:
        // the stored rows already include the mirrored functionals
        return {{"dim", g.dim()}, {"kind", "polytope"}, {"halfspaces", mat_json(g.facets())},
                {"symmetric", g.symmetric()}};
    case Gauge::Kind::cylinder:
        return {{"dim", g.dim()}, {"kind", "cylinder"}, {"base", gauge_json(g.base())}, {"rho", g.rho()}};
    case Gauge::Kind::custom:
        break;
    }
    throw input_error("custom gauges cannot be serialized");
}

Gauge read_gauge(const std::string& path)
{
    try {
        return gauge_from_json(json::parse(read_file(path)));
    } catch (const json::exception& e) {
        throw input_error(std::string("bad gauge file: ") + e.what());
    }
}

json constants_json(const Constants& c)
{
    return {{"n", c.n},           {"eps0", c.eps0},   {"xi_bar", c.xi_bar},   {"xi", c.xi},
            {"delta_bar", c.delta_bar}, {"eps1", c.eps1}, {"eps_bar", c.eps_bar}, {"delta0", c.delta0},
            {"C_xi", c.c_xi},     {"seed", c.seed},   {"budget", c.budget}};
}

Constants constants_from_json(const json& j)
{
    try {
        Constants c = compute_constants(j.at("n").get<int>(), j.at("eps0").get<double>(),
                                        j.at("xi_bar").get<double>(), j.at("eps1").get<double>(),
                                        j.at("eps_bar").get<double>());
        c.seed = j.value("seed", 0u);
        c.budget = j.value("budget", 0);
        return c;
    } catch (const json::exception& e) {
        throw input_error(std::string("bad constants JSON: ") + e.what());
    }
}

json partition_json(const Partition& p)
{
    json patches = json::array();
    for (const auto& b : p.patches())
        patches.push_back({{"index", b.index}, {"normal", vec_of(b.normal)}, {"facet", b.facet}});
    return {{"N", p.N()}, {"delta", p.delta()}, {"gauge", gauge_json(p.gauge())}, {"patches", patches}};
}

json certificate_json(const Certificate& c)
{
    json steps = json::array();
    for (const CertStep& s : c.steps) {
        std::vector<int> sub;
        for (int i : s.sub_indices) sub.push_back(i + 1);
        steps.push_back({{"id", s.id},
                         {"parent", s.parent},
                         {"children", s.children},
                         {"supports", s.supports},
                         {"kind", s.kind},
                         {"lemma_tag", s.tag},
                         {"index_range", {s.first + 1, s.last + 1}},
                         {"sub_indices", sub},
                         {"constants_used", s.constants_used},
                         {"lhs_terms", terms_json(s.lhs_terms)},
                         {"rhs_terms", terms_json(s.rhs_terms)},
                         {"lhs", s.lhs},
                         {"rhs", s.rhs}});
    }
    json bases = json::array();
    for (const Mat& b : c.bases) bases.push_back(mat_json(b));
    json cj = constants_json(c.constants);
    std::string chash;
    {
        std::ostringstream os;
        os << std::hex << std::hash<std::string>{}(cj.dump());
        chash = os.str();
    }
    return {{"mode", c.mode},
            {"root_claim", {{"ell", c.ell}, {"dist1r", c.dist1r}, {"effective_C", c.effective_C}}},
            {"root", c.root},
            {"tol", c.tol},
            {"gauge", gauge_json(c.gauge)},
            {"polyline", polyline_json(c.original)},
            {"working", polyline_json(c.working)},
            {"bases", bases},
            {"constants", cj},
            {"constants_hash", chash},
            {"partition", {{"N", c.partition_N}, {"delta", c.delta}}},
            {"rho", c.rho},
            {"partial", c.partial},
            {"fallback_steps", c.fallback_steps},
            {"fallback_rate", c.fallback_rate()},
            {"steps", steps}};
}

Certificate certificate_from_json(const json& j)
{
    try {
        Certificate c;
        c.mode = j.at("mode").get<std::string>();
        c.ell = j.at("root_claim").at("ell").get<double>();
        c.dist1r = j.at("root_claim").at("dist1r").get<double>();
        c.effective_C = j.at("root_claim").at("effective_C").get<double>();
        c.root = j.at("root").get<int>();
        c.tol = j.at("tol").get<double>();
        c.gauge = gauge_from_json(j.at("gauge"));
        c.original = polyline_from_json(j.at("polyline"));
        c.working = polyline_from_json(j.at("working"));
        for (const json& b : j.at("bases")) c.bases.push_back(to_mat(b));
        if (j.at("constants").at("n").get<int>() > 0) c.constants = constants_from_json(j.at("constants"));
        c.partition_N = j.at("partition").at("N").get<int>();
        c.delta = j.at("partition").at("delta").get<double>();
        c.rho = j.value("rho", 1.0);
        c.partial = j.value("partial", false);
        c.fallback_steps = j.value("fallback_steps", 0);
        for (const json& s : j.at("steps")) {
            CertStep st;
            st.id = s.at("id").get<int>();
            st.parent = s.at("parent").get<int>();
            st.children = s.at("children").get<std::vector<int>>();
            st.supports = s.at("supports").get<std::vector<int>>();
            st.kind = s.at("kind").get<std::string>();
            st.tag = s.at("lemma_tag").get<std::string>();
            auto rng = s.at("index_range").get<std::vector<int>>();
            if (rng.size() != 2) throw input_error("bad index_range");
            st.first = rng[0] - 1;
            st.last = rng[1] - 1;
            for (int i : s.at("sub_indices").get<std::vector<int>>()) st.sub_indices.push_back(i - 1);
            st.constants_used = s.at("constants_used").get<std::map<std::string, double>>();
            st.lhs_terms = terms_from_json(s.at("lhs_terms"));
            st.rhs_terms = terms_from_json(s.at("rhs_terms"));
            st.lhs = s.at("lhs").get<double>();
            st.rhs = s.at("rhs").get<double>();
            c.steps.push_back(std::move(st));
        }
        return c;
    } catch (const json::exception& e) {
        throw input_error(std::string("bad certificate JSON: ") + e.what());
    }
}

std::string polyline_svg(const Polyline& p, const Gauge& g)
{
    if (p.dim != 2 || g.dim() != 2) throw input_error("SVG output is for n = 2 only");
    // unit sphere around the last point, scaled to the farthest vertex
    double rad = 0;
    for (const Vec& a : p.pts) rad = std::max(rad, g(a - p.back()));
    if (rad == 0) rad = 1;
    std::vector<Vec> ring;
    for (int i = 0; i <= 180; ++i) {
        double t = 2 * kPi * i / 180;
        Vec d(2);
        d << std::cos(t), std::sin(t);
        ring.push_back(p.back() + rad * d / g(d));
    }
    double lo_x = kInf, lo_y = kInf, hi_x = -kInf, hi_y = -kInf;
    const std::vector<Vec>* sets[] = {&p.pts, &ring};
    for (const std::vector<Vec>* set : sets)
        for (const Vec& v : *set) {
            lo_x = std::min(lo_x, v(0));
            hi_x = std::max(hi_x, v(0));
            lo_y = std::min(lo_y, v(1));
            hi_y = std::max(hi_y, v(1));
        }
    double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
    double S = 400.0 / span, pad = 20;
    auto X = [&](const Vec& v) { return pad + (v(0) - lo_x) * S; };
    auto Y = [&](const Vec& v) { return pad + (hi_y - v(1)) * S; };
    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * pad + (hi_x - lo_x) * S << "\" height=\""
       << 2 * pad + (hi_y - lo_y) * S << "\">\n";
    os << "<polyline fill=\"none\" stroke=\"#999\" stroke-dasharray=\"4 3\" points=\"";
    for (const Vec& v : ring) os << X(v) << "," << Y(v) << " ";
    os << "\"/>\n<polyline fill=\"none\" stroke=\"#c22\" stroke-width=\"2\" points=\"";
    for (const Vec& v : p.pts) os << X(v) << "," << Y(v) << " ";
    os << "\"/>\n";
    for (const Vec& v : p.pts) os << "<circle cx=\"" << X(v) << "\" cy=\"" << Y(v) << "\" r=\"3\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace sc
