#pragma once

#include "selfcontract/gauge.hpp"
#include "selfcontract/partition.hpp"
#include "selfcontract/polyline.hpp"

#include <map>
#include <string>
#include <vector>

namespace sc {

// Variation of a subvector of the working polyline along a stored basis:
// sum_t |B^T (W[idx[t+1]] - W[idx[t]])|.  basis = -1 means the identity, so
// {a,b} with basis -1 is the plain Euclidean distance |W_a W_b|.
struct Quantity {
    std::vector<int> idx;  // 0-based indices into the working polyline
    int basis = -1;
};

// coef * quantity, or coef * (the quantity bounded by an earlier step)
struct Term {
    double coef = 1.0;
    int ref = -1;
    Quantity q;
};

struct CertStep {
    int id = 0;
    int parent = -1;
    std::vector<int> children;  // refs and supports
    std::vector<int> supports;  // premises checked but not composed
    std::string kind;           // cone_split, crossing_segment, vertical_sum, ...
    std::string tag;            // which argument the inequality instantiates
    int first = 0, last = 0;    // index range in the working polyline
    std::vector<int> sub_indices;
    std::map<std::string, double> constants_used;
    std::vector<Term> lhs_terms, rhs_terms;
    double lhs = 0, rhs = 0;    // lhs and the rhs composed down to leaf quantities
};

struct Certificate {
    std::string mode;  // "easy" or "general"
    Gauge gauge = Gauge::euclidean(1);
    Polyline original;
    Polyline working;
    std::vector<Mat> bases;
    std::vector<CertStep> steps;
    int root = -1;
    double ell = 0, dist1r = 0, effective_C = 0;
    double tol = 1e-8;  // relative to scale()
    Constants constants;
    double delta = 0;
    int partition_N = 0;
    double rho = 1.0;  // inradius used by the lift
    bool partial = false;
    int fallback_steps = 0;

    double scale() const { return std::max(ell, dist1r); }
    double fallback_rate() const { return steps.empty() ? 0.0 : double(fallback_steps) / steps.size(); }
};

struct CheckResult {
    bool ok = true;
    int step = -1;  // first failing step id
    std::string path;
    std::string why;
};

CheckResult check_certificate(const Certificate& c, double tol = -1);

// the lift used by general certificates: (A_j - A_r, |A_1 A_r|) followed by the origin
Polyline lift_points(const Polyline& p);
struct Lifted {
    Gauge gauge;
    Polyline poly;
    double rho;
};
// cylinder over the base ball scaled to inradius 1; checks self-contractedness
// and membership in the top cone
Lifted lift_to_cylinder(const Gauge& g, const Polyline& p);

// ---- building -------------------------------------------------------------

class Ledger {
public:
    Ledger(Certificate& c, double tol_abs) : c_(c), tol_(tol_abs) {}
    int basis(const Mat& b);
    int basis(const Subspace& s) { return basis(s.basis()); }

    static Quantity dist(int a, int b) { return Quantity{{a, b}, -1}; }
    static Quantity len(std::vector<int> idx) { return Quantity{std::move(idx), -1}; }
    static Quantity plen(std::vector<int> idx, int basis) { return Quantity{std::move(idx), basis}; }
    static Term q(double coef, Quantity qq) { return Term{coef, -1, std::move(qq)}; }
    static Term r(double coef, int ref) { return Term{coef, ref, {}}; }

    double value(const Quantity& q) const;
    double lhs_of(int id) const { return c_.steps.at(id).lhs; }
    double rhs_of(int id) const { return c_.steps.at(id).rhs; }

    struct Spec {
        std::string kind, tag;
        int first = 0, last = 0;
        std::vector<int> sub_indices;
        std::map<std::string, double> constants;
        std::vector<Term> lhs, rhs;
        std::vector<int> supports;
    };
    // appends the step; throws lemma_error if lhs > local rhs + tol
    int add(Spec s);
    int size() const { return static_cast<int>(c_.steps.size()); }
    void truncate(int n);
    double tol() const { return tol_; }
    const Polyline& work() const { return c_.working; }
    Certificate& cert() { return c_; }

private:
    Certificate& c_;
    double tol_;
};

}  // namespace sc
