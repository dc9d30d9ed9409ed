#pragma once

#include "selfcontract/gauge.hpp"
#include "selfcontract/polyline.hpp"

#include <functional>
#include <string>
#include <vector>

namespace sc {

struct BoundaryPatch {
    int index = 0;    // 1-based; 0 is reserved for the apex
    Vec normal;       // representative normal nu^i
    int facet = -1;   // polyhedral gauges: the facet this patch is
    double delta = 0;
};

class Partition {
public:
    // delta in (0, pi/2). Smooth gauges get a delta/2-net of normal directions;
    // `max_patches` coarsens the net (and the recorded delta) in high dimension.
    static Partition build(const Gauge& g, double delta, unsigned seed = 1, int max_patches = 4000);

    const Gauge& gauge() const { return g_; }
    int N() const { return static_cast<int>(patches_.size()); }
    double delta() const { return delta_; }
    const std::vector<BoundaryPatch>& patches() const { return patches_; }
    const Vec& normal(int idx) const { return patches_.at(idx - 1).normal; }

    // 1-based patch owning the boundary point in direction d (first-hit rule)
    int classify_direction(const Vec& d) const;
    // patch of the cone (apex + P_i) holding x; 0 when x == apex
    int classify(const Vec& apex, const Vec& x) const;
    // some external normal at the boundary point of direction d lies within delta of nu^i
    bool normal_condition(int idx, const Vec& d) const;

private:
    Gauge g_ = Gauge::euclidean(1);
    double delta_ = 0;
    std::vector<BoundaryPatch> patches_;
    int side_count_ = 0;  // cylinders: patches 1..side_count_ are the sides
    int nearest_normal(const Vec& nu, int count) const;
};

struct Frame {
    std::vector<int> tuple;        // (alpha_i, ..., alpha_n), 1-based patch indices
    std::vector<Vec> axes;         // nu^{alpha_j}, same order
    std::vector<Subspace> pi;      // pi[k] = span{axes[k..]}^perp  (= Pi^{i+k-1})
    Vec x1;                        // full tuples: unit axis inside Pi^1 (empty otherwise)
    double xi = 0;
};

// indices of patches meeting V_eps(sub) (sampled, plus facet-directed probes)
std::vector<int> admissible_indices(const Partition& part, const Subspace& sub, double eps,
                                    int samples = 2000, unsigned seed = 1);
// angle of the vector v with the subspace s, in [0, pi/2]
double vector_subspace_angle(const Vec& v, const Subspace& s);
// level by level angle check; `failing_level` receives the offending position (0-based in tuple)
bool is_admissible(const Partition& part, const std::vector<int>& tuple, double xi,
                   int* failing_level = nullptr);
Frame frame_from_tuple(const Partition& part, const std::vector<int>& tuple, double xi);

struct Constants {
    int n = 0;
    double eps0 = 0, xi_bar = 0, xi = 0, delta_bar = 0;
    double eps1 = 0, eps_bar = 0, delta0 = 0;
    double c_xi = 0;  // C(xi)
    unsigned seed = 0;
    int budget = 0;
    double c_of_zeta(double zeta) const;
    double recompute_delta0() const;
};

double c_k(int k, double zeta);  // (1 + tan z + sec z)^(k-1)

struct Eps0Estimate {
    double eps0, xi_bar;
    std::vector<double> xi_of_eps;  // on the grid k*pi/64, k = 1..31
};
Eps0Estimate estimate_eps0_xibar(const Gauge& g, int samples, unsigned seed = 1);

struct Eps1Estimate {
    double eps1, eps_bar, alpha;
};
Eps1Estimate estimate_eps1(const Gauge& g, int samples, double xi_bar, unsigned seed = 1);

Constants compute_constants(int n, double eps0, double xi_bar, double eps1, double eps_bar);
// everything above in one go
Constants estimate_constants(const Gauge& g, int samples, unsigned seed = 1);

struct DescentCheck {
    bool ok = true;
    int index = -1;  // 0-based segment start on failure
    std::string why;
};
// every delta-vertical segment (w.r.t. nu^perp) must descend along nu; apex = last point
DescentCheck check_cone_descent(const Partition& part, const Polyline& poly, int apex_patch, double delta);

struct Domination {
    double lhs, rhs;
};
// |p_Pi(A)| against C_k(zeta) * sum |p_{x^i}(A)| with Pi = span(axes)
Domination projection_domination(const std::vector<Vec>& axes, double zeta, const Vec& A);
Domination projection_domination(const Frame& f, const Vec& A);

}  // namespace sc
