#pragma once

#include "selfcontract/gauge.hpp"
#include "selfcontract/polyline.hpp"

namespace sc {

Polyline square_path();                // (0,0),(0,1),(1,1),(1,0)
Polyline harmonic_staircase(int n);    // P_k = sum_{j<k} e_j / j, k = 1..n+1

struct Generated {
    Polyline poly;
    bool starved = false;  // acceptance budget ran out before r points
};
// appends Gaussian proposals around the last point, keeping those whose
// distances to the prefix are nonincreasing
Generated greedy_random(const Gauge& g, int r, unsigned seed, double proposal_scale = 1.0,
                        int max_rejections = -1);

// ball {x : |a_i.x| <= 1} for n+2 random functionals (or k if given)
Gauge random_symmetric_polytope(int n, unsigned seed, int k = -1);

struct FunctionSpec {
    enum class Kind { quadratic, max_affine } kind = Kind::quadratic;
    Mat Q;
    Vec c;
    Mat A;  // max_affine: rows a_i of a_i.x + b_i
    Vec b;
    double smoothing = 0.05;  // log-sum-exp temperature
};
enum class StepRule { fixed, exact };
struct Trace {
    Polyline poly;
    bool self_contracted = true;
};
Trace descent_trace(const FunctionSpec& f, const Vec& x0, StepRule rule, double eta, int max_steps,
                    const Gauge& g);

struct Adversarial {
    Polyline poly;
    double ratio = 0;
    int evaluations = 0;
};
// hill climbing over single-vertex perturbations and greedy restarts; `start`
// (if non-empty) is the initial iterate
Adversarial adversarial_ratio(const Gauge& g, int r, int budget, unsigned seed, const Polyline& start = {});

double ratio(const Polyline& p);  // l / |A_1 A_r|

}  // namespace sc
