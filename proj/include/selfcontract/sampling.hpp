#pragma once

#include <Eigen/Dense>

#include <random>

namespace sc {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double a = 0.0, double b = 1.0)
{
    return std::uniform_real_distribution<double>(a, b)(rng);
}

inline Eigen::VectorXd gaussian_vec(Rng& rng, int n)
{
    std::normal_distribution<double> nd;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = nd(rng);
    return v;
}

inline Eigen::VectorXd random_unit(Rng& rng, int n)
{
    while (true) {
        Eigen::VectorXd v = gaussian_vec(rng, n);
        double r = v.norm();
        if (r > 1e-12) return v / r;
    }
}

}  // namespace sc
