#pragma once

#include "selfcontract/certificate.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace sc {

struct not_self_contracted : std::runtime_error {
    std::array<int, 3> witness;  // 1-based
    not_self_contracted(const std::array<int, 3>& w)
        : std::runtime_error("not self-contracted: witness (" + std::to_string(w[0]) + "," +
                             std::to_string(w[1]) + "," + std::to_string(w[2]) + ")"),
          witness(w)
    {
    }
};

// ---- decomposition pieces (positions are 0-based into `window`) -----------

struct ConeSplit {
    std::vector<int> cls;       // patch of every window point relative to the last one (0 = apex)
    std::vector<int> seg_cone;  // cone owning segment t -> t+1
    std::vector<int> seg_case;  // 0 direct edge, 1 return through s(t), 2 first entry (crossing)
    std::vector<int> s_of;      // s(t) for return segments, -1 otherwise
    std::vector<int> cones;     // cones owning at least one segment, increasing
    std::vector<int> members(int cone) const;  // positions in the cone, apex copies included
};
ConeSplit cone_split(const std::vector<int>& window,
                     const std::function<int(int apex, int j)>& classify);

struct BlockSplit {
    std::vector<std::pair<int, int>> blocks;  // (q, k), backwards order of discovery
    std::vector<int> lambda;                  // positions outside block interiors
    std::vector<int> lambda_tilde;            // lambda minus block heads (except position 0)
};
BlockSplit horizontal_block_split(const Polyline& w, const std::vector<int>& window, const Subspace& sub,
                                  double eps0);

struct HorizontalWindows {
    std::vector<std::pair<int, int>> windows;  // (q, k) with shared endpoints
    std::vector<int> lambda;
};
// same-direction windows along a line axis, found backwards from the last segment
HorizontalWindows same_direction_windows(const Polyline& w, const std::vector<int>& window, const Vec& axis,
                                         double eps);

struct LinearSystemBound {
    double sum_bound;
    double each_bound;
};
// L_j <= L0 + C sum_k L_k for all j with C < 1/(2 slots) gives the two bounds;
// throws lemma_error naming the failing j
LinearSystemBound linear_system_resolve(double L0, const std::vector<double>& L, double C, int slots);

// ---- certificates ----------------------------------------------------------

// max-norm in R^2, replaying the three-step argument with its literal constants
Certificate certify_easycase(const Polyline& p);

struct GeneralContext {
    Gauge base = Gauge::euclidean(1);
    Gauge lifted = Gauge::euclidean(1);
    double rho = 1;
    Partition part;
    Constants constants;
    double cd = 0;  // Euclidean diameter / inradius of the lifted ball
};
// constants and partition for the lifted gauge; delta < 0 picks a default
// `given` replaces the estimated constants (they must be for the lifted dimension)
GeneralContext prepare_general(const Gauge& g, int samples = 4000, unsigned seed = 1, double delta = -1,
                               int max_patches = 4000, const Constants* given = nullptr);

struct GeneralOptions {
    int max_depth = -1;    // -1: the lifted dimension
    int budget = 200000;   // steps before the remaining windows go direct
};
Certificate certify_general(const Polyline& p, const GeneralContext& ctx, GeneralOptions opt = {});
Certificate certify_general(const Polyline& p, const Gauge& g, GeneralOptions opt = {});

// base-of-induction subtree on a window whose last point is the apex of every
// cone of the full tuple; certificate mode "window" (working polyline = p)
Certificate certify_base_case(const Polyline& p, const Gauge& g, const Partition& part,
                              const std::vector<int>& tuple, const Constants& c);

}  // namespace sc
