#pragma once

#include <Eigen/Dense>

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

// bad arguments / malformed data; the CLI maps this to exit code 2
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BoundaryPoint {
    Vec point;
    std::vector<Vec> normals;  // Euclidean unit vectors
};

class Gauge {
public:
    enum class Kind { euclidean, pnorm, polytope, cylinder, custom };

    static Gauge euclidean(int n);
    static Gauge pnorm(int n, double p);          // p in [1, inf]
    static Gauge max_norm(int n) { return pnorm(n, kInf); }
    // rows of `a` are the halfspace functionals: ball = {x : a_i.x <= 1}
    static Gauge polytope(const Mat& a);
    // adds -a_i for every row, so the result is symmetric
    static Gauge symmetric_polytope(const Mat& a);
    // ||(x', t)|| = max(rho * base(x'), |t|); ball = (B/rho) x [-1,1]
    static Gauge cylinder(const Gauge& base, double rho = 1.0);
    static Gauge custom(int n, std::function<double(const Vec&)> f, bool symmetric);

    int dim() const { return n_; }
    Kind kind() const { return kind_; }
    double p() const { return p_; }
    bool symmetric() const { return symmetric_; }
    // facet functionals (polytopes and p in {1, inf}); empty for smooth kinds
    const Mat& facets() const { return facets_; }
    bool is_polyhedral() const { return facets_.rows() > 0; }
    const Gauge& base() const { return *base_; }
    double rho() const { return rho_; }

    double operator()(const Vec& x) const;
    double dist(const Vec& a, const Vec& b) const { return (*this)(b - a); }

    BoundaryPoint boundary_point(const Vec& direction) const;
    // active facet indices at a boundary point (polyhedral kinds only)
    std::vector<int> active_facets(const Vec& x, double tol = 1e-9) const;

    // Euclidean radii of the unit ball: largest inscribed / smallest enclosing
    // ball around the origin
    double inradius() const { return inradius_; }
    double circumradius() const { return circumradius_; }
    double diameter() const;  // Euclidean diameter of the unit ball (symmetric: 2R)

    std::string describe() const;

private:
    Gauge() = default;
    void finish_radii();
    std::vector<Vec> smooth_normals(const Vec& x) const;

    int n_ = 0;
    Kind kind_ = Kind::euclidean;
    double p_ = 2.0;
    bool symmetric_ = true;
    Mat facets_;
    std::shared_ptr<const Gauge> base_;
    double rho_ = 1.0;
    std::function<double(const Vec&)> f_;
    double inradius_ = 1.0, circumradius_ = 1.0;
};

// Reference Minkowski functional: bisection on t with x/t inside the ball.
// `inside` decides membership; used by tests as an independent oracle.
double minkowski_oracle(const std::function<bool(const Vec&)>& inside, const Vec& x);
bool in_ball(const Gauge& g, const Vec& x);

// A point z = origin + t*dir (t >= 0) with ||A - z|| = ||B - z||.
std::optional<Vec> mediatrix_point(const Gauge& g, const Vec& A, const Vec& B,
                                   const Vec& ray_origin, const Vec& ray_dir);

// Sampled estimate of inf{|PQ| : P,Q on the unit sphere of g, angle OPQ <= alpha}.
double chord_gap(const Gauge& g, double alpha, int sample_count, unsigned seed = 1);

double angle_between(const Vec& u, const Vec& v);  // in [0, pi]

}  // namespace sc
