#pragma once

#include "selfcontract/gauge.hpp"

#include <array>
#include <initializer_list>
#include <vector>

namespace sc {

struct Polyline {
    int dim = 0;
    std::vector<Vec> pts;

    Polyline() = default;
    Polyline(int n, std::vector<Vec> p);
    static Polyline from_rows(const std::vector<std::vector<double>>& rows);

    int size() const { return static_cast<int>(pts.size()); }
    const Vec& operator[](int i) const { return pts[i]; }
    Vec& operator[](int i) { return pts[i]; }
    const Vec& front() const { return pts.front(); }
    const Vec& back() const { return pts.back(); }
    Polyline sub(const std::vector<int>& idx) const;
};

// thrown when a lemma's hypothesis fails on a concrete instance;
// index is 0-based into the polyline the check was run on (-1 if not applicable)
struct lemma_error : std::runtime_error {
    int index;
    lemma_error(const std::string& msg, int idx) : std::runtime_error(msg), index(idx) {}
};

class Subspace {
public:
    Subspace() = default;
    // orthonormalizes the given spanning vectors (dependent ones are dropped)
    static Subspace span(const std::vector<Vec>& vs, int n);
    static Subspace full(int n);
    static Subspace axis(const Vec& v) { return span({v}, static_cast<int>(v.size())); }
    static Subspace from_basis(const Mat& q) { Subspace s; s.q_ = q; return s; }

    int ambient() const { return static_cast<int>(q_.rows()); }
    int dim() const { return static_cast<int>(q_.cols()); }
    const Mat& basis() const { return q_; }
    Vec project(const Vec& v) const { return q_ * (q_.transpose() * v); }
    Subspace complement() const;

private:
    Mat q_;
};

struct SCResult {
    bool ok = true;
    std::array<int, 3> witness{0, 0, 0};  // 1-based (i, j, k) when !ok
};

double sc_tolerance(const Polyline& p, const Gauge& g, double rel = 1e-12);
// per-k monotonicity of j -> ||A_k - A_j||, O(r^2)
SCResult is_self_contracted(const Polyline& p, const Gauge& g, double rel_tol = 1e-12);
// literal triple loop, O(r^3)
SCResult is_self_contracted_naive(const Polyline& p, const Gauge& g, double rel_tol = 1e-12);

double length(const Polyline& p);
double length(const Polyline& p, int first, int last);  // A_first..A_last, 0-based inclusive
double projected_length(const Polyline& p, const Subspace& s);

enum class SegClass { horizontal, vertical };
// angle between the line AB and the subspace, in [0, pi/2]
double line_angle(const Vec& d, const Subspace& s);
SegClass classify_segment(const Vec& A, const Vec& B, const Subspace& s, double eps);

// indices (0-based) of an alternating subvector of the coordinate sequence x
// keeping the total variation; zero increments are merged into the current run
std::vector<int> extract_alternating(const std::vector<double>& x);
std::vector<int> extract_alternating(const Polyline& p, const Vec& axis);
double variation(const std::vector<double>& x);

// (|A1A2| + |A2A3|) / |A1A3|; +inf for the degenerate A1 = A3 != A2
double check_reverse_triangle(const Vec& A1, const Vec& A2, const Vec& A3, const Gauge& g);
// true if the angle premise fails, else whether |A2A3| <= 3/4 |A1A2| + 1e-9
bool check_horiz_contraction(const Vec& A1, const Vec& A2, const Vec& A3, const Gauge& g, double eps1);
// returns 4|A1A2| after checking every hypothesis and the per-step 3/4 ratio
double geometric_chain_bound(const Polyline& p, const Vec& axis, const Gauge& g, double eps1);
// returns |A1Ar| + 2 l_{nu-perp} tan(delta) after checking the descent hypothesis
double vertical_variation_bound(const Polyline& p, const Vec& nu, double delta);

}  // namespace sc
