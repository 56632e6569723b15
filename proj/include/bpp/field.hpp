#pragma once

#include <stdexcept>
#include <vector>

#include "bpp/grid.hpp"

namespace bpp {

struct SupportOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class GeneratorKind { gaussian_bump, tent, disk_indicator, square_indicator, bump_sum };

// Analytic test-function factory. gaussian_bump is the C-infinity mollifier
// amp * exp(1 - 1/(1-|u|^2)) on |u| < 1, u = (x-c)/radius, so supports are
// exact and analytic gradients exist for the oracle tests.
struct AnalyticGenerator {
    GeneratorKind kind = GeneratorKind::gaussian_bump;
    std::vector<Vec> centers{Vec{0, 0}};
    std::vector<double> radii{1.0};
    std::vector<double> amplitudes{1.0};

    static AnalyticGenerator bump(Vec c, double r, double a = 1.0);
    static AnalyticGenerator tent(Vec c, double halfwidth, double a = 1.0);
    static AnalyticGenerator disk(Vec c, double r, double a = 1.0);
    static AnalyticGenerator square(Vec c, double halfside, double a = 1.0);
    static AnalyticGenerator sum_of_bumps(std::vector<Vec> c, std::vector<double> r,
                                          std::vector<double> a);

    double value(const Vec& x, int dim) const;
    Vec grad(const Vec& x, int dim) const;  // analytic; zero for indicators
    Box support_bbox(int dim) const;
};

// Sampled compactly supported scalar field on a uniform box grid.
// Samples live at cell centers; evaluation is multilinear on the
// zero-extended lattice, hence exactly 0 outside the box.
class FunctionField {
  public:
    FunctionField(int dim, const Box& box, int resolution, std::vector<double> samples);

    static FunctionField from_generator(const AnalyticGenerator& g, const Box& box,
                                        int resolution);

    int dim() const { return dim_; }
    const Box& box() const { return box_; }
    int resolution() const { return res_; }
    double dx() const { return dx_; }
    double cell_volume() const;
    std::size_t size() const { return samples_.size(); }
    const std::vector<double>& samples() const { return samples_; }

    double at(int i, int j) const { return samples_[std::size_t(i) * res_ + j]; }
    double at(int i, int j, int k) const {
        return samples_[(std::size_t(i) * res_ + j) * res_ + k];
    }
    Vec cell_center(int i, int j, int k = 0) const;

    // multilinear interpolation; exact at nodes, exactly 0 outside the box
    double value(const Vec& p) const;

    FunctionField scaled(double c) const;  // c * f

  private:
    int dim_;
    Box box_;
    int res_;
    double dx_;
    std::vector<double> samples_;
};

struct GradientField {
    std::vector<FunctionField> comp;  // dim components
    int dim() const { return static_cast<int>(comp.size()); }
    FunctionField magnitude() const;  // |grad f| as a field
    Box box() const { return comp.at(0).box(); }
};

// ---- operations ---------------------------------------------------------

// L^p norm by the midpoint rule; p = infinity gives max |sample|.
double lp_norm(const FunctionField& f, double p);

// ||Delta_h f||_p^p summed over the union window box u (box - h);
// exact for h on the grid lattice. p must be finite.
double difference_norm_pow(const FunctionField& f, const Vec& h, double p);

// ||Delta_h f||_p ; p = infinity gives the sup over the window.
double difference_norm(const FunctionField& f, const Vec& h, double p);

// central differences inside, one-sided at the box edge
GradientField gradient(const FunctionField& f);

// || grad f . xi ||_p
double directional_derivative_norm(const GradientField& g, const Vec& xi, double p);
double directional_derivative_norm(const FunctionField& f, const Vec& xi, double p);

// Lebesgue measure of {|f| > threshold} by cell counting
double support_measure(const FunctionField& f, double threshold = 0.0);

// bounding box of {f != 0} (cell-boundary aligned); throws on zero fields
Box support_bbox(const FunctionField& f);

// smallest ball centered at the support bbox center covering the support bbox
void support_ball(const FunctionField& f, Vec& center, double& radius);

// f o phi for invertible phi (|det| typically 1); support must keep the
// 2-cell margin in the target box
FunctionField pullback(const FunctionField& f, const Mat& phi);

// (1/|supp f|) * integral of exp((|f|/denom)^exponent) - 1; +infinity on overflow
double mt_functional(const FunctionField& f, double denom, double exponent);

}  // namespace bpp
