#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace bpp {

// Small fixed-size vector for points in R^2 / R^3. Component 2 is 0 when dim==2.
struct Vec {
    double x[3] = {0.0, 0.0, 0.0};

    Vec() = default;
    Vec(double a, double b) : x{a, b, 0.0} {}
    Vec(double a, double b, double c) : x{a, b, c} {}

    double& operator[](int i) { return x[i]; }
    double operator[](int i) const { return x[i]; }

    Vec operator+(const Vec& o) const { return {x[0] + o.x[0], x[1] + o.x[1], x[2] + o.x[2]}; }
    Vec operator-(const Vec& o) const { return {x[0] - o.x[0], x[1] - o.x[1], x[2] - o.x[2]}; }
    Vec operator*(double c) const { return {c * x[0], c * x[1], c * x[2]}; }

    double dot(const Vec& o) const { return x[0] * o.x[0] + x[1] * o.x[1] + x[2] * o.x[2]; }
    double norm() const { return std::sqrt(dot(*this)); }
};

inline Vec operator*(double c, const Vec& v) { return v * c; }

// Row-major square matrix acting on Vec; dim 2 uses the upper-left block.
struct Mat {
    int dim = 2;
    double a[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

    static Mat identity(int dim) {
        Mat m;
        m.dim = dim;
        return m;
    }
    static Mat rotation2(double theta) {
        Mat m;
        m.dim = 2;
        m.a[0][0] = std::cos(theta);
        m.a[0][1] = -std::sin(theta);
        m.a[1][0] = std::sin(theta);
        m.a[1][1] = std::cos(theta);
        return m;
    }
    static Mat diag(int dim, double d0, double d1, double d2 = 1.0) {
        Mat m;
        m.dim = dim;
        m.a[0][0] = d0;
        m.a[1][1] = d1;
        m.a[2][2] = d2;
        return m;
    }

    Vec apply(const Vec& v) const {
        Vec r;
        for (int i = 0; i < dim; ++i) {
            double s = 0;
            for (int j = 0; j < dim; ++j) s += a[i][j] * v[j];
            r[i] = s;
        }
        return r;
    }

    double det() const {
        if (dim == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
               a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    }

    Mat inverse() const {
        Mat r;
        r.dim = dim;
        double d = det();
        if (d == 0.0) throw std::invalid_argument("Mat::inverse: singular matrix");
        if (dim == 2) {
            r.a[0][0] = a[1][1] / d;
            r.a[0][1] = -a[0][1] / d;
            r.a[1][0] = -a[1][0] / d;
            r.a[1][1] = a[0][0] / d;
        } else {
            r.a[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / d;
            r.a[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / d;
            r.a[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / d;
            r.a[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) / d;
            r.a[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / d;
            r.a[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / d;
            r.a[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / d;
            r.a[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / d;
            r.a[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / d;
        }
        return r;
    }

    Mat times(const Mat& o) const {
        Mat r;
        r.dim = dim;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                double s = 0;
                for (int k = 0; k < dim; ++k) s += a[i][k] * o.a[k][j];
                r.a[i][j] = s;
            }
        return r;
    }
};

// Axis-aligned box.
struct Box {
    Vec lo, hi;

    double side(int i) const { return hi[i] - lo[i]; }
    double diameter(int dim) const {
        double s = 0;
        for (int i = 0; i < dim; ++i) s += side(i) * side(i);
        return std::sqrt(s);
    }
    bool contains(const Vec& p, int dim) const {
        for (int i = 0; i < dim; ++i)
            if (p[i] < lo[i] || p[i] > hi[i]) return false;
        return true;
    }
    static Box centered(int dim, double half) {
        Box b;
        for (int i = 0; i < dim; ++i) {
            b.lo[i] = -half;
            b.hi[i] = half;
        }
        return b;
    }
};

constexpr double kPi = 3.14159265358979323846264338327950288;

}  // namespace bpp
