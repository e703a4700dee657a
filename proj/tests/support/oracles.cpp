// SPDX-License-Identifier: Apache-2.0
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

namespace oracle {

namespace {

ComplexMatrix solve_shifted(const ComplexMatrix& mhm, double g, const ComplexMatrix& a) {
    ComplexMatrix lhs = g * mhm;
    lhs.diagonal().array() += 1.0;
    return lhs.fullPivLu().solve(a);
}

}  // namespace

ComplexMatrix project_ball(const ComplexMatrix& a, const QuadraticBall& ball) {
    if ((ball.m * a).squaredNorm() <= ball.c) {
        return a;
    }
    const ComplexMatrix mhm = ball.m.adjoint() * ball.m;
    auto level = [&](double g) { return (ball.m * solve_shifted(mhm, g, a)).squaredNorm(); };
    double lo = 0.0;
    double hi = 1.0;
    while (level(hi) > ball.c) {
        lo = hi;
        hi *= 2.0;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (level(mid) > ball.c ? lo : hi) = mid;
    }
    return solve_shifted(mhm, hi, a);
}

ComplexMatrix dykstra(const ComplexMatrix& a, const QuadraticBall& first,
                      const QuadraticBall& second, double tol, int max_iters) {
    ComplexMatrix x = a;
    ComplexMatrix p = ComplexMatrix::Zero(a.rows(), a.cols());
    ComplexMatrix q = p;
    for (int k = 0; k < max_iters; ++k) {
        const ComplexMatrix y = project_ball(x + p, first);
        p = x + p - y;
        const ComplexMatrix next = project_ball(y + q, second);
        q = y + q - next;
        const double move = (next - x).norm();
        x = next;
        if (move < tol) {
            break;
        }
    }
    return x;
}

double water_filling_capacity(const std::vector<double>& gains, double p) {
    double lo = 0.0;
    double hi = p;
    for (double g : gains) {
        if (g > 0.0) {
            hi = std::max(hi, p + 1.0 / g);
        }
    }
    auto used = [&](double mu) {
        double s = 0.0;
        for (double g : gains) {
            if (g > 0.0) {
                s += std::max(0.0, mu - 1.0 / g);
            }
        }
        return s;
    };
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        (used(mid) > p ? hi : lo) = mid;
    }
    double cap = 0.0;
    for (double g : gains) {
        if (g > 0.0) {
            cap += std::log2(1.0 + g * std::max(0.0, lo - 1.0 / g));
        }
    }
    return cap;
}

ComplexMatrix fd_gradient(const std::function<double(const ComplexMatrix&)>& f,
                          const ComplexMatrix& z, double h) {
    ComplexMatrix g(z.rows(), z.cols());
    ComplexMatrix probe = z;
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
        for (Eigen::Index i = 0; i < z.rows(); ++i) {
            const cogbf::Complex base = z(i, j);
            probe(i, j) = base + h;
            const double fr_plus = f(probe);
            probe(i, j) = base - h;
            const double fr_minus = f(probe);
            probe(i, j) = base + cogbf::Complex(0.0, h);
            const double fi_plus = f(probe);
            probe(i, j) = base - cogbf::Complex(0.0, h);
            const double fi_minus = f(probe);
            probe(i, j) = base;
            g(i, j) = cogbf::Complex((fr_plus - fr_minus) / (2 * h), (fi_plus - fi_minus) / (2 * h));
        }
    }
    return g;
}

double paired_t_pvalue_greater(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = x[i] - y[i];
    }
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : d) {
        ss += (v - mean) * (v - mean);
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd == 0.0) {
        return mean > 0.0 ? 0.0 : 1.0;
    }
    const double t = mean / (sd / std::sqrt(static_cast<double>(n)));
    const boost::math::students_t dist(static_cast<double>(n - 1));
    return boost::math::cdf(boost::math::complement(dist, t));
}

ComplexMatrix grid_unit_modulus(const ComplexMatrix& a, int points) {
    ComplexMatrix out(a.rows(), a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            double best = INFINITY;
            for (int k = 0; k < points; ++k) {
                const cogbf::Complex c = std::polar(1.0, 2.0 * std::numbers::pi * k / points);
                const double d = std::norm(c - a(i, j));
                if (d < best) {
                    best = d;
                    out(i, j) = c;
                }
            }
        }
    }
    return out;
}

}  // namespace oracle
