#include "vgt/stats.hpp"

#include <cmath>
#include <vector>

#include "vgt/kernels.hpp"

namespace vgt {
namespace {

// Continued fraction for the incomplete beta (modified Lentz).  Converges
// quickly for x < (a+1)/(a+b+2); the caller flips to the symmetric form
// otherwise.
double beta_cf(double a, double b, double x) {
    constexpr double eps = 1e-15;
    constexpr double fpmin = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw Error("incomplete beta needs a, b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_sf(double t, double dof) {
    if (!(dof > 0.0)) throw Error("student t needs dof > 0");
    if (t < 0.0) return 1.0 - student_t_sf(-t, dof);
    const double x = dof / (dof + t * t);
    return 0.5 * regularized_incomplete_beta(0.5 * dof, 0.5, x);
}

double student_t_p_two_sided(double t, double dof) {
    return 2.0 * student_t_sf(std::fabs(t), dof);
}

LinFit linear_fit(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size()) throw Error("linear_fit: length mismatch");
    if (n < 3) throw Error("linear_fit: need at least 3 points");
    const Moments2 m = active_kernels().moments2(x.data(), y.data(), n);
    const double dn = static_cast<double>(n);
    const double sxx = m.sxx - m.sx * m.sx / dn;
    const double sxy = m.sxy - m.sx * m.sy / dn;
    const double syy = m.syy - m.sy * m.sy / dn;
    if (!(sxx > 0.0)) throw Error("linear_fit: x has zero variance");

    LinFit f;
    f.n = n;
    f.b = sxy / sxx;
    f.a = (m.sy - f.b * m.sx) / dn;
    double sse = syy - f.b * sxy;
    if (sse < 0.0) sse = 0.0;  // guard against rounding on exact fits
    const double s2 = sse / static_cast<double>(n - 2);
    f.se_b = std::sqrt(s2 / sxx);
    const double xbar = m.sx / dn;
    f.se_a = std::sqrt(s2 * (1.0 / dn + xbar * xbar / sxx));
    f.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    return f;
}

const char* transform_name(Transform t) {
    return t == Transform::LogX ? "log-x" : "identity";
}

RegressionReport ols(std::span<const double> x, std::span<const double> y,
                     Transform transform) {
    std::vector<double> tx;
    std::span<const double> xs = x;
    if (transform == Transform::LogX) {
        tx.reserve(x.size());
        for (double v : x) {
            if (!(v > 0.0)) throw Error("log-x regression requires x > 0");
            tx.push_back(std::log(v));
        }
        xs = tx;
    }
    const LinFit f = linear_fit(xs, y);

    RegressionReport r;
    r.a = f.a;
    r.b = f.b;
    r.stderr_a = f.se_a;
    r.stderr_b = f.se_b;
    r.n = f.n;
    r.transform = transform;
    const double dof = static_cast<double>(f.n - 2);
    auto pval = [dof](double coef, double se) {
        if (se == 0.0) return coef == 0.0 ? 1.0 : 0.0;  // exact-fit degenerate case
        return student_t_p_two_sided(coef / se, dof);
    };
    r.p_a = pval(f.a, f.se_a);
    r.p_b = pval(f.b, f.se_b);
    return r;
}

}  // namespace vgt
