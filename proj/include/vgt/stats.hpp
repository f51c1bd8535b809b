#pragma once

#include <cstddef>
#include <span>

#include "vgt/series.hpp"

namespace vgt {

struct LinFit {
    double a = 0.0, b = 0.0;       // intercept, slope
    double se_a = 0.0, se_b = 0.0;
    double r2 = 0.0;
    std::size_t n = 0;
};

// Plain OLS of y on x; throws on n < 3 or zero-variance x.
LinFit linear_fit(std::span<const double> x, std::span<const double> y);

enum class Transform { Identity, LogX };

const char* transform_name(Transform t);

struct RegressionReport {
    double a = 0.0, b = 0.0;
    double stderr_a = 0.0, stderr_b = 0.0;
    double p_a = 1.0, p_b = 1.0;  // two-sided, coefficient = 0, dof = n - 2
    std::size_t n = 0;
    Transform transform = Transform::Identity;
};

// OLS with optional ln-x transform and Student-t p-values for both
// coefficients.  LogX requires all x strictly positive.
RegressionReport ols(std::span<const double> x, std::span<const double> y,
                     Transform transform = Transform::Identity);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

// Student-t survival function P(T > t) and the two-sided tail 2 P(T > |t|).
double student_t_sf(double t, double dof);
double student_t_p_two_sided(double t, double dof);

}  // namespace vgt
