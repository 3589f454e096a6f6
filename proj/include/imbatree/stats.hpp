#pragma once

#include <span>
#include <vector>

namespace imbatree::stats {

double mean(std::span<const double> values);
double population_variance(std::span<const double> values);
double population_stddev(std::span<const double> values);

/// Quantile with linear interpolation at position q * (n - 1).
/// Input must be sorted ascending and non-empty.
double quantile_sorted(std::span<const double> sorted, double q);

/// Pearson correlation. Returns 0 when either side has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

double sigmoid(double z);

/// log(1 + exp(z)) without overflow.
double log1pexp(double z);

/// Solves A x = b for a dense n-by-n row-major system by Gaussian elimination
/// with partial pivoting. Throws SingularSystem when a pivot collapses.
std::vector<double> solve_linear(std::vector<double> a, std::vector<double> b);

}  // namespace imbatree::stats
