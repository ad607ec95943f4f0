// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "rieszq/group.hpp"
#include "rieszq/numeric.hpp"

namespace rieszq {

/// Detection thresholds shared by all reports.
struct Tolerances {
    // T is treated as non-invertible when sigma_min <= singular * max(1, sigma_max).
    double singular = 1e-10;
    // Spectral when max_i |sigma_i^2 - n| <= spectral * n.
    double spectral = 1e-8;
};

/// An equal-size pair: E in G, B in the dual of G, both sorted, no duplicates.
struct SubsetPair {
    GroupSpec group;
    std::vector<Element> E;
    std::vector<Element> B;

    SubsetPair(GroupSpec g, std::vector<Element> e, std::vector<Element> b);
    std::int64_t size() const { return static_cast<std::int64_t>(E.size()); }
};

struct NormalizedQuantities {
    double L;    // n / L, +inf for non-basis pairs
    double U;    // U / n
    double rho;  // = rho
    double D;    // sqrt(n) / D^{1/n}, +inf for non-basis pairs
};

struct TightnessReport {
    std::int64_t n = 0;
    std::vector<double> sigmas;  // ascending
    double L = 0.0;              // sigma_1^2
    double U = 0.0;              // sigma_n^2
    double rho = 0.0;            // U/L, +inf below the singularity threshold
    double D = 0.0;              // prod sigma_i
    NormalizedQuantities normalized{};
    bool is_basis = false;
    bool is_spectral = false;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Entry (i,j) = b_j(x_i); rows follow E order, columns follow B order.
ComplexMatrix fourier_matrix(const SubsetPair& p);
ComplexMatrix fourier_matrix(const GroupSpec& g, const std::vector<Element>& E,
                             const std::vector<Element>& B);

TightnessReport tightness_report(const SubsetPair& p, const Tolerances& tol = {});
TightnessReport report_from_sigmas(std::int64_t n, std::vector<double> sigmas,
                                   const Tolerances& tol = {});

/// max over distinct column pairs of pi/2 - angle(c_i, c_j). Needs n >= 2.
double ortho_measure(const SubsetPair& p);

struct InequalityCheck {
    std::string name;
    double lhs;
    double rhs;
    bool holds;
    double slack;  // amount by which the inequality holds; negative = violated
};

/// Evaluates the named bounds on one pair. Bounds whose hypotheses require a
/// basis pair are only emitted when the pair is one.
std::vector<InequalityCheck> pair_inequalities(const SubsetPair& p, const Tolerances& tol = {});

/// A subset with strictly positive densities on its support.
struct WeightedSubset {
    GroupSpec group;
    std::vector<std::pair<Element, double>> weights;  // sorted by element, weights > 0

    WeightedSubset(GroupSpec g, std::vector<std::pair<Element, double>> w);
    std::int64_t support_size() const { return static_cast<std::int64_t>(weights.size()); }
};

/// Tightness of the weighted pair: the operator between the weighted L^2
/// spaces is unitarily equivalent to diag(sqrt(E)) * [b(x)] * diag(sqrt(B))
/// on the supports, so rho and the sigmas are read off that matrix. L and U
/// are the squared extreme singular values of the same operator; only rho is
/// optimized at set level.
TightnessReport weighted_tightness(const WeightedSubset& ew, const WeightedSubset& bw,
                                   const Tolerances& tol = {});

}  // namespace rieszq
