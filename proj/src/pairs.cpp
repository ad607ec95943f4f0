// SPDX-License-Identifier: Apache-2.0
#include "rieszq/pairs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rieszq {

SubsetPair::SubsetPair(GroupSpec g, std::vector<Element> e, std::vector<Element> b)
    : group(std::move(g)), E(std::move(e)), B(std::move(b)) {
    for (const Element& x : E) group.require_conformant(x);
    for (const Element& x : B) group.require_conformant(x);
    std::sort(E.begin(), E.end());
    std::sort(B.begin(), B.end());
    if (std::adjacent_find(E.begin(), E.end()) != E.end() ||
        std::adjacent_find(B.begin(), B.end()) != B.end())
        throw std::invalid_argument("pair subsets must not contain duplicates");
    if (E.empty() || E.size() != B.size())
        throw std::invalid_argument("pair subsets must be non-empty and of equal size");
}

ComplexMatrix fourier_matrix(const GroupSpec& g, const std::vector<Element>& E,
                             const std::vector<Element>& B) {
    ComplexMatrix t(static_cast<std::int64_t>(E.size()), static_cast<std::int64_t>(B.size()));
    for (std::size_t i = 0; i < E.size(); ++i)
        for (std::size_t j = 0; j < B.size(); ++j)
            t.at(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)) =
                character_value(g, B[j], E[i]);
    return t;
}

ComplexMatrix fourier_matrix(const SubsetPair& p) { return fourier_matrix(p.group, p.E, p.B); }

TightnessReport report_from_sigmas(std::int64_t n, std::vector<double> sigmas,
                                   const Tolerances& tol) {
    if (n < 1 || sigmas.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("sigma count must equal pair size");
    std::sort(sigmas.begin(), sigmas.end());
    TightnessReport r;
    r.n = n;
    r.sigmas = std::move(sigmas);
    double smin = r.sigmas.front();
    double smax = r.sigmas.back();
    r.L = smin * smin;
    r.U = smax * smax;
    r.D = 1.0;
    for (double s : r.sigmas) r.D *= s;
    r.is_basis = smin > tol.singular * std::max(1.0, smax);
    r.rho = r.is_basis ? r.U / r.L : kInf;
    double dn = static_cast<double>(n);
    r.is_spectral = true;
    for (double s : r.sigmas)
        if (std::abs(s * s - dn) > tol.spectral * dn) r.is_spectral = false;
    r.normalized.L = r.is_basis ? dn / r.L : kInf;
    r.normalized.U = r.U / dn;
    r.normalized.rho = r.rho;
    r.normalized.D = r.is_basis ? std::sqrt(dn) / std::pow(r.D, 1.0 / dn) : kInf;
    return r;
}

TightnessReport tightness_report(const SubsetPair& p, const Tolerances& tol) {
    return report_from_sigmas(p.size(), singular_values(fourier_matrix(p)), tol);
}

double ortho_measure(const SubsetPair& p) {
    const std::int64_t n = p.size();
    if (n < 2) throw std::invalid_argument("ortho_measure needs a pair of size >= 2");
    ComplexMatrix t = fourier_matrix(p);
    double worst = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = i + 1; j < n; ++j) {
            cplx inner = 0.0;
            double ni = 0.0, nj = 0.0;
            for (std::int64_t k = 0; k < n; ++k) {
                inner += std::conj(t.at(k, i)) * t.at(k, j);
                ni += std::norm(t.at(k, i));
                nj += std::norm(t.at(k, j));
            }
            double c = std::min(1.0, std::abs(inner) / std::sqrt(ni * nj));
            double theta = std::acos(c);
            worst = std::max(worst, 1.5707963267948966 - theta);
        }
    }
    return worst;
}

namespace {

InequalityCheck make_ge(std::string name, double lhs, double rhs, double tol_abs) {
    double slack = lhs - rhs;
    return {std::move(name), lhs, rhs, slack >= -tol_abs, slack};
}

InequalityCheck make_le(std::string name, double lhs, double rhs, double tol_abs) {
    double slack = rhs - lhs;
    return {std::move(name), lhs, rhs, slack >= -tol_abs, slack};
}

}  // namespace

std::vector<InequalityCheck> pair_inequalities(const SubsetPair& p, const Tolerances& tol) {
    TightnessReport r = tightness_report(p, tol);
    const double n = static_cast<double>(r.n);
    const double tiny = 1e-9 * std::max(1.0, n * n);
    std::vector<InequalityCheck> out;
    out.push_back(make_ge("L_nonnegative", r.L, 0.0, tiny));
    out.push_back(make_le("L_le_n", r.L, n, tiny));
    out.push_back(make_ge("U_ge_n", r.U, n, tiny));
    out.push_back(make_le("U_le_n_squared", r.U, n * n, tiny));
    double hadamard_cap = std::pow(n, n / 2.0);
    out.push_back(make_le("hadamard_D", r.D, hadamard_cap, 1e-9 * std::max(1.0, hadamard_cap)));
    if (!r.is_basis) return out;

    out.push_back(make_ge("rho_ge_1", r.rho, 1.0, 1e-9));
    if (r.n > 1) {
        double nm1 = n - 1.0;
        double capL = std::sqrt(r.L) * std::pow((n * n - r.L) / nm1, nm1 / 2.0);
        double capU = std::sqrt(r.U) * std::pow((n * n - r.U) / nm1, nm1 / 2.0);
        double capRho = 2.0 * std::sqrt(r.rho) / (r.rho + 1.0) * hadamard_cap;
        out.push_back(make_le("D_cap_from_L", r.D, capL, 1e-9 * std::max(1.0, capL)));
        out.push_back(make_le("D_cap_from_U", r.D, capU, 1e-9 * std::max(1.0, capU)));
        out.push_back(make_le("D_cap_from_rho", r.D, capRho, 1e-9 * std::max(1.0, capRho)));
        double inv_cap = 4.0 * std::pow(n, n) / (r.D * r.D);
        out.push_back(make_le("rho_lt_4nn_over_D2", r.rho, inv_cap, 1e-9 * inv_cap));
    }
    std::int64_t m = p.group.exponent();
    double phi = static_cast<double>(totient(m));
    double cycloD = std::pow(n, n * (1.0 - phi) / 2.0);
    out.push_back(make_ge("cyclotomic_D_floor", r.D, cycloD, 1e-9));
    double cycloRho = 4.0 * std::pow(n, n * phi);
    out.push_back(make_le("cyclotomic_rho_cap", r.rho, cycloRho, 1e-9 * cycloRho));
    return out;
}

WeightedSubset::WeightedSubset(GroupSpec g, std::vector<std::pair<Element, double>> w)
    : group(std::move(g)), weights(std::move(w)) {
    if (weights.empty()) throw std::invalid_argument("weighted subset needs a non-empty support");
    for (auto& [x, wt] : weights) {
        group.require_conformant(x);
        if (!(wt > 0.0) || !std::isfinite(wt))
            throw std::invalid_argument("weights must be strictly positive and finite");
    }
    std::sort(weights.begin(), weights.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < weights.size(); ++i)
        if (weights[i].first == weights[i - 1].first)
            throw std::invalid_argument("weighted subset has duplicate support points");
}

TightnessReport weighted_tightness(const WeightedSubset& ew, const WeightedSubset& bw,
                                   const Tolerances& tol) {
    if (ew.group != bw.group) throw std::invalid_argument("weighted pair group mismatch");
    if (ew.support_size() != bw.support_size())
        throw std::invalid_argument("weighted pair support sizes differ");
    const std::int64_t n = ew.support_size();
    ComplexMatrix s(n, n);
    for (std::int64_t i = 0; i < n; ++i) {
        double re = std::sqrt(ew.weights[static_cast<std::size_t>(i)].second);
        for (std::int64_t j = 0; j < n; ++j) {
            double rb = std::sqrt(bw.weights[static_cast<std::size_t>(j)].second);
            s.at(i, j) = re * rb *
                         character_value(ew.group, bw.weights[static_cast<std::size_t>(j)].first,
                                         ew.weights[static_cast<std::size_t>(i)].first);
        }
    }
    // With unit weights this reproduces the ordinary report exactly. For
    // genuine densities, rho and the sigmas carry the meaning; the other
    // fields are the same functions of the sigmas.
    return report_from_sigmas(n, singular_values(s), tol);
}

}  // namespace rieszq
