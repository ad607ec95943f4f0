// SPDX-License-Identifier: Apache-2.0
#include "rieszq/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "scan_internal.hpp"

namespace rieszq {

namespace {

double rel_dev(double lhs, double rhs) {
    if (std::isinf(lhs) || std::isinf(rhs)) return (std::isinf(lhs) && std::isinf(rhs)) ? 0.0 : kInf;
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

std::vector<Element> sorted_translate(const GroupSpec& g, const std::vector<Element>& set,
                                      const Element& shift) {
    std::vector<Element> out;
    out.reserve(set.size());
    for (const Element& x : set) out.push_back(g.add(x, shift));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

MultiTileAnalysis multi_tile_analysis(const GroupSpec& g, const std::vector<Element>& E,
                                      const Subgroup& h) {
    if (h.parent() != g) throw std::invalid_argument("subgroup belongs to a different group");
    std::vector<Element> e = validate_subset(g, E);
    if (e.empty()) throw std::invalid_argument("E must be non-empty");

    MultiTileAnalysis out{h, std::nullopt, {}, {}, 0};
    std::vector<Coset> parts = cosets(g, h);
    for (const Coset& c : parts) {
        CrossSection s;
        s.coset_representative = c.representative;
        std::set_intersection(e.begin(), e.end(), c.elements.begin(), c.elements.end(),
                              std::back_inserter(s.elements));
        // Canonical form: lex-smallest H-translate of the section shifted to H.
        std::vector<Element> shifted;
        shifted.reserve(s.elements.size());
        Element neg_rep = g.negate(c.representative);
        for (const Element& x : s.elements) shifted.push_back(g.add(x, neg_rep));
        std::sort(shifted.begin(), shifted.end());
        if (!shifted.empty()) {
            std::vector<Element> best = shifted;
            for (const Element& t : h.elements()) {
                std::vector<Element> candidate = sorted_translate(g, shifted, t);
                if (candidate < best) best = std::move(candidate);
            }
            s.translated_canonical = std::move(best);
        }
        out.sections.push_back(std::move(s));
    }

    bool uniform = true;
    std::size_t width = out.sections.front().elements.size();
    for (const CrossSection& s : out.sections)
        if (s.elements.size() != width) uniform = false;
    if (uniform && width > 0) out.level = static_cast<std::int64_t>(width);

    for (CrossSection& s : out.sections) {
        if (s.elements.empty()) continue;
        auto it = std::find(out.distinct_sections.begin(), out.distinct_sections.end(),
                            s.translated_canonical);
        if (it == out.distinct_sections.end()) {
            out.distinct_sections.push_back(s.translated_canonical);
            s.class_index = static_cast<std::int64_t>(out.distinct_sections.size()) - 1;
        } else {
            s.class_index = it - out.distinct_sections.begin();
        }
    }
    out.distinct_count = static_cast<std::int64_t>(out.distinct_sections.size());
    return out;
}

std::vector<MultiTilingSummary> find_multi_tiling_subgroups(const GroupSpec& g,
                                                            const std::vector<Element>& E,
                                                            std::int64_t subgroup_cap) {
    std::vector<MultiTilingSummary> out;
    for (const Subgroup& h : enumerate_subgroups(g, subgroup_cap)) {
        MultiTileAnalysis a = multi_tile_analysis(g, E, h);
        if (a.level) out.push_back({h, *a.level, a.distinct_count});
    }
    std::sort(out.begin(), out.end(), [](const MultiTilingSummary& a, const MultiTilingSummary& b) {
        if (a.level != b.level) return a.level < b.level;
        if (a.distinct_count != b.distinct_count) return a.distinct_count < b.distinct_count;
        return a.H.element_indices() < b.H.element_indices();
    });
    return out;
}

Element canonical_dual_representative(const GroupSpec& g, const Subgroup& h_perp,
                                      const Element& b) {
    Element best = b;
    for (const Element& psi : h_perp.elements()) {
        Element candidate = g.add(b, psi);
        if (candidate < best) best = std::move(candidate);
    }
    return best;
}

std::vector<Element> dual_section_representatives(const GroupSpec& g, const Subgroup& h) {
    Subgroup h_perp = annihilator(g, h);
    std::vector<Element> reps;
    for (const Coset& c : cosets(g, h_perp)) reps.push_back(c.representative);
    return reps;  // one per character of H, lex-smallest in its coset
}

std::vector<Element> lift_spectrum(const GroupSpec& g, const Subgroup& h,
                                   const std::vector<Element>& b_h) {
    if (h.parent() != g) throw std::invalid_argument("subgroup belongs to a different group");
    Subgroup h_perp = annihilator(g, h);
    std::vector<Element> lifts;
    lifts.reserve(b_h.size());
    for (const Element& phi : b_h)
        lifts.push_back(canonical_dual_representative(g, h_perp, phi));
    std::sort(lifts.begin(), lifts.end());
    if (std::adjacent_find(lifts.begin(), lifts.end()) != lifts.end())
        throw std::invalid_argument("spectrum over the subgroup has duplicate characters");
    std::vector<Element> out;
    out.reserve(lifts.size() * h_perp.elements().size());
    for (const Element& phi : lifts)
        for (const Element& psi : h_perp.elements()) out.push_back(g.add(phi, psi));
    std::sort(out.begin(), out.end());
    if (out.size() != lifts.size() * h_perp.elements().size())
        throw std::logic_error("lifted spectrum lost elements");
    return out;
}

DecomposeVerification decompose_verify(const GroupSpec& g, const std::vector<Element>& E,
                                       const Subgroup& h, const std::vector<Element>& b_h,
                                       const Tolerances& tol) {
    MultiTileAnalysis analysis = multi_tile_analysis(g, E, h);
    if (!analysis.level || *analysis.level != static_cast<std::int64_t>(b_h.size()))
        throw std::invalid_argument("E must multi-tile by H at level |B_H|");
    const std::int64_t ell = *analysis.level;
    const std::int64_t m = static_cast<std::int64_t>(analysis.sections.size());

    Subgroup h_perp = annihilator(g, h);
    std::vector<Element> lifts;
    for (const Element& phi : b_h) lifts.push_back(canonical_dual_representative(g, h_perp, phi));
    std::sort(lifts.begin(), lifts.end());
    if (std::adjacent_find(lifts.begin(), lifts.end()) != lifts.end())
        throw std::invalid_argument("B_H has duplicate characters modulo H-perp");

    DecomposeVerification out;
    out.lifted_spectrum = lift_spectrum(g, h, lifts);
    out.pair_report = tightness_report(SubsetPair(g, E, out.lifted_spectrum), tol);

    double max_ltil = 0.0, max_util = 0.0;
    double dtil_log = 0.0;
    bool any_inf = false;
    for (const CrossSection& s : analysis.sections) {
        Element neg = g.negate(s.coset_representative);
        std::vector<Element> section;
        for (const Element& x : s.elements) section.push_back(g.add(x, neg));
        TightnessReport r = tightness_report(SubsetPair(g, section, lifts), tol);
        max_ltil = std::max(max_ltil, r.normalized.L);
        max_util = std::max(max_util, r.normalized.U);
        if (std::isinf(r.normalized.D))
            any_inf = true;
        else
            dtil_log += std::log(r.normalized.D);
        out.section_reports.push_back(std::move(r));
    }
    double rhs_dtil = any_inf ? kInf : std::exp(dtil_log / static_cast<double>(m));
    double rhs_rho = max_ltil * max_util;

    out.comparisons = {
        {"Ltil", out.pair_report.normalized.L, max_ltil, 0.0},
        {"Util", out.pair_report.normalized.U, max_util, 0.0},
        {"rho", out.pair_report.rho, rhs_rho, 0.0},
        {"Dtil", out.pair_report.normalized.D, rhs_dtil, 0.0},
    };
    for (auto& c : out.comparisons) {
        c.rel_dev = rel_dev(c.lhs, c.rhs);
        out.max_rel_dev = std::max(out.max_rel_dev, c.rel_dev);
    }

    // T = T1 * T2 in the block ordering: rows grouped by coset, columns
    // grouped by H-perp element with the lifted characters inside. The raw
    // coset-character factor has Gram m*I, so the unitary split puts sqrt(m)
    // into T1 and takes it out of T2.
    std::vector<Element> psis = h_perp.elements();
    const std::int64_t dim = m * ell;
    const double root_m = std::sqrt(static_cast<double>(m));
    ComplexMatrix t(dim, dim), t1(dim, dim), t2(dim, dim);
    for (std::int64_t i = 0; i < m; ++i) {
        const CrossSection& s = analysis.sections[static_cast<std::size_t>(i)];
        for (std::int64_t r = 0; r < ell; ++r) {
            const Element& x = s.elements[static_cast<std::size_t>(r)];
            for (std::int64_t j = 0; j < m; ++j) {
                for (std::int64_t c = 0; c < ell; ++c) {
                    Element chi = g.add(lifts[static_cast<std::size_t>(c)],
                                        psis[static_cast<std::size_t>(j)]);
                    t.at(i * ell + r, j * ell + c) = character_value(g, chi, x);
                }
            }
            for (std::int64_t c = 0; c < ell; ++c)
                t1.at(i * ell + r, i * ell + c) =
                    root_m * character_value(g, lifts[static_cast<std::size_t>(c)], x);
        }
        for (std::int64_t j = 0; j < m; ++j) {
            cplx phase = character_value(g, psis[static_cast<std::size_t>(j)],
                                         s.coset_representative) / root_m;
            for (std::int64_t c = 0; c < ell; ++c) t2.at(i * ell + c, j * ell + c) = phase;
        }
    }
    out.factor_residual = frobenius_distance(t, matmul(t1, t2));
    out.unitary_residual =
        frobenius_distance(matmul(conj_transpose(t2), t2), ComplexMatrix::identity(dim));
    return out;
}

GroupSpec direct_sum(const GroupSpec& h, const GroupSpec& k) {
    std::vector<std::int64_t> moduli = h.moduli();
    moduli.insert(moduli.end(), k.moduli().begin(), k.moduli().end());
    return GroupSpec(std::move(moduli));
}

std::vector<Element> product_subset(const std::vector<Element>& a, const std::vector<Element>& b) {
    std::vector<Element> out;
    out.reserve(a.size() * b.size());
    for (const Element& x : a)
        for (const Element& y : b) {
            Element z = x;
            z.insert(z.end(), y.begin(), y.end());
            out.push_back(std::move(z));
        }
    std::sort(out.begin(), out.end());
    return out;
}

ProductPairVerification product_pair_verify(const GroupSpec& h, const std::vector<Element>& e1,
                                            const std::vector<Element>& b1, const GroupSpec& k,
                                            const std::vector<Element>& e2,
                                            const std::vector<Element>& b2,
                                            const Tolerances& tol) {
    TightnessReport r1 = tightness_report(SubsetPair(h, e1, b1), tol);
    TightnessReport r2 = tightness_report(SubsetPair(k, e2, b2), tol);

    ProductPairVerification out{direct_sum(h, k), product_subset(e1, e2), product_subset(b1, b2),
                                {}, 0.0};
    TightnessReport rp = tightness_report(SubsetPair(out.product_group, out.E, out.B), tol);

    out.comparisons = {
        {"Ltil", rp.normalized.L, r1.normalized.L * r2.normalized.L, 0.0},
        {"Util", rp.normalized.U, r1.normalized.U * r2.normalized.U, 0.0},
        {"rho", rp.rho, r1.rho * r2.rho, 0.0},
        {"Dtil", rp.normalized.D, r1.normalized.D * r2.normalized.D, 0.0},
    };
    for (auto& c : out.comparisons) {
        c.rel_dev = rel_dev(c.lhs, c.rhs);
        out.max_rel_dev = std::max(out.max_rel_dev, c.rel_dev);
    }
    return out;
}

DimExpandVerification dimexpand_verify(const GroupSpec& h, const std::vector<Element>& e1,
                                       const GroupSpec& k, const SearchOptions& opts) {
    std::vector<Element> base_set = validate_subset(h, e1);
    auto base = set_quantities_all(h, base_set, opts);

    GroupSpec g = direct_sum(h, k);
    std::vector<Element> full_k;
    for (std::int64_t i = 0; i < k.order(); ++i) full_k.push_back(k.element(i));
    std::vector<Element> expanded_set = product_subset(base_set, full_k);
    auto expanded = set_quantities_all(g, expanded_set, opts);

    DimExpandVerification out;
    out.base = normalized_set_values(static_cast<std::int64_t>(base_set.size()), base);
    out.expanded = normalized_set_values(static_cast<std::int64_t>(expanded_set.size()), expanded);
    for (int i = 0; i < 4; ++i)
        out.max_rel_dev = std::max(out.max_rel_dev,
                                   rel_dev(out.expanded[static_cast<std::size_t>(i)],
                                           out.base[static_cast<std::size_t>(i)]));
    return out;
}

namespace {

// Exhaustive simultaneous basis over the characters of H, normalized to
// contain the trivial character; candidates and sections live on canonical
// representatives.
std::optional<std::vector<Element>> simultaneous_basis_over_dual(
    const GroupSpec& g, const std::vector<Element>& reps,
    const std::vector<std::vector<Element>>& sections, std::int64_t ell, const Tolerances& tol) {
    const std::int64_t count = static_cast<std::int64_t>(reps.size());
    if (ell > count) return std::nullopt;
    if (ell == 1) return std::vector<Element>{reps.front()};
    std::vector<std::int32_t> comb(static_cast<std::size_t>(ell - 1));
    std::iota(comb.begin(), comb.end(), 0);
    do {
        std::vector<Element> candidate{reps.front()};  // trivial character
        for (std::int32_t c : comb) candidate.push_back(reps[static_cast<std::size_t>(c) + 1]);
        bool all = true;
        for (const auto& f : sections) {
            std::vector<double> sv = singular_values(fourier_matrix(g, f, candidate));
            if (!(sv.front() > tol.singular * std::max(1.0, sv.back()))) {
                all = false;
                break;
            }
        }
        if (all) {
            std::sort(candidate.begin(), candidate.end());
            return candidate;
        }
    } while (detail::next_combination(comb, count - 1));
    return std::nullopt;
}

// Generator-power basis over a cyclic subgroup's dual: powers of a character
// that restricts to a generator of that dual, so sections see Vandermonde
// matrices with distinct nodes.
std::optional<std::vector<Element>> vandermonde_basis_over_dual(const GroupSpec& g,
                                                                const Subgroup& h,
                                                                const Subgroup& h_perp,
                                                                std::int64_t ell) {
    const std::int64_t target = h.order();
    for (std::int64_t idx = 0; idx < g.order(); ++idx) {
        Element b = g.element(idx);
        // order of the restriction of b to H = order of b modulo H-perp
        std::int64_t ord = 1;
        Element acc = b;
        while (!h_perp.contains(acc)) {
            acc = g.add(acc, b);
            ++ord;
        }
        if (ord != target) continue;
        std::vector<Element> basis;
        for (std::int64_t j = 0; j < ell; ++j)
            basis.push_back(canonical_dual_representative(g, h_perp, g.scale(j, b)));
        std::sort(basis.begin(), basis.end());
        return basis;
    }
    return std::nullopt;
}

}  // namespace

MainBoundCertificate main_bound_certify(const GroupSpec& g, const std::vector<Element>& E,
                                        const Subgroup& h, const SearchOptions& opts) {
    MultiTileAnalysis analysis = multi_tile_analysis(g, E, h);
    if (!analysis.level)
        throw std::invalid_argument("E does not multi-tile by H");
    const std::int64_t ell = *analysis.level;
    if (ell == 1)
        throw std::invalid_argument("level 1 tiles are spectral; lift the trivial character instead");

    MainBoundCertificate cert;
    cert.level = ell;
    cert.distinct_count = analysis.distinct_count;

    Subgroup h_perp = annihilator(g, h);
    std::vector<Element> reps = dual_section_representatives(g, h);

    std::optional<std::vector<Element>> basis;
    if (h.is_cyclic()) basis = vandermonde_basis_over_dual(g, h, h_perp, ell);
    if (!basis)
        basis = simultaneous_basis_over_dual(g, reps, analysis.distinct_sections, ell, opts.tol);
    if (!basis) {
        cert.found_simultaneous_basis = false;
        cert.diagnostics = "translated cross sections admit no simultaneous basis over the dual of H";
        return cert;
    }
    cert.found_simultaneous_basis = true;
    cert.b_h = *basis;

    // Multiplicity of each distinct section among the cosets.
    std::vector<std::int64_t> multiplicity(static_cast<std::size_t>(analysis.distinct_count), 0);
    for (const CrossSection& s : analysis.sections)
        ++multiplicity[static_cast<std::size_t>(s.class_index)];

    const std::int64_t mh = h.exponent();
    double best_full = -1.0;
    for (std::int64_t s = 1; s <= mh; ++s) {
        if (std::gcd(s, mh) != 1) continue;
        std::vector<Element> scaled;
        for (const Element& phi : cert.b_h)
            scaled.push_back(canonical_dual_representative(g, h_perp, g.scale(s, phi)));
        std::sort(scaled.begin(), scaled.end());
        double distinct_product = 1.0;
        double full_product = 1.0;
        for (std::size_t i = 0; i < analysis.distinct_sections.size(); ++i) {
            double d = abs_determinant(fourier_matrix(g, analysis.distinct_sections[i], scaled));
            distinct_product *= d;
            full_product *= std::pow(d, static_cast<double>(multiplicity[i]));
        }
        if (full_product > best_full) {
            best_full = full_product;
            cert.loop_s = s;
            cert.distinct_product = distinct_product;
            cert.full_product = full_product;
        }
    }

    std::vector<Element> scaled_basis;
    for (const Element& phi : cert.b_h)
        scaled_basis.push_back(canonical_dual_representative(g, h_perp, g.scale(cert.loop_s, phi)));
    std::sort(scaled_basis.begin(), scaled_basis.end());
    cert.B = lift_spectrum(g, h, scaled_basis);
    cert.report = tightness_report(SubsetPair(g, E, cert.B), opts.tol);

    const double dl = static_cast<double>(ell);
    const double dk = static_cast<double>(analysis.distinct_count);
    const double e_const = std::exp(1.0);
    auto check = [](std::string name, double lhs, double rhs, double slack_abs) {
        return InequalityCheck{std::move(name), lhs, rhs, lhs <= rhs + slack_abs, rhs - lhs};
    };
    cert.bounds = {
        check("Ltil_lt_e_l_kl", cert.report.normalized.L, e_const * std::pow(dl, dk * dl), 0.0),
        check("Util_lt_level_gap", cert.report.normalized.U,
              dl - (dl - 1.0) / (std::pow(2.0, dk + 1.0) * std::pow(dl, dk)), 0.0),
        check("rho_lt_e_l_kl1", cert.report.rho, e_const * std::pow(dl, dk * dl + 1.0), 0.0),
        check("Dtil_le_sqrt_level", cert.report.normalized.D, std::sqrt(dl), 1e-9),
    };
    std::ostringstream diag;
    diag << "s=" << cert.loop_s << " distinct_product=" << cert.distinct_product
         << " full_product=" << cert.full_product;
    cert.diagnostics = diag.str();
    return cert;
}

}  // namespace rieszq
