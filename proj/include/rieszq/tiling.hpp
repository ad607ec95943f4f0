// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rieszq/group.hpp"
#include "rieszq/pairs.hpp"
#include "rieszq/search.hpp"

namespace rieszq {

struct CrossSection {
    Element coset_representative;
    std::vector<Element> elements;            // E intersected with the coset, sorted
    std::vector<Element> translated_canonical;  // lex-smallest H-translate of elements - rep
    std::int64_t class_index = -1;            // index into distinct canonical sections
};

struct MultiTileAnalysis {
    Subgroup H;
    std::optional<std::int64_t> level;  // l when every coset meets E in l points
    std::vector<CrossSection> sections;  // one per coset, ordered by representative
    std::vector<std::vector<Element>> distinct_sections;  // canonical, by first appearance
    std::int64_t distinct_count = 0;
};

MultiTileAnalysis multi_tile_analysis(const GroupSpec& g, const std::vector<Element>& E,
                                      const Subgroup& h);

struct MultiTilingSummary {
    Subgroup H;
    std::int64_t level;
    std::int64_t distinct_count;
};

/// All subgroups H for which E multi-tiles, sorted by level, then distinct
/// count, then subgroup element list.
std::vector<MultiTilingSummary> find_multi_tiling_subgroups(const GroupSpec& g,
                                                            const std::vector<Element>& E,
                                                            std::int64_t subgroup_cap = 64);

/// Canonical representatives (lex-smallest per H-perp coset) for the dual of
/// H presented inside the dual of G. These stand for the characters of H.
std::vector<Element> dual_section_representatives(const GroupSpec& g, const Subgroup& h);

/// Canonical representative of b's H-perp coset.
Element canonical_dual_representative(const GroupSpec& g, const Subgroup& h_perp, const Element& b);

/// B = { lift(phi) + psi : phi in B_H, psi in H^perp } with the canonical
/// (lex-smallest) lift per character. |B| = |B_H| * |G| / |H|.
std::vector<Element> lift_spectrum(const GroupSpec& g, const Subgroup& h,
                                   const std::vector<Element>& b_h);

struct QuantityComparison {
    std::string name;  // Ltil, Util, rho, Dtil
    double lhs;        // computed directly on the lifted pair
    double rhs;        // assembled from the section formulas
    double rel_dev;
};

struct DecomposeVerification {
    std::vector<Element> lifted_spectrum;
    TightnessReport pair_report;
    std::vector<TightnessReport> section_reports;  // per coset
    std::vector<QuantityComparison> comparisons;
    double max_rel_dev = 0.0;
    double factor_residual = 0.0;   // ||T - T1*T2||_F in the block ordering
    double unitary_residual = 0.0;  // ||T2* T2 - I||_F
};

/// Checks the multi-tile decomposition identities: Ltil and Util of the
/// lifted pair equal the max over sections, rho equals max Ltil * max Util,
/// and Dtil equals the geometric mean, along with the T = T1*T2 factorization
/// with unitary T2.
DecomposeVerification decompose_verify(const GroupSpec& g, const std::vector<Element>& E,
                                       const Subgroup& h, const std::vector<Element>& b_h,
                                       const Tolerances& tol = {});

struct ProductPairVerification {
    GroupSpec product_group;
    std::vector<Element> E;
    std::vector<Element> B;
    std::vector<QuantityComparison> comparisons;  // Qtil(E,B) vs Qtil1*Qtil2
    double max_rel_dev = 0.0;
};

/// Multiplicativity of normalized quantities over Cartesian products.
ProductPairVerification product_pair_verify(const GroupSpec& h, const std::vector<Element>& e1,
                                            const std::vector<Element>& b1, const GroupSpec& k,
                                            const std::vector<Element>& e2,
                                            const std::vector<Element>& b2,
                                            const Tolerances& tol = {});

struct DimExpandVerification {
    std::array<double, 4> base;      // normalized set values of E1 in H
    std::array<double, 4> expanded;  // normalized set values of E1 x K in H + K
    double max_rel_dev = 0.0;
};

/// Exhaustively checks that expanding E1 by a full factor K preserves every
/// normalized set quantity.
DimExpandVerification dimexpand_verify(const GroupSpec& h, const std::vector<Element>& e1,
                                       const GroupSpec& k, const SearchOptions& opts = {});

struct MainBoundCertificate {
    std::int64_t level = 0;
    std::int64_t distinct_count = 0;
    bool found_simultaneous_basis = false;
    std::vector<Element> b_h;        // simultaneous basis over the dual of H (representatives)
    std::int64_t loop_s = 1;         // chosen unit multiplier
    double distinct_product = 0.0;   // prod over distinct sections of D(s B_H)
    double full_product = 0.0;       // prod over all cosets
    std::vector<Element> B;          // lifted spectrum
    TightnessReport report;
    std::vector<InequalityCheck> bounds;
    std::string diagnostics;
};

/// Certifies the level/complexity bounds on one multi-tile: finds a
/// simultaneous basis for the translated sections, loops it over units so the
/// section determinants multiply to at least one, lifts, and checks the four
/// bounds on the achieved pair. Requires level > 1.
MainBoundCertificate main_bound_certify(const GroupSpec& g, const std::vector<Element>& E,
                                        const Subgroup& h, const SearchOptions& opts = {});

/// Helpers for building product groups and sets.
GroupSpec direct_sum(const GroupSpec& h, const GroupSpec& k);
std::vector<Element> product_subset(const std::vector<Element>& a, const std::vector<Element>& b);

}  // namespace rieszq
