// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rieszq/group.hpp"
#include "rieszq/pairs.hpp"

namespace rieszq {

enum class Quantity { L, U, Rho, D };
enum class Strategy { Exhaustive, RandomLoop };

std::string quantity_name(Quantity q);
Quantity quantity_from_name(const std::string& name);
std::string strategy_name(Strategy s);

struct sampling_exhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SearchOptions {
    std::uint64_t cap = 10'000'000;      // candidate-count ceiling for exhaustive scans
    int threads = 0;                     // 0 = all hardware threads, 1 = serial reference
    std::uint64_t seed = 0;              // random-loop stream seed
    std::uint64_t sample_budget = 20000; // random-loop basis-pair attempts
    bool normalize_zero = true;          // fix 0 in B (valid by translation invariance)
    // Optional accelerator: skip candidates that cannot be basis partners
    // because some coordinate hyperplane H sees too many repeated restrictions
    // (sum of (cnt-1) over classes must stay <= |E outside H|). Off by
    // default; when on, optima attained only by singular pairs (possible for
    // U) may differ.
    bool coset_count_filter = false;
    std::int64_t exponent_cap = 60;      // loop-product cap on the minimal exponent
    Tolerances tol{};
};

struct SearchResult {
    Quantity quantity;
    double value = 0.0;  // the witness's own value; optimal for exhaustive scans
    std::vector<Element> witness;
    Strategy strategy = Strategy::Exhaustive;
    std::optional<std::uint64_t> seed;
    std::vector<std::pair<std::string, double>> certificates;  // named guaranteed bounds, ordered
};

/// Optimal value of one tightness quantity over all spectra B (L, D maximized;
/// U, rho minimized). Exhaustive scans return the true optimum together with
/// the lexicographically smallest witness among candidates within 1e-9 of it.
SearchResult set_quantity(const GroupSpec& g, const std::vector<Element>& E, Quantity q,
                          Strategy strategy, const SearchOptions& opts = {});

/// All four optima from a single exhaustive scan.
std::array<SearchResult, 4> set_quantities_all(const GroupSpec& g, const std::vector<Element>& E,
                                               const SearchOptions& opts = {});

/// Normalized set quantities (Ltil, Util, rhotil, Dtil) from the four optima.
std::array<double, 4> normalized_set_values(std::int64_t n,
                                            const std::array<SearchResult, 4>& results);

struct LoopAroundEntry {
    std::int64_t k;
    double d;  // D_E(kB)
};

struct LoopAroundResult {
    std::vector<LoopAroundEntry> table;  // all k coprime to the exponent, ascending
    std::int64_t best_k = 1;             // maximizes D, ties to the smallest k
    double best_d = 0.0;
    std::vector<Element> best_spectrum;  // best_k * B, sorted
};

LoopAroundResult loop_around(const GroupSpec& g, const std::vector<Element>& E,
                             const std::vector<Element>& B);

struct CertifiedPair {
    std::vector<Element> B;  // the loop-adjusted spectrum
    TightnessReport report;
    std::vector<std::pair<std::string, double>> certificates;
    std::uint64_t seed = 0;
    std::int64_t loop_k = 1;
    std::uint64_t attempts = 0;
};

/// Samples random spectra containing 0 until a basis pair appears, then loops
/// k over units to push D to at least 1. Throws sampling_exhausted when the
/// attempt budget runs out.
CertifiedPair certified_pair(const GroupSpec& g, const std::vector<Element>& E,
                             std::uint64_t seed, const SearchOptions& opts = {});

/// Smallest (lexicographic, 0 in B) spectrum that forms a basis pair with
/// every set of the family, or nullopt.
std::optional<std::vector<Element>> simultaneous_basis(const GroupSpec& g,
                                                       const std::vector<std::vector<Element>>& sets,
                                                       const SearchOptions& opts = {});

/// {0,1,...,k-1} in the dual of Z_m: a simultaneous basis for every size-k
/// subset of Z_m (Vandermonde nodes are distinct m-th roots of unity).
std::vector<Element> vandermonde_spectrum(std::int64_t m, std::int64_t k);

struct LoopProductResult {
    double product = 0.0;  // prod over units k of D_E(kB)
    std::int64_t nearest = 0;
    double deviation = 0.0;  // |product - nearest|
    std::vector<LoopAroundEntry> factors;
};

/// The loop product is |an integer|; at least 1 for basis pairs.
LoopProductResult loop_product_check(const GroupSpec& g, const std::vector<Element>& E,
                                     const std::vector<Element>& B,
                                     const SearchOptions& opts = {});

}  // namespace rieszq
