// SPDX-License-Identifier: Apache-2.0
#include "rieszq/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>

#include "rieszq/rng.hpp"
#include "scan_internal.hpp"

namespace rieszq {

namespace {

constexpr double kTieSlack = 1e-9;

bool is_min_quantity(Quantity q) { return q == Quantity::U || q == Quantity::Rho; }

struct QuantityValues {
    std::array<double, 4> v;  // indexed by Quantity
    double& operator[](Quantity q) { return v[static_cast<std::size_t>(q)]; }
    double operator[](Quantity q) const { return v[static_cast<std::size_t>(q)]; }
};

QuantityValues values_from_sigmas(const std::vector<double>& sv, const Tolerances& tol) {
    QuantityValues out{};
    const double smin = sv.front();
    const double smax = sv.back();
    out[Quantity::L] = smin * smin;
    out[Quantity::U] = smax * smax;
    double d = 1.0;
    for (double s : sv) d *= s;
    out[Quantity::D] = d;
    bool basis = smin > tol.singular * std::max(1.0, smax);
    out[Quantity::Rho] = basis ? (smax * smax) / (smin * smin) : kInf;
    return out;
}

bool improves(Quantity q, double candidate, double incumbent) {
    return is_min_quantity(q) ? candidate < incumbent : candidate > incumbent;
}

double worst_value(Quantity q) { return is_min_quantity(q) ? kInf : -kInf; }

bool within_tie_slack(Quantity q, double candidate, double optimum) {
    if (std::isinf(optimum)) return std::isinf(candidate) && candidate == optimum;
    return is_min_quantity(q) ? candidate <= optimum + kTieSlack
                              : candidate >= optimum - kTieSlack;
}

// Shared description of one exhaustive scan over spectra B.
struct SpectrumSpace {
    const CharacterTable* table = nullptr;
    std::vector<std::vector<std::int64_t>> row_sets;  // element indices of each E_i
    std::int64_t n = 0;                               // pair size
    std::int64_t universe = 0;                        // free column choices
    std::int64_t slots = 0;                           // combination length
    bool include_zero = true;
    Tolerances tol{};

    // coset-count filter state (empty when disabled): per dropped coordinate
    // i, the class id of each dual element (its tuple with coordinate i
    // removed) and, per row set, how many elements lie outside {x_i = 0}.
    std::vector<std::vector<std::int32_t>> restriction_class;  // [coord][b_index]
    std::vector<std::vector<std::int64_t>> outside_count;      // [set][coord]

    std::int64_t column_index(const std::vector<std::int32_t>& comb, std::int64_t j) const {
        if (include_zero) return j == 0 ? 0 : comb[static_cast<std::size_t>(j - 1)] + 1;
        return comb[static_cast<std::size_t>(j)];
    }

    std::vector<Element> spectrum_of(const GroupSpec& g,
                                     const std::vector<std::int32_t>& comb) const {
        std::vector<Element> b;
        b.reserve(static_cast<std::size_t>(n));
        for (std::int64_t j = 0; j < n; ++j) b.push_back(g.element(column_index(comb, j)));
        return b;
    }

    // A basis partner of row set s needs at least n - outside_count[s][i]
    // distinct restrictions when coordinate i is dropped.
    bool passes_filter(std::size_t set_index, const std::vector<std::int32_t>& comb) const {
        if (restriction_class.empty()) return true;
        for (std::size_t coord = 0; coord < restriction_class.size(); ++coord) {
            const auto& classes = restriction_class[coord];
            std::int64_t distinct = 0;
            for (std::int64_t j = 0; j < n; ++j) {
                std::int32_t id = classes[static_cast<std::size_t>(column_index(comb, j))];
                bool fresh = true;
                for (std::int64_t j2 = 0; j2 < j; ++j2)
                    if (classes[static_cast<std::size_t>(column_index(comb, j2))] == id) {
                        fresh = false;
                        break;
                    }
                if (fresh) ++distinct;
            }
            if (distinct < n - outside_count[set_index][coord]) return false;
        }
        return true;
    }
};

struct Evaluator {
    const SpectrumSpace& space;
    std::vector<cplx> colbuf;
    std::vector<double> sv;

    explicit Evaluator(const SpectrumSpace& s)
        : space(s), colbuf(static_cast<std::size_t>(s.n * s.n)) {}

    const std::vector<double>& sigmas(const std::vector<std::int64_t>& rows,
                                      const std::vector<std::int32_t>& comb) {
        const std::int64_t n = space.n;
        for (std::int64_t j = 0; j < n; ++j) {
            const std::int64_t b = space.column_index(comb, j);
            for (std::int64_t i = 0; i < n; ++i)
                colbuf[static_cast<std::size_t>(j * n + i)] =
                    space.table->value(rows[static_cast<std::size_t>(i)], b);
        }
        jacobi_singular_values(colbuf.data(), n, sv);
        return sv;
    }

    bool is_basis(const std::vector<double>& s) const {
        return s.front() > space.tol.singular * std::max(1.0, s.back());
    }
};

// Phase 1: exact extremes of all four quantities (no witnesses).
struct ExtremesJob final : detail::ScanJob {
    const SpectrumSpace& space;
    QuantityValues best{};

    explicit ExtremesJob(const SpectrumSpace& s) : space(s) {
        for (int q = 0; q < 4; ++q) best.v[static_cast<std::size_t>(q)] =
            worst_value(static_cast<Quantity>(q));
    }

    struct Worker final : detail::ChunkWorker {
        const SpectrumSpace& space;
        Evaluator eval;
        QuantityValues local{};
        std::vector<std::int32_t> comb;

        explicit Worker(const SpectrumSpace& s) : space(s), eval(s) {
            for (int q = 0; q < 4; ++q) local.v[static_cast<std::size_t>(q)] =
                worst_value(static_cast<Quantity>(q));
        }

        void process(std::uint64_t lo, std::uint64_t hi) override {
            detail::unrank_combination(space.universe, space.slots, lo, comb);
            for (std::uint64_t r = lo; r < hi; ++r) {
                if (space.passes_filter(0, comb)) {
                    QuantityValues v =
                        values_from_sigmas(eval.sigmas(space.row_sets[0], comb), space.tol);
                    for (int qi = 0; qi < 4; ++qi) {
                        Quantity q = static_cast<Quantity>(qi);
                        if (improves(q, v[q], local[q])) local[q] = v[q];
                    }
                }
                if (r + 1 < hi) detail::next_combination(comb, space.universe);
            }
        }
    };

    std::unique_ptr<detail::ChunkWorker> make_worker() override {
        return std::make_unique<Worker>(space);
    }

    void absorb(detail::ChunkWorker& w) override {
        auto& worker = static_cast<Worker&>(w);
        for (int qi = 0; qi < 4; ++qi) {
            Quantity q = static_cast<Quantity>(qi);
            if (improves(q, worker.local[q], best[q])) best[q] = worker.local[q];
        }
    }
};

constexpr std::uint64_t kNoRank = ~std::uint64_t{0};

void atomic_rank_min(std::atomic<std::uint64_t>& slot, std::uint64_t r) {
    std::uint64_t cur = slot.load(std::memory_order_relaxed);
    while (r < cur && !slot.compare_exchange_weak(cur, r, std::memory_order_relaxed)) {
    }
}

// Phase 2: combinations enumerate in lexicographic order, so the
// lexicographically smallest witness within the tie slack is the smallest
// qualifying rank. Workers share the per-quantity best rank and skip the rest
// of a chunk once every quantity has a hit below their position; skipped
// ranks cannot lower a minimum, so the result stays chunking-independent.
struct WitnessJob final : detail::ScanJob {
    const SpectrumSpace& space;
    QuantityValues optima;
    std::array<std::atomic<std::uint64_t>, 4> best_rank;

    WitnessJob(const SpectrumSpace& s, const QuantityValues& opt) : space(s), optima(opt) {
        for (auto& slot : best_rank) slot.store(kNoRank, std::memory_order_relaxed);
    }

    struct Worker final : detail::ChunkWorker {
        WitnessJob& job;
        Evaluator eval;
        std::vector<std::int32_t> comb;

        explicit Worker(WitnessJob& j) : job(j), eval(j.space) {}

        void process(std::uint64_t lo, std::uint64_t hi) override {
            const SpectrumSpace& space = job.space;
            detail::unrank_combination(space.universe, space.slots, lo, comb);
            for (std::uint64_t r = lo; r < hi; ++r) {
                bool open = false;
                for (const auto& slot : job.best_rank)
                    if (slot.load(std::memory_order_relaxed) >= r) open = true;
                if (!open) break;  // everything already found at smaller ranks
                if (space.passes_filter(0, comb)) {
                    QuantityValues v =
                        values_from_sigmas(eval.sigmas(space.row_sets[0], comb), space.tol);
                    for (int qi = 0; qi < 4; ++qi) {
                        Quantity q = static_cast<Quantity>(qi);
                        if (within_tie_slack(q, v[q], job.optima[q]))
                            atomic_rank_min(job.best_rank[static_cast<std::size_t>(qi)], r);
                    }
                }
                if (r + 1 < hi) detail::next_combination(comb, space.universe);
            }
        }
    };

    std::unique_ptr<detail::ChunkWorker> make_worker() override {
        return std::make_unique<Worker>(*this);
    }

    void absorb(detail::ChunkWorker&) override {}  // state lives in the shared ranks
};

// Minimum-rank candidate that is a basis partner for every row set.
struct SimultaneousJob final : detail::ScanJob {
    const SpectrumSpace& space;
    std::atomic<std::uint64_t> best_rank{kNoRank};

    explicit SimultaneousJob(const SpectrumSpace& s) : space(s) {}

    struct Worker final : detail::ChunkWorker {
        SimultaneousJob& job;
        Evaluator eval;
        std::vector<std::int32_t> comb;

        explicit Worker(SimultaneousJob& j) : job(j), eval(j.space) {}

        void process(std::uint64_t lo, std::uint64_t hi) override {
            const SpectrumSpace& space = job.space;
            detail::unrank_combination(space.universe, space.slots, lo, comb);
            for (std::uint64_t r = lo; r < hi; ++r) {
                if (job.best_rank.load(std::memory_order_relaxed) < r) break;
                bool all = true;
                for (std::size_t s = 0; s < space.row_sets.size() && all; ++s)
                    if (!space.passes_filter(s, comb)) all = false;
                for (std::size_t s = 0; s < space.row_sets.size() && all; ++s) {
                    if (!eval.is_basis(eval.sigmas(space.row_sets[s], comb))) all = false;
                }
                if (all) {
                    atomic_rank_min(job.best_rank, r);
                    break;  // ranks ascend within the chunk
                }
                if (r + 1 < hi) detail::next_combination(comb, space.universe);
            }
        }
    };

    std::unique_ptr<detail::ChunkWorker> make_worker() override {
        return std::make_unique<Worker>(*this);
    }

    void absorb(detail::ChunkWorker&) override {}
};

SpectrumSpace make_space(const CharacterTable& table, const GroupSpec& g,
                         const std::vector<std::vector<Element>>& sets,
                         const SearchOptions& opts) {
    SpectrumSpace space;
    space.table = &table;
    space.tol = opts.tol;
    space.include_zero = opts.normalize_zero;
    const std::int64_t n = static_cast<std::int64_t>(sets.front().size());
    space.n = n;
    for (const auto& e : sets) {
        std::vector<std::int64_t> rows;
        rows.reserve(e.size());
        for (const Element& x : e) rows.push_back(g.index_of(x));
        space.row_sets.push_back(std::move(rows));
    }
    space.universe = opts.normalize_zero ? g.order() - 1 : g.order();
    space.slots = opts.normalize_zero ? n - 1 : n;
    if (space.slots > space.universe)
        throw std::invalid_argument("subset is larger than the dual group");
    if (opts.coset_count_filter && g.rank() >= 2) {
        const std::size_t k = g.rank();
        space.restriction_class.assign(k, std::vector<std::int32_t>(
                                              static_cast<std::size_t>(g.order())));
        for (std::int64_t idx = 0; idx < g.order(); ++idx) {
            Element x = g.element(idx);
            for (std::size_t coord = 0; coord < k; ++coord) {
                std::int64_t id = 0;
                for (std::size_t j = 0; j < k; ++j)
                    if (j != coord) id = id * g.moduli()[j] + x[j];
                space.restriction_class[coord][static_cast<std::size_t>(idx)] =
                    static_cast<std::int32_t>(id);
            }
        }
        space.outside_count.assign(sets.size(), std::vector<std::int64_t>(k, 0));
        for (std::size_t s = 0; s < sets.size(); ++s)
            for (const Element& x : sets[s])
                for (std::size_t coord = 0; coord < k; ++coord)
                    if (x[coord] != 0) ++space.outside_count[s][coord];
    }
    return space;
}

std::uint64_t candidate_count_or_throw(const SpectrumSpace& space, const SearchOptions& opts) {
    std::uint64_t total = detail::binomial_capped(space.universe, space.slots, opts.cap);
    if (total > opts.cap)
        throw cap_exceeded("spectrum search space exceeds cap " + std::to_string(opts.cap));
    return total;
}

void run_scan(detail::ScanJob& job, std::uint64_t total, int threads) {
    if (detail::resolve_threads(threads) <= 1)
        detail::scan_serial(job, total);
    else
        detail::scan_parallel(job, total, threads);
}

}  // namespace

std::string quantity_name(Quantity q) {
    switch (q) {
        case Quantity::L: return "L";
        case Quantity::U: return "U";
        case Quantity::Rho: return "rho";
        case Quantity::D: return "D";
    }
    return "?";
}

Quantity quantity_from_name(const std::string& name) {
    if (name == "L") return Quantity::L;
    if (name == "U") return Quantity::U;
    if (name == "rho") return Quantity::Rho;
    if (name == "D") return Quantity::D;
    throw parse_error("unknown quantity: " + name);
}

std::string strategy_name(Strategy s) {
    return s == Strategy::Exhaustive ? "exhaustive" : "random-loop";
}

std::array<SearchResult, 4> set_quantities_all(const GroupSpec& g, const std::vector<Element>& E,
                                               const SearchOptions& opts) {
    std::vector<Element> e = validate_subset(g, E);
    if (e.empty()) throw std::invalid_argument("E must be non-empty");
    CharacterTable table(g);
    SpectrumSpace space = make_space(table, g, {e}, opts);
    std::uint64_t total = candidate_count_or_throw(space, opts);

    ExtremesJob phase1(space);
    run_scan(phase1, total, opts.threads);
    WitnessJob phase2(space, phase1.best);
    run_scan(phase2, total, opts.threads);

    Evaluator eval(space);
    std::array<SearchResult, 4> out;
    for (int qi = 0; qi < 4; ++qi) {
        std::uint64_t rank = phase2.best_rank[static_cast<std::size_t>(qi)].load();
        if (rank == kNoRank) throw std::logic_error("optimum lost between scan phases");
        std::vector<std::int32_t> comb;
        detail::unrank_combination(space.universe, space.slots, rank, comb);
        Quantity q = static_cast<Quantity>(qi);
        SearchResult& r = out[static_cast<std::size_t>(qi)];
        r.quantity = q;
        r.strategy = Strategy::Exhaustive;
        r.value = values_from_sigmas(eval.sigmas(space.row_sets[0], comb), space.tol)[q];
        r.witness = space.spectrum_of(g, comb);
    }
    return out;
}

SearchResult set_quantity(const GroupSpec& g, const std::vector<Element>& E, Quantity q,
                          Strategy strategy, const SearchOptions& opts) {
    std::vector<Element> e = validate_subset(g, E);
    if (e.empty()) throw std::invalid_argument("E must be non-empty");
    if (strategy == Strategy::Exhaustive)
        return set_quantities_all(g, e, opts)[static_cast<std::size_t>(q)];

    const std::int64_t n = static_cast<std::int64_t>(e.size());
    SearchResult r;
    r.quantity = q;
    r.strategy = Strategy::RandomLoop;
    r.seed = opts.seed;
    if (n == 1) {
        r.witness = {g.zero()};
        r.value = 1.0;  // T = [1]
        return r;
    }
    CertifiedPair cp = certified_pair(g, e, opts.seed, opts);
    switch (q) {
        case Quantity::L: r.value = cp.report.L; break;
        case Quantity::U: r.value = cp.report.U; break;
        case Quantity::Rho: r.value = cp.report.rho; break;
        case Quantity::D: r.value = cp.report.D; break;
    }
    r.witness = cp.B;
    r.certificates = cp.certificates;
    return r;
}

std::array<double, 4> normalized_set_values(std::int64_t n,
                                            const std::array<SearchResult, 4>& results) {
    const double dn = static_cast<double>(n);
    double l = results[static_cast<std::size_t>(Quantity::L)].value;
    double u = results[static_cast<std::size_t>(Quantity::U)].value;
    double rho = results[static_cast<std::size_t>(Quantity::Rho)].value;
    double d = results[static_cast<std::size_t>(Quantity::D)].value;
    return {l > 0.0 ? dn / l : kInf, u / dn, rho,
            d > 0.0 ? std::sqrt(dn) / std::pow(d, 1.0 / dn) : kInf};
}

LoopAroundResult loop_around(const GroupSpec& g, const std::vector<Element>& E,
                             const std::vector<Element>& B) {
    std::vector<Element> e = validate_subset(g, E);
    std::vector<Element> b = validate_subset(g, B);
    if (e.empty() || e.size() != b.size())
        throw std::invalid_argument("loop_around needs an equal-size pair");
    const std::int64_t m = g.exponent();
    LoopAroundResult out;
    out.best_d = -1.0;
    for (std::int64_t k = 1; k <= m; ++k) {
        if (std::gcd(k, m) != 1) continue;
        std::vector<Element> kb;
        kb.reserve(b.size());
        for (const Element& x : b) kb.push_back(g.scale(k, x));
        std::sort(kb.begin(), kb.end());
        double d = abs_determinant(fourier_matrix(g, e, kb));
        out.table.push_back({k, d});
        if (d > out.best_d) {
            out.best_d = d;
            out.best_k = k;
            out.best_spectrum = std::move(kb);
        }
    }
    return out;
}

CertifiedPair certified_pair(const GroupSpec& g, const std::vector<Element>& E,
                             std::uint64_t seed, const SearchOptions& opts) {
    std::vector<Element> e = validate_subset(g, E);
    const std::int64_t n = static_cast<std::int64_t>(e.size());
    if (n < 2) throw std::invalid_argument("certified_pair needs |E| > 1");
    const std::int64_t order = g.order();
    if (n > order) throw std::invalid_argument("subset is larger than the dual group");

    CounterRng rng(seed, /*stream=*/1);
    Tolerances tol = opts.tol;
    std::vector<std::int64_t> pool(static_cast<std::size_t>(order - 1));
    std::vector<Element> b;
    CertifiedPair cp;
    cp.seed = seed;
    bool found = false;
    for (std::uint64_t attempt = 1; attempt <= opts.sample_budget; ++attempt) {
        std::iota(pool.begin(), pool.end(), 1);
        b.clear();
        b.push_back(g.zero());
        for (std::int64_t i = 0; i + 1 < n; ++i) {
            std::size_t j = static_cast<std::size_t>(i) +
                            static_cast<std::size_t>(rng.below(pool.size() - static_cast<std::size_t>(i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
            b.push_back(g.element(pool[static_cast<std::size_t>(i)]));
        }
        std::sort(b.begin(), b.end());
        std::vector<double> sv = singular_values(fourier_matrix(g, e, b));
        if (sv.front() > tol.singular * std::max(1.0, sv.back())) {
            cp.attempts = attempt;
            found = true;
            break;
        }
    }
    if (!found)
        throw sampling_exhausted("no basis pair found within the sampling budget");

    LoopAroundResult la = loop_around(g, e, b);
    cp.loop_k = la.best_k;
    cp.B = la.best_spectrum;
    cp.report = tightness_report(SubsetPair(g, e, cp.B), tol);
    const double dn = static_cast<double>(n);
    cp.certificates = {
        {"rho_bound", 4.0 * std::pow(dn, dn)},
        {"L_bound", 1.0 / (std::exp(1.0) * std::pow(dn, dn - 1.0))},
        {"U_bound", dn * dn - (dn - 1.0) / 4.0},
        {"D_bound", 1.0},
    };
    return cp;
}

std::optional<std::vector<Element>> simultaneous_basis(const GroupSpec& g,
                                                       const std::vector<std::vector<Element>>& sets,
                                                       const SearchOptions& opts) {
    if (sets.empty()) throw std::invalid_argument("simultaneous_basis needs at least one set");
    std::vector<std::vector<Element>> cleaned;
    cleaned.reserve(sets.size());
    for (const auto& s : sets) {
        cleaned.push_back(validate_subset(g, s));
        if (cleaned.back().size() != cleaned.front().size() || cleaned.back().empty())
            throw std::invalid_argument("family sets must share one non-empty size");
    }
    CharacterTable table(g);
    SpectrumSpace space = make_space(table, g, cleaned, opts);
    std::uint64_t total = candidate_count_or_throw(space, opts);
    SimultaneousJob job(space);
    run_scan(job, total, opts.threads);
    std::uint64_t rank = job.best_rank.load();
    if (rank == kNoRank) return std::nullopt;
    std::vector<std::int32_t> comb;
    detail::unrank_combination(space.universe, space.slots, rank, comb);
    return space.spectrum_of(g, comb);
}

std::vector<Element> vandermonde_spectrum(std::int64_t m, std::int64_t k) {
    if (m < 1 || k < 1 || k > m)
        throw std::invalid_argument("vandermonde_spectrum needs 1 <= k <= m");
    std::vector<Element> b;
    b.reserve(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i) b.push_back({i});
    return b;
}

LoopProductResult loop_product_check(const GroupSpec& g, const std::vector<Element>& E,
                                     const std::vector<Element>& B, const SearchOptions& opts) {
    const std::int64_t m = g.exponent();
    if (m > opts.exponent_cap)
        throw cap_exceeded("group exponent " + std::to_string(m) + " exceeds loop-product cap " +
                           std::to_string(opts.exponent_cap));
    LoopAroundResult la = loop_around(g, E, B);
    LoopProductResult out;
    out.factors = la.table;
    out.product = 1.0;
    for (const auto& entry : la.table) out.product *= entry.d;
    out.nearest = std::llround(out.product);
    out.deviation = std::abs(out.product - static_cast<double>(out.nearest));
    return out;
}

}  // namespace rieszq
