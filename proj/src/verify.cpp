// SPDX-License-Identifier: Apache-2.0
#include "rieszq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "rieszq/group.hpp"
#include "rieszq/numeric.hpp"
#include "rieszq/pairs.hpp"
#include "rieszq/rng.hpp"
#include "rieszq/search.hpp"
#include "rieszq/tiling.hpp"

namespace rieszq {

namespace {

void record(CheckResult& r, bool ok, double margin) {
    ++r.cases;
    if (!ok) ++r.failures;
    r.worst_slack = std::min(r.worst_slack, margin);
}

double rand01(CounterRng& rng) { return static_cast<double>(rng.next() >> 11) * 0x1p-53; }

std::vector<Element> random_subset(const GroupSpec& g, std::int64_t n, CounterRng& rng) {
    std::vector<std::int64_t> pool(static_cast<std::size_t>(g.order()));
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<Element> out;
    for (std::int64_t i = 0; i < n; ++i) {
        std::size_t j = static_cast<std::size_t>(i) +
                        static_cast<std::size_t>(rng.below(pool.size() - static_cast<std::size_t>(i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
        out.push_back(g.element(pool[static_cast<std::size_t>(i)]));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Element random_element(const GroupSpec& g, CounterRng& rng) {
    return g.element(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(g.order()))));
}

void for_each_subset_of_size(const GroupSpec& g, std::int64_t n,
                             const std::function<void(const std::vector<Element>&)>& fn) {
    std::vector<std::int32_t> comb(static_cast<std::size_t>(n));
    std::iota(comb.begin(), comb.end(), 0);
    bool more = g.order() >= n;
    while (more) {
        std::vector<Element> e;
        e.reserve(static_cast<std::size_t>(n));
        for (std::int32_t c : comb) e.push_back(g.element(c));
        fn(e);
        more = false;
        for (std::int64_t i = n - 1; i >= 0; --i)
            if (comb[static_cast<std::size_t>(i)] < static_cast<std::int32_t>(g.order() - n + i)) {
                std::int32_t v = ++comb[static_cast<std::size_t>(i)];
                for (std::int64_t j = i + 1; j < n; ++j)
                    comb[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(v + (j - i));
                more = true;
                break;
            }
    }
}

// --- group checks ---

void check_char_multiplicative(const VerifyOptions& o, CheckResult& r) {
    CounterRng rng(o.seed, 101);
    for (const char* name : {"Z5", "Z4xZ2", "Z3^2", "Z6xZ4", "Z8"}) {
        GroupSpec g = GroupSpec::parse(name);
        for (std::int64_t i = 0; i < o.random_cases / 5 + 1; ++i) {
            Element b = random_element(g, rng);
            Element x = random_element(g, rng);
            Element y = random_element(g, rng);
            double dev = std::abs(character_value(g, b, g.add(x, y)) -
                                  character_value(g, b, x) * character_value(g, b, y));
            record(r, dev <= 1e-12, 1e-12 - dev);
        }
    }
}

void check_char_affine(const VerifyOptions& o, CheckResult& r) {
    CounterRng rng(o.seed, 102);
    for (const char* name : {"Z5", "Z2^2", "Z4xZ2", "Z3^2", "Z7"}) {
        GroupSpec g = GroupSpec::parse(name);
        for (std::int64_t k = 1; k < g.exponent(); ++k) {
            if (std::gcd(k, g.exponent()) != 1) continue;
            ZLinearMap a = ZLinearMap::scaling(g, k);
            ZLinearMap adj = a.inverse_dual();
            for (std::int64_t i = 0; i < 10; ++i) {
                Element b = random_element(g, rng);
                Element x = random_element(g, rng);
                bool ok = character_phase(g, adj.apply(b), a.apply(x)) == character_phase(g, b, x);
                record(r, ok, ok ? 1.0 : -1.0);
            }
        }
    }
}

void check_coset_partition(const VerifyOptions&, CheckResult& r) {
    for (const char* name : {"Z6", "Z4xZ2", "Z3^2", "Z12"}) {
        GroupSpec g = GroupSpec::parse(name);
        for (const Subgroup& h : enumerate_subgroups(g)) {
            auto parts = cosets(g, h);
            std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
            bool sizes_ok = true, disjoint = true;
            for (const Coset& c : parts) {
                if (static_cast<std::int64_t>(c.elements.size()) != h.order()) sizes_ok = false;
                for (const Element& x : c.elements) {
                    std::size_t idx = static_cast<std::size_t>(g.index_of(x));
                    if (seen[idx]) disjoint = false;
                    seen[idx] = 1;
                }
            }
            bool covers = std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
            bool ok = sizes_ok && disjoint && covers;
            record(r, ok, ok ? 1.0 : -1.0);
        }
    }
}

void check_annihilator_dual(const VerifyOptions&, CheckResult& r) {
    for (const char* name : {"Z4", "Z6", "Z2^2", "Z2xZ4", "Z3^2", "Z12", "Z2^3", "Z16"}) {
        GroupSpec g = GroupSpec::parse(name);
        for (const Subgroup& h : enumerate_subgroups(g)) {
            bool ok = annihilator(g, annihilator(g, h)).element_indices() == h.element_indices();
            record(r, ok, ok ? 1.0 : -1.0);
        }
    }
}

// --- numeric checks ---

ComplexMatrix random_unit_matrix(std::int64_t n, CounterRng& rng) {
    ComplexMatrix m(n, n);
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < n; ++j) m.at(i, j) = std::polar(1.0, 2.0 * M_PI * rand01(rng));
    return m;
}

void check_sv_det_crosscheck(const VerifyOptions& o, CheckResult& r) {
    CounterRng rng(o.seed, 201);
    for (std::int64_t n : {2, 3, 5, 8, 12, 16}) {
        for (std::int64_t i = 0; i < std::max<std::int64_t>(2, o.random_cases / 40); ++i) {
            ComplexMatrix m = random_unit_matrix(n, rng);
            auto sv = singular_values(m);
            double prod = 1.0;
            for (double s : sv) prod *= s;
            double det = abs_determinant(m);
            double dev = std::abs(prod - det) / std::max(1.0, det);
            record(r, dev <= 1e-9, 1e-9 - dev);
        }
    }
}

void check_sv_invariance(const VerifyOptions& o, CheckResult& r) {
    CounterRng rng(o.seed, 202);
    for (std::int64_t i = 0; i < std::max<std::int64_t>(4, o.random_cases / 20); ++i) {
        std::int64_t n = 3 + static_cast<std::int64_t>(rng.below(3));
        ComplexMatrix m = random_unit_matrix(n, rng);
        auto base = singular_values(m);
        ComplexMatrix twisted(n, n);
        for (std::int64_t row = 0; row < n; ++row) {
            cplx d = std::polar(1.0, 2.0 * M_PI * rand01(rng));
            for (std::int64_t col = 0; col < n; ++col)
                twisted.at(row, col) = d * m.at((row + 1) % n, (col + 2) % n);
        }
        auto tw = singular_values(twisted);
        double dev = 0.0;
        for (std::size_t k = 0; k < base.size(); ++k)
            dev = std::max(dev, std::abs(tw[k] - base[k]) / std::max(1.0, base.back()));
        record(r, dev <= 1e-10, 1e-10 - dev);
    }
}

void check_kron_spectrum(const VerifyOptions& o, CheckResult& r) {
    CounterRng rng(o.seed, 203);
    for (std::int64_t i = 0; i < std::max<std::int64_t>(4, o.random_cases / 20); ++i) {
        ComplexMatrix a = random_unit_matrix(2, rng);
        ComplexMatrix b = random_unit_matrix(3, rng);
        auto sa = singular_values(a);
        auto sb = singular_values(b);
        std::vector<double> expected;
        for (double x : sa)
            for (double y : sb) expected.push_back(x * y);
        std::sort(expected.begin(), expected.end());
        auto got = singular_values(kron(a, b));
        double dev = 0.0;
        for (std::size_t k = 0; k < got.size(); ++k)
            dev = std::max(dev, std::abs(got[k] - expected[k]) / std::max(1.0, expected.back()));
        record(r, dev <= 1e-10, 1e-10 - dev);
    }
}

// --- pair checks ---

const std::vector<std::string>& trace_groups() {
    static const std::vector<std::string> groups = {"Z7",   "Z4xZ2", "Z3^2", "Z12",
                                                    "Z2^3", "Z24",   "Z4xZ6", "Z23"};
    return groups;
}

void check_trace_identity(const VerifyOptions& o, CheckResult& r) {
    CounterRng rng(o.seed, 301);
    const auto& groups = trace_groups();
    for (std::int64_t i = 0; i < o.random_cases; ++i) {
        GroupSpec g = GroupSpec::parse(groups[rng.below(groups.size())]);
        std::int64_t n = 2 + static_cast<std::int64_t>(rng.below(4));
        n = std::min(n, g.order());
        SubsetPair p(g, random_subset(g, n, rng), random_subset(g, n, rng));
        TightnessReport rep = tightness_report(p);
        double sum = 0.0;
        for (double s : rep.sigmas) sum += s * s;
        double n2 = static_cast<double>(n) * static_cast<double>(n);
        double dev = std::abs(sum - n2) / n2;
        record(r, dev <= 1e-9, 1e-9 - dev);
    }
}

bool reports_match(const TightnessReport& a, const TightnessReport& b, double tol) {
    auto close = [&](double x, double y) {
        if (std::isinf(x) || std::isinf(y)) return std::isinf(x) && std::isinf(y);
        return std::abs(x - y) <= tol * std::max(1.0, std::abs(y));
    };
    for (std::size_t i = 0; i < a.sigmas.size(); ++i)
        if (!close(a.sigmas[i], b.sigmas[i])) return false;
    return close(a.L, b.L) && close(a.U, b.U) && close(a.rho, b.rho) && close(a.D, b.D);
}

void check_pair_duality(const VerifyOptions& o, CheckResult& r) {
    CounterRng rng(o.seed, 302);
    for (std::int64_t i = 0; i < std::max<std::int64_t>(10, o.random_cases / 4); ++i) {
        GroupSpec g = GroupSpec::parse(trace_groups()[rng.below(4)]);
        std::int64_t n = 2 + static_cast<std::int64_t>(rng.below(3));
        std::vector<Element> e = random_subset(g, n, rng);
        std::vector<Element> b = random_subset(g, n, rng);
        bool ok = reports_match(tightness_report(SubsetPair(g, e, b)),
                                tightness_report(SubsetPair(g, b, e)), 1e-10);
        record(r, ok, ok ? 1.0 : -1.0);
    }
}

void check_pair_translation(const VerifyOptions& o, CheckResult& r) {
    CounterRng rng(o.seed, 303);
    for (std::int64_t i = 0; i < std::max<std::int64_t>(10, o.random_cases / 4); ++i) {
        GroupSpec g = GroupSpec::parse(trace_groups()[rng.below(4)]);
        std::int64_t n = 2 + static_cast<std::int64_t>(rng.below(3));
        std::vector<Element> e = random_subset(g, n, rng);
        std::vector<Element> b = random_subset(g, n, rng);
        Element x = random_element(g, rng), y = random_element(g, rng);
        std::vector<Element> et, bt;
        for (const Element& v : e) et.push_back(g.add(v, x));
        for (const Element& v : b) bt.push_back(g.add(v, y));
        bool ok = reports_match(tightness_report(SubsetPair(g, et, bt)),
                                tightness_report(SubsetPair(g, e, b)), 1e-10);
        record(r, ok, ok ? 1.0 : -1.0);
    }
}

void check_pair_zlinear(const VerifyOptions& o, CheckResult& r) {
    CounterRng rng(o.seed, 304);
    for (const char* name : {"Z5", "Z7", "Z4xZ2", "Z3^2"}) {
        GroupSpec g = GroupSpec::parse(name);
        for (std::int64_t k = 2; k < g.exponent(); ++k) {
            if (std::gcd(k, g.exponent()) != 1) continue;
            for (std::int64_t i = 0; i < std::max<std::int64_t>(2, o.random_cases / 40); ++i) {
                std::int64_t n = 2 + static_cast<std::int64_t>(rng.below(2));
                std::vector<Element> e = random_subset(g, n, rng);
                std::vector<Element> b = random_subset(g, n, rng);
                auto moved = affine_transform_pair(g, e, b, ZLinearMap::scaling(g, k),
                                                   random_element(g, rng));
                bool ok = reports_match(tightness_report(SubsetPair(g, moved.E, moved.B)),
                                        tightness_report(SubsetPair(g, e, b)), 1e-10);
                record(r, ok, ok ? 1.0 : -1.0);
            }
        }
    }
}

void check_pair_inequalities(const VerifyOptions& o, CheckResult& r) {
    CounterRng rng(o.seed, 305);
    for (std::int64_t i = 0; i < std::max<std::int64_t>(10, o.random_cases / 2); ++i) {
        GroupSpec g = GroupSpec::parse(trace_groups()[rng.below(6)]);
        std::int64_t n = 2 + static_cast<std::int64_t>(rng.below(3));
        SubsetPair p(g, random_subset(g, n, rng), random_subset(g, n, rng));
        for (const auto& c : pair_inequalities(p)) record(r, c.holds, c.slack);
    }
}

void check_spectral_cluster(const VerifyOptions&, CheckResult& r) {
    for (const char* name : {"Z4", "Z2^2", "Z6"}) {
        GroupSpec g = GroupSpec::parse(name);
        for_each_subset_of_size(g, 2, [&](const std::vector<Element>& e) {
            for_each_subset_of_size(g, 2, [&](const std::vector<Element>& b) {
                TightnessReport rep = tightness_report(SubsetPair(g, e, b));
                const double n = 2.0;
                bool rho_one = rep.is_basis && rep.rho <= 1.0 + 1e-8;
                bool l_n = std::abs(rep.L - n) <= 1e-8 * n;
                bool u_n = std::abs(rep.U - n) <= 1e-8 * n;
                bool d_max = std::abs(rep.D - std::pow(n, n / 2.0)) <= 1e-8 * std::pow(n, n / 2.0);
                bool ortho0 = ortho_measure(SubsetPair(g, e, b)) <= 1e-7;
                bool ok = (rep.is_spectral == rho_one) && (rep.is_spectral == l_n) &&
                          (rep.is_spectral == u_n) && (rep.is_spectral == d_max) &&
                          (rep.is_spectral == ortho0);
                record(r, ok, ok ? 1.0 : -1.0);
            });
        });
    }
}

void check_basis_equidistr(const VerifyOptions&, CheckResult& r) {
    // E = E1 x K for G = H + K; every basis partner has |E1| elements in each
    // dual coset of the K factor.
    struct Config {
        const char* group;
        std::size_t h_rank;
    };
    for (Config cfg : {Config{"Z2xZ3", 1}, Config{"Z2xZ4", 1}, Config{"Z3xZ2", 1}}) {
        GroupSpec g = GroupSpec::parse(cfg.group);
        GroupSpec h(std::vector<std::int64_t>(g.moduli().begin(),
                                              g.moduli().begin() + static_cast<std::ptrdiff_t>(cfg.h_rank)));
        GroupSpec k(std::vector<std::int64_t>(g.moduli().begin() + static_cast<std::ptrdiff_t>(cfg.h_rank),
                                              g.moduli().end()));
        for (std::int64_t mask = 1; mask < (1 << h.order()); ++mask) {
            std::vector<Element> e1;
            for (std::int64_t i = 0; i < h.order(); ++i)
                if (mask & (1LL << i)) e1.push_back(h.element(i));
            std::vector<Element> full_k;
            for (std::int64_t i = 0; i < k.order(); ++i) full_k.push_back(k.element(i));
            std::vector<Element> e = product_subset(e1, full_k);
            std::int64_t n = static_cast<std::int64_t>(e.size());
            if (n > g.order()) continue;
            for_each_subset_of_size(g, n, [&](const std::vector<Element>& b) {
                TightnessReport rep = tightness_report(SubsetPair(g, e, b));
                if (!rep.is_basis) return;
                std::map<Element, std::int64_t> per_coset;
                for (const Element& bb : b) {
                    Element tail(bb.begin() + static_cast<std::ptrdiff_t>(cfg.h_rank), bb.end());
                    ++per_coset[tail];
                }
                bool ok = static_cast<std::int64_t>(per_coset.size()) == k.order();
                for (const auto& [tail, count] : per_coset)
                    if (count != static_cast<std::int64_t>(e1.size())) ok = false;
                record(r, ok, ok ? 1.0 : -1.0);
            });
        }
    }
}

void check_coset_count(const VerifyOptions&, CheckResult& r) {
    for (const char* name : {"Z2^2", "Z2xZ3"}) {
        GroupSpec g = GroupSpec::parse(name);
        for (std::int64_t n = 2; n <= 3; ++n) {
            for_each_subset_of_size(g, n, [&](const std::vector<Element>& e) {
                std::int64_t outside = 0;
                for (const Element& x : e)
                    if (x.back() != 0) ++outside;  // H = zero tail coordinate
                for_each_subset_of_size(g, n, [&](const std::vector<Element>& b) {
                    TightnessReport rep = tightness_report(SubsetPair(g, e, b));
                    if (!rep.is_basis) return;
                    std::map<std::int64_t, std::int64_t> cnt;
                    for (const Element& bb : b) ++cnt[bb.front()];
                    std::int64_t lhs = 0;
                    for (const auto& [key, c] : cnt) lhs += c - 1;
                    record(r, lhs <= outside, static_cast<double>(outside - lhs));
                });
            });
        }
    }
}

// --- search checks ---

SearchOptions search_opts(const VerifyOptions& o) {
    SearchOptions s;
    s.threads = o.threads;
    s.seed = o.seed;
    return s;
}

void check_search_prune(const VerifyOptions& o, CheckResult& r) {
    CounterRng rng(o.seed, 401);
    SearchOptions with = search_opts(o);
    SearchOptions without = search_opts(o);
    without.normalize_zero = false;
    for (const char* name : {"Z6", "Z8", "Z3^2", "Z9", "Z2^3"}) {
        GroupSpec g = GroupSpec::parse(name);
        for (std::int64_t n : {2, 3}) {
            std::vector<Element> e = random_subset(g, n, rng);
            auto a = set_quantities_all(g, e, with);
            auto b = set_quantities_all(g, e, without);
            for (int q = 0; q < 4; ++q) {
                double dev = std::abs(a[static_cast<std::size_t>(q)].value -
                                      b[static_cast<std::size_t>(q)].value);
                record(r, dev <= 1e-11, 1e-11 - dev);
            }
        }
    }
}

void check_set_bounds(const VerifyOptions& o, CheckResult& r) {
    SearchOptions opts = search_opts(o);
    for (const char* name : {"Z6", "Z2^3", "Z3^2"}) {
        GroupSpec g = GroupSpec::parse(name);
        for (std::int64_t n : {2, 3}) {
            const double dn = static_cast<double>(n);
            for_each_subset_of_size(g, n, [&](const std::vector<Element>& e) {
                auto res = set_quantities_all(g, e, opts);
                double l = res[static_cast<int>(Quantity::L)].value;
                double u = res[static_cast<int>(Quantity::U)].value;
                double rho = res[static_cast<int>(Quantity::Rho)].value;
                double d = res[static_cast<int>(Quantity::D)].value;
                record(r, l > 1.0 / (std::exp(1.0) * std::pow(dn, dn - 1.0)),
                       l - 1.0 / (std::exp(1.0) * std::pow(dn, dn - 1.0)));
                record(r, u < dn * dn - (dn - 1.0) / 4.0, dn * dn - (dn - 1.0) / 4.0 - u);
                record(r, rho < 4.0 * std::pow(dn, dn), 4.0 * std::pow(dn, dn) - rho);
                record(r, d >= 1.0 - 1e-9, d - (1.0 - 1e-9));
            });
        }
    }
}

void check_spectral_iff(const VerifyOptions& o, CheckResult& r) {
    SearchOptions opts = search_opts(o);
    for (const char* name : {"Z4", "Z2^2", "Z3"}) {
        GroupSpec g = GroupSpec::parse(name);
        for_each_subset_of_size(g, 2, [&](const std::vector<Element>& e) {
            auto res = set_quantities_all(g, e, opts);
            bool rho_one = res[static_cast<int>(Quantity::Rho)].value <= 1.0 + 1e-8;
            double dmax = std::pow(2.0, 1.0);
            bool d_max =
                std::abs(res[static_cast<int>(Quantity::D)].value - dmax) <= 1e-8 * dmax;
            TightnessReport witness = tightness_report(
                SubsetPair(g, e, res[static_cast<int>(Quantity::Rho)].witness));
            bool ok = (rho_one == d_max) && (rho_one == witness.is_spectral);
            record(r, ok, ok ? 1.0 : -1.0);
        });
    }
}

void check_condtoinfty(const VerifyOptions& o, CheckResult& r) {
    SearchOptions opts = search_opts(o);
    for (std::int64_t m : {2, 3, 4}) {
        GroupSpec g({m, m});
        std::vector<Element> e;
        for (std::int64_t x = 0; x < m; ++x) e.push_back({x, 0});
        e.push_back({0, 1});
        SearchResult rho = set_quantity(g, e, Quantity::Rho, Strategy::Exhaustive, opts);
        double bound = (static_cast<double>(m) + 1.0) / 2.0;
        record(r, rho.value >= bound, rho.value - bound);
    }
}

void check_size2_convergence(const VerifyOptions& o, CheckResult& r) {
    SearchOptions opts = search_opts(o);
    double prev = std::numeric_limits<double>::infinity();
    for (std::int64_t p : {3, 5, 7, 11, 13}) {
        GroupSpec g({p});
        SearchResult rho = set_quantity(g, {{0}, {1}}, Quantity::Rho, Strategy::Exhaustive, opts);
        record(r, rho.value < prev, prev - rho.value);
        bool witness_ok = rho.witness == std::vector<Element>{{0}, {(p - 1) / 2}};
        record(r, witness_ok, witness_ok ? 1.0 : -1.0);
        prev = rho.value;
    }
}

void check_nonconvergence(const VerifyOptions& o, CheckResult& r) {
    SearchOptions opts = search_opts(o);
    for (std::int64_t m : {3, 6, 9}) {
        GroupSpec g({m});
        SearchResult rho =
            set_quantity(g, {{0}, {m / 3}}, Quantity::Rho, Strategy::Exhaustive, opts);
        record(r, rho.value >= 1.05, rho.value - 1.05);
    }
    for (std::int64_t p : {5, 7, 11}) {
        GroupSpec g({p});
        SearchResult rho =
            set_quantity(g, {{0}, {1}, {3}}, Quantity::Rho, Strategy::Exhaustive, opts);
        record(r, rho.value >= 1.05, rho.value - 1.05);
    }
}

void check_loop_around(const VerifyOptions& o, CheckResult& r) {
    CounterRng rng(o.seed, 402);
    const std::int64_t per_group = std::max<std::int64_t>(10, o.random_cases / 2);
    for (const char* name : {"Z8", "Z12"}) {
        GroupSpec g = GroupSpec::parse(name);
        std::int64_t produced = 0;
        while (produced < per_group) {
            std::int64_t n = 2 + static_cast<std::int64_t>(rng.below(3));  // n <= 4
            std::vector<Element> e = random_subset(g, n, rng);
            std::vector<Element> b = random_subset(g, n, rng);
            if (!tightness_report(SubsetPair(g, e, b)).is_basis) continue;
            ++produced;
            LoopAroundResult la = loop_around(g, e, b);
            record(r, la.best_d >= 1.0 - 1e-9, la.best_d - (1.0 - 1e-9));
        }
    }
}

void check_loop_product(const VerifyOptions& o, CheckResult& r) {
    CounterRng rng(o.seed, 403);
    for (const char* name : {"Z8", "Z12", "Z6", "Z2xZ4"}) {
        GroupSpec g = GroupSpec::parse(name);
        std::int64_t produced = 0;
        while (produced < std::max<std::int64_t>(5, o.random_cases / 8)) {
            std::int64_t n = 2 + static_cast<std::int64_t>(rng.below(2));  // n <= 3
            std::vector<Element> e = random_subset(g, n, rng);
            std::vector<Element> b = random_subset(g, n, rng);
            if (!tightness_report(SubsetPair(g, e, b)).is_basis) continue;
            ++produced;
            LoopProductResult lp = loop_product_check(g, e, b);
            bool ok = lp.nearest >= 1 && lp.deviation <= 1e-6 * static_cast<double>(lp.nearest);
            record(r, ok, 1e-6 * static_cast<double>(std::max<std::int64_t>(1, lp.nearest)) -
                              lp.deviation);
        }
    }
}

void check_certified_pair(const VerifyOptions& o, CheckResult& r) {
    CounterRng rng(o.seed, 404);
    for (const char* name : {"Z5", "Z8", "Z3^2", "Z12"}) {
        GroupSpec g = GroupSpec::parse(name);
        for (std::int64_t i = 0; i < std::max<std::int64_t>(3, o.random_cases / 40); ++i) {
            std::int64_t n = 2 + static_cast<std::int64_t>(rng.below(2));
            std::vector<Element> e = random_subset(g, n, rng);
            SearchOptions opts = search_opts(o);
            opts.seed = rng.next();
            CertifiedPair cp = certified_pair(g, e, opts.seed, opts);
            double dn = static_cast<double>(n);
            record(r, cp.report.D >= 1.0 - 1e-9, cp.report.D - (1.0 - 1e-9));
            record(r, cp.report.rho < 4.0 * std::pow(dn, dn),
                   4.0 * std::pow(dn, dn) - cp.report.rho);
        }
    }
}

void check_nosimulbasis(const VerifyOptions& o, CheckResult& r) {
    GroupSpec g = GroupSpec::parse("Z2^2");
    std::vector<std::vector<Element>> sets = {
        {{0, 0}, {0, 1}}, {{0, 0}, {1, 0}}, {{0, 0}, {1, 1}}};
    bool none = !simultaneous_basis(g, sets, search_opts(o)).has_value();
    record(r, none, none ? 1.0 : -1.0);
    // the prime generalization at p = 3: the p+1 lines of Z3^2
    GroupSpec g3 = GroupSpec::parse("Z3^2");
    std::vector<std::vector<Element>> lines;
    for (const Element& d : std::vector<Element>{{1, 0}, {0, 1}, {1, 1}, {1, 2}}) {
        std::vector<Element> line;
        for (std::int64_t t = 0; t < 3; ++t) line.push_back(g3.scale(t, d));
        std::sort(line.begin(), line.end());
        lines.push_back(line);
    }
    bool none3 = !simultaneous_basis(g3, lines, search_opts(o)).has_value();
    record(r, none3, none3 ? 1.0 : -1.0);
}

void check_vandermonde(const VerifyOptions&, CheckResult& r) {
    for (std::int64_t m = 1; m <= 8; ++m) {
        GroupSpec g({m});
        for (std::int64_t k = 1; k <= m; ++k) {
            std::vector<Element> b = vandermonde_spectrum(m, k);
            for_each_subset_of_size(g, k, [&](const std::vector<Element>& e) {
                bool ok = tightness_report(SubsetPair(g, e, b)).is_basis;
                record(r, ok, ok ? 1.0 : -1.0);
            });
        }
    }
}

// --- tiling checks ---

struct TileConfig {
    const char* group;
    std::vector<Element> h_gens;
    std::int64_t level;
};

const std::vector<TileConfig>& tile_configs() {
    static const std::vector<TileConfig> configs = {
        {"Z3^2", {{1, 0}}, 2},  {"Z3^2", {{1, 0}}, 3},   {"Z4^2", {{1, 0}}, 2},
        {"Z4^2", {{1, 0}}, 3},  {"Z2^2xZ3", {{1, 0, 0}, {0, 1, 0}}, 2},
        {"Z12", {{4}}, 2},      {"Z12", {{3}}, 2},       {"Z2xZ8", {{0, 1}}, 3},
        {"Z3xZ9", {{0, 1}}, 2}, {"Z6^2", {{1, 0}}, 2},   {"Z6^2", {{1, 0}}, 3},
        {"Z5^2", {{1, 0}}, 2},  {"Z4xZ4", {{0, 1}}, 3},  {"Z8xZ2", {{1, 0}}, 2},
        {"Z9", {{3}}, 2},       {"Z3xZ6", {{0, 1}}, 2},  {"Z16", {{4}}, 2},
        {"Z2^4", {{1, 0, 0, 0}, {0, 1, 0, 0}}, 2},       {"Z5^2", {{1, 0}}, 3},
        {"Z27", {{9}}, 2},
    };
    return configs;
}

// A random multi-tile of the requested level: per coset, a random subset of
// size `level`.
std::vector<Element> random_multitile(const GroupSpec& g, const Subgroup& h, std::int64_t level,
                                      CounterRng& rng) {
    std::vector<Element> e;
    for (const Coset& c : cosets(g, h)) {
        std::vector<std::int64_t> pool(c.elements.size());
        std::iota(pool.begin(), pool.end(), 0);
        for (std::int64_t i = 0; i < level; ++i) {
            std::size_t j = static_cast<std::size_t>(i) +
                            static_cast<std::size_t>(rng.below(pool.size() - static_cast<std::size_t>(i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
            e.push_back(c.elements[static_cast<std::size_t>(pool[static_cast<std::size_t>(i)])]);
        }
    }
    std::sort(e.begin(), e.end());
    return e;
}

void check_decompose(const VerifyOptions& o, CheckResult& r) {
    CounterRng rng(o.seed, 501);
    for (const TileConfig& cfg : tile_configs()) {
        GroupSpec g = GroupSpec::parse(cfg.group);
        Subgroup h = subgroup_closure(g, cfg.h_gens);
        std::vector<Element> e = random_multitile(g, h, cfg.level, rng);
        std::vector<Element> reps = dual_section_representatives(g, h);
        std::vector<Element> b_h(reps.begin(), reps.begin() + cfg.level);
        DecomposeVerification v = decompose_verify(g, e, h, b_h);
        record(r, v.max_rel_dev <= 1e-9, 1e-9 - v.max_rel_dev);
        record(r, v.factor_residual <= 1e-9, 1e-9 - v.factor_residual);
        record(r, v.unitary_residual <= 1e-9, 1e-9 - v.unitary_residual);
    }
}

void check_dimexpand(const VerifyOptions& o, CheckResult& r) {
    GroupSpec z3 = GroupSpec::parse("Z3");
    GroupSpec z2 = GroupSpec::parse("Z2");
    for (std::int64_t a = 0; a < 3; ++a)
        for (std::int64_t b = a + 1; b < 3; ++b) {
            DimExpandVerification v = dimexpand_verify(z3, {{a}, {b}}, z2, search_opts(o));
            record(r, v.max_rel_dev <= 1e-8, 1e-8 - v.max_rel_dev);
        }
}

void check_tile_spectral(const VerifyOptions& o, CheckResult& r) {
    CounterRng rng(o.seed, 502);
    for (const char* name : {"Z6", "Z2^2", "Z8", "Z2xZ4", "Z3^2", "Z12", "Z2^3", "Z16"}) {
        GroupSpec g = GroupSpec::parse(name);
        for (const Subgroup& h : enumerate_subgroups(g)) {
            if (h.order() == g.order()) continue;
            std::vector<Element> e = random_multitile(g, h, 1, rng);
            std::vector<Element> spectrum = lift_spectrum(g, h, {g.zero()});
            bool ok = tightness_report(SubsetPair(g, e, spectrum)).is_spectral;
            record(r, ok, ok ? 1.0 : -1.0);
        }
    }
}

void check_product_multiplicativity(const VerifyOptions& o, CheckResult& r) {
    CounterRng rng(o.seed, 503);
    GroupSpec z3 = GroupSpec::parse("Z3");
    GroupSpec z4 = GroupSpec::parse("Z4");
    for (std::int64_t i = 0; i < std::max<std::int64_t>(20, o.random_cases / 2); ++i) {
        std::int64_t n1 = 1 + static_cast<std::int64_t>(rng.below(3));
        std::int64_t n2 = 1 + static_cast<std::int64_t>(rng.below(4));
        ProductPairVerification v = product_pair_verify(
            z3, random_subset(z3, n1, rng), random_subset(z3, n1, rng), z4,
            random_subset(z4, n2, rng), random_subset(z4, n2, rng));
        record(r, v.max_rel_dev <= 1e-9, 1e-9 - v.max_rel_dev);
    }
}

void check_badsimul_family(const VerifyOptions&, CheckResult& r) {
    for (std::int64_t p : {3, 5}) {
        GroupSpec g({p, p});
        Subgroup h = subgroup_closure(g, {{1, 0}});
        std::vector<Element> e;
        for (std::int64_t y = 0; y < p; ++y) e.push_back({0, y});
        e.push_back({1, 0});
        for (std::int64_t x = 1; x < p; ++x) e.push_back({x, x});
        std::sort(e.begin(), e.end());
        double base = tightness_report(SubsetPair(GroupSpec({p}), {{0}, {1}}, {{0}, {1}})).rho;
        for (std::int64_t b = 1; b < p; ++b) {
            std::vector<Element> lifted = lift_spectrum(g, h, {{0, 0}, {b, 0}});
            TightnessReport rep = tightness_report(SubsetPair(g, e, lifted));
            record(r, rep.rho >= base - 1e-9, rep.rho - base + 1e-9);
        }
    }
}

void check_weighted_closed_form(const VerifyOptions&, CheckResult& r) {
    GroupSpec z2 = GroupSpec::parse("Z2");
    for (double x : {1.0, 2.0, 4.0}) {
        for (double y : {1.0, 2.0, 4.0}) {
            WeightedSubset e(z2, {{{0}, x}, {{1}, y}});
            WeightedSubset b(z2, {{{0}, 1.0}, {{1}, 1.0}});
            double expected = std::max(x, y) / std::min(x, y);
            double dev = std::abs(weighted_tightness(e, b).rho - expected);
            record(r, dev <= 1e-9, 1e-9 - dev);
        }
    }
    WeightedSubset e(z2, {{{0}, 1.0}, {{1}, 4.0}});
    WeightedSubset b(z2, {{{0}, 1.0}, {{1}, 3.0}});
    double q = 1.0 - (4.0 * 3.0 / 16.0) * (4.0 * 4.0 / 25.0);
    double expected = (1.0 + std::sqrt(q)) / (1.0 - std::sqrt(q));
    double dev = std::abs(weighted_tightness(e, b).rho - expected);
    record(r, dev <= 1e-9, 1e-9 - dev);
}

void check_main_bound(const VerifyOptions& o, CheckResult& r) {
    for (std::int64_t m : {3, 5}) {
        GroupSpec g({m, m});
        Subgroup h = subgroup_closure(g, {{1, 0}});
        std::vector<Element> e;
        for (std::int64_t x : {0, 1})
            for (std::int64_t y = 1; y < m; ++y) e.push_back({x, y});
        e.push_back({0, 0});
        e.push_back({2, 0});
        std::sort(e.begin(), e.end());
        MainBoundCertificate c = main_bound_certify(g, e, h, search_opts(o));
        record(r, c.found_simultaneous_basis, c.found_simultaneous_basis ? 1.0 : -1.0);
        for (const auto& bound : c.bounds) record(r, bound.holds, bound.slack);
        record(r, c.report.rho < 32.0 * std::exp(1.0), 32.0 * std::exp(1.0) - c.report.rho);
    }
}

struct NamedCheck {
    const char* name;
    void (*fn)(const VerifyOptions&, CheckResult&);
};

const std::vector<NamedCheck>& all_checks() {
    static const std::vector<NamedCheck> checks = {
        {"char-multiplicative", check_char_multiplicative},
        {"char-affine", check_char_affine},
        {"coset-partition", check_coset_partition},
        {"annihilator-dual", check_annihilator_dual},
        {"sv-det-crosscheck", check_sv_det_crosscheck},
        {"sv-invariance", check_sv_invariance},
        {"kron-spectrum", check_kron_spectrum},
        {"trace-identity", check_trace_identity},
        {"pair-duality", check_pair_duality},
        {"pair-translation", check_pair_translation},
        {"pair-zlinear", check_pair_zlinear},
        {"pair-inequalities", check_pair_inequalities},
        {"spectral-cluster", check_spectral_cluster},
        {"basis-equidistr", check_basis_equidistr},
        {"coset-count", check_coset_count},
        {"search-prune", check_search_prune},
        {"set-bounds", check_set_bounds},
        {"spectral-iff", check_spectral_iff},
        {"condtoinfty", check_condtoinfty},
        {"size2-convergence", check_size2_convergence},
        {"nonconvergence", check_nonconvergence},
        {"loop-around", check_loop_around},
        {"loop-product", check_loop_product},
        {"certified-pair", check_certified_pair},
        {"nosimulbasis", check_nosimulbasis},
        {"vandermonde", check_vandermonde},
        {"decompose", check_decompose},
        {"dimexpand", check_dimexpand},
        {"tile-spectral", check_tile_spectral},
        {"product-multiplicativity", check_product_multiplicativity},
        {"badsimul-family", check_badsimul_family},
        {"weighted-closed-form", check_weighted_closed_form},
        {"main-bound", check_main_bound},
    };
    return checks;
}

}  // namespace

std::vector<std::string> verify_check_names() {
    std::vector<std::string> names;
    for (const NamedCheck& c : all_checks()) names.emplace_back(c.name);
    return names;
}

std::vector<CheckResult> run_verify_suite(const VerifyOptions& opts) {
    for (const std::string& want : opts.only) {
        bool known = false;
        for (const NamedCheck& c : all_checks())
            if (want == c.name) known = true;
        if (!known) throw parse_error("unknown check: " + want);
    }
    std::vector<CheckResult> results;
    for (const NamedCheck& c : all_checks()) {
        if (!opts.only.empty() &&
            std::find(opts.only.begin(), opts.only.end(), c.name) == opts.only.end())
            continue;
        CheckResult r;
        r.name = c.name;
        r.worst_slack = std::numeric_limits<double>::infinity();
        c.fn(opts, r);
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace rieszq
