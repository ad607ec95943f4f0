// SPDX-License-Identifier: Apache-2.0
#include "scan_internal.hpp"

#include <stdexcept>

namespace rieszq::detail {

void scan_serial(ScanJob& job, std::uint64_t total) {
    if (total == 0) return;
    auto worker = job.make_worker();
    worker->process(0, total);
    job.absorb(*worker);
}

std::uint64_t binomial_capped(std::int64_t n, std::int64_t k, std::uint64_t ceiling) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 acc = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
        if (acc > ceiling) return ceiling + 1;
    }
    return static_cast<std::uint64_t>(acc);
}

void unrank_combination(std::int64_t n, std::int64_t k, std::uint64_t rank,
                        std::vector<std::int32_t>& out) {
    out.resize(static_cast<std::size_t>(k));
    std::int64_t next = 0;
    for (std::int64_t pos = 0; pos < k; ++pos) {
        for (std::int64_t v = next;; ++v) {
            if (v >= n) throw std::logic_error("combination rank out of range");
            std::uint64_t block = binomial_capped(n - 1 - v, k - pos - 1, ~std::uint64_t{0} >> 1);
            if (rank < block) {
                out[static_cast<std::size_t>(pos)] = static_cast<std::int32_t>(v);
                next = v + 1;
                break;
            }
            rank -= block;
        }
    }
}

bool next_combination(std::vector<std::int32_t>& comb, std::int64_t n) {
    const std::int64_t k = static_cast<std::int64_t>(comb.size());
    for (std::int64_t i = k - 1; i >= 0; --i) {
        if (comb[static_cast<std::size_t>(i)] < n - k + i) {
            std::int32_t v = ++comb[static_cast<std::size_t>(i)];
            for (std::int64_t j = i + 1; j < k; ++j)
                comb[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(v + (j - i));
            return true;
        }
    }
    return false;
}

}  // namespace rieszq::detail
