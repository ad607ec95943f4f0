// SPDX-License-Identifier: Apache-2.0
// Internal chunked-scan machinery shared by the serial reference driver and
// the OpenMP driver. A scan visits every rank in [0, total); workers carry
// chunk-local state and are absorbed into a global accumulator afterwards.
// All reductions used here are associative and commutative, so the result is
// independent of chunk boundaries and worker count.
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace rieszq::detail {

struct ChunkWorker {
    virtual ~ChunkWorker() = default;
    virtual void process(std::uint64_t rank_lo, std::uint64_t rank_hi) = 0;
};

struct ScanJob {
    virtual ~ScanJob() = default;
    virtual std::unique_ptr<ChunkWorker> make_worker() = 0;
    virtual void absorb(ChunkWorker& w) = 0;  // called serially per worker
};

/// Single worker, single pass over [0, total). The reference implementation.
void scan_serial(ScanJob& job, std::uint64_t total);

/// Chunked OpenMP scan; falls back to the serial path when OpenMP is absent
/// or threads == 1.
void scan_parallel(ScanJob& job, std::uint64_t total, int threads);

/// Threads actually used for a request (0 = hardware default).
int resolve_threads(int requested);

// --- combination enumeration (lexicographic over sorted index tuples) ---

/// C(n, k) saturated at `ceiling`.
std::uint64_t binomial_capped(std::int64_t n, std::int64_t k, std::uint64_t ceiling);

/// Fills `out` (size k) with the rank-th combination of [0, n) in
/// lexicographic order.
void unrank_combination(std::int64_t n, std::int64_t k, std::uint64_t rank,
                        std::vector<std::int32_t>& out);

/// Advances to the next combination; false when exhausted.
bool next_combination(std::vector<std::int32_t>& comb, std::int64_t n);

}  // namespace rieszq::detail
