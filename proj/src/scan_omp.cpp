// SPDX-License-Identifier: Apache-2.0
#include "scan_internal.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rieszq::detail {

int resolve_threads(int requested) {
#ifdef _OPENMP
    if (requested <= 0) return omp_get_max_threads();
    return requested;
#else
    (void)requested;
    return 1;
#endif
}

void scan_parallel(ScanJob& job, std::uint64_t total, int threads) {
    if (total == 0) return;
    const int nthreads = resolve_threads(threads);
#ifdef _OPENMP
    if (nthreads > 1) {
        // Oversubscribe chunks a little so dynamic scheduling can balance
        // uneven candidate costs; absorb order does not matter.
        const std::uint64_t chunks =
            std::min<std::uint64_t>(total, static_cast<std::uint64_t>(nthreads) * 8);
#pragma omp parallel num_threads(nthreads)
        {
#pragma omp for schedule(dynamic, 1)
            for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
                const std::uint64_t lo = total * static_cast<std::uint64_t>(c) / chunks;
                const std::uint64_t hi = total * (static_cast<std::uint64_t>(c) + 1) / chunks;
                if (lo == hi) continue;
                auto worker = job.make_worker();
                worker->process(lo, hi);
#pragma omp critical(rieszq_scan_absorb)
                job.absorb(*worker);
            }
        }
        return;
    }
#endif
    scan_serial(job, total);
}

}  // namespace rieszq::detail
