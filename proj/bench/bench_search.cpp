// SPDX-License-Identifier: Apache-2.0
// Times the exhaustive spectrum scan: serial reference vs the OpenMP kernel.
// The two paths must return bit-identical optima and witnesses.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "rieszq/search.hpp"

using namespace rieszq;

namespace {

struct Instance {
    const char* group;
    std::vector<Element> e;
};

double time_run(const GroupSpec& g, const std::vector<Element>& e, int threads,
                std::array<SearchResult, 4>& out) {
    SearchOptions opts;
    opts.threads = threads;
    auto start = std::chrono::steady_clock::now();
    out = set_quantities_all(g, e, opts);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    int threads = argc > 1 ? std::atoi(argv[1]) : 0;
    int reps = argc > 2 ? std::atoi(argv[2]) : 3;

    std::vector<Instance> instances = {
        {"Z5^2", {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}, {3, 1}}},
        {"Z6^2", {{0, 0}, {1, 0}, {0, 1}, {2, 3}, {4, 4}}},
        {"Z23", {{0}, {1}, {3}, {7}, {12}, {17}}},
    };

    std::printf("%-8s %-10s %12s %12s %9s  %s\n", "group", "|E|", "serial [s]", "parallel [s]",
                "speedup", "agree");
    for (const Instance& inst : instances) {
        GroupSpec g = GroupSpec::parse(inst.group);
        std::array<SearchResult, 4> serial_out{}, parallel_out{};
        double best_serial = 1e100, best_parallel = 1e100;
        for (int r = 0; r < reps; ++r) {
            best_serial = std::min(best_serial, time_run(g, inst.e, 1, serial_out));
            best_parallel = std::min(best_parallel, time_run(g, inst.e, threads, parallel_out));
        }
        bool agree = true;
        for (int q = 0; q < 4; ++q) {
            agree = agree &&
                    serial_out[static_cast<std::size_t>(q)].value ==
                        parallel_out[static_cast<std::size_t>(q)].value &&
                    serial_out[static_cast<std::size_t>(q)].witness ==
                        parallel_out[static_cast<std::size_t>(q)].witness;
        }
        std::printf("%-8s %-10zu %12.4f %12.4f %8.2fx  %s\n", inst.group, inst.e.size(),
                    best_serial, best_parallel, best_serial / best_parallel,
                    agree ? "yes" : "NO");
        if (!agree) return 1;
    }
    return 0;
}
