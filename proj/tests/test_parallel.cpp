#include "doctest.h"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include <omp.h>

#include "cvqkd/analysis.hpp"
#include "cvqkd/parallel.hpp"
#include "cvqkd/spectrum.hpp"

using namespace cvqkd;

namespace {

// Oversubscribe so the dynamic schedule actually interleaves, even on one core.
struct ForcedThreads {
    explicit ForcedThreads(int n) { omp_set_num_threads(n); }
    ~ForcedThreads() { omp_set_num_threads(omp_get_num_procs()); }
};

}  // namespace

TEST_CASE("CVQKD_THREADS caps the worker count") {
    ForcedThreads force(4);
    unsetenv("CVQKD_THREADS");
    CHECK(kernel_threads() == 4);
    setenv("CVQKD_THREADS", "2", 1);
    CHECK(kernel_threads() == 2);
    setenv("CVQKD_THREADS", "junk", 1);
    CHECK(kernel_threads() == 4);
    setenv("CVQKD_THREADS", "0", 1);
    CHECK(kernel_threads() == 4);
    unsetenv("CVQKD_THREADS");
}

TEST_CASE("parallel_for visits every index once and rethrows") {
    ForcedThreads force(4);
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) {
        CHECK(h == 1);
    }
    std::atomic<int> calls{0};
    CHECK_THROWS_AS(parallel_for(100,
                                 [&](std::size_t i) {
                                     ++calls;
                                     if (i == 37) {
                                         throw std::runtime_error("boom");
                                     }
                                 }),
                    std::runtime_error);
    CHECK(calls.load() == 100);
}

TEST_CASE("sweep: parallel equals serial bit for bit") {
    ForcedThreads force(4);
    SweepSpec spec;
    spec.protocol = kReverseHeterodyne;
    spec.axis = SweepAxis::t;
    spec.range = {0.0, 1.0, 257, Spacing::linear};
    spec.src = {1e3, 2.0};
    spec.ch = {0.5, 1.5};
    const auto par = run_sweep(spec);
    const auto ser = run_sweep_serial(spec);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].value == ser[i].value);
        CHECK(par[i].result.rate == ser[i].result.rate);
        CHECK(par[i].result.holevo == ser[i].result.holevo);
    }
}

TEST_CASE("security map: parallel equals serial bit for bit") {
    ForcedThreads force(4);
    SecurityMapSpec spec;
    spec.frequencies.steps = 15;
    spec.transmissions.steps = 41;
    const auto par = security_map(spec);
    const auto ser = security_map_serial(spec);
    REQUIRE(par.cells.size() == ser.cells.size());
    for (std::size_t i = 0; i < par.cells.size(); ++i) {
        CHECK(par.cells[i].rate == ser.cells[i].rate);
        CHECK(par.cells[i].classification == ser.cells[i].classification);
        CHECK(par.cells[i].frequency == ser.cells[i].frequency);
    }
}

TEST_CASE("threshold: parallel equals serial bit for bit") {
    ForcedThreads force(4);
    for (const auto& p : {kDirectHomodyne, kDirectHeterodyne, kReverseHeterodyne}) {
        for (double v0 : {1.0, 5.0}) {
            const auto a = threshold_find(p, {1e3, v0}, 1.2);
            const auto b = threshold_find_serial(p, {1e3, v0}, 1.2);
            CHECK(a.status == b.status);
            CHECK(a.transmission == b.transmission);
        }
    }
}
