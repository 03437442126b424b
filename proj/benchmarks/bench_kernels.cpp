// Timing comparison of the OpenMP-parallel verification kernels against the
// single-thread runs and the exhaustive serial reference.
#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nagata/cover.hpp"
#include "nagata/planar.hpp"

using namespace nagata;
using clock_type = std::chrono::high_resolution_clock;

namespace {

double ms_since(clock_type::time_point start) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

void set_threads(int n) {
#ifdef _OPENMP
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace

int main() {
    std::printf("threads available: %d\n\n", max_threads());

    {
        std::printf("== all-pairs cache build (unit grid) ==\n");
        for (std::size_t side : {40, 60}) {
            const PlanarGraph pg = gen_grid(side, side);
            for (int threads : {1, max_threads()}) {
                set_threads(threads);
                const auto start = clock_type::now();
                GraphMetricSpace space(pg.graph);
                std::printf("  %zux%zu grid, %d thread(s): %8.1f ms\n", side, side, threads,
                            ms_since(start));
            }
        }
    }

    {
        std::printf("\n== certify (parallel kernel vs serial reference) ==\n");
        const PlanarGraph pg = gen_grid(48, 48);
        GraphMetricSpace space(pg.graph);
        const PlanarCoverResult res = planar_nagata_cover(pg, space, 0, 1.0);
        std::printf("  instance: 48x48 grid cover, %zu sets\n", res.cover.set_count());
        for (int threads : {1, max_threads()}) {
            set_threads(threads);
            certify(space, res.cover, 0.49);  // warm up the thread pool
            const auto start = clock_type::now();
            const CoverCertificate cert = certify(space, res.cover, 0.49);
            std::printf("  certify,   %d thread(s): %8.1f ms (multiplicity %d)\n", threads,
                        ms_since(start), cert.multiplicity);
        }
        const auto start = clock_type::now();
        const CoverCertificate ref = reference::certify(space, res.cover, 0.49);
        std::printf("  reference, serial:     %8.1f ms (multiplicity %d)\n", ms_since(start),
                    ref.multiplicity);
    }

    {
        std::printf("\n== measured Lipschitz scan ==\n");
        const PlanarGraph pg = gen_grid(45, 45);
        GraphMetricSpace space(pg.graph);
        RealValuedFunction f;
        const PointId src[1] = {0};
        f.values = space.distance_field(std::span<const PointId>(src, 1), kInf);
        for (int threads : {1, max_threads()}) {
            set_threads(threads);
            measured_lipschitz(space, f);  // warm up
            const auto start = clock_type::now();
            const double lip = measured_lipschitz(space, f);
            std::printf("  %d thread(s): %8.1f ms (constant %.3f)\n", threads, ms_since(start),
                        lip);
        }
    }

    set_threads(max_threads());
    return 0;
}
