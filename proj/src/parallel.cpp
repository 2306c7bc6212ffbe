#include "cvqkd/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cvqkd {

int kernel_threads() {
#ifdef _OPENMP
    int threads = omp_get_max_threads();
#else
    int threads = 1;
#endif
    if (const char* cap = std::getenv("CVQKD_THREADS")) {
        try {
            const int requested = std::stoi(cap);
            if (requested > 0) {
                threads = std::min(threads, requested);
            }
        } catch (const std::exception&) {
            // Unparseable values leave the default in place.
        }
    }
    return std::max(threads, 1);
}

}  // namespace cvqkd
