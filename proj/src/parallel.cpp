#include "nevlab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nevlab {

namespace {
std::atomic<int> g_jobs{0}; // 0 = hardware default
}

void set_jobs(int jobs) { g_jobs.store(jobs < 0 ? 0 : jobs); }

int get_jobs() {
    int j = g_jobs.load();
    if (j > 0) return j;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

int resolve_jobs(int cli_jobs) {
    if (cli_jobs > 0) return cli_jobs;
    if (const char* env = std::getenv("NEVLAB_JOBS")) {
        try {
            int j = std::stoi(env);
            if (j > 0) return j;
        } catch (...) {
        }
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace nevlab
