#pragma once

namespace nevlab {

/// Worker count for the parallel sweep kernels. 0 or 1 selects serial
/// execution; values above the hardware count are allowed. Thread count
/// never changes numeric results: every grid point writes its own slot.
void set_jobs(int jobs);
int get_jobs();

/// Resolves --jobs / NEVLAB_JOBS / hardware default, in that order.
int resolve_jobs(int cli_jobs);

} // namespace nevlab
