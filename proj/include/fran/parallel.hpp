#pragma once

namespace fran {

// Worker count for OpenMP regions: hardware threads capped by the
// FRAN_THREADS environment variable (>= 1).
int max_worker_threads();

}  // namespace fran
