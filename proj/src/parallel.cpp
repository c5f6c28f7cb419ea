#include "rtplan/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rtplan {

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace rtplan
