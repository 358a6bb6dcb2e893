#include "k3pq/parallel.hpp"

#include <omp.h>

namespace k3pq {

void set_worker_count(int k) {
    if (k > 0) omp_set_num_threads(k);
}

}  // namespace k3pq
