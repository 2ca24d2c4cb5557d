#ifndef BETHELAB_PARALLEL_HPP
#define BETHELAB_PARALLEL_HPP

#include <functional>

namespace bethe {

// Runs body(i) for i in [0, n) on up to `threads` workers.  Each index owns its
// output slot, so scheduling never changes results; reductions stay with the
// caller in index order.
void parallel_for(long n, int threads, const std::function<void(long)>& body);

} // namespace bethe

#endif
