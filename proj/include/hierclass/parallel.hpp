#pragma once

#include <cstddef>
#include <functional>

namespace hierclass {

// Runs body(0) .. body(count - 1) on up to `workers` threads. Indices are
// handed out through a shared counter; the result must not depend on which
// thread runs which index. The first exception thrown by any body is
// rethrown on the calling thread after all workers join.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace hierclass
