#pragma once

#include <cstddef>

namespace hierclass::memtrack {

// Allocation accounting through replaced global new/delete (Linux,
// malloc_usable_size based). Numbers are an in-process high-water estimate,
// not comparable to OS-level RSS.

std::size_t current_bytes();
std::size_t peak_bytes();

// Resets the running peak to the current allocation level so a following
// code section can be measured with peak_bytes() - baseline.
void reset_peak();

}  // namespace hierclass::memtrack
