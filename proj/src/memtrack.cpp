#include "hierclass/memtrack.hpp"

#include <malloc.h>

#include <atomic>
#include <cstdlib>
#include <new>

namespace {

constinit std::atomic<std::size_t> g_current{0};
constinit std::atomic<std::size_t> g_peak{0};

void track_alloc(void* p) {
    if (p == nullptr) return;
    const std::size_t n = malloc_usable_size(p);
    const std::size_t now = g_current.fetch_add(n, std::memory_order_relaxed) + n;
    std::size_t peak = g_peak.load(std::memory_order_relaxed);
    while (now > peak &&
           !g_peak.compare_exchange_weak(peak, now, std::memory_order_relaxed)) {
    }
}

void track_free(void* p) {
    if (p == nullptr) return;
    g_current.fetch_sub(malloc_usable_size(p), std::memory_order_relaxed);
}

void* tracked_new(std::size_t size) {
    void* p = std::malloc(size == 0 ? 1 : size);
    if (p == nullptr) throw std::bad_alloc{};
    track_alloc(p);
    return p;
}

void* tracked_aligned_new(std::size_t size, std::align_val_t align) {
    const std::size_t a = static_cast<std::size_t>(align);
    const std::size_t rounded = (size + a - 1) / a * a;
    void* p = std::aligned_alloc(a, rounded == 0 ? a : rounded);
    if (p == nullptr) throw std::bad_alloc{};
    track_alloc(p);
    return p;
}

void tracked_delete(void* p) noexcept {
    track_free(p);
    std::free(p);
}

}  // namespace

namespace hierclass::memtrack {

std::size_t current_bytes() { return g_current.load(std::memory_order_relaxed); }
std::size_t peak_bytes() { return g_peak.load(std::memory_order_relaxed); }
void reset_peak() { g_peak.store(current_bytes(), std::memory_order_relaxed); }

}  // namespace hierclass::memtrack

void* operator new(std::size_t size) { return tracked_new(size); }
void* operator new[](std::size_t size) { return tracked_new(size); }
void* operator new(std::size_t size, const std::nothrow_t&) noexcept {
    void* p = std::malloc(size == 0 ? 1 : size);
    track_alloc(p);
    return p;
}
void* operator new[](std::size_t size, const std::nothrow_t&) noexcept {
    void* p = std::malloc(size == 0 ? 1 : size);
    track_alloc(p);
    return p;
}
void* operator new(std::size_t size, std::align_val_t align) {
    return tracked_aligned_new(size, align);
}
void* operator new[](std::size_t size, std::align_val_t align) {
    return tracked_aligned_new(size, align);
}

void operator delete(void* p) noexcept { tracked_delete(p); }
void operator delete[](void* p) noexcept { tracked_delete(p); }
void operator delete(void* p, std::size_t) noexcept { tracked_delete(p); }
void operator delete[](void* p, std::size_t) noexcept { tracked_delete(p); }
void operator delete(void* p, const std::nothrow_t&) noexcept { tracked_delete(p); }
void operator delete[](void* p, const std::nothrow_t&) noexcept { tracked_delete(p); }
void operator delete(void* p, std::align_val_t) noexcept { tracked_delete(p); }
void operator delete[](void* p, std::align_val_t) noexcept { tracked_delete(p); }
void operator delete(void* p, std::size_t, std::align_val_t) noexcept { tracked_delete(p); }
void operator delete[](void* p, std::size_t, std::align_val_t) noexcept { tracked_delete(p); }
