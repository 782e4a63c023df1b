#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace lzt {

// Per-structure allocation bookkeeping. Every container inside a trie backend
// allocates through a TrackedAlloc pointing at the backend's account, so
// live() is the current structure size and peak() captures the high-water
// mark — including the window during a table rebuild where the old and the
// new arrays are alive at the same time.
class AllocAccount {
public:
    void add(std::uint64_t bytes) {
        m_live += bytes;
        if (m_live > m_peak) m_peak = m_live;
    }
    void sub(std::uint64_t bytes) { m_live -= bytes; }

    std::uint64_t live() const { return m_live; }
    std::uint64_t peak() const { return m_peak; }

    void reset_peak() { m_peak = m_live; }

private:
    std::uint64_t m_live = 0;
    std::uint64_t m_peak = 0;
};

template<typename T>
class TrackedAlloc {
public:
    using value_type = T;

    explicit TrackedAlloc(AllocAccount* account = nullptr) : m_account(account) {}

    template<typename U>
    TrackedAlloc(const TrackedAlloc<U>& other) : m_account(other.account()) {}

    T* allocate(std::size_t n) {
        if (m_account) m_account->add(n * sizeof(T));
        return std::allocator<T>{}.allocate(n);
    }

    void deallocate(T* p, std::size_t n) {
        if (m_account) m_account->sub(n * sizeof(T));
        std::allocator<T>{}.deallocate(p, n);
    }

    AllocAccount* account() const { return m_account; }

    bool operator==(const TrackedAlloc& other) const { return m_account == other.m_account; }

private:
    AllocAccount* m_account;
};

template<typename T>
using tracked_vector = std::vector<T, TrackedAlloc<T>>;

} // namespace lzt
