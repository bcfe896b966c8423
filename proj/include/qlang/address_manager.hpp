#pragma once

#include <set>
#include <vector>

namespace qlang {

/// Index of one qubit in the device address space.
using Address = int;

/// Usage-counted allocator for the address space of a fixed-capacity device.
///
/// Registers may share addresses, so every address carries a usage count and
/// is returned to the free pool only when the count reaches zero.  Free
/// addresses are handed out lowest-first, which makes allocation sequences
/// reproducible run over run.
class AddressManager {
public:
    explicit AddressManager(int capacity);

    int capacity() const { return capacity_; }
    int free_count() const { return static_cast<int>(free_pool_.size()); }
    int usage_count(Address a) const;

    /// Takes `count` currently-free addresses in ascending order.
    /// Throws std::runtime_error when the device is exhausted.
    std::vector<Address> acquire(int count);

    /// Adds one reference to an already-allocated address.
    void retain(Address a);

    /// Drops one reference; returns true when the address became free.
    bool release(Address a);

private:
    void check(Address a) const;

    int capacity_;
    std::vector<int> usage_;
    std::set<Address> free_pool_;
};

} // namespace qlang
