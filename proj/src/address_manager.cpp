#include "qlang/address_manager.hpp"

#include <stdexcept>
#include <string>

namespace qlang {

AddressManager::AddressManager(int capacity) : capacity_(capacity), usage_(capacity, 0) {
    if (capacity < 1)
        throw std::invalid_argument("AddressManager: capacity must be positive");
    for (Address a = 0; a < capacity; ++a) free_pool_.insert(a);
}

int AddressManager::usage_count(Address a) const {
    check(a);
    return usage_[a];
}

std::vector<Address> AddressManager::acquire(int count) {
    if (count < 0) throw std::invalid_argument("AddressManager: negative acquire");
    if (count > free_count())
        throw std::runtime_error("AddressManager: device exhausted (" + std::to_string(count) +
                                 " qubits requested, " + std::to_string(free_count()) + " free)");
    std::vector<Address> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        Address a = *free_pool_.begin();
        free_pool_.erase(free_pool_.begin());
        usage_[a] = 1;
        out.push_back(a);
    }
    return out;
}

void AddressManager::retain(Address a) {
    check(a);
    if (usage_[a] == 0)
        throw std::logic_error("AddressManager: retain of a free address");
    ++usage_[a];
}

bool AddressManager::release(Address a) {
    check(a);
    if (usage_[a] == 0)
        throw std::logic_error("AddressManager: release of a free address");
    if (--usage_[a] == 0) {
        free_pool_.insert(a);
        return true;
    }
    return false;
}

void AddressManager::check(Address a) const {
    if (a < 0 || a >= capacity_)
        throw std::out_of_range("AddressManager: address " + std::to_string(a) +
                                " outside capacity " + std::to_string(capacity_));
}

} // namespace qlang
