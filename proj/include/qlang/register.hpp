#pragma once

#include <cstdint>
#include <vector>

#include "qlang/address_manager.hpp"
#include "qlang/bitset.hpp"

namespace qlang {

class Session;

/// A handle onto a sequence of device addresses.
///
/// Registers are reference-counted views: copies, subranges and
/// concatenations share the underlying qubits, and an address is returned
/// to the device only when its last handle lets go.  Qubit 0 is the least
/// significant position of the value a register holds.  A register must not
/// outlive the session that allocated it.
class Register {
public:
    Register() = default;
    Register(const Register& other);
    Register(Register&& other) noexcept;
    Register& operator=(const Register& other);
    Register& operator=(Register&& other) noexcept;
    ~Register();

    int size() const { return static_cast<int>(addresses_.size()); }
    bool empty() const { return addresses_.empty(); }
    Session* session() const { return session_; }
    const std::vector<Address>& addresses() const { return addresses_; }

    /// Address of one qubit.
    Address operator[](int qubit) const;
    /// One-qubit register sharing the storage.
    Register qubit(int index) const;
    /// `count` qubits starting at `first`, sharing the storage.
    Register subrange(int first, int count) const;
    Register operator()(int first, int count) const { return subrange(first, count); }

    /// Concatenation: `a & b` spans a's qubits then b's, sharing storage.
    friend Register operator&(const Register& a, const Register& b);

    /// Grows by appending freshly allocated qubits at the top end, or
    /// shrinks by dropping qubits from the bottom end.  A register cannot
    /// shrink below one qubit; use release() to drop it entirely.
    void resize(int new_size);
    Register& operator+=(int extra) { resize(size() + extra); return *this; }
    Register& operator-=(int fewer) { resize(size() - fewer); return *this; }

    /// Lets go of every qubit now instead of at destruction.
    void release();

    /// Queues a classical initialisation of the register to `value`.
    void assign(const BitSet& value);
    void assign(std::uint64_t value);

    /// Measures the whole register and returns the observed bits, qubit 0
    /// first.  Everything queued so far is executed in the process.
    BitSet measure();

private:
    friend class Session;
    Register(Session* session, std::vector<Address> addresses, bool add_reference);

    Session* session_ = nullptr;
    std::vector<Address> addresses_;
};

} // namespace qlang
