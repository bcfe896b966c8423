#include "qlang/session.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "qlang/operator.hpp"

namespace qlang {

Session::Session(SessionConfig config)
    : config_(config), memory_(config.capacity), emitter_(config.capacity) {
    if (config_.simulate) {
        simulator_ = std::make_unique<Simulator>(config_.capacity, config_.seed);
        backend_ = simulator_.get();
    } else {
        recorder_ = std::make_unique<Recorder>();
        backend_ = recorder_.get();
    }
}

Register Session::allocate(int size) {
    if (size < 1)
        throw std::invalid_argument("a register needs at least one qubit");
    return Register(this, acquire(size), false);
}

Register Session::allocate(int size, std::uint64_t value) {
    return allocate(size, BitSet::from_value(static_cast<std::size_t>(size), value));
}

Register Session::allocate(int size, const BitSet& value) {
    Register reg = allocate(size);
    reg.assign(value);
    return reg;
}

void Session::flush() {
    for (auto& [id, bits] : emitter_.flush(*backend_))
        outcomes_[id] = std::move(bits);
}

std::vector<int> Session::physical_locations(const Register& reg) const {
    std::vector<int> locations;
    locations.reserve(reg.addresses().size());
    for (Address address : reg.addresses())
        locations.push_back(emitter_.location_of(address));
    return locations;
}

void Session::add_reference(const std::vector<Address>& addresses) {
    for (Address address : addresses)
        memory_.retain(address);
}

void Session::drop_reference(const std::vector<Address>& addresses) {
    std::vector<Address> vacated;
    for (Address address : addresses) {
        if (memory_.release(address))
            vacated.push_back(address);
    }
    if (!vacated.empty() && config_.reset_on_free) {
        std::sort(vacated.begin(), vacated.end());
        emitter_.init(BitSet(vacated.size()), vacated);
    }
}

std::vector<Address> Session::acquire(int count) { return memory_.acquire(count); }

BitSet Session::outcome_of(std::uint64_t id) {
    auto found = outcomes_.find(id);
    if (found == outcomes_.end())
        throw std::logic_error("no outcome recorded for this measurement");
    BitSet bits = std::move(found->second);
    outcomes_.erase(found);
    return bits;
}

void Session::note_borrowed(std::vector<Address> addresses) {
    last_borrowed_ = std::move(addresses);
}

/// Resolves operator lines to device addresses and queues the slices as
/// byte-code.  Scratch lines are backed by freshly borrowed qubits that are
/// given back as soon as the operator has been queued.
void Operator::apply(const Register& target) const {
    Session* session = target.session();
    if (!session) {
        if (is_identity())
            return;
        throw std::logic_error("cannot apply an operator to a released register");
    }
    if (width_ > target.size())
        throw std::invalid_argument("operator is wider than the target register");

    std::vector<Address> borrowed;
    if (ancillae_ > 0)
        borrowed = session->acquire(ancillae_);

    auto resolve = [&](const std::vector<int>& refs) {
        std::vector<int> addresses;
        addresses.reserve(refs.size());
        for (int ref : refs)
            addresses.push_back(is_ancilla_ref(ref)
                                    ? borrowed[static_cast<std::size_t>(ancilla_slot(ref))]
                                    : target[ref]);
        return addresses;
    };

    Emitter& emitter = session->emitter();
    for (const TimeSlice& slice : slices_) {
        switch (slice.kind) {
        case SliceKind::Hadamard:
            emitter.gate(Opcode::H, 0, {resolve(slice.lists[0])});
            break;
        case SliceKind::Phase:
            emitter.gate(Opcode::R, slice.param, {resolve(slice.lists[0])});
            break;
        case SliceKind::CondPhase:
            emitter.gate(Opcode::CR, slice.param,
                         {resolve(slice.lists[0]), resolve(slice.lists[1])});
            break;
        case SliceKind::Swap:
            emitter.swap_addresses(resolve(slice.lists[0]), resolve(slice.lists[1]));
            break;
        case SliceKind::OracleXor:
            emitter.oracle(Opcode::Oracle, slice.table, resolve(slice.controls),
                           resolve(slice.lists[0]));
            break;
        case SliceKind::OraclePerm:
            emitter.oracle(Opcode::Perm, slice.table, resolve(slice.controls),
                           resolve(slice.lists[0]));
            break;
        case SliceKind::OraclePhase:
            emitter.oracle(Opcode::PhaseOracle, slice.table, resolve(slice.controls),
                           resolve(slice.lists[0]));
            break;
        }
    }

    if (!borrowed.empty()) {
        session->note_borrowed(borrowed);
        session->drop_reference(borrowed);
    }
}

} // namespace qlang
