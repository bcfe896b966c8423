#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "qlang/address_manager.hpp"
#include "qlang/backend.hpp"
#include "qlang/bitset.hpp"
#include "qlang/emitter.hpp"
#include "qlang/register.hpp"
#include "qlang/simulator.hpp"

namespace qlang {

struct SessionConfig {
    int capacity = 20;            ///< Device size in qubits.
    std::uint64_t seed = 0;       ///< Measurement randomness seed.
    bool simulate = true;         ///< Execute (true) or only record byte-code.
    bool reset_on_free = true;    ///< Reinitialise qubits whose last handle lets go.
};

/// Ties the device model together: hands out registers over a fixed-size
/// address space, turns applied operators into byte-code, and drives a
/// backend — a state-vector simulator or a plain recorder.
class Session {
public:
    explicit Session(SessionConfig config = {});

    const SessionConfig& config() const { return config_; }
    AddressManager& memory() { return memory_; }
    Emitter& emitter() { return emitter_; }

    /// The simulator when simulating, null when recording (and vice versa).
    Simulator* simulator() { return simulator_.get(); }
    const Simulator* simulator() const { return simulator_.get(); }
    Recorder* recorder() { return recorder_.get(); }
    const Recorder* recorder() const { return recorder_.get(); }
    Backend& backend() { return *backend_; }

    /// A fresh register of `size` qubits (optionally initialised to a value).
    Register allocate(int size);
    Register allocate(int size, std::uint64_t value);
    Register allocate(int size, const BitSet& value);

    /// Executes everything queued so far on the backend.
    void flush();

    /// Physical locations currently backing a register's addresses.
    std::vector<int> physical_locations(const Register& reg) const;

    /// Scratch addresses borrowed by the most recent operator application
    /// that needed any; retained for inspection after they are freed.
    const std::vector<Address>& last_borrowed() const { return last_borrowed_; }

private:
    friend class Register;
    friend class Operator;

    void add_reference(const std::vector<Address>& addresses);
    /// Drops one reference per address; addresses whose count reaches zero
    /// are reinitialised to zero (in ascending order) when configured so.
    void drop_reference(const std::vector<Address>& addresses);
    std::vector<Address> acquire(int count);
    BitSet outcome_of(std::uint64_t id);
    void note_borrowed(std::vector<Address> addresses);

    SessionConfig config_;
    AddressManager memory_;
    Emitter emitter_;
    std::unique_ptr<Simulator> simulator_;
    std::unique_ptr<Recorder> recorder_;
    Backend* backend_ = nullptr;
    std::map<std::uint64_t, BitSet> outcomes_;
    std::vector<Address> last_borrowed_;
};

} // namespace qlang
