#include "qlang/register.hpp"

#include <stdexcept>
#include <utility>

#include "qlang/session.hpp"

namespace qlang {

Register::Register(Session* session, std::vector<Address> addresses, bool add_reference)
    : session_(session), addresses_(std::move(addresses)) {
    if (add_reference && session_)
        session_->add_reference(addresses_);
}

Register::Register(const Register& other)
    : Register(other.session_, other.addresses_, true) {}

Register::Register(Register&& other) noexcept
    : session_(other.session_), addresses_(std::move(other.addresses_)) {
    other.session_ = nullptr;
    other.addresses_.clear();
}

Register& Register::operator=(const Register& other) {
    if (this != &other) {
        Register copy(other);
        *this = std::move(copy);
    }
    return *this;
}

Register& Register::operator=(Register&& other) noexcept {
    if (this != &other) {
        release();
        session_ = other.session_;
        addresses_ = std::move(other.addresses_);
        other.session_ = nullptr;
        other.addresses_.clear();
    }
    return *this;
}

Register::~Register() {
    try {
        release();
    } catch (...) {
        // Destruction must not throw; a failure here means the session is
        // already gone and the handles are moot.
    }
}

Address Register::operator[](int qubit) const {
    if (qubit < 0 || qubit >= size())
        throw std::out_of_range("qubit index outside the register");
    return addresses_[static_cast<std::size_t>(qubit)];
}

Register Register::qubit(int index) const { return subrange(index, 1); }

Register Register::subrange(int first, int count) const {
    if (first < 0 || count < 0 || first + count > size())
        throw std::out_of_range("subrange outside the register");
    std::vector<Address> part(addresses_.begin() + first, addresses_.begin() + first + count);
    return Register(session_, std::move(part), true);
}

Register operator&(const Register& a, const Register& b) {
    if (a.empty())
        return b;
    if (b.empty())
        return a;
    if (a.session_ != b.session_)
        throw std::logic_error("cannot concatenate registers from different sessions");
    std::vector<Address> joined = a.addresses_;
    joined.insert(joined.end(), b.addresses_.begin(), b.addresses_.end());
    return Register(a.session_, std::move(joined), true);
}

void Register::resize(int new_size) {
    if (empty() || !session_)
        throw std::logic_error("cannot resize a released register");
    if (new_size < 1)
        throw std::invalid_argument("a register cannot shrink below one qubit");
    if (new_size > size()) {
        std::vector<Address> fresh = session_->acquire(new_size - size());
        addresses_.insert(addresses_.end(), fresh.begin(), fresh.end());
    } else if (new_size < size()) {
        const int drop = size() - new_size;
        std::vector<Address> dropped(addresses_.begin(), addresses_.begin() + drop);
        addresses_.erase(addresses_.begin(), addresses_.begin() + drop);
        session_->drop_reference(dropped);
    }
}

void Register::release() {
    if (session_ && !addresses_.empty())
        session_->drop_reference(addresses_);
    addresses_.clear();
}

void Register::assign(const BitSet& value) {
    if (empty())
        throw std::logic_error("cannot assign to a released register");
    if (static_cast<int>(value.size()) != size())
        throw std::invalid_argument("value width does not match the register");
    session_->emitter().init(value, addresses_);
}

void Register::assign(std::uint64_t value) {
    assign(BitSet::from_value(static_cast<std::size_t>(size()), value));
}

BitSet Register::measure() {
    if (empty())
        throw std::logic_error("cannot measure a released register");
    session_->flush();
    const std::uint64_t id = session_->emitter().measure(addresses_);
    session_->flush();
    return session_->outcome_of(id);
}

} // namespace qlang
