#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qlang/operator.hpp"

namespace qlang {

namespace {

void append(std::vector<TimeSlice>& out, const std::vector<TimeSlice>& extra) {
    out.insert(out.end(), extra.begin(), extra.end());
}

/// Doubly-controlled phase slices: multiplies by phi_k exactly when all
/// three rails carry ones.  Built from single-line phases, pair phases and
/// Hadamards; the negative exponent is the reversed conjugate circuit.
std::vector<TimeSlice> doubly_controlled_phase(const std::vector<int>& c1,
                                               const std::vector<int>& c2,
                                               const std::vector<int>& t, int k) {
    if (k < 0) {
        auto slices = doubly_controlled_phase(c1, c2, t, -k);
        std::reverse(slices.begin(), slices.end());
        for (auto& slice : slices)
            if (slice.kind == SliceKind::Phase || slice.kind == SliceKind::CondPhase)
                slice.param = -slice.param;
        return slices;
    }
    std::vector<TimeSlice> slices;
    auto h = [&] { slices.push_back({SliceKind::Hadamard, 0, {t}, {}, nullptr}); };
    auto r = [&](int p) { slices.push_back({SliceKind::Phase, p, {t}, {}, nullptr}); };
    auto cr = [&](int p, const std::vector<int>& a, const std::vector<int>& b) {
        slices.push_back({SliceKind::CondPhase, p, {a, b}, {}, nullptr});
    };
    h();
    cr(1, c1, t);
    h();
    r(-(k + 2));
    h();
    cr(1, c2, t);
    h();
    r(k + 2);
    h();
    cr(1, c1, t);
    h();
    r(-(k + 2));
    h();
    cr(1, c2, t);
    h();
    r(k + 2);
    cr(k + 1, c1, c2);
    return slices;
}

/// Controlled Hadamard slices: the target line sees H exactly when the
/// source rail carries a one.  Three source-target phase couplings
/// interleaved with plain Hadamards leave the gate correct up to an eighth
/// root of unity on the source, which the trailing phase removes.
std::vector<TimeSlice> controlled_hadamard(const std::vector<int>& sources,
                                           const std::vector<int>& targets) {
    std::vector<TimeSlice> slices;
    for (int round = 0; round < 3; ++round) {
        slices.push_back({SliceKind::CondPhase, 2, {sources, targets}, {}, nullptr});
        if (round < 2)
            slices.push_back({SliceKind::Hadamard, 0, {targets}, {}, nullptr});
    }
    slices.push_back({SliceKind::Phase, -3, {sources}, {}, nullptr});
    return slices;
}

} // namespace

Operator controlled(const Operator& op, int controls) {
    if (controls < 1)
        throw std::invalid_argument("a controlled operator needs at least one control line");

    const Operator flat = expand_swaps(op);
    if (flat.slices().empty())
        return identity();

    int widest = 1;
    for (const auto& slice : flat.slices())
        widest = std::max(widest, slice.parallelism());

    const Operator body = flat >> controls;
    int next_slot = flat.ancilla_count();

    // Combine the control lines pairwise into scratch qubits until one rail
    // holds the conjunction of them all.
    std::vector<TimeSlice> prologue;
    std::vector<int> values(static_cast<std::size_t>(controls));
    for (int i = 0; i < controls; ++i)
        values[static_cast<std::size_t>(i)] = i;
    while (values.size() > 1) {
        std::vector<int> firsts, seconds, products, carried;
        for (std::size_t i = 0; i + 1 < values.size(); i += 2) {
            firsts.push_back(values[i]);
            seconds.push_back(values[i + 1]);
            products.push_back(ancilla_ref(next_slot++));
        }
        if (values.size() % 2 == 1)
            carried.push_back(values.back());
        append(prologue, toffoli(firsts, seconds, products).slices());
        products.insert(products.end(), carried.begin(), carried.end());
        values = std::move(products);
    }
    const int sigma = values.front();

    // Duplicate the conjunction onto further scratch qubits so that every
    // gate of the widest slice has its own control rail.
    std::vector<int> rails{sigma};
    while (static_cast<int>(rails.size()) < widest) {
        const std::size_t want = static_cast<std::size_t>(widest) - rails.size();
        const std::size_t batch = std::min(rails.size(), want);
        std::vector<int> from(rails.begin(), rails.begin() + static_cast<std::ptrdiff_t>(batch));
        std::vector<int> fresh;
        for (std::size_t i = 0; i < batch; ++i)
            fresh.push_back(ancilla_ref(next_slot++));
        append(prologue, cnot(from, fresh).slices());
        rails.insert(rails.end(), fresh.begin(), fresh.end());
    }

    // Rebuild the body slice by slice with each gate tied to a rail.
    std::vector<TimeSlice> mapped;
    for (const auto& slice : body.slices()) {
        const std::size_t gates = static_cast<std::size_t>(slice.parallelism());
        const std::vector<int> sources(rails.begin(),
                                       rails.begin() + static_cast<std::ptrdiff_t>(gates));
        switch (slice.kind) {
        case SliceKind::Hadamard:
            append(mapped, controlled_hadamard(sources, slice.lists[0]));
            break;
        case SliceKind::Phase:
            mapped.push_back(
                {SliceKind::CondPhase, slice.param, {sources, slice.lists[0]}, {}, nullptr});
            break;
        case SliceKind::CondPhase:
            append(mapped, doubly_controlled_phase(sources, slice.lists[0], slice.lists[1],
                                                   slice.param));
            break;
        case SliceKind::OracleXor:
        case SliceKind::OraclePerm:
        case SliceKind::OraclePhase: {
            TimeSlice guarded = slice;
            guarded.controls.push_back(sources.front());
            mapped.push_back(std::move(guarded));
            break;
        }
        case SliceKind::Swap:
            throw std::logic_error("swap layers must be expanded before control synthesis");
        }
    }

    std::vector<TimeSlice> all = prologue;
    append(all, mapped);
    const Operator undo = !Operator::from_slices(std::move(prologue));
    append(all, undo.slices());
    return Operator::from_slices(std::move(all));
}

} // namespace qlang
