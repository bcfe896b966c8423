#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "qlang/bytecode.hpp"

namespace qlang {

class Register;
struct SimplifyStats;

/// phi_k = exp(2*pi*i / 2^k) for k > 0, the conjugate for k < 0.
/// Throws std::invalid_argument for k == 0.
std::complex<double> phase_factor(int k);

enum class SliceKind { Hadamard, Phase, CondPhase, Swap, OracleXor, OraclePerm, OraclePhase };

bool is_oracle(SliceKind kind);

/// One layer of identical gates applied in parallel.
///
/// `lists` holds one index list per gate line (one list for H/R and the
/// oracle kinds, two positionally zipped lists for CR and classical swap);
/// all lists share one length and all entries are distinct, so the layer is
/// executable in a single parallel step.  `controls` is populated only on
/// oracle slices that run natively under control.
///
/// Negative entries address the owning operator's scratch pool: ancilla
/// slot j is stored as -(j + 1) and resolved to a fresh qubit only when the
/// operator is applied to a register.  Line permutations leave them alone.
struct TimeSlice {
    SliceKind kind = SliceKind::Hadamard;
    int param = 0;  ///< k for Phase / CondPhase.
    std::vector<std::vector<int>> lists;
    std::vector<int> controls;
    std::shared_ptr<const OracleTable> table;

    /// Number of gates in the layer (1 for oracle slices).
    int parallelism() const;

    bool operator==(const TimeSlice& other) const;
};

constexpr int ancilla_ref(int slot) { return -(slot + 1); }
constexpr bool is_ancilla_ref(int ref) { return ref < 0; }
constexpr int ancilla_slot(int ref) { return -(ref + 1); }

/// A quantum operator: an ordered sequence of time slices.
///
/// Default construction yields the identity (no slices, width 0), which is
/// the neutral element of composition and applies to a register of any size.
/// Width is one past the largest referenced line and is kept consistent by
/// every mutation.  Operators carrying controlled structures also record how
/// many scratch qubits they borrow while running.
class Operator {
public:
    Operator() = default;

    int width() const { return width_; }
    int ancilla_count() const { return ancillae_; }
    const std::vector<TimeSlice>& slices() const { return slices_; }
    std::size_t slice_count() const { return slices_.size(); }
    std::size_t gate_count() const;
    bool is_identity() const { return slices_.empty(); }

    /// Sequential composition: *this runs first, then `other`.
    /// The junction is simplified unless embedding is disabled.
    Operator& operator&=(const Operator& other);
    friend Operator operator&(Operator a, const Operator& b) { return a &= b; }

    /// Splice: append `other`'s slices, leaving `other` the identity.
    Operator& operator<<(Operator& other);
    Operator& operator<<(Operator&& other);

    /// Reverses the slice order and conjugates every slice in place.
    Operator& adjoin();
    Operator operator!() const;

    /// Lines at `head` and above move up by `jump`, opening a hole.
    Operator& split(int head, int jump);
    /// Lines in [head, head + size) reverse their order.
    Operator& invert(int head, int size);
    /// All lines move up by `jump`.
    Operator& offset(int jump) { return split(0, jump); }

    Operator split_copy(int head, int jump) const;
    Operator invert_copy(int head, int size) const;
    Operator offset_copy(int jump) const;
    Operator operator>>(int jump) const { return offset_copy(jump); }

    /// Queues this operator on the register's session: slices become
    /// byte-code, classical swaps update the address permutation, and any
    /// scratch qubits are borrowed before and returned after emission.
    void apply(const Register& target) const;
    void operator()(const Register& target) const { apply(target); }

    bool operator==(const Operator& other) const;

    /// Assembles an operator from ready-made slices (validated), deriving
    /// width and ancilla count from the slice contents.
    static Operator from_slices(std::vector<TimeSlice> slices);

    friend Operator& simplify(Operator& op, SimplifyStats* stats);

private:
    void refresh_extents();
    void maybe_simplify();

    std::vector<TimeSlice> slices_;
    int width_ = 0;
    int ancillae_ = 0;
};

/// --- primitive constructors -------------------------------------------

Operator identity();
/// One slice of n parallel Hadamard gates on lines 0..n-1.
Operator hadamard(int n);
/// One slice of n parallel R_k gates on lines 0..n-1.
Operator phase(int n, int k);
/// One slice of `count` parallel C_{R_k} gates pairing line j with line
/// j + count for j in [0, count).
Operator cond_phase(int count, int k);
/// Controlled-not layer: H on targets, C_{R_1}(controls, targets), H on targets.
Operator cnot(const std::vector<int>& controls, const std::vector<int>& targets);
/// Doubly-controlled-not layer built from H, R and C_{R_1} slices.
Operator toffoli(const std::vector<int>& controls1, const std::vector<int>& controls2,
                 const std::vector<int>& targets);
/// One classical-swap slice reversing the order of n lines.
Operator swap(int n);
/// Quantum Fourier transform on n lines (line j carries weight 2^j):
/// the H / C_{R_k} cascade followed by one classical-swap slice.
Operator fourier(int n);

/// --- oracle constructors ----------------------------------------------

/// |x>|y> -> |x>|y xor f(x)>; `table` holds 2^n rows of m bits.
Operator oracle_xor(const std::vector<std::uint64_t>& table, int n, int m);
/// |x> -> |table[x]> for a bijective table over 2^width basis states.
Operator oracle_perm(const std::vector<std::uint64_t>& table, int width);
/// |x> -> (-1)^{table[x]} |x>.
Operator oracle_phase(const std::vector<bool>& table, int n);

/// --- controlled construction ------------------------------------------

/// Operator on `controls` + width(op) lines (controls are lines
/// 0..controls-1, the body is shifted up) that performs `op` exactly on the
/// all-ones control subspace and the identity elsewhere.  Control values are
/// combined with a Toffoli tree and fanned out to match the widest slice;
/// both structures are uncomputed afterwards, so at most
/// controls - 1 + max_parallelism - 1 scratch qubits are borrowed.
Operator controlled(const Operator& op, int controls);

/// Rewrites every classical-swap slice into its three-CNOT hardware form,
/// leaving all other slices untouched.
Operator expand_swaps(const Operator& op);

/// --- debug formatting ---------------------------------------------------

std::string to_string(const TimeSlice& slice);
std::string to_string(const Operator& op);
std::ostream& operator<<(std::ostream& out, const Operator& op);

} // namespace qlang
