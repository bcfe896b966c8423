// Command-line front end: runs the bundled algorithms on the simulator or
// dumps their byte-code streams.  Output is stable `key: value` text so runs
// are easy to diff and to drive from scripts.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qlang/algorithms.hpp"
#include "qlang/bytecode.hpp"
#include "qlang/operator.hpp"
#include "qlang/register.hpp"
#include "qlang/session.hpp"
#include "qlang/simplify.hpp"

namespace {

using namespace qlang;

struct GlobalArgs {
    std::uint64_t seed = 0;
    int capacity = -1;  ///< Negative: use QLANG_CAPACITY or the per-command default.
};

int device_size(const GlobalArgs& global, int needed) {
    if (global.capacity >= 0)
        return global.capacity;
    if (const char* env = std::getenv("QLANG_CAPACITY"); env != nullptr && *env != '\0')
        return std::stoi(env);
    return needed;
}

std::string fixed6(double value) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(6) << value;
    return out.str();
}

void write_stream(const Session& session, const std::string& path, std::ostream& out) {
    const ByteCodeProgram& transcript = session.recorder()->transcript();
    std::ofstream file(path);
    if (!file)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    dump(transcript, file);
    if (!file.flush())
        throw std::runtime_error("failed writing '" + path + "'");
    out << "instructions: " << transcript.size() << "\n"
        << "out: " << path << "\n";
}

/// --- adder ---------------------------------------------------------------

struct AdderArgs {
    int size = 4;
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    std::uint64_t z = 0;
    bool stats = false;
};

void attach_adder_flags(CLI::App& cmd, AdderArgs& args) {
    cmd.add_option("--size", args.size, "Qubits per input block")->capture_default_str();
    cmd.add_option("--x", args.x, "First summand")->required();
    cmd.add_option("--y", args.y, "Second summand")->required();
    cmd.add_option("--z", args.z, "Accumulator start value")->required();
}

void echo_adder(std::ostream& out, const AdderArgs& args) {
    out << "size: " << args.size << "\n"
        << "x: " << args.x << "\n"
        << "y: " << args.y << "\n"
        << "z: " << args.z << "\n";
}

struct AdderRegisters {
    Register sum;
    Register x;
    Register y;
};

AdderRegisters build_adder(Session& session, const AdderArgs& args, std::ostream* stats) {
    if (args.size < 1 || args.size > 9)
        throw std::invalid_argument("adder block size out of range");
    const std::uint64_t limit = std::uint64_t{1} << args.size;
    if (args.x >= limit || args.y >= limit || args.z >= limit)
        throw std::invalid_argument("inputs must fit the block size");

    Operator adder;
    if (stats != nullptr) {
        SimplifyStats effect;
        {
            SimplifyScope raw(false);
            adder = build_three_adder(args.size);
        }
        simplify(adder, &effect);
        *stats << "slices-raw: " << effect.slices_before << "\n"
               << "gates-raw: " << effect.gates_before << "\n"
               << "slices: " << effect.slices_after << "\n"
               << "gates: " << effect.gates_after << "\n"
               << "width: " << adder.width() << "\n";
    } else {
        adder = build_three_adder(args.size);
    }

    AdderRegisters regs{session.allocate(args.size, args.z),
                        session.allocate(args.size, args.x),
                        session.allocate(args.size, args.y)};
    adder.apply(regs.x & regs.y & regs.sum);
    return regs;
}

int cmd_adder(const GlobalArgs& global, const AdderArgs& args) {
    Session session({device_size(global, 3 * args.size), global.seed, true, true});
    echo_adder(std::cout, args);
    AdderRegisters regs = build_adder(session, args, args.stats ? &std::cout : nullptr);
    std::cout << "sum: " << regs.sum.measure().value() << "\n";
    return 0;
}

/// --- amplitude amplification --------------------------------------------

struct GroverArgs {
    int n = 3;
    std::uint64_t marked = 0;
    int iters = -1;
};

void attach_grover_flags(CLI::App& cmd, GroverArgs& args) {
    cmd.add_option("--n", args.n, "Search register width in qubits")->capture_default_str();
    cmd.add_option("--marked", args.marked, "Basis state to amplify")->required();
    cmd.add_option("--iters", args.iters, "Amplification rounds (negative: default)")
        ->capture_default_str();
}

Register build_grover(Session& session, const GroverArgs& args, int rounds) {
    if (args.n < 1 || args.n > 20)
        throw std::invalid_argument("search width out of range");
    if (args.marked >= (std::uint64_t{1} << args.n))
        throw std::invalid_argument("marked value does not fit the search register");

    Register data = session.allocate(args.n);
    std::vector<bool> flags(std::size_t{1} << args.n, false);
    flags[args.marked] = true;
    const Operator step = grover_step(oracle_phase(flags, args.n), args.n);

    hadamard(args.n).apply(data);
    for (int round = 0; round < rounds; ++round)
        step.apply(data);
    return data;
}

int cmd_grover(const GlobalArgs& global, const GroverArgs& args) {
    const int rounds = args.iters < 0 ? grover_repetitions(args.n) : args.iters;
    Session session({device_size(global, args.n), global.seed, true, true});
    std::cout << "n: " << args.n << "\n"
              << "marked: " << args.marked << "\n"
              << "repetitions: " << rounds << "\n";

    Register data = build_grover(session, args, rounds);
    session.flush();
    const double probability = session.simulator()->probability_of(
        args.marked, session.physical_locations(data));
    std::cout << "probability: " << fixed6(probability) << "\n";

    const std::uint64_t outcome = data.measure().value();
    std::cout << "outcome: " << outcome << "\n"
              << "hit: " << (outcome == args.marked ? "yes" : "no") << "\n";
    return 0;
}

/// --- order finding -------------------------------------------------------

struct OrderArgs {
    std::uint64_t x = 7;
    std::uint64_t modulus = 15;
    int n = 3;
    double eps = 0.25;
};

void attach_order_flags(CLI::App& cmd, OrderArgs& args) {
    cmd.add_option("--x", args.x, "Base whose order is sought")->capture_default_str();
    cmd.add_option("--N", args.modulus, "Modulus")->capture_default_str();
    cmd.add_option("--n", args.n, "Requested result bits")->capture_default_str();
    cmd.add_option("--eps", args.eps, "Phase-estimation failure bound")->capture_default_str();
}

struct OrderRegisters {
    Register phase;
    Register eigen;
};

OrderRegisters build_order(Session& session, const OrderArgs& args, int phase_bits,
                           int work_bits) {
    if (args.modulus < 3 || args.modulus > 0xFFFFFFFFull)
        throw std::invalid_argument("modulus out of range");
    const std::uint64_t base = args.x % args.modulus;
    if (base < 2)
        throw std::invalid_argument("base must exceed one");
    if (std::gcd(base, args.modulus) != 1)
        throw std::invalid_argument("base shares a divisor with the modulus");

    OrderRegisters regs{session.allocate(phase_bits),
                        session.allocate(work_bits, std::uint64_t{1})};
    hadamard(phase_bits).apply(regs.phase);
    for (int i = 0; i < phase_bits; ++i) {
        const std::uint64_t factor = modpow(base, std::uint64_t{1} << i, args.modulus);
        const Operator multiply =
            oracle_perm(multiply_mod_table(factor, args.modulus, work_bits), work_bits);
        controlled(multiply, 1).apply(regs.phase.qubit(i) & regs.eigen);
    }
    (!fourier(phase_bits)).apply(regs.phase);
    return regs;
}

int cmd_order(const GlobalArgs& global, const OrderArgs& args) {
    const int phase_bits = phase_bits_for(args.n, args.eps);
    const int work_bits = bits_for(args.modulus);
    Session session({device_size(global, phase_bits + work_bits), global.seed, true, true});
    std::cout << "x: " << args.x << "\n"
              << "modulus: " << args.modulus << "\n"
              << "result-bits: " << args.n << "\n"
              << "epsilon: " << args.eps << "\n"
              << "phase-bits: " << phase_bits << "\n"
              << "work-bits: " << work_bits << "\n";

    OrderRegisters regs = build_order(session, args, phase_bits, work_bits);
    const std::uint64_t outcome = regs.phase.measure().value();
    std::cout << "outcome: " << outcome << "\n";

    const auto order = recover_order(outcome, phase_bits, args.x % args.modulus, args.modulus);
    if (order)
        std::cout << "order: " << *order << "\n";
    else
        std::cout << "order: none\n";
    return 0;
}

/// --- rewriting demo ------------------------------------------------------

int cmd_simplify_demo() {
    Operator adder;
    {
        SimplifyScope raw(false);
        adder = build_three_adder(4);
    }
    SimplifyStats adder_effect;
    simplify(adder, &adder_effect);
    std::cout << "adder-size: 4\n"
              << "adder-slices-raw: " << adder_effect.slices_before << "\n"
              << "adder-gates-raw: " << adder_effect.gates_before << "\n"
              << "adder-slices: " << adder_effect.slices_after << "\n"
              << "adder-gates: " << adder_effect.gates_after << "\n";

    Operator roundtrip;
    {
        SimplifyScope raw(false);
        const Operator f = fourier(6);
        roundtrip = f & !f;
    }
    SimplifyStats roundtrip_effect;
    simplify(roundtrip, &roundtrip_effect);
    std::cout << "roundtrip-slices-raw: " << roundtrip_effect.slices_before << "\n"
              << "roundtrip-slices: " << roundtrip_effect.slices_after << "\n";
    return 0;
}

/// --- byte-code dump ------------------------------------------------------

int cmd_dump(const GlobalArgs& global, const std::string& path, const std::string& algorithm,
             const AdderArgs& adder_args, const GroverArgs& grover_args,
             const OrderArgs& order_args) {
    if (algorithm == "adder") {
        Session session({device_size(global, 3 * adder_args.size), global.seed, false, true});
        std::cout << "algorithm: adder\n";
        echo_adder(std::cout, adder_args);
        AdderRegisters regs = build_adder(session, adder_args, nullptr);
        regs.sum.measure();
        write_stream(session, path, std::cout);
    } else if (algorithm == "grover") {
        const int rounds =
            grover_args.iters < 0 ? grover_repetitions(grover_args.n) : grover_args.iters;
        Session session({device_size(global, grover_args.n), global.seed, false, true});
        std::cout << "algorithm: grover\n"
                  << "n: " << grover_args.n << "\n"
                  << "marked: " << grover_args.marked << "\n"
                  << "repetitions: " << rounds << "\n";
        Register data = build_grover(session, grover_args, rounds);
        data.measure();
        write_stream(session, path, std::cout);
    } else {
        const int phase_bits = phase_bits_for(order_args.n, order_args.eps);
        const int work_bits = bits_for(order_args.modulus);
        Session session(
            {device_size(global, phase_bits + work_bits), global.seed, false, true});
        std::cout << "algorithm: order\n"
                  << "x: " << order_args.x << "\n"
                  << "modulus: " << order_args.modulus << "\n"
                  << "phase-bits: " << phase_bits << "\n"
                  << "work-bits: " << work_bits << "\n";
        OrderRegisters regs = build_order(session, order_args, phase_bits, work_bits);
        regs.phase.measure();
        write_stream(session, path, std::cout);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum register machine: algorithm runs and byte-code dumps"};
    app.require_subcommand(1);

    GlobalArgs global;
    app.add_option("--seed", global.seed, "Measurement randomness seed")
        ->capture_default_str();
    app.add_option("--capacity", global.capacity,
                   "Device size in qubits (default: what the command needs, "
                   "or the QLANG_CAPACITY environment variable)");

    AdderArgs adder_args;
    CLI::App* adder_cmd = app.add_subcommand("adder", "Add two blocks into an accumulator");
    attach_adder_flags(*adder_cmd, adder_args);
    adder_cmd->add_flag("--stats", adder_args.stats, "Print circuit sizes before and after rewriting");

    GroverArgs grover_args;
    CLI::App* grover_cmd = app.add_subcommand("grover", "Amplify one marked basis state");
    attach_grover_flags(*grover_cmd, grover_args);

    OrderArgs order_args;
    CLI::App* order_cmd = app.add_subcommand("order", "Find the order of x modulo N");
    attach_order_flags(*order_cmd, order_args);

    CLI::App* demo_cmd =
        app.add_subcommand("simplify-demo", "Show the rewriting passes at work");

    std::string dump_path;
    AdderArgs dump_adder_args;
    GroverArgs dump_grover_args;
    OrderArgs dump_order_args;
    CLI::App* dump_cmd =
        app.add_subcommand("dump", "Write an algorithm's byte-code stream to a file");
    dump_cmd->add_option("--out", dump_path, "Output file")->required();
    dump_cmd->require_subcommand(1);
    CLI::App* dump_adder_cmd = dump_cmd->add_subcommand("adder", "Dump the adder circuit");
    attach_adder_flags(*dump_adder_cmd, dump_adder_args);
    CLI::App* dump_grover_cmd = dump_cmd->add_subcommand("grover", "Dump the search circuit");
    attach_grover_flags(*dump_grover_cmd, dump_grover_args);
    CLI::App* dump_order_cmd = dump_cmd->add_subcommand("order", "Dump the order-finding circuit");
    attach_order_flags(*dump_order_cmd, dump_order_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (adder_cmd->parsed())
            return cmd_adder(global, adder_args);
        if (grover_cmd->parsed())
            return cmd_grover(global, grover_args);
        if (order_cmd->parsed())
            return cmd_order(global, order_args);
        if (demo_cmd->parsed())
            return cmd_simplify_demo();
        if (dump_cmd->parsed()) {
            std::string which = "order";
            if (dump_adder_cmd->parsed())
                which = "adder";
            else if (dump_grover_cmd->parsed())
                which = "grover";
            return cmd_dump(global, dump_path, which, dump_adder_args, dump_grover_args,
                            dump_order_args);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
