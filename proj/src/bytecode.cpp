#include "qlang/bytecode.hpp"

#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qlang {
namespace {

bool same_table(const std::shared_ptr<const OracleTable>& a,
                const std::shared_ptr<const OracleTable>& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

const char* opcode_name(Opcode op) {
    switch (op) {
        case Opcode::H: return "H";
        case Opcode::R: return "R";
        case Opcode::CR: return "CR";
        case Opcode::Oracle: return "ORACLE";
        case Opcode::Perm: return "PERM";
        case Opcode::PhaseOracle: return "PORACLE";
        case Opcode::Init: return "INIT";
        case Opcode::Measure: return "MEASURE";
    }
    return "?";
}

void write_locations(std::ostream& out, const std::vector<int>& locations) {
    for (int l : locations) out << ' ' << l;
}

[[noreturn]] void bad_line(const std::string& line, const std::string& why) {
    throw std::invalid_argument("byte-code parse: " + why + " in line \"" + line + "\"");
}

} // namespace

bool Instruction::operator==(const Instruction& other) const {
    return op == other.op && param == other.param && ctrl_count == other.ctrl_count &&
           id == other.id && locations == other.locations && bits == other.bits &&
           same_table(table, other.table);
}

bool ByteCodeProgram::operator==(const ByteCodeProgram& other) const {
    return instructions_ == other.instructions_;
}

std::pair<std::uint64_t, std::shared_ptr<const OracleTable>>
TableRegistry::intern(const OracleTable& table) {
    for (std::size_t i = 0; i < by_id_.size(); ++i)
        if (*by_id_[i] == table) return {i, by_id_[i]};
    by_id_.push_back(std::make_shared<const OracleTable>(table));
    return {by_id_.size() - 1, by_id_.back()};
}

std::shared_ptr<const OracleTable> TableRegistry::lookup(std::uint64_t id) const {
    if (id >= by_id_.size())
        throw std::out_of_range("TableRegistry: unknown table id " + std::to_string(id));
    return by_id_[id];
}

void dump(const ByteCodeProgram& program, std::ostream& out) {
    // Header: every distinct table once, in id order.
    std::map<std::uint64_t, std::shared_ptr<const OracleTable>> tables;
    for (const Instruction& ins : program.instructions())
        if (ins.table) tables.emplace(ins.id, ins.table);
    for (const auto& [tid, table] : tables) {
        out << "TABLE " << tid << std::hex;
        for (std::uint64_t row : table->rows) out << ' ' << row;
        out << std::dec << '\n';
    }

    for (const Instruction& ins : program.instructions()) {
        out << opcode_name(ins.op);
        switch (ins.op) {
            case Opcode::H:
                break;
            case Opcode::R:
            case Opcode::CR:
                out << ' ' << ins.param;
                break;
            case Opcode::Oracle:
                out << ' ' << ins.id << ' ' << ins.table->inputs << ' ' << ins.table->outputs
                    << ' ' << ins.ctrl_count;
                break;
            case Opcode::Perm:
            case Opcode::PhaseOracle:
                out << ' ' << ins.id << ' ' << ins.table->inputs << ' ' << ins.ctrl_count;
                break;
            case Opcode::Init:
                out << ' ' << ins.bits.to_string();
                break;
            case Opcode::Measure:
                out << ' ' << ins.id;
                break;
        }
        write_locations(out, ins.locations);
        out << '\n';
    }
}

std::string dump(const ByteCodeProgram& program) {
    std::ostringstream out;
    dump(program, out);
    return out.str();
}

ByteCodeProgram parse_program(const std::string& text) {
    ByteCodeProgram program;
    std::map<std::uint64_t, std::shared_ptr<const OracleTable>> tables;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string word;
        fields >> word;

        if (word == "TABLE") {
            std::uint64_t tid = 0;
            if (!(fields >> tid)) bad_line(line, "missing table id");
            auto table = std::make_shared<OracleTable>();
            fields >> std::hex;
            std::uint64_t row = 0;
            while (fields >> row) table->rows.push_back(row);
            // Kind and widths are recovered from the first instruction below.
            tables[tid] = table;
            continue;
        }

        Instruction ins;
        auto read_locations = [&] {
            int l = 0;
            while (fields >> l) ins.locations.push_back(l);
        };
        auto bind_table = [&](OracleTable::Kind kind, int inputs, int outputs) {
            auto it = tables.find(ins.id);
            if (it == tables.end()) bad_line(line, "unknown table id");
            // The header only stores rows; stamp the shape on first use.
            // Every real table has at least one input line, so inputs == 0
            // marks a header whose shape is still unknown.
            auto& stored = it->second;
            if (stored->inputs == 0) {
                auto patched = std::make_shared<OracleTable>(*stored);
                patched->kind = kind;
                patched->inputs = inputs;
                patched->outputs = outputs;
                stored = patched;
            }
            ins.table = stored;
        };

        if (word == "H") {
            ins.op = Opcode::H;
            read_locations();
        } else if (word == "R" || word == "CR") {
            ins.op = word == "R" ? Opcode::R : Opcode::CR;
            if (!(fields >> ins.param)) bad_line(line, "missing parameter");
            read_locations();
        } else if (word == "ORACLE") {
            ins.op = Opcode::Oracle;
            int n = 0, m = 0;
            if (!(fields >> ins.id >> n >> m >> ins.ctrl_count)) bad_line(line, "bad oracle head");
            read_locations();
            bind_table(OracleTable::Kind::Xor, n, m);
        } else if (word == "PERM") {
            ins.op = Opcode::Perm;
            int w = 0;
            if (!(fields >> ins.id >> w >> ins.ctrl_count)) bad_line(line, "bad perm head");
            read_locations();
            bind_table(OracleTable::Kind::Perm, w, 0);
        } else if (word == "PORACLE") {
            ins.op = Opcode::PhaseOracle;
            int n = 0;
            if (!(fields >> ins.id >> n >> ins.ctrl_count)) bad_line(line, "bad poracle head");
            read_locations();
            bind_table(OracleTable::Kind::Phase, n, 0);
        } else if (word == "INIT") {
            ins.op = Opcode::Init;
            std::string digits;
            if (!(fields >> digits)) bad_line(line, "missing init bits");
            ins.bits = BitSet::parse(digits);
            read_locations();
        } else if (word == "MEASURE") {
            ins.op = Opcode::Measure;
            if (!(fields >> ins.id)) bad_line(line, "missing measure id");
            read_locations();
        } else {
            bad_line(line, "unknown opcode '" + word + "'");
        }
        program.push(std::move(ins));
    }
    return program;
}

} // namespace qlang
