#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>

#include "xeb/ensembles.hpp"

namespace xeb {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

GateMatrix matmul(const GateMatrix& lhs, const GateMatrix& rhs) {
    GateMatrix out(4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            Complex s(0.0, 0.0);
            for (int k = 0; k < 4; ++k) s += lhs.at(r, k) * rhs.at(k, c);
            out.at(r, c) = s;
        }
    return out;
}

// Global-phase canonicalization: rotate so the first entry of magnitude
// >= 1/2 becomes positive real. Clifford matrix entries are 0 or have
// magnitude in {1/2, 1/sqrt(2), 1}, so the 0.25 cut is unambiguous.
GateMatrix phase_canonical(GateMatrix m) {
    for (const Complex& z : m.a) {
        if (std::abs(z) > 0.25) {
            const Complex rot = std::conj(z) / std::abs(z);
            for (Complex& w : m.a) w *= rot;
            return m;
        }
    }
    throw std::logic_error("zero matrix in clifford closure");
}

// Entries land on a coarse lattice after canonicalization; rounding to
// 1/4096 swamps the ~1e-13 float noise from short generator products while
// separating genuinely distinct values by hundreds of lattice steps.
using Fingerprint = std::array<std::int32_t, 32>;

Fingerprint fingerprint(const GateMatrix& m) {
    Fingerprint f{};
    for (int i = 0; i < 16; ++i) {
        f[2 * i] = static_cast<std::int32_t>(std::llround(m.a[i].real() * 4096.0));
        f[2 * i + 1] = static_cast<std::int32_t>(std::llround(m.a[i].imag() * 4096.0));
    }
    return f;
}

std::vector<GateMatrix> build_table() {
    // Generators H and S on each wire plus CZ; tensor index convention is
    // (qubit 1, qubit 0) = (high, low), matching apply_two_qubit_gate.
    GateMatrix h_low(4), h_high(4), s_low(4), s_high(4), cz(4);
    // H on qubit 0: acts on the low bit within each high-bit block.
    for (int hb = 0; hb < 2; ++hb) {
        h_low.at(2 * hb + 0, 2 * hb + 0) = kInvSqrt2;
        h_low.at(2 * hb + 0, 2 * hb + 1) = kInvSqrt2;
        h_low.at(2 * hb + 1, 2 * hb + 0) = kInvSqrt2;
        h_low.at(2 * hb + 1, 2 * hb + 1) = -kInvSqrt2;
        s_low.at(2 * hb + 0, 2 * hb + 0) = 1.0;
        s_low.at(2 * hb + 1, 2 * hb + 1) = Complex(0.0, 1.0);
    }
    // H on qubit 1: acts on the high bit.
    for (int lb = 0; lb < 2; ++lb) {
        h_high.at(lb, lb) = kInvSqrt2;
        h_high.at(lb, 2 + lb) = kInvSqrt2;
        h_high.at(2 + lb, lb) = kInvSqrt2;
        h_high.at(2 + lb, 2 + lb) = -kInvSqrt2;
        s_high.at(lb, lb) = 1.0;
        s_high.at(2 + lb, 2 + lb) = Complex(0.0, 1.0);
    }
    for (int i = 0; i < 4; ++i) cz.at(i, i) = (i == 3) ? -1.0 : 1.0;

    const GateMatrix generators[5] = {h_low, h_high, s_low, s_high, cz};

    std::vector<GateMatrix> table;
    std::map<Fingerprint, int> seen;
    table.push_back(phase_canonical(GateMatrix::identity(4)));
    seen.emplace(fingerprint(table[0]), 0);

    // Breadth-first closure; discovery order is deterministic.
    for (std::size_t head = 0; head < table.size(); ++head) {
        const GateMatrix current = table[head];
        for (const GateMatrix& g : generators) {
            GateMatrix next = phase_canonical(matmul(g, current));
            const Fingerprint f = fingerprint(next);
            if (seen.emplace(f, static_cast<int>(table.size())).second)
                table.push_back(std::move(next));
        }
    }
    if (static_cast<int>(table.size()) != kTwoQubitCliffordOrder)
        throw std::logic_error("two-qubit Clifford closure produced " +
                               std::to_string(table.size()) + " elements, expected 11520");
    return table;
}

}  // namespace

const std::vector<GateMatrix>& two_qubit_clifford_table() {
    static const std::vector<GateMatrix> table = build_table();
    return table;
}

GateMatrix sample_clifford_two_qubit(RandomStream& stream) {
    const auto& table = two_qubit_clifford_table();
    return table[stream.uniform_below(table.size())];
}

}  // namespace xeb
