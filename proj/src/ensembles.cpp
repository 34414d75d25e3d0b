#include "xeb/ensembles.hpp"

#include <cmath>
#include <stdexcept>

namespace xeb {

std::string to_string(GateEnsemble kind) {
    switch (kind) {
        case GateEnsemble::HaarUnitary: return "haar-unitary";
        case GateEnsemble::HaarOrthogonal: return "haar-orthogonal";
        case GateEnsemble::Clifford: return "clifford";
        case GateEnsemble::Identity: return "identity";
    }
    return "?";
}

std::string to_string(Architecture arch) {
    return arch == Architecture::Brickwork ? "brickwork" : "coarse-grained";
}

GateEnsemble gate_ensemble_from_string(const std::string& s) {
    if (s == "haar-unitary") return GateEnsemble::HaarUnitary;
    if (s == "haar-orthogonal") return GateEnsemble::HaarOrthogonal;
    if (s == "clifford") return GateEnsemble::Clifford;
    if (s == "identity") return GateEnsemble::Identity;
    throw std::invalid_argument("unknown gate ensemble '" + s + "'");
}

Architecture architecture_from_string(const std::string& s) {
    if (s == "brickwork") return Architecture::Brickwork;
    if (s == "coarse-grained") return Architecture::CoarseGrained;
    throw std::invalid_argument("unknown architecture '" + s + "'");
}

namespace {

// Two-pass modified Gram-Schmidt. The second pass restores orthogonality to
// machine precision even for ill-conditioned Ginibre draws. Normalizing each
// column by the (positive real) norm is the triangular-diagonal phase fix.
GateMatrix orthonormalize(GateMatrix m) {
    const int d = m.dim;
    for (int c = 0; c < d; ++c) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < c; ++j) {
                Complex dot(0.0, 0.0);
                for (int r = 0; r < d; ++r) dot += std::conj(m.at(r, j)) * m.at(r, c);
                for (int r = 0; r < d; ++r) m.at(r, c) -= dot * m.at(r, j);
            }
        }
        double nrm = 0.0;
        for (int r = 0; r < d; ++r) nrm += std::norm(m.at(r, c));
        nrm = std::sqrt(nrm);
        for (int r = 0; r < d; ++r) m.at(r, c) /= nrm;
    }
    return m;
}

}  // namespace

GateMatrix sample_haar_unitary(int d, RandomStream& stream) {
    if (d < 2 || d > 64) throw std::invalid_argument("haar unitary dimension must be in [2, 64]");
    GateMatrix m(d);
    for (Complex& z : m.a) {
        const double re = stream.gaussian();
        const double im = stream.gaussian();
        z = Complex(re, im);
    }
    return orthonormalize(std::move(m));
}

GateMatrix sample_haar_orthogonal(int d, RandomStream& stream) {
    if (d < 2 || d > 64)
        throw std::invalid_argument("haar orthogonal dimension must be in [2, 64]");
    GateMatrix m(d);
    for (Complex& z : m.a) z = Complex(stream.gaussian(), 0.0);
    return orthonormalize(std::move(m));
}

GateMatrix sample_haar_su4(RandomStream& stream) { return sample_haar_unitary(4, stream); }

GateMatrix sample_haar_orthogonal4(RandomStream& stream) {
    return sample_haar_orthogonal(4, stream);
}

GateMatrix sample_gate(GateEnsemble kind, RandomStream& stream) {
    switch (kind) {
        case GateEnsemble::HaarUnitary: return sample_haar_su4(stream);
        case GateEnsemble::HaarOrthogonal: return sample_haar_orthogonal4(stream);
        case GateEnsemble::Clifford: return sample_clifford_two_qubit(stream);
        case GateEnsemble::Identity: return GateMatrix::identity(4);
    }
    throw std::logic_error("unreachable");
}

namespace {

// In-block brickwork layers appended into circuit.layers[layer_base + l].
// Local layer parity: even layers pair (start, start+1), (start+2, ...), odd
// layers shift by one, always staying inside [start, start+size).
void append_block_brickwork(CircuitInstance& circuit, const SeedPlan& plan,
                            std::uint64_t& gate_counter, GateEnsemble kind, int start, int size,
                            std::size_t layer_base, int layers) {
    for (int l = 0; l < layers; ++l) {
        auto& layer = circuit.layers[layer_base + static_cast<std::size_t>(l)];
        for (int q = start + (l % 2); q + 1 < start + size; q += 2) {
            RandomStream stream = plan.gate_stream(gate_counter++);
            layer.push_back(GateOp{q, sample_gate(kind, stream)});
        }
    }
}

}  // namespace

CircuitInstance build_brickwork(const EnsembleSpec& spec, const SeedPlan& plan) {
    if (spec.n < 2 || spec.n % 2 != 0)
        throw std::invalid_argument("brickwork requires even n >= 2, got " +
                                    std::to_string(spec.n));
    if (spec.depth < 0) throw std::invalid_argument("depth must be >= 0");

    CircuitInstance circuit;
    circuit.n = spec.n;
    circuit.layers.resize(static_cast<std::size_t>(spec.depth));
    std::uint64_t gate_counter = 0;
    append_block_brickwork(circuit, plan, gate_counter, spec.kind, 0, spec.n, 0, spec.depth);
    return circuit;
}

int coarse_block_size(int n, int t, double epsilon) {
    if (t < 1) throw std::invalid_argument("design order t must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("epsilon must be in (0, 1)");
    const double raw = 2.0 * std::log2(double(n) * double(t) / epsilon);
    int xi = static_cast<int>(std::ceil(raw));
    if (xi % 2 != 0) ++xi;
    if (xi < 2) xi = 2;
    if (xi > n) xi = n;
    return xi;
}

CircuitInstance build_coarse_grained(const EnsembleSpec& spec, const SeedPlan& plan) {
    if (spec.n < 2 || spec.n % 2 != 0)
        throw std::invalid_argument("coarse-grained requires even n >= 2");
    if (spec.block_depth < 0) throw std::invalid_argument("block_depth must be >= 0");
    const int xi = coarse_block_size(spec.n, spec.t, spec.epsilon);

    const int stage1 = (spec.block_depth + 1) / 2;
    const int stage2 = spec.block_depth / 2;

    CircuitInstance circuit;
    circuit.n = spec.n;
    circuit.layers.resize(static_cast<std::size_t>(stage1 + stage2));
    std::uint64_t gate_counter = 0;

    // Stage 1: contiguous blocks [0,xi), [xi,2xi), ...; remainder keeps its own
    // (smaller) block.
    for (int start = 0; start < spec.n; start += xi) {
        const int size = std::min(xi, spec.n - start);
        append_block_brickwork(circuit, plan, gate_counter, spec.kind, start, size, 0, stage1);
    }
    // Stage 2: same layout shifted by xi/2; the first xi/2 wires form a
    // remainder block as well.
    const int shift = xi / 2;
    for (int start = 0; start < spec.n;) {
        const int size = start == 0 ? std::min(shift, spec.n)
                                    : std::min(xi, spec.n - start);
        append_block_brickwork(circuit, plan, gate_counter, spec.kind, start, size,
                               static_cast<std::size_t>(stage1), stage2);
        start += size;
    }
    return circuit;
}

CircuitInstance build_circuit(const EnsembleSpec& spec, const SeedPlan& plan) {
    return spec.architecture == Architecture::Brickwork ? build_brickwork(spec, plan)
                                                        : build_coarse_grained(spec, plan);
}

long required_depth_4design(int n, double epsilon) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("epsilon must be in (0, 1)");
    return static_cast<long>(std::ceil(16.0 * (4.0 * n + std::log2(1.0 / epsilon))));
}

long required_depth_tdesign(int n, int t, double epsilon, double constant) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (t < 2) throw std::invalid_argument("t must be >= 2");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("epsilon must be in (0, 1)");
    if (!(constant > 0.0)) throw std::invalid_argument("constant must be > 0");
    const double depth =
        constant * std::pow(std::log2(double(t)), 7.0) * (2.0 * n * t + std::log2(1.0 / epsilon));
    return static_cast<long>(std::ceil(depth));
}

long required_depth_coarse(int n, int t, double epsilon, double constant) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (t < 2) throw std::invalid_argument("t must be >= 2");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("epsilon must be in (0, 1)");
    if (!(constant > 0.0)) throw std::invalid_argument("constant must be > 0");
    const double depth = constant * std::pow(std::log2(double(t)), 7.0) * double(t) *
                         std::log2(double(n) * double(t) / epsilon);
    return static_cast<long>(std::ceil(depth));
}

}  // namespace xeb
