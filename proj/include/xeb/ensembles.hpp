#ifndef XEB_ENSEMBLES_HPP
#define XEB_ENSEMBLES_HPP

#include <cstdint>
#include <string>

#include "xeb/circuit.hpp"
#include "xeb/rng.hpp"

namespace xeb {

enum class GateEnsemble { HaarUnitary, HaarOrthogonal, Clifford, Identity };
enum class Architecture { Brickwork, CoarseGrained };

std::string to_string(GateEnsemble kind);
std::string to_string(Architecture arch);
GateEnsemble gate_ensemble_from_string(const std::string& s);
Architecture architecture_from_string(const std::string& s);

// Descriptor of a circuit ensemble. t/epsilon/block_depth only matter for the
// coarse-grained architecture.
struct EnsembleSpec {
    GateEnsemble kind = GateEnsemble::HaarUnitary;
    Architecture architecture = Architecture::Brickwork;
    int n = 0;
    int depth = 0;
    int t = 2;
    double epsilon = 0.0625;
    int block_depth = 0;
};

// Haar-distributed d x d unitary, 2 <= d <= 64: fill with standard complex
// Gaussians, orthonormalize (two-pass modified Gram-Schmidt), keeping the
// triangular factor's diagonal positive real, which is exactly the column
// phase correction that makes the output Haar.
GateMatrix sample_haar_unitary(int d, RandomStream& stream);

// Same construction over the reals: Haar on the orthogonal group O(d).
GateMatrix sample_haar_orthogonal(int d, RandomStream& stream);

GateMatrix sample_haar_su4(RandomStream& stream);
GateMatrix sample_haar_orthogonal4(RandomStream& stream);

// Uniformly random element of the two-qubit Clifford group (order 11520 up to
// global phase); O(1) per draw from the enumerated group table.
GateMatrix sample_clifford_two_qubit(RandomStream& stream);
inline constexpr int kTwoQubitCliffordOrder = 11520;

// The full enumerated table, phase-canonical, in deterministic closure order.
// Built once on first use.
const std::vector<GateMatrix>& two_qubit_clifford_table();

GateMatrix sample_gate(GateEnsemble kind, RandomStream& stream);

// Brickwork per the alternating layout: layer 0 on pairs (0,1),(2,3),...;
// layer 1 on (1,2),(3,4),...; open boundaries. n must be even. Every gate is
// freshly sampled via the plan's per-gate counter streams.
CircuitInstance build_brickwork(const EnsembleSpec& spec, const SeedPlan& plan);

// Block size xi = 2*log2(n*t/epsilon), rounded up to the nearest even
// integer, clamped to [2, n].
int coarse_block_size(int n, int t, double epsilon);

// Two-stage coarse-grained brickwork: independent in-block brickwork circuits
// on contiguous blocks of size xi, then the same on blocks shifted by xi/2;
// boundary remainders smaller than xi form their own block. No gate crosses a
// block boundary within a stage. Stage depths split block_depth as
// ceil/floor of block_depth/2.
CircuitInstance build_coarse_grained(const EnsembleSpec& spec, const SeedPlan& plan);

CircuitInstance build_circuit(const EnsembleSpec& spec, const SeedPlan& plan);

// ceil(16 (4n + log2(1/epsilon))): brickwork depth sufficient for an
// epsilon-approximate unitary 4-design.
long required_depth_4design(int n, double epsilon);

// ceil(constant * log2(t)^7 * (2nt + log2(1/epsilon))). The hidden constant is
// caller-supplied; defaults are illustrative only.
long required_depth_tdesign(int n, int t, double epsilon, double constant = 1.0);

// ceil(constant * log2(t)^7 * t * log2(n t / epsilon)) for the coarse-grained
// ensemble. Same caveat on the constant.
long required_depth_coarse(int n, int t, double epsilon, double constant = 1.0);

}  // namespace xeb

#endif
