#ifndef XEB_CIRCUIT_HPP
#define XEB_CIRCUIT_HPP

#include <vector>

#include "xeb/statevector.hpp"

namespace xeb {

// One two-qubit gate on wires (q, q+1).
struct GateOp {
    int q = 0;
    GateMatrix gate;
};

// Ordered layers of nearest-neighbor gates. depth = number of layers.
struct CircuitInstance {
    int n = 0;
    std::vector<std::vector<GateOp>> layers;

    int depth() const { return static_cast<int>(layers.size()); }
    std::size_t gate_count() const;

    // Enforces: within one layer no qubit appears in two pairs, every q in
    // [0, n-2], every gate 4x4. Throws std::invalid_argument.
    void validate() const;
};

// Applies all layers in order to |0...0>.
Statevector run_circuit(const CircuitInstance& circuit, int max_n = kDefaultMaxQubits);

}  // namespace xeb

#endif
