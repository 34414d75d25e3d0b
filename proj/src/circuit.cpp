#include "xeb/circuit.hpp"

#include <string>

namespace xeb {

std::size_t CircuitInstance::gate_count() const {
    std::size_t c = 0;
    for (const auto& layer : layers) c += layer.size();
    return c;
}

void CircuitInstance::validate() const {
    for (std::size_t li = 0; li < layers.size(); ++li) {
        std::vector<bool> used(static_cast<std::size_t>(n), false);
        for (const GateOp& op : layers[li]) {
            if (op.q < 0 || op.q > n - 2)
                throw std::invalid_argument("layer " + std::to_string(li) + ": qubit index " +
                                            std::to_string(op.q) + " out of range");
            if (op.gate.dim != 4)
                throw std::invalid_argument("layer " + std::to_string(li) +
                                            ": gate is not 4x4");
            if (used[op.q] || used[op.q + 1])
                throw std::invalid_argument("layer " + std::to_string(li) + ": qubit " +
                                            std::to_string(op.q) + " or " +
                                            std::to_string(op.q + 1) + " used twice");
            used[op.q] = used[op.q + 1] = true;
        }
    }
}

Statevector run_circuit(const CircuitInstance& circuit, int max_n) {
    Statevector state = new_zero_state(circuit.n, max_n);
    for (const auto& layer : circuit.layers)
        for (const GateOp& op : layer) apply_two_qubit_gate(state, op.gate, op.q);
    return state;
}

}  // namespace xeb
