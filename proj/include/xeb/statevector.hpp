#ifndef XEB_STATEVECTOR_HPP
#define XEB_STATEVECTOR_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace xeb {

using Complex = std::complex<double>;

inline constexpr int kDefaultMaxQubits = 26;  // 2^26 amplitudes = 1 GiB

// Requested state would not fit the configured amplitude budget.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dense dim x dim complex matrix, row-major. dim = 4 for circuit gates, up to
// 64 for the small-dimension Haar oracle.
struct GateMatrix {
    int dim = 0;
    std::vector<Complex> a;

    GateMatrix() = default;
    explicit GateMatrix(int d) : dim(d), a(static_cast<std::size_t>(d) * d) {}

    Complex& at(int r, int c) { return a[static_cast<std::size_t>(r) * dim + c]; }
    const Complex& at(int r, int c) const { return a[static_cast<std::size_t>(r) * dim + c]; }

    static GateMatrix identity(int d);

    // max_{ij} |(G^dag G - I)_{ij}|
    double unitarity_defect() const;
    double max_abs_imag() const;
};

// 2^n complex amplitudes; qubit i is bit i of the basis-state index (qubit 0
// least significant).
struct Statevector {
    int n = 0;
    std::vector<Complex> amp;

    std::size_t dim() const { return amp.size(); }
    double norm_sq() const;  // compensated sum of |amp|^2
};

// |0...0> on n qubits. Throws CapacityError outside [1, max_n], naming the
// 2^n * 16 byte requirement.
Statevector new_zero_state(int n, int max_n = kDefaultMaxQubits);

// Applies a 4x4 gate to the adjacent wire pair (q, q+1), in place; identity on
// all other wires. The gate's 4-dimensional index orders (qubit q+1, qubit q)
// as (high bit, low bit). No scratch buffer: extra memory is O(1).
void apply_two_qubit_gate(Statevector& state, const GateMatrix& gate, int q);

}  // namespace xeb

#endif
