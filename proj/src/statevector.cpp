#include "xeb/statevector.hpp"

#include <cmath>
#include <string>

namespace xeb {

GateMatrix GateMatrix::identity(int d) {
    GateMatrix g(d);
    for (int i = 0; i < d; ++i) g.at(i, i) = Complex(1.0, 0.0);
    return g;
}

double GateMatrix::unitarity_defect() const {
    double worst = 0.0;
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            Complex s(0.0, 0.0);
            for (int k = 0; k < dim; ++k) s += std::conj(at(k, r)) * at(k, c);
            if (r == c) s -= 1.0;
            worst = std::max(worst, std::abs(s));
        }
    }
    return worst;
}

double GateMatrix::max_abs_imag() const {
    double worst = 0.0;
    for (const Complex& z : a) worst = std::max(worst, std::abs(z.imag()));
    return worst;
}

double Statevector::norm_sq() const {
    // Neumaier compensated accumulation; matters at n ~ 20+.
    double sum = 0.0, comp = 0.0;
    for (const Complex& z : amp) {
        double v = std::norm(z);
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    return sum + comp;
}

Statevector new_zero_state(int n, int max_n) {
    if (n < 1 || n > max_n) {
        throw CapacityError("qubit count " + std::to_string(n) + " outside [1, " +
                            std::to_string(max_n) + "]: state needs 2^" + std::to_string(n) +
                            " x 16 bytes of amplitudes");
    }
    Statevector s;
    s.n = n;
    s.amp.assign(std::size_t(1) << n, Complex(0.0, 0.0));
    s.amp[0] = Complex(1.0, 0.0);
    return s;
}

void apply_two_qubit_gate(Statevector& state, const GateMatrix& gate, int q) {
    if (gate.dim != 4) throw std::invalid_argument("two-qubit gate must be 4x4");
    if (q < 0 || q > state.n - 2)
        throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range for n=" +
                                    std::to_string(state.n));

    const std::size_t lo = std::size_t(1) << q;        // stride of qubit q
    const std::size_t hi = lo << 1;                    // stride of qubit q+1
    const std::size_t dim = state.dim();
    Complex* amp = state.amp.data();
    const Complex* g = gate.a.data();

    for (std::size_t base = 0; base < dim; base += (hi << 1)) {
        for (std::size_t off = 0; off < lo; ++off) {
            const std::size_t i00 = base + off;
            Complex* p0 = amp + i00;        // (q+1,q) = 00
            Complex* p1 = amp + i00 + lo;   // 01
            Complex* p2 = amp + i00 + hi;   // 10
            Complex* p3 = amp + i00 + hi + lo;  // 11
            const Complex v0 = *p0, v1 = *p1, v2 = *p2, v3 = *p3;
            *p0 = g[0] * v0 + g[1] * v1 + g[2] * v2 + g[3] * v3;
            *p1 = g[4] * v0 + g[5] * v1 + g[6] * v2 + g[7] * v3;
            *p2 = g[8] * v0 + g[9] * v1 + g[10] * v2 + g[11] * v3;
            *p3 = g[12] * v0 + g[13] * v1 + g[14] * v2 + g[15] * v3;
        }
    }
}

}  // namespace xeb
