#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace kitaev {

using cplx = std::complex<double>;
using StateVector = Eigen::VectorXcd;

enum class Component : std::uint8_t { x = 0, y = 1, z = 2 };
enum class Sublattice : std::uint8_t { A = 0, B = 1 };

inline constexpr std::array<Component, 3> kAllComponents{Component::x, Component::y, Component::z};

inline char to_char(Component c) { return "xyz"[static_cast<int>(c)]; }
inline char to_char(Sublattice s) { return s == Sublattice::A ? 'A' : 'B'; }

inline Component component_from_char(char c) {
    switch (c) {
    case 'x': case 'X': return Component::x;
    case 'y': case 'Y': return Component::y;
    case 'z': case 'Z': return Component::z;
    default: throw std::invalid_argument(std::string("unknown Pauli component '") + c + "'");
    }
}

/// The component that is neither a nor b (a != b).
inline Component third_component(Component a, Component b) {
    return static_cast<Component>(3 - static_cast<int>(a) - static_cast<int>(b));
}

/// Single-site eigenvector of sigma^c with eigenvalue `sign` (+1/-1), written in the
/// sigma^z basis (|up>, |down>). Phase convention: first nonzero entry is real positive.
inline std::array<cplx, 2> eigenvector(Component c, int sign) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (c) {
    case Component::x: return {cplx{r, 0.0}, cplx{sign * r, 0.0}};
    case Component::y: return {cplx{r, 0.0}, cplx{0.0, sign * r}};
    case Component::z:
    default:
        return sign > 0 ? std::array<cplx, 2>{cplx{1.0, 0.0}, cplx{0.0, 0.0}}
                        : std::array<cplx, 2>{cplx{0.0, 0.0}, cplx{1.0, 0.0}};
    }
}

/// 2x2 Pauli matrix in the sigma^z basis.
inline Eigen::Matrix2cd pauli_matrix(Component c) {
    Eigen::Matrix2cd m;
    const cplx I{0.0, 1.0};
    switch (c) {
    case Component::x: m << 0.0, 1.0, 1.0, 0.0; break;
    case Component::y: m << 0.0, -I, I, 0.0; break;
    case Component::z: m << 1.0, 0.0, 0.0, -1.0; break;
    }
    return m;
}

/// <e(label, sign_out)| sigma^op |e(label, sign_in)>.
inline cplx single_site_element(Component label, int sign_out, Component op, int sign_in) {
    const auto bra = eigenvector(label, sign_out);
    const auto ket = eigenvector(label, sign_in);
    const Eigen::Matrix2cd m = pauli_matrix(op);
    cplx acc{0.0, 0.0};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) acc += std::conj(bra[r]) * m(r, c) * ket[c];
    return acc;
}

}  // namespace kitaev
