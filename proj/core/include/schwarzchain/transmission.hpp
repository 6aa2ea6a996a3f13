#pragma once

namespace schwarzchain {

/// Data exchanged across interior interfaces.
///
/// Dirichlet traces pass solution values (the parallel Schwarz method).
/// Robin traces pass p*u - du/dx on left interfaces and p*u + du/dx on right
/// interfaces with p > 0 (the optimized variant).  The outer ends of the
/// chain always carry homogeneous Dirichlet conditions regardless of the
/// transmission choice.
struct Transmission {
    enum class Kind { dirichlet, robin };

    Kind kind = Kind::dirichlet;
    double p = 0.0;

    static Transmission dirichlet() { return {Kind::dirichlet, 0.0}; }
    static Transmission robin(double p);

    bool is_robin() const { return kind == Kind::robin; }
};

} // namespace schwarzchain
