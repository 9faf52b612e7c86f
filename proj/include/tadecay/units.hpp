#pragma once

namespace tadecay {

// Reduced Planck constant in eV*s.
inline constexpr double kHbarEvSeconds = 6.582119569e-16;

struct Units {
    double hbar = 1.0;

    static constexpr Units natural() { return Units{1.0}; }
    static constexpr Units electron_volt_seconds() { return Units{kHbarEvSeconds}; }
};

} // namespace tadecay
