#pragma once

// Reference constants for the two-variable Gibbs example at beta = 1.35,
// kappa = 5/4: mixture weights p(n), scales a(n) and factory minimum
// consumption (0 where no factory is needed), n = 1..20.

#include <array>
#include <cstdint>

namespace testing {

inline constexpr std::array<double, 20> kGibbsP{0.259, 0.192, 0.142, 0.105, 0.078, 0.058, 0.043,
                                                0.032, 0.023, 0.017, 0.013, 0.010, 0.007, 0.005,
                                                0.004, 0.003, 0.002, 0.002, 0.001, 0.001};
inline constexpr std::array<double, 20> kGibbsA{0.08, 0.11, 0.14, 0.19, 0.26, 0.35, 0.47,  0.64,  0.86,  1.16,
                                                1.57, 2.12, 2.87, 3.87, 5.22, 7.05, 9.52, 12.85, 17.35, 23.42};
inline constexpr std::array<std::uint64_t, 20> kGibbsMin{0,   0,   0,    0,    0,    0,    0,    0,    0,    128,
                                                         128, 256, 512, 1024, 2048, 4096, 8192, 8192, 16384, 32768};

} // namespace testing
