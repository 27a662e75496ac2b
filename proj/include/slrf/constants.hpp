#ifndef SLRF_CONSTANTS_HPP
#define SLRF_CONSTANTS_HPP

namespace slrf {
namespace constants {

/// Relative tolerance for numerical rank decisions.
inline constexpr double kRankTol = 1e-8;

/// Gate on the unitary extension principle residual; solvers reject
/// filter stacks above it.
inline constexpr double kUepGate = 1e-8;

/// Orthonormality gate on right singular vectors fed to filter
/// construction (max deviation of the Gram matrix from identity).
inline constexpr double kGramGate = 1e-8;

/// Diagonal floor added to the per-frequency blocks of the quadratic
/// subproblems. The unmasked zero frequency would otherwise be singular.
inline constexpr double kTikhonovFloor = 1e-10;

/// Laplacian-of-Gaussian kernel for the high frequency error norm.
inline constexpr int kHfenKernelSize = 15;
inline constexpr double kHfenSigma = 1.5;

/// Structural similarity: Gaussian window and stabilizers, dynamic range 1.
inline constexpr int kSsimWindowSize = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr double kSsimK1 = 0.01;
inline constexpr double kSsimK2 = 0.03;
inline constexpr double kSsimDynamicRange = 1.0;

/// Variable density sampling defaults.
inline constexpr double kMaskDecayPower = 2.0;
inline constexpr int kMaskCenterRadius = 4;

} // namespace constants
} // namespace slrf

#endif // SLRF_CONSTANTS_HPP
