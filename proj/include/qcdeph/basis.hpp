#pragma once

#include <array>

namespace qcdeph {

// Two-qudit computational basis used everywhere in the library:
//
//   index  0     1     2     3     4     5
//   state  |00>  |01>  |02>  |10>  |11>  |12>
//
// The first label is the qubit A, the second the qutrit B, so the flat index
// of |a b> is a * kQutritDim + b. Every kron, partial trace and partial
// transpose relies on this ordering.
inline constexpr int kQubitDim = 2;
inline constexpr int kQutritDim = 3;
inline constexpr int kDim = kQubitDim * kQutritDim;

constexpr int basis_index(int qubit, int qutrit) { return qubit * kQutritDim + qutrit; }

}  // namespace qcdeph
