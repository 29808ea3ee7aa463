#pragma once

#include <cstddef>

namespace spinqec {

// Execution policy for the dense kernels. Par and Seq produce bit-identical
// results: parallel loops only ever write disjoint elements and reductions
// stay serial, so Seq doubles as the reference implementation.
enum class Exec { Seq, Par };

Exec default_exec();
void set_default_exec(Exec e);

// Smallest amplitude count for which a Par kernel actually forks threads.
inline constexpr std::size_t par_grain = 4096;

}  // namespace spinqec
