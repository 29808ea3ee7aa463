#pragma once

#include <complex>

namespace spinqec {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

}  // namespace spinqec
