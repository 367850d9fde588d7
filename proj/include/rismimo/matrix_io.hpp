// SPDX-License-Identifier: Apache-2.0
//
// Text persistence for complex matrices:
//
//   rismimo-matrix 1
//   <rows> <cols>
//   re im re im ...        (one row of the matrix per line, row-major)
//
// Values are printed with %.17g so a save/load round trip is exact.

#ifndef RISMIMO_MATRIX_IO_HPP
#define RISMIMO_MATRIX_IO_HPP

#include <string>

#include "rismimo/types.hpp"

namespace rismimo {

void save_matrix(const std::string& path, const CMat& m);
CMat load_matrix(const std::string& path);

}  // namespace rismimo

#endif
