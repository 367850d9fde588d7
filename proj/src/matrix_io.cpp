// SPDX-License-Identifier: Apache-2.0

#include "rismimo/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace rismimo {

void save_matrix(const std::string& path, const CMat& m) {
    std::ofstream out(path);
    if (!out) throw NumericalError("save_matrix: cannot open " + path);
    out << "rismimo-matrix 1\n" << m.rows() << " " << m.cols() << "\n";
    char buf[64];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g %.17g", m(i, j).real(), m(i, j).imag());
            out << buf << (j + 1 < m.cols() ? " " : "");
        }
        out << "\n";
    }
    if (!out) throw NumericalError("save_matrix: write failed for " + path);
}

CMat load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw NumericalError("load_matrix: cannot open " + path);
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "rismimo-matrix" || version != 1) {
        throw NumericalError("load_matrix: " + path + " is not a rismimo-matrix v1 file");
    }
    Eigen::Index rows = 0, cols = 0;
    in >> rows >> cols;
    if (!in || rows < 1 || cols < 1) throw NumericalError("load_matrix: bad dimensions in " + path);
    CMat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            double re = 0.0, im = 0.0;
            if (!(in >> re >> im)) throw NumericalError("load_matrix: truncated data in " + path);
            m(i, j) = Complex(re, im);
        }
    }
    return m;
}

}  // namespace rismimo
