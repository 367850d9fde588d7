// SPDX-License-Identifier: Apache-2.0

#include "rismimo/matrix_kernel.hpp"

#include <cmath>
#include <sstream>

namespace rismimo {

namespace {

void require_square(const CMat& a, const char* who) {
    if (a.rows() != a.cols()) {
        std::ostringstream os;
        os << who << ": expected square matrix, got " << a.rows() << "x" << a.cols();
        throw NumericalError(os.str());
    }
}

}  // namespace

double hermiticity_defect(const CMat& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMat& a, double tol) {
    return a.rows() == a.cols() && hermiticity_defect(a) <= tol;
}

CMat hermitian_sqrt(const CMat& a) {
    require_square(a, "hermitian_sqrt");
    const double defect = hermiticity_defect(a);
    // Scale the absolute tolerance with the matrix magnitude so that large,
    // physically scaled inputs (noise powers ~1e-13, gains ~1e12) pass.
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if (defect > kHermitianTol * scale) {
        std::ostringstream os;
        os << "hermitian_sqrt: input not Hermitian, defect " << defect;
        throw NumericalError(os.str());
    }
    Eigen::SelfAdjointEigenSolver<CMat> eig((a + a.adjoint()) / 2.0);
    if (eig.info() != Eigen::Success) throw NumericalError("hermitian_sqrt: eigendecomposition failed");
    RVec lam = eig.eigenvalues();
    const double lmax = lam.size() ? lam.maxCoeff() : 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam[i] < 0.0) {
            if (lam[i] < -1e-10 * std::max(lmax, 0.0) - 1e-300) {
                std::ostringstream os;
                os << "hermitian_sqrt: input indefinite (lambda_min " << lam[i]
                   << ", lambda_max " << lmax << ")";
                throw NumericalError(os.str());
            }
            lam[i] = 0.0;
        }
    }
    return eig.eigenvectors() * lam.cwiseSqrt().asDiagonal() * eig.eigenvectors().adjoint();
}

double logdet_hpd(const CMat& a) {
    require_square(a, "logdet_hpd");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if (hermiticity_defect(a) > kHermitianTol * scale) {
        throw NumericalError("logdet_hpd: input not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMat> eig((a + a.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw NumericalError("logdet_hpd: eigendecomposition failed");
    const RVec& lam = eig.eigenvalues();
    const double lmax = lam.maxCoeff();
    const double lmin = lam.minCoeff();
    if (lmin <= 0.0 || lmin <= 1e-300 * lmax) {
        std::ostringstream os;
        os << "logdet_hpd: input singular or indefinite (lambda_min " << lmin
           << ", lambda_max " << lmax << ", cond " << (lmin > 0 ? lmax / lmin : INFINITY) << ")";
        throw NumericalError(os.str());
    }
    double acc = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) acc += std::log(lam[i]);
    return acc;
}

Complex logdet_general(const CMat& a) {
    require_square(a, "logdet_general");
    Eigen::PartialPivLU<CMat> lu(a);
    Complex acc = 0.0;
    const auto& diag = lu.matrixLU().diagonal();
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        const Complex d = diag[i];
        if (d == Complex(0.0, 0.0)) throw NumericalError("logdet_general: singular matrix");
        acc += std::log(d);
    }
    // Permutation determinant is +/-1; log(-1) = j*pi.
    if (lu.permutationP().determinant() < 0) acc += Complex(0.0, M_PI);
    return acc;
}

double logdet_real(const CMat& a, const char* label) {
    const Complex ld = logdet_general(a);
    // Each pivot contributes its principal argument; a real positive
    // determinant leaves an integer number of full turns.
    const double folded = std::remainder(ld.imag(), 2.0 * M_PI);
    if (std::abs(folded) > 1e-8) {
        std::ostringstream os;
        os << "logdet of " << label << ": imaginary part " << folded
           << " exceeds tolerance (value should be real)";
        throw NumericalError(os.str());
    }
    return ld.real();
}

namespace {

Eigen::PartialPivLU<CMat> lu_checked(const CMat& a, const char* label) {
    Eigen::PartialPivLU<CMat> lu(a);
    const auto& diag = lu.matrixLU().diagonal();
    double pmin = INFINITY, pmax = 0.0;
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        const double m = std::abs(diag[i]);
        pmin = std::min(pmin, m);
        pmax = std::max(pmax, m);
    }
    if (!(pmin > 0.0) || pmin <= 1e-14 * pmax) {
        std::ostringstream os;
        os << "solve: matrix " << label << " numerically rank-deficient (smallest pivot "
           << pmin << ", largest " << pmax << ")";
        throw NumericalError(os.str());
    }
    return lu;
}

}  // namespace

CMat solve_general(const CMat& a, const CMat& b, const char* label) {
    require_square(a, "solve_general");
    return lu_checked(a, label).solve(b);
}

CMat solve_adjoint(const CMat& a, const CMat& b, const char* label) {
    require_square(a, "solve_adjoint");
    return lu_checked(CMat(a.adjoint()), label).solve(b);
}

namespace {

CMat eigen_power(const CMat& a, const char* label, bool inverse) {
    Eigen::ComplexEigenSolver<CMat> eig(a, /*computeEigenvectors=*/true);
    if (eig.info() != Eigen::Success) {
        std::ostringstream os;
        os << "principal root of " << label << ": eigendecomposition failed";
        throw NumericalError(os.str());
    }
    CVec lam = eig.eigenvalues();
    const double lscale = lam.cwiseAbs().maxCoeff();
    CVec mapped(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        Complex v = lam[i];
        if (v.real() <= 0.0) {
            // The arguments are similar to Hermitian PSD matrices; a real part
            // that is genuinely negative means the solve step went bad.
            if (v.real() < -1e-9 * std::max(lscale, 1e-300) || (inverse && std::abs(v) <= 1e-14 * lscale)) {
                std::ostringstream os;
                os << "principal root of " << label << ": eigenvalue " << v.real()
                   << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag())
                   << "j has nonpositive real part";
                throw NumericalError(os.str());
            }
            // Roundoff-level negative real part on a (near) zero eigenvalue.
            if (!inverse) {
                mapped[i] = Complex(0.0, 0.0);
                continue;
            }
        }
        const Complex r = std::sqrt(v);
        mapped[i] = inverse ? 1.0 / r : r;
    }
    const CMat& v = eig.eigenvectors();
    return v * mapped.asDiagonal() * solve_general(v, CMat::Identity(v.rows(), v.cols()), label);
}

}  // namespace

CMat principal_sqrt(const CMat& a, const char* label) {
    require_square(a, "principal_sqrt");
    if (a.cwiseAbs().maxCoeff() == 0.0) return CMat::Zero(a.rows(), a.cols());
    return eigen_power(a, label, /*inverse=*/false);
}

CMat principal_inv_sqrt(const CMat& a, const char* label) {
    require_square(a, "principal_inv_sqrt");
    return eigen_power(a, label, /*inverse=*/true);
}

}  // namespace rismimo
