// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "rismimo/matrix_kernel.hpp"
#include "support.hpp"

using namespace rismimo;
using testsupport::random_complex;
using testsupport::random_psd;

TEST_CASE("hermitian_sqrt on identity and diagonal inputs") {
    CHECK(testsupport::max_abs_diff(hermitian_sqrt(CMat::Identity(4, 4)), CMat::Identity(4, 4)) <
          1e-14);
    CMat d = CMat::Zero(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    const CMat s = hermitian_sqrt(d);
    CHECK(std::abs(s(0, 0).real() - 2.0) < 1e-14);
    CHECK(std::abs(s(1, 1).real() - 3.0) < 1e-14);
    CHECK(std::abs(s(0, 1)) < 1e-14);
}

TEST_CASE("hermitian_sqrt reconstructs random PSD inputs") {
    RngStream s(3, StreamTag::kTest, 0);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 2 + trial % 4;
        const CMat b = random_complex(n, n, s);
        const CMat a = b * b.adjoint();
        const CMat root = hermitian_sqrt(a);
        CHECK((root * root.adjoint() - a).norm() / a.norm() < 1e-10);
        CHECK(hermiticity_defect(root) < 1e-12 * a.norm());
    }
}

TEST_CASE("hermitian_sqrt rejects non-Hermitian input") {
    CMat a = CMat::Identity(3, 3);
    a(0, 1) = Complex(0.5, 0.5);
    CHECK_THROWS_AS((void)hermitian_sqrt(a), NumericalError);
}

TEST_CASE("hermitian_sqrt handles rank-deficient input") {
    RngStream s(4, StreamTag::kTest, 0);
    const CMat v = random_complex(3, 1, s);
    CMat a = v * v.adjoint();
    a = (a + a.adjoint()) / 2.0;
    const CMat root = hermitian_sqrt(a);
    CHECK((root * root.adjoint() - a).norm() <= 1e-10 * std::max(1.0, a.norm()));
}

TEST_CASE("logdet_hpd basics") {
    CHECK(logdet_hpd(CMat::Identity(8, 8)) == doctest::Approx(0.0).epsilon(1e-14));
    CMat d = CMat::Zero(2, 2);
    d(0, 0) = std::exp(1.0);
    d(1, 1) = std::exp(2.0);
    CHECK(logdet_hpd(d) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("logdet_hpd matches the eigenvalue oracle") {
    RngStream s(5, StreamTag::kTest, 0);
    const CMat a = random_psd(5, s, 7.0) + 0.1 * CMat::Identity(5, 5);
    Eigen::SelfAdjointEigenSolver<CMat> eig(a);
    double expect = 0.0;
    for (int i = 0; i < 5; ++i) expect += std::log(eig.eigenvalues()[i]);
    CHECK(std::abs(logdet_hpd(a) - expect) < 1e-10);
}

TEST_CASE("logdet_hpd scaling identity") {
    RngStream s(6, StreamTag::kTest, 0);
    const CMat a = random_psd(4, s, 6.0) + 0.2 * CMat::Identity(4, 4);
    for (double c : {0.3, 2.0, 1e6}) {
        CHECK(std::abs(logdet_hpd(CMat(c * a)) - (logdet_hpd(a) + 4 * std::log(c))) < 1e-9);
    }
}

TEST_CASE("logdet_hpd rejects indefinite and singular inputs") {
    CMat a = CMat::Identity(3, 3);
    a(2, 2) = -1.0;
    CHECK_THROWS_WITH_AS((void)logdet_hpd(a), doctest::Contains("lambda_min"), NumericalError);
    CMat z = CMat::Zero(2, 2);
    CHECK_THROWS_AS((void)logdet_hpd(z), NumericalError);
}

TEST_CASE("solve_general trivial and residual checks") {
    RngStream s(7, StreamTag::kTest, 0);
    const CMat b = random_complex(3, 2, s);
    CHECK(testsupport::max_abs_diff(solve_general(CMat::Identity(3, 3), b), b) < 1e-14);
    CHECK(testsupport::max_abs_diff(solve_general(CMat(2.0 * CMat::Identity(3, 3)),
                                                  CMat(CMat::Identity(3, 3))),
                                    CMat(0.5 * CMat::Identity(3, 3))) < 1e-14);

    const CMat a = random_complex(6, 6, s) + 3.0 * CMat::Identity(6, 6);
    const CMat rhs = random_complex(6, 4, s);
    const CMat x = solve_general(a, rhs);
    CHECK((a * x - rhs).norm() / rhs.norm() < 1e-10);
    const CMat y = solve_adjoint(a, rhs);
    CHECK((a.adjoint() * y - rhs).norm() / rhs.norm() < 1e-10);
}

TEST_CASE("solve_general rejects rank-deficient input with pivot diagnostic") {
    CMat a = CMat::Zero(3, 3);
    a(0, 0) = 1.0;
    a(1, 1) = 1.0;  // third row/column zero
    CHECK_THROWS_WITH_AS((void)solve_general(a, CMat(CMat::Identity(3, 3)), "Phi1"),
                         doctest::Contains("pivot"), NumericalError);
    try {
        (void)solve_general(a, CMat(CMat::Identity(3, 3)), "Phi1");
        FAIL("expected throw");
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()).find("Phi1") != std::string::npos);
    }
}

TEST_CASE("logdet_real folds whole turns and matches a Hermitian-route oracle") {
    RngStream s(8, StreamTag::kTest, 0);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 3 + trial;
        const CMat s1 = random_psd(n, s, double(n));
        const CMat s2 = random_psd(n, s, double(n));
        const CMat m = CMat::Identity(n, n) + s1 * s2;  // non-Hermitian, real spectrum >= 1
        const CMat s1h = hermitian_sqrt(s1);
        const double oracle = logdet_hpd(CMat(CMat::Identity(n, n) + s1h * s2 * s1h));
        CHECK(std::abs(logdet_real(m) - oracle) < 1e-9 * std::max(1.0, std::abs(oracle)));
    }
}

TEST_CASE("principal roots of diagonalizable positive-spectrum matrices") {
    RngStream s(9, StreamTag::kTest, 0);
    const int n = 5;
    const CMat s1 = random_psd(n, s, double(n)) + 0.1 * CMat::Identity(n, n);
    const CMat s2 = random_psd(n, s, double(n)) + 0.1 * CMat::Identity(n, n);
    const CMat m = s1 * s2;  // similar to a positive definite matrix
    const CMat r = principal_sqrt(m);
    CHECK((r * r - m).norm() / m.norm() < 1e-10);
    const CMat ri = principal_inv_sqrt(m);
    CHECK((ri * ri * m - CMat::Identity(n, n)).norm() < 1e-9);
    CHECK_THROWS_AS((void)principal_inv_sqrt(CMat(-CMat::Identity(3, 3)), "I+Omega"),
                    NumericalError);
    CHECK(principal_sqrt(CMat(CMat::Zero(3, 3))).norm() == 0.0);
}
