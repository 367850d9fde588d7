// SPDX-License-Identifier: Apache-2.0
#ifndef RISMIMO_TYPES_HPP
#define RISMIMO_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace rismimo {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr Complex kJ{0.0, 1.0};

/// Thrown when a linear-algebra or fixed-point step cannot proceed
/// (singular factor, indefinite input, non-converged solve, ...).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown on malformed scenario configuration; carries the offending key path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

}  // namespace rismimo

#endif
