#pragma once

#include <Eigen/Core>
#include <complex>
#include <stdexcept>
#include <string>

namespace bresse {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Configuration or scenario-level problem (bad input, inconsistent knobs).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure at run time (solver breakdown, non-convergence).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// A probe frequency landed on (or indistinguishably close to) an eigenvalue.
class ResonanceError : public NumericalError {
public:
    ResonanceError(const std::string& what, double lambda)
        : NumericalError(what), lambda_(lambda) {}
    double lambda() const { return lambda_; }

private:
    double lambda_;
};

}  // namespace bresse
