#ifndef STREAL_TYPES_HPP
#define STREAL_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace streal {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Base class for all errors raised by this library.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid argument or out-of-contract input.
struct domain_error : error {
    explicit domain_error(const std::string& msg) : error(msg) {}
};

/// A coefficient function evaluated to a non-finite value.
struct evaluation_error : error {
    explicit evaluation_error(const std::string& msg) : error(msg) {}
};

/// A matrix pencil was numerically singular.
struct singularity_error : error {
    explicit singularity_error(const std::string& msg) : error(msg) {}
};

/// A time integration produced non-finite state.
struct instability_error : error {
    explicit instability_error(const std::string& msg) : error(msg) {}
};

/// A requested Fourier coefficient of the input vanished.
struct missing_excitation_error : error {
    explicit missing_excitation_error(const std::string& msg) : error(msg) {}
};

/// An entry-wise coefficient system violated the Haar condition.
struct haar_violation_error : error {
    explicit haar_violation_error(const std::string& msg) : error(msg) {}
};

/// A matrix expected to be real carried a large imaginary residue.
struct realness_error : error {
    explicit realness_error(const std::string& msg) : error(msg) {}
};

/// The truncation rank precondition did not hold.
struct truncation_error : error {
    explicit truncation_error(const std::string& msg) : error(msg) {}
};

/// Not enough interpolation points for the requested structure.
struct insufficient_data_error : error {
    explicit insufficient_data_error(const std::string& msg) : error(msg) {}
};

/// No usable minimum was found within the search bracket.
struct optimization_error : error {
    explicit optimization_error(const std::string& msg) : error(msg) {}
};

/// Maximum worker count, capped by the STRUCT_REALIZE_THREADS environment
/// variable. Defaults to 1 when unset or unparsable.
inline int max_threads() {
    const char* env = std::getenv("STRUCT_REALIZE_THREADS");
    if (!env) return 1;
    try {
        int n = std::stoi(env);
        return n > 0 ? n : 1;
    } catch (...) {
        return 1;
    }
}

}  // namespace streal

#endif  // STREAL_TYPES_HPP
