#include "cvqkd/gaussian_core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "cvqkd/error.hpp"

namespace cvqkd {

namespace {

bool is_symmetric(const Eigen::MatrixXd& m) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= kSymmetryTolerance * scale;
}

Eigen::Matrix2d pauli_z() {
    return Eigen::Vector2d(1.0, -1.0).asDiagonal();
}

CovarianceMatrix finish_conditioned(Eigen::MatrixXd m, const char* what) {
    // Roundoff can leave the update a few ulps off symmetric.
    m = 0.5 * (m + m.transpose());
    CovarianceMatrix out(std::move(m));
    if (!out.is_physical()) {
        throw InvalidState(std::string(what) + ": conditional CM violates the uncertainty principle");
    }
    return out;
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols() || entries_.rows() % 2 != 0) {
        throw InvalidArgument("covariance matrix must be square with even, non-zero dimension");
    }
    if (!entries_.allFinite()) {
        throw InvalidArgument("covariance matrix has non-finite entries");
    }
    if (!is_symmetric(entries_)) {
        throw InvalidArgument("covariance matrix is not symmetric");
    }
}

CovarianceMatrix CovarianceMatrix::identity(std::size_t modes) {
    const auto dim = static_cast<Eigen::Index>(2 * modes);
    return CovarianceMatrix(Eigen::MatrixXd::Identity(dim, dim));
}

bool CovarianceMatrix::is_physical(double tolerance) const {
    return symplectic_spectrum_generic(*this).is_physical(tolerance);
}

Eigen::Matrix2d CovarianceMatrix::block(std::size_t first_mode, std::size_t second_mode) const {
    if (first_mode >= modes() || second_mode >= modes()) {
        throw InvalidArgument("mode index out of range");
    }
    return entries_.block<2, 2>(static_cast<Eigen::Index>(2 * first_mode),
                                static_cast<Eigen::Index>(2 * second_mode));
}

SymplecticSpectrum::SymplecticSpectrum(std::vector<double> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end(), std::greater<>());
}

bool SymplecticSpectrum::is_physical(double tolerance) const {
    return values_.empty() || values_.back() >= 1.0 - tolerance;
}

Eigen::Matrix<double, 4, 2> CorrelationBlock::matrix() const {
    Eigen::Matrix<double, 4, 2> d;
    d.topRows<2>() = xi * Eigen::Matrix2d::Identity();
    d.bottomRows<2>() = phi_corr * pauli_z();
    return d;
}

Eigen::MatrixXd symplectic_form(std::size_t modes) {
    if (modes == 0) {
        throw InvalidArgument("symplectic_form: number of modes must be positive");
    }
    const auto dim = static_cast<Eigen::Index>(2 * modes);
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; k += 2) {
        omega(k, k + 1) = 1.0;
        omega(k + 1, k) = -1.0;
    }
    return omega;
}

SymplecticSpectrum symplectic_spectrum_generic(const CovarianceMatrix& cm) {
    const Eigen::MatrixXd product = symplectic_form(cm.modes()) * cm.matrix();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(product, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw NumericFailure("symplectic_spectrum_generic: eigen solver did not converge");
    }
    // Eigenvalues of Omega V come in pairs +-i nu.
    std::vector<double> moduli;
    moduli.reserve(static_cast<std::size_t>(product.rows()));
    for (const auto& ev : solver.eigenvalues()) {
        moduli.push_back(std::abs(ev));
    }
    std::sort(moduli.begin(), moduli.end(), std::greater<>());
    std::vector<double> values;
    values.reserve(cm.modes());
    for (std::size_t k = 0; k < moduli.size(); k += 2) {
        values.push_back(0.5 * (moduli[k] + moduli[k + 1]));
    }
    return SymplecticSpectrum(std::move(values));
}

SymplecticSpectrum symplectic_spectrum_two_mode(double a, double b, double c, double t) {
    if (c < 0.0) {
        throw InvalidArgument("symplectic_spectrum_two_mode: c must be non-negative");
    }
    if (t < 0.0 || t > 1.0) {
        throw InvalidArgument("symplectic_spectrum_two_mode: t must lie in [0, 1]");
    }
    return symplectic_spectrum_two_mode_factored((a + b) * (a + b) - 4.0 * c * c * t, a - b,
                                                 a * b - c * c * t);
}

SymplecticSpectrum symplectic_spectrum_two_mode_factored(double y, double a_minus_b,
                                                         double product) {
    if (!(y >= 4.0 - kPhysicalTolerance)) {
        throw InvalidState("symplectic_spectrum_two_mode: (a+b)^2 - 4c^2 t < 4");
    }
    const double big = 0.5 * (std::sqrt(y) + std::abs(a_minus_b));
    // nu+ nu- = ab - c^2 t; avoids cancellation in (sqrt(y) - |a-b|) / 2.
    return SymplecticSpectrum({big, product / big});
}

TwoModeInvariants two_mode_invariants(const CovarianceMatrix& cm) {
    if (cm.modes() != 2) {
        throw InvalidArgument("two_mode_invariants: expected a two-mode covariance matrix");
    }
    const double det_a = cm.block(0, 0).determinant();
    const double det_b = cm.block(1, 1).determinant();
    const double det_c = cm.block(0, 1).determinant();
    const double det = cm.matrix().determinant();
    const double delta = det_a + det_b + 2.0 * det_c;
    return {det, delta, delta * delta - 4.0 * det};
}

SymplecticSpectrum symplectic_spectrum_invariants(double det_v, double delta) {
    return symplectic_spectrum_invariants(det_v, delta, delta * delta - 4.0 * det_v);
}

SymplecticSpectrum symplectic_spectrum_invariants(double det_v, double delta, double discriminant) {
    if (!(det_v >= 0.0) || !(delta >= 0.0)) {
        throw NumericFailure("symplectic_spectrum_invariants: det V and Delta must be non-negative");
    }
    double disc = discriminant;
    const double scale = delta * delta;
    if (disc < -1e-6 * scale) {
        throw NumericFailure("symplectic_spectrum_invariants: Delta^2 - 4 det V is negative");
    }
    disc = std::max(disc, 0.0);
    const double nu_plus_sq = 0.5 * (delta + std::sqrt(disc));
    if (nu_plus_sq <= 0.0) {
        return SymplecticSpectrum({0.0, 0.0});
    }
    // nu-^2 = det V / nu+^2, the stable form of (Delta - sqrt(disc)) / 2.
    const double nu_minus_sq = det_v / nu_plus_sq;
    return SymplecticSpectrum({std::sqrt(nu_plus_sq), std::sqrt(nu_minus_sq)});
}

double g_function(double nu) {
    if (!(nu >= 1.0 - kPhysicalTolerance)) {
        throw InvalidArgument("g_function: symplectic eigenvalue below 1");
    }
    if (nu <= 1.0) {
        return 0.0;  // 0 log 0 := 0
    }
    const double x = 0.5 * (nu + 1.0);
    const double y = 0.5 * (nu - 1.0);
    if (nu < 3.0) {
        return x * std::log2(x) - y * std::log2(y);
    }
    // x log x - y log y = log y + x log(1 + 1/y)
    return std::log2(y) + x * std::log1p(1.0 / y) / std::numbers::ln2;
}

double g_asymptotic(double nu) {
    if (!(nu > 0.0)) {
        throw InvalidArgument("g_asymptotic: nu must be positive");
    }
    return std::log2(std::numbers::e * nu / 2.0);
}

double von_neumann_entropy(const SymplecticSpectrum& spectrum) {
    double entropy = 0.0;
    for (double nu : spectrum.values()) {
        if (nu < 1.0 - kPhysicalTolerance) {
            throw InvalidState("von_neumann_entropy: symplectic eigenvalue " + std::to_string(nu) +
                               " below 1");
        }
        entropy += g_function(std::max(nu, 1.0));
    }
    return entropy;
}

CovarianceMatrix condition_on_homodyne(const CovarianceMatrix& cm_e, const CorrelationBlock& d,
                                       double b_v) {
    if (!(b_v > 0.0)) {
        throw InvalidArgument("condition_on_homodyne: b_v must be positive");
    }
    if (cm_e.modes() != 2) {
        throw InvalidArgument("condition_on_homodyne: Eve's CM must have two modes");
    }
    const Eigen::Matrix<double, 4, 2> dm = d.matrix();
    const Eigen::Matrix2d pi = Eigen::Vector2d(1.0, 0.0).asDiagonal();
    Eigen::MatrixXd out = cm_e.matrix() - dm * pi * dm.transpose() / b_v;
    return finish_conditioned(std::move(out), "condition_on_homodyne");
}

CovarianceMatrix condition_on_heterodyne(const CovarianceMatrix& cm_e, const CorrelationBlock& d,
                                         const CovarianceMatrix& cm_b) {
    if (cm_e.modes() != 2) {
        throw InvalidArgument("condition_on_heterodyne: Eve's CM must have two modes");
    }
    if (cm_b.modes() != 1) {
        throw InvalidArgument("condition_on_heterodyne: Bob's CM must have one mode");
    }
    const Eigen::Matrix2d vb = cm_b.matrix();
    const double theta = vb.determinant() + vb.trace() + 1.0;
    if (!(theta > 0.0)) {
        throw NumericFailure("condition_on_heterodyne: theta = det V_B + Tr V_B + 1 is not positive");
    }
    const Eigen::Matrix2d omega = symplectic_form(1);
    const Eigen::Matrix2d kernel = omega * vb * omega.transpose() + Eigen::Matrix2d::Identity();
    const Eigen::Matrix<double, 4, 2> dm = d.matrix();
    Eigen::MatrixXd out = cm_e.matrix() - dm * kernel * dm.transpose() / theta;
    return finish_conditioned(std::move(out), "condition_on_heterodyne");
}

}  // namespace cvqkd
