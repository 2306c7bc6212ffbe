#pragma once

// Symplectic linear algebra and entropy functionals for Gaussian states.
//
// All covariance matrices are in shot-noise units: the vacuum has quadrature
// variance 1. Quadratures are interleaved per mode, (Q1, P1, Q2, P2, ...).

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cvqkd {

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kPhysicalTolerance = 1e-9;

/// Real symmetric 2n x 2n covariance matrix.
///
/// Construction checks shape and symmetry. Physicality (symplectic
/// eigenvalues >= 1) is a separate query because intermediate matrices in the
/// equivalence tests are positive definite but need not be physical.
class CovarianceMatrix {
public:
    explicit CovarianceMatrix(Eigen::MatrixXd entries);

    static CovarianceMatrix identity(std::size_t modes);

    std::size_t modes() const { return static_cast<std::size_t>(entries_.rows() / 2); }
    const Eigen::MatrixXd& matrix() const { return entries_; }
    double operator()(Eigen::Index row, Eigen::Index col) const { return entries_(row, col); }

    bool is_physical(double tolerance = kPhysicalTolerance) const;

    /// Sub-block for a pair of modes (2x2), first_mode/second_mode 0-based.
    Eigen::Matrix2d block(std::size_t first_mode, std::size_t second_mode) const;

private:
    Eigen::MatrixXd entries_;
};

/// Symplectic eigenvalues, one per mode, sorted descending.
class SymplecticSpectrum {
public:
    SymplecticSpectrum() = default;
    explicit SymplecticSpectrum(std::vector<double> values);

    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t k) const { return values_[k]; }
    double largest() const { return values_.front(); }
    double smallest() const { return values_.back(); }

    bool is_physical(double tolerance = kPhysicalTolerance) const;

private:
    std::vector<double> values_;
};

/// Correlations between Eve's two modes and Bob's output mode: the 4x2 matrix
/// D = [xi I ; phi_corr Z].
struct CorrelationBlock {
    double xi = 0.0;
    double phi_corr = 0.0;

    Eigen::Matrix<double, 4, 2> matrix() const;
};

/// Global invariants of a two-mode CM: det V and Delta = detA + detB + 2 detC,
/// plus Delta^2 - 4 det V, which callers holding a factored form can supply
/// at full precision.
struct TwoModeInvariants {
    double det = 1.0;
    double delta = 2.0;
    double discriminant = 0.0;
};

Eigen::MatrixXd symplectic_form(std::size_t modes);

/// Moduli of the eigenvalues of i*Omega*V, each reported once, descending.
SymplecticSpectrum symplectic_spectrum_generic(const CovarianceMatrix& cm);

/// Closed-form spectrum of [[aI, sqrt(t) c Z], [sqrt(t) c Z, bI]].
SymplecticSpectrum symplectic_spectrum_two_mode(double a, double b, double c, double t);

/// Same closed form from precomputed y = (a+b)^2 - 4c^2 t, a - b and
/// ab - c^2 t, for callers that can evaluate these without cancellation.
SymplecticSpectrum symplectic_spectrum_two_mode_factored(double y, double a_minus_b,
                                                         double product);

TwoModeInvariants two_mode_invariants(const CovarianceMatrix& cm);

/// Spectrum from (det V, Delta) for two modes.
SymplecticSpectrum symplectic_spectrum_invariants(double det_v, double delta);
SymplecticSpectrum symplectic_spectrum_invariants(double det_v, double delta, double discriminant);

inline SymplecticSpectrum symplectic_spectrum_invariants(const TwoModeInvariants& inv) {
    return symplectic_spectrum_invariants(inv.det, inv.delta, inv.discriminant);
}

/// Entropy contribution of one symplectic eigenvalue, in bits. g(1) = 0.
double g_function(double nu);

/// Large-eigenvalue form log2(e nu / 2).
double g_asymptotic(double nu);

/// Sum of g over the spectrum; eigenvalues within tolerance below 1 are
/// clamped to 1.
double von_neumann_entropy(const SymplecticSpectrum& spectrum);

/// Eve's CM after Bob's homodyne measurement of Q:
/// V_E - D Pi D^T / b_v with Pi = diag(1, 0).
CovarianceMatrix condition_on_homodyne(const CovarianceMatrix& cm_e, const CorrelationBlock& d,
                                       double b_v);

/// Eve's CM after Bob's heterodyne measurement:
/// V_E - D (Omega V_B Omega^T + I) D^T / theta, theta = det V_B + Tr V_B + 1.
CovarianceMatrix condition_on_heterodyne(const CovarianceMatrix& cm_e, const CorrelationBlock& d,
                                         const CovarianceMatrix& cm_b);

}  // namespace cvqkd
