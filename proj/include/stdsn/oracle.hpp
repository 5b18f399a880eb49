#pragma once

#include <complex>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "stdsn/state.hpp"
#include "stdsn/stats.hpp"

namespace stdsn {

/// Largest cutoff_a * cutoff_b the oracle accepts; STDSN_MAX_DIM overrides the default.
std::size_t dimension_budget();

struct TruncatedSpace {
    int cutoff_a = 2;
    int cutoff_b = 2;

    std::size_t dim() const { return std::size_t(cutoff_a) * std::size_t(cutoff_b); }
    void validate() const;
    bool operator==(const TruncatedSpace&) const = default;
};

/// Two-mode amplitudes stored as a cutoff_a x cutoff_b matrix: entry (n1, n2) is <n1, n2|psi>.
struct StateVector {
    TruncatedSpace space;
    Eigen::MatrixXcd amplitudes;
    double tail_mass = 0.0;
    double norm_before = 1.0;  // squared norm prior to the final renormalization

    std::complex<double> amplitude(int n1, int n2) const { return amplitudes(n1, n2); }
};

struct DensityMatrix {
    Eigen::MatrixXcd entries;

    int dim() const { return int(entries.rows()); }
    bool hermitian(double tol = 1e-12) const;
    /// Throws DomainError if hermiticity, unit trace or positivity fail.
    void check(double tol = 1e-10) const;
};

/// Probability in the top 10% of either index.
double tail_mass(const Eigen::MatrixXcd& psi);

/// Wraps raw amplitudes; normalizes and records the tail mass. Does not certify.
StateVector make_state_vector(const Eigen::MatrixXcd& psi);

/// exp(alpha a^dag - conj(alpha) a) on a single mode truncated to `dim` levels.
Eigen::MatrixXcd displacement_matrix(int dim, std::complex<double> alpha);

/// psi -> exp(zeta a b - conj(zeta) a^dag b^dag) psi, applied per n1 - n2 sector.
void apply_two_mode_squeeze(Eigen::MatrixXcd& psi, std::complex<double> zeta);

/// psi -> D_a(alpha1) D_b(alpha2) psi.
Eigen::MatrixXcd apply_displacement(const Eigen::MatrixXcd& psi, std::complex<double> alpha1,
                                    std::complex<double> alpha2);

/// Builds the state by exponentiating the truncated generators. Throws
/// InsufficientCutoff when the tail band holds 1e-10 or more.
StateVector build_state(const StateParams& p, const TruncatedSpace& space);

/// Doubles both cutoffs from initial_cutoff until the build certifies.
StateVector build_certified(const StateParams& p);

struct Observable {
    enum class Kind { Na, Nb, Na2, Nb2, NaNb, XVar, YVar };
    Kind kind = Kind::Na;
    double nu = 0.0;

    static Observable na() { return {Kind::Na, 0.0}; }
    static Observable nb() { return {Kind::Nb, 0.0}; }
    static Observable na2() { return {Kind::Na2, 0.0}; }
    static Observable nb2() { return {Kind::Nb2, 0.0}; }
    static Observable nanb() { return {Kind::NaNb, 0.0}; }
    static Observable x_var(double nu) { return {Kind::XVar, nu}; }
    static Observable y_var(double nu) { return {Kind::YVar, nu}; }
};

double expectation(const StateVector& sv, const Observable& o);

DensityMatrix reduce_mode(const StateVector& sv, Mode mode);

/// (2/pi) sum_k (-1)^k <k|D(z)^dag rho D(z)|k>, evaluated in a zero-padded space.
double wigner_from_rho(const DensityMatrix& rho, std::complex<double> z);
/// <z|rho|z> / pi with exact coherent amplitudes.
double qfunc_from_rho(const DensityMatrix& rho, std::complex<double> z);
/// Tr[rho D(beta)] in a zero-padded space.
std::complex<double> char_fn_from_rho(const DensityMatrix& rho, std::complex<double> beta);

double purity_from_rho(const DensityMatrix& rho);
double fidelity(const StateVector& a, const StateVector& b);

/// "# space=<a>x<b>" followed by "n1,n2,re,im" rows for |amplitude| > 1e-14.
std::string dump(const StateVector& sv);

}  // namespace stdsn
