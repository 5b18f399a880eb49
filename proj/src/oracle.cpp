#include "stdsn/oracle.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "stdsn/errors.hpp"

namespace stdsn {

namespace {

constexpr double kTailLimit = 1e-10;

int band_start(int dim) { return dim - int(std::ceil(0.1 * dim)); }

Eigen::MatrixXcd lower_a(const Eigen::MatrixXcd& psi) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(psi.rows(), psi.cols());
    for (int n = 0; n + 1 < psi.rows(); ++n) out.row(n) = std::sqrt(double(n + 1)) * psi.row(n + 1);
    return out;
}

Eigen::MatrixXcd raise_a(const Eigen::MatrixXcd& psi) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(psi.rows(), psi.cols());
    for (int n = 1; n < psi.rows(); ++n) out.row(n) = std::sqrt(double(n)) * psi.row(n - 1);
    return out;
}

Eigen::MatrixXcd lower_b(const Eigen::MatrixXcd& psi) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(psi.rows(), psi.cols());
    for (int n = 0; n + 1 < psi.cols(); ++n) out.col(n) = std::sqrt(double(n + 1)) * psi.col(n + 1);
    return out;
}

Eigen::MatrixXcd raise_b(const Eigen::MatrixXcd& psi) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(psi.rows(), psi.cols());
    for (int n = 1; n < psi.cols(); ++n) out.col(n) = std::sqrt(double(n)) * psi.col(n - 1);
    return out;
}

std::complex<double> inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a.conjugate().cwiseProduct(b)).sum();
}

double quadrature_variance(const StateVector& sv, double nu, bool y) {
    const auto& psi = sv.amplitudes;
    const std::complex<double> I(0.0, 1.0);
    Eigen::MatrixXcd phi;
    double c = std::cos(nu), s = std::sin(nu);
    if (!y) {
        phi = 0.5 * c * (lower_a(psi) + raise_a(psi)) + 0.5 * s * (lower_b(psi) + raise_b(psi));
    } else {
        phi = (0.5 / I) * (c * (lower_a(psi) - raise_a(psi)) + s * (lower_b(psi) - raise_b(psi)));
    }
    double mean = std::real(inner(psi, phi));
    double second = phi.squaredNorm();
    return second - mean * mean;
}

int padded_dim(int N, std::complex<double> shift) {
    double a = std::abs(shift);
    return 2 * N + int(std::ceil(a * a + 6 * a));
}

}  // namespace

std::size_t dimension_budget() {
    if (const char* env = std::getenv("STDSN_MAX_DIM")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return std::size_t(v);
    }
    return 262144;
}

void TruncatedSpace::validate() const {
    if (cutoff_a < 2 || cutoff_b < 2) throw DomainError("truncated space: cutoffs must be at least 2");
    if (dim() > dimension_budget())
        throw InsufficientCutoff("truncated space " + std::to_string(cutoff_a) + "x" + std::to_string(cutoff_b) +
                                     " exceeds the dimension budget " + std::to_string(dimension_budget()),
                                 1.0);
}

bool DensityMatrix::hermitian(double tol) const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void DensityMatrix::check(double tol) const {
    if (!hermitian(std::max(tol, 1e-12))) throw DomainError("density matrix is not Hermitian");
    std::complex<double> tr = entries.trace();
    if (std::abs(tr - 1.0) > tol) throw DomainError("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) throw DomainError("density matrix has a negative eigenvalue");
}

double tail_mass(const Eigen::MatrixXcd& psi) {
    int ra = band_start(int(psi.rows())), rb = band_start(int(psi.cols()));
    double t = 0.0;
    for (int i = 0; i < psi.rows(); ++i)
        for (int j = 0; j < psi.cols(); ++j)
            if (i >= ra || j >= rb) t += std::norm(psi(i, j));
    return t;
}

StateVector make_state_vector(const Eigen::MatrixXcd& psi) {
    StateVector sv;
    sv.space = {int(psi.rows()), int(psi.cols())};
    sv.norm_before = psi.squaredNorm();
    if (!(sv.norm_before > 0)) throw DomainError("make_state_vector: zero vector");
    sv.amplitudes = psi / std::sqrt(sv.norm_before);
    sv.tail_mass = tail_mass(sv.amplitudes);
    return sv;
}

Eigen::MatrixXcd displacement_matrix(int dim, std::complex<double> alpha) {
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) {
        double s = std::sqrt(double(n + 1));
        G(n + 1, n) = alpha * s;
        G(n, n + 1) = -std::conj(alpha) * s;
    }
    return G.exp();
}

void apply_two_mode_squeeze(Eigen::MatrixXcd& psi, std::complex<double> zeta) {
    if (zeta == 0.0) return;
    int Na = int(psi.rows()), Nb = int(psi.cols());
    for (int k = -(Nb - 1); k <= Na - 1; ++k) {
        int a0 = std::max(k, 0), b0 = std::max(-k, 0);
        int L = std::min(Na - a0, Nb - b0);
        Eigen::VectorXcd v(L);
        for (int j = 0; j < L; ++j) v(j) = psi(a0 + j, b0 + j);
        if (v.squaredNorm() == 0.0) continue;
        Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(L, L);
        for (int j = 0; j < L; ++j) {
            double n1 = a0 + j, n2 = b0 + j;
            if (j > 0) G(j - 1, j) += zeta * std::sqrt(n1 * n2);
            if (j + 1 < L) G(j + 1, j) += -std::conj(zeta) * std::sqrt((n1 + 1) * (n2 + 1));
        }
        Eigen::VectorXcd w = G.exp() * v;
        for (int j = 0; j < L; ++j) psi(a0 + j, b0 + j) = w(j);
    }
}

Eigen::MatrixXcd apply_displacement(const Eigen::MatrixXcd& psi, std::complex<double> alpha1,
                                    std::complex<double> alpha2) {
    Eigen::MatrixXcd Da = displacement_matrix(int(psi.rows()), alpha1);
    Eigen::MatrixXcd Db = displacement_matrix(int(psi.cols()), alpha2);
    return Da * psi * Db.transpose();
}

StateVector build_state(const StateParams& p, const TruncatedSpace& space) {
    p.validate();
    space.validate();
    if (p.n >= space.cutoff_a || p.m >= space.cutoff_b)
        throw InsufficientCutoff("seed occupation outside the truncated space", 1.0);
    Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(space.cutoff_a, space.cutoff_b);
    psi(p.n, p.m) = 1.0;
    apply_two_mode_squeeze(psi, p.r);

    Eigen::MatrixXcd total = apply_displacement(psi, p.alpha1, p.alpha2);
    if (p.eps_mag != 0.0) total += p.eps() * apply_displacement(psi, -p.alpha1, -p.alpha2);

    double norm = total.squaredNorm();
    if (!(norm >= 1e-12)) throw DegenerateState("superposed vector has vanishing norm");
    StateVector sv = make_state_vector(total);
    if (sv.tail_mass >= kTailLimit)
        throw InsufficientCutoff("tail mass " + format_double(sv.tail_mass) + " in space " +
                                     std::to_string(space.cutoff_a) + "x" + std::to_string(space.cutoff_b),
                                 sv.tail_mass);
    return sv;
}

StateVector build_certified(const StateParams& p) {
    int cutoff = initial_cutoff(p);
    while (true) {
        TruncatedSpace space{cutoff, cutoff};
        if (space.dim() > dimension_budget())
            throw InsufficientCutoff("oracle certification needs more than the dimension budget " +
                                         std::to_string(dimension_budget()),
                                     1.0);
        try {
            return build_state(p, space);
        } catch (const InsufficientCutoff&) {
            cutoff *= 2;
        }
    }
}

double expectation(const StateVector& sv, const Observable& o) {
    const auto& psi = sv.amplitudes;
    int Na = int(psi.rows()), Nb = int(psi.cols());
    double acc = 0.0;
    switch (o.kind) {
        case Observable::Kind::XVar: return quadrature_variance(sv, o.nu, false);
        case Observable::Kind::YVar: return quadrature_variance(sv, o.nu, true);
        default: break;
    }
    for (int i = 0; i < Na; ++i)
        for (int j = 0; j < Nb; ++j) {
            double w = std::norm(psi(i, j));
            switch (o.kind) {
                case Observable::Kind::Na: acc += i * w; break;
                case Observable::Kind::Nb: acc += j * w; break;
                case Observable::Kind::Na2: acc += double(i) * (i - 1) * w; break;
                case Observable::Kind::Nb2: acc += double(j) * (j - 1) * w; break;
                case Observable::Kind::NaNb: acc += double(i) * j * w; break;
                default: break;
            }
        }
    return acc;
}

DensityMatrix reduce_mode(const StateVector& sv, Mode mode) {
    DensityMatrix rho;
    if (mode == Mode::A)
        rho.entries = sv.amplitudes * sv.amplitudes.adjoint();
    else
        rho.entries = sv.amplitudes.transpose() * sv.amplitudes.conjugate();
    return rho;
}

double wigner_from_rho(const DensityMatrix& rho, std::complex<double> z) {
    int N = rho.dim();
    int P = padded_dim(N, z);
    Eigen::MatrixXcd D = displacement_matrix(P, z);
    Eigen::MatrixXcd M = rho.entries * D.topRows(N);
    int band = band_start(P);
    double w = 0.0, margin = 0.0;
    for (int k = 0; k < P; ++k) {
        double s = std::real(D.col(k).head(N).dot(M.col(k)));
        w += (k % 2 == 0 ? s : -s);
        if (k >= band) margin += s;
    }
    if (margin > kTailLimit)
        throw InsufficientCutoff("displaced state leaks into the padding band", margin);
    return 2.0 / M_PI * w;
}

double qfunc_from_rho(const DensityMatrix& rho, std::complex<double> z) {
    int N = rho.dim();
    Eigen::VectorXcd c(N);
    c(0) = std::exp(-0.5 * std::norm(z));
    for (int n = 1; n < N; ++n) c(n) = c(n - 1) * z / std::sqrt(double(n));
    return std::real((c.adjoint() * rho.entries * c)(0)) / M_PI;
}

std::complex<double> char_fn_from_rho(const DensityMatrix& rho, std::complex<double> beta) {
    int N = rho.dim();
    int P = padded_dim(N, beta);
    Eigen::MatrixXcd D = displacement_matrix(P, beta);
    int band = band_start(P);
    double margin = 0.0;
    for (int j = 0; j < N; ++j)
        margin += std::real(rho.entries(j, j)) * D.col(j).tail(P - band).squaredNorm();
    if (margin > kTailLimit)
        throw InsufficientCutoff("displaced state leaks into the padding band", margin);
    return (rho.entries * D.topLeftCorner(N, N)).trace();
}

double purity_from_rho(const DensityMatrix& rho) { return rho.entries.cwiseAbs2().sum(); }

double fidelity(const StateVector& a, const StateVector& b) {
    if (!(a.space == b.space)) throw DomainError("fidelity: state vectors live in different spaces");
    return std::norm(inner(a.amplitudes, b.amplitudes));
}

std::string dump(const StateVector& sv) {
    std::ostringstream os;
    os << "# space=" << sv.space.cutoff_a << "x" << sv.space.cutoff_b << "\n";
    for (int i = 0; i < sv.space.cutoff_a; ++i)
        for (int j = 0; j < sv.space.cutoff_b; ++j) {
            auto a = sv.amplitudes(i, j);
            if (std::abs(a) > 1e-14)
                os << i << "," << j << "," << format_double(a.real()) << "," << format_double(a.imag()) << "\n";
        }
    return os.str();
}

}  // namespace stdsn
