#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stdsn/oracle.hpp"
#include "stdsn/state.hpp"

namespace stdsn {

/// Beams j = 1..6 stored at index j - 1. eta_prime is used by the two-mode beams 5 and 6.
struct LaserParams {
    std::array<double, 6> Omega{};
    std::array<double, 6> eta{};
    std::array<double, 6> eta_prime{};
    std::array<double, 6> theta{};

    void validate() const;
};

struct Couplings {
    std::array<std::complex<double>, 6> g{};

    std::complex<double> displacement_a() const { return g[0] + std::conj(g[1]); }
    std::complex<double> displacement_b() const { return g[2] + std::conj(g[3]); }
    std::complex<double> squeezing() const { return g[4] + std::conj(g[5]); }
};

Couplings couplings_from_lasers(const LaserParams& lasers);

/// Qubit (x) two motional modes; `excited` and `ground` are the motional amplitudes
/// attached to |e> and |g>.
struct IonState {
    TruncatedSpace space;
    Eigen::MatrixXcd excited;
    Eigen::MatrixXcd ground;

    double norm_sq() const { return excited.squaredNorm() + ground.squaredNorm(); }
    /// (|e> + |g>)/sqrt(2) (x) |n, m>.
    static IonState prepare(const TruncatedSpace& space, int n, int m);
    /// Qubit reduced density matrix in the (e, g) basis.
    Eigen::Matrix2cd qubit_density() const;
};

IonState apply_squeeze_pulse(const IonState& s, const Couplings& c, double tau1);
IonState apply_displace_pulse(const IonState& s, const Couplings& c, double tau, bool conditional);
IonState apply_carrier(const IonState& s, double Omega0, double theta, double tau4);

enum class Outcome { Excited, Ground };

struct Detection {
    StateVector state;
    double probability = 0.0;
};

Detection detect(const IonState& s, Outcome outcome);

enum class PulseKind { SqueezeH2, DisplaceH1, ConditionalDisplaceH1, Carrier };
const char* to_string(PulseKind k);

struct Pulse {
    PulseKind kind = PulseKind::Carrier;
    double tau = 0.0;
    Couplings couplings;  // squeeze and displacement pulses
    double omega0 = 0.0;  // carrier only
    double theta = 0.0;   // carrier only
};

struct PulseSchedule {
    std::vector<Pulse> pulses;

    void validate() const;
    /// One line per pulse: "pulse <kind> tau=<v> [omega0=<v> theta=<v>]" followed by
    /// the couplings the pulse uses as g<j>=<re>:<im>.
    std::string serialize() const;
    static PulseSchedule parse(const std::string& text);
};

IonState execute(const PulseSchedule& schedule, const IonState& initial);

struct ProtocolOptions {
    /// Magnitude of the synthesized couplings; durations scale as 1/coupling_scale.
    double coupling_scale = 1.0;
};

/// Couplings and durations realizing squeeze r, displacement (a1, a2), the opposite
/// conditional displacement, and the carrier that weights the branches by eps.
PulseSchedule synthesize_schedule(const StateParams& target, const ProtocolOptions& opt = {});

struct ProtocolResult {
    StateVector state;
    double fidelity = 0.0;
    PulseSchedule schedule;
    double probability_ground = 0.0;
    double probability_excited = 0.0;
};

ProtocolResult run_protocol(const StateParams& target, const TruncatedSpace& space, const ProtocolOptions& opt = {});
/// Same, at the cutoff where the target build certifies.
ProtocolResult run_protocol(const StateParams& target, const ProtocolOptions& opt = {});

}  // namespace stdsn
