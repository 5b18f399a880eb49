#include "stdsn/iongen.hpp"

#include <cmath>
#include <sstream>

#include "stdsn/errors.hpp"

namespace stdsn {

namespace {

using cd = std::complex<double>;
constexpr cd I(0.0, 1.0);

// Split into the sigma_x = +1 and -1 components (|e> +- |g>)/sqrt(2).
void sigma_x_split(const IonState& s, Eigen::MatrixXcd& plus, Eigen::MatrixXcd& minus) {
    plus = (s.excited + s.ground) / std::sqrt(2.0);
    minus = (s.excited - s.ground) / std::sqrt(2.0);
}

IonState sigma_x_join(const TruncatedSpace& space, const Eigen::MatrixXcd& plus, const Eigen::MatrixXcd& minus) {
    IonState out;
    out.space = space;
    out.excited = (plus + minus) / std::sqrt(2.0);
    out.ground = (plus - minus) / std::sqrt(2.0);
    return out;
}

void require_sigma_x_plus(const Eigen::MatrixXcd& minus, double norm_sq, const char* what) {
    if (minus.squaredNorm() > 1e-8 * norm_sq)
        throw ProtocolViolation(std::string(what) + ": qubit is not in the +1 eigenstate of sigma_x");
}

std::string format_complex(cd v) { return format_double(v.real()) + ":" + format_double(v.imag()); }

cd parse_complex(const std::string& key, const std::string& text) {
    auto colon = text.find(':');
    try {
        if (colon == std::string::npos) return {std::stod(text), 0.0};
        return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw DomainError("invalid complex value for " + key + ": '" + text + "'");
    }
}

PulseKind parse_kind(const std::string& s) {
    if (s == "squeeze_H2") return PulseKind::SqueezeH2;
    if (s == "displace_H1") return PulseKind::DisplaceH1;
    if (s == "conditional_displace_H1") return PulseKind::ConditionalDisplaceH1;
    if (s == "carrier") return PulseKind::Carrier;
    throw DomainError("unknown pulse kind '" + s + "'");
}

}  // namespace

void LaserParams::validate() const {
    for (int j = 0; j < 6; ++j) {
        if (!std::isfinite(Omega[j]) || !std::isfinite(eta[j]) || !std::isfinite(eta_prime[j]) ||
            !std::isfinite(theta[j]))
            throw DomainError("laser parameters must be finite");
        if (eta[j] < 0 || eta_prime[j] < 0) throw DomainError("Lamb-Dicke parameters must be nonnegative");
    }
}

Couplings couplings_from_lasers(const LaserParams& l) {
    l.validate();
    Couplings c;
    for (int j = 0; j < 4; ++j)
        c.g[j] = I * l.Omega[j] * l.eta[j] * std::exp(I * l.theta[j] - 0.5 * l.eta[j] * l.eta[j]);
    for (int j = 4; j < 6; ++j) {
        double e2 = l.eta[j] * l.eta[j] + l.eta_prime[j] * l.eta_prime[j];
        c.g[j] = -l.Omega[j] * l.eta[j] * l.eta_prime[j] * std::exp(I * l.theta[j] - 0.5 * e2);
    }
    return c;
}

IonState IonState::prepare(const TruncatedSpace& space, int n, int m) {
    space.validate();
    if (n < 0 || m < 0 || n >= space.cutoff_a || m >= space.cutoff_b)
        throw InsufficientCutoff("seed occupation outside the truncated space", 1.0);
    IonState s;
    s.space = space;
    s.excited = Eigen::MatrixXcd::Zero(space.cutoff_a, space.cutoff_b);
    s.ground = s.excited;
    s.excited(n, m) = 1.0 / std::sqrt(2.0);
    s.ground(n, m) = 1.0 / std::sqrt(2.0);
    return s;
}

Eigen::Matrix2cd IonState::qubit_density() const {
    Eigen::Matrix2cd rho;
    rho(0, 0) = excited.squaredNorm();
    rho(1, 1) = ground.squaredNorm();
    rho(0, 1) = (excited.cwiseProduct(ground.conjugate())).sum();
    rho(1, 0) = std::conj(rho(0, 1));
    return rho;
}

IonState apply_squeeze_pulse(const IonState& s, const Couplings& c, double tau1) {
    if (!(tau1 >= 0)) throw DomainError("pulse duration must be nonnegative");
    Eigen::MatrixXcd plus, minus;
    sigma_x_split(s, plus, minus);
    require_sigma_x_plus(minus, s.norm_sq(), "squeeze pulse");
    cd zeta = I * tau1 * c.squeezing();
    apply_two_mode_squeeze(plus, zeta);
    apply_two_mode_squeeze(minus, -zeta);
    return sigma_x_join(s.space, plus, minus);
}

IonState apply_displace_pulse(const IonState& s, const Couplings& c, double tau, bool conditional) {
    if (!(tau >= 0)) throw DomainError("pulse duration must be nonnegative");
    cd ga = I * tau * c.displacement_a();
    cd gb = I * tau * c.displacement_b();
    if (conditional) {
        IonState out = s;
        out.excited = apply_displacement(s.excited, ga, gb);
        return out;
    }
    Eigen::MatrixXcd plus, minus;
    sigma_x_split(s, plus, minus);
    require_sigma_x_plus(minus, s.norm_sq(), "displacement pulse");
    plus = apply_displacement(plus, ga, gb);
    minus = apply_displacement(minus, -ga, -gb);
    return sigma_x_join(s.space, plus, minus);
}

IonState apply_carrier(const IonState& s, double Omega0, double theta, double tau4) {
    if (!(tau4 >= 0)) throw DomainError("pulse duration must be nonnegative");
    double co = std::cos(Omega0 * tau4), si = std::sin(Omega0 * tau4);
    IonState out;
    out.space = s.space;
    out.excited = co * s.excited - I * std::polar(si, theta) * s.ground;
    out.ground = co * s.ground - I * std::polar(si, -theta) * s.excited;
    return out;
}

Detection detect(const IonState& s, Outcome outcome) {
    const Eigen::MatrixXcd& branch = outcome == Outcome::Excited ? s.excited : s.ground;
    double p = branch.squaredNorm() / s.norm_sq();
    if (!(p > 1e-12)) throw ImprobableOutcome("detection outcome has vanishing probability");
    return {make_state_vector(branch), p};
}

const char* to_string(PulseKind k) {
    switch (k) {
        case PulseKind::SqueezeH2: return "squeeze_H2";
        case PulseKind::DisplaceH1: return "displace_H1";
        case PulseKind::ConditionalDisplaceH1: return "conditional_displace_H1";
        case PulseKind::Carrier: return "carrier";
    }
    return "carrier";
}

void PulseSchedule::validate() const {
    for (const auto& p : pulses)
        if (!(p.tau >= 0) || !std::isfinite(p.tau)) throw DomainError("pulse durations must be finite and nonnegative");
}

std::string PulseSchedule::serialize() const {
    std::ostringstream os;
    for (const auto& p : pulses) {
        os << "pulse " << to_string(p.kind) << " tau=" << format_double(p.tau);
        switch (p.kind) {
            case PulseKind::Carrier:
                os << " omega0=" << format_double(p.omega0) << " theta=" << format_double(p.theta);
                break;
            case PulseKind::SqueezeH2:
                os << " g5=" << format_complex(p.couplings.g[4]) << " g6=" << format_complex(p.couplings.g[5]);
                break;
            default:
                for (int j = 0; j < 4; ++j) os << " g" << j + 1 << "=" << format_complex(p.couplings.g[j]);
                break;
        }
        os << "\n";
    }
    return os.str();
}

PulseSchedule PulseSchedule::parse(const std::string& text) {
    PulseSchedule s;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream toks(line);
        std::string word;
        if (!(toks >> word)) continue;
        if (word != "pulse") throw DomainError("schedule lines must start with 'pulse'");
        std::string kind;
        if (!(toks >> kind)) throw DomainError("schedule line without a pulse kind");
        Pulse p;
        p.kind = parse_kind(kind);
        bool have_tau = false;
        while (toks >> word) {
            auto eq = word.find('=');
            if (eq == std::string::npos) throw DomainError("malformed schedule entry '" + word + "'");
            std::string key = word.substr(0, eq), value = word.substr(eq + 1);
            if (key == "tau") {
                p.tau = parse_complex(key, value).real();
                have_tau = true;
            } else if (key == "omega0") {
                p.omega0 = parse_complex(key, value).real();
            } else if (key == "theta") {
                p.theta = parse_complex(key, value).real();
            } else if (key.size() == 2 && key[0] == 'g' && key[1] >= '1' && key[1] <= '6') {
                p.couplings.g[key[1] - '1'] = parse_complex(key, value);
            } else {
                throw DomainError("unknown schedule key '" + key + "'");
            }
        }
        if (!have_tau) throw DomainError("pulse without a duration");
        s.pulses.push_back(p);
    }
    s.validate();
    return s;
}

IonState execute(const PulseSchedule& schedule, const IonState& initial) {
    schedule.validate();
    IonState s = initial;
    for (const auto& p : schedule.pulses) {
        switch (p.kind) {
            case PulseKind::SqueezeH2: s = apply_squeeze_pulse(s, p.couplings, p.tau); break;
            case PulseKind::DisplaceH1: s = apply_displace_pulse(s, p.couplings, p.tau, false); break;
            case PulseKind::ConditionalDisplaceH1: s = apply_displace_pulse(s, p.couplings, p.tau, true); break;
            case PulseKind::Carrier: s = apply_carrier(s, p.omega0, p.theta, p.tau); break;
        }
    }
    return s;
}

PulseSchedule synthesize_schedule(const StateParams& target, const ProtocolOptions& opt) {
    target.validate();
    double k = opt.coupling_scale;
    if (!(k > 0) || !std::isfinite(k)) throw DomainError("coupling_scale must be positive");
    PulseSchedule s;

    // i tau1 (g5 + g6*) = r
    Pulse sq;
    sq.kind = PulseKind::SqueezeH2;
    sq.couplings.g[4] = cd(0.0, target.r >= 0 ? -k : k);
    sq.tau = std::abs(target.r) / k;
    s.pulses.push_back(sq);

    // i tau2 (g1 + g2*) = alpha1, i tau2 (g3 + g4*) = alpha2
    double amax = std::max(std::abs(target.alpha1), std::abs(target.alpha2));
    Pulse dis;
    dis.kind = PulseKind::DisplaceH1;
    dis.tau = amax / k;
    if (amax > 0) {
        dis.couplings.g[0] = -I * target.alpha1 / dis.tau;
        dis.couplings.g[2] = -I * target.alpha2 / dis.tau;
    }
    s.pulses.push_back(dis);

    // the excited branch moves from alpha to -alpha
    Pulse cond = dis;
    cond.kind = PulseKind::ConditionalDisplaceH1;
    cond.tau = 2 * dis.tau;
    cond.couplings.g[0] = -dis.couplings.g[0];
    cond.couplings.g[2] = -dis.couplings.g[2];
    s.pulses.push_back(cond);

    // ground branch after the carrier: D(alpha) - i exp(-i theta) tan(Omega0 tau4) D(-alpha)
    Pulse car;
    car.kind = PulseKind::Carrier;
    car.omega0 = k;
    car.tau = std::atan(target.eps_mag) / k;
    car.theta = -target.phi - M_PI / 2;
    s.pulses.push_back(car);
    return s;
}

ProtocolResult run_protocol(const StateParams& target, const TruncatedSpace& space, const ProtocolOptions& opt) {
    derive(target);
    StateVector reference = build_state(target, space);
    ProtocolResult res;
    res.schedule = synthesize_schedule(target, opt);
    IonState final_state = execute(res.schedule, IonState::prepare(space, target.n, target.m));
    Detection det = detect(final_state, Outcome::Ground);
    if (det.state.tail_mass >= 1e-10)
        throw InsufficientCutoff("generated state leaks into the truncation band", det.state.tail_mass);
    res.state = det.state;
    res.probability_ground = det.probability;
    res.probability_excited = final_state.excited.squaredNorm() / final_state.norm_sq();
    res.fidelity = fidelity(res.state, reference);
    return res;
}

ProtocolResult run_protocol(const StateParams& target, const ProtocolOptions& opt) {
    derive(target);
    int cutoff = initial_cutoff(target);
    while (true) {
        TruncatedSpace space{cutoff, cutoff};
        if (space.dim() > dimension_budget())
            throw InsufficientCutoff("protocol simulation needs more than the dimension budget", 1.0);
        try {
            return run_protocol(target, space, opt);
        } catch (const InsufficientCutoff&) {
            cutoff *= 2;
        }
    }
}

}  // namespace stdsn
