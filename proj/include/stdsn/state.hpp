#pragma once

#include <complex>
#include <string>
#include <vector>

namespace stdsn {

/// lambda [D(a1, a2) + eps D(-a1, -a2)] S(r) |n, m>, eps = eps_mag * exp(i phi).
struct StateParams {
    double r = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double eps_mag = 0.0;
    double phi = 0.0;
    int n = 0;
    int m = 0;

    void validate() const;
    std::complex<double> eps() const;
    /// The same state with the roles of the two modes exchanged.
    StateParams swapped() const;
    bool operator==(const StateParams&) const = default;
};

struct DerivedQuantities {
    double Sr = 0.0;
    double Cr = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
    double log_mu = 0.0;
    double lambda_sq = 1.0;
    double mu1 = 0.0;
    double mu2 = 0.0;
};

enum class NamedStateClass { Even, Odd, Yurke, SingleBranch, General };

NamedStateClass classify(const StateParams& p);
const char* to_string(NamedStateClass c);

/// Throws DegenerateState when the superposition norm vanishes.
DerivedQuantities derive(const StateParams& p);

/// Amplitude of |n1, n2> for the vacuum seed (n = m = 0).
std::complex<double> fock_coefficient(const StateParams& p, int n1, int n2);
double joint_pnd(const StateParams& p, int m1, int m2);

struct MarginalProbability {
    double value = 0.0;
    double tail_bound = 0.0;  // probability mass outside the summed block
    bool precise() const { return tail_bound < 1e-10; }
};

MarginalProbability marginal_pnd(const StateParams& p, int m1, int cutoff);

/// Marginal of mode a at r = 0 with |eps| = 1, in closed form.
double marginal_pnd_r0(const StateParams& p, int m1);

/// Starting per-mode cutoff: max(20, ceil(4(a1^2 + a2^2 + sinh^2 r)) + n + m).
int initial_cutoff(const StateParams& p);

/// Table of all amplitudes with n1, n2 < cutoff (vacuum seed).
class FockTable {
public:
    FockTable(const StateParams& p, int cutoff);
    int cutoff() const { return cutoff_; }
    std::complex<double> amplitude(int n1, int n2) const { return amp_[std::size_t(n1) * cutoff_ + n2]; }
    double probability(int n1, int n2) const { return prob_[std::size_t(n1) * cutoff_ + n2]; }
    double total() const;
    double tail() const;
    double marginal_a(int m1) const;
    double marginal_b(int m2) const;

private:
    int cutoff_;
    std::vector<std::complex<double>> amp_;
    std::vector<double> prob_;
};

/// Doubles the cutoff from initial_cutoff until the omitted mass is below tol.
FockTable certified_fock_table(const StateParams& p, double tol = 1e-10, int max_cutoff = 4096);

/// Flat key-value record: "r=... alpha1=... alpha2=... eps_mag=... phi=... n=... m=...".
std::string to_record(const StateParams& p);
/// Accepts key=value pairs separated by whitespace, commas, semicolons or newlines;
/// '#' starts a comment. Keys absent from the text keep the values in `base`.
StateParams parse_record(const std::string& text, const StateParams& base = {});

/// Decimal rendering with 17 significant digits.
std::string format_double(double v);

}  // namespace stdsn
