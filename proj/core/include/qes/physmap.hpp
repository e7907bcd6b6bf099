#ifndef QES_PHYSMAP_HPP
#define QES_PHYSMAP_HPP

#include <string>
#include <vector>

#include "qes/elimination.hpp"
#include "qes/magyari.hpp"

namespace qes {

/// One solution tuple as handed to the physical map: exact text and a numeric value per s_k.
struct SpectrumInput {
    std::string label;
    std::vector<std::string> exact;
    std::vector<long double> s;
};

/// Labels "1", "2", ... in the order of the set; values refined to about 1e-30.
std::vector<SpectrumInput> spectrum_inputs(const RealSolutionSet& set);
std::vector<SpectrumInput> spectrum_inputs(const std::vector<std::vector<Rational>>& tuples,
                                           const std::vector<std::string>& labels = {});

struct SpectrumLevel {
    std::string label;
    std::vector<std::string> s;
    long double energy = 0;
    /// -g_{-1} as a formal sum in D and gamma when the tuple is rational.
    std::string energy_formal;
    /// g_{-1} .. g_{q-2}; g_{-1} = -energy.
    std::vector<long double> couplings;
};

struct PhysicalSpectrum {
    int q = 0, N = 1, L = 0;
    Rational D, gamma;
    std::vector<Rational> alpha;
    long double tau = 0, mu = 0;
    std::vector<SpectrumLevel> levels;
};

/// Leading-order couplings of each tuple: g_{k-2} = -alpha_{k-1} D - tau mu^{1-k} s_k.
/// Requires numeric D and gamma > 0.
PhysicalSpectrum spectrum_from_tuples(const QesSystem& sys, const std::vector<SpectrumInput>& tuples);

/// Columns q,N,D,level,s,energy,couplings; tuple entries and couplings separated by ';'.
std::string to_csv(const PhysicalSpectrum& s);
std::string to_json(const PhysicalSpectrum& s);

/// Potential after r^{2j} -> x^{delta}, delta = 2(j+1)/k - 2, j = 0..2q+1.
/// Slot j = 0 carries the energy term, slot j >= 1 the coupling g_{j-1}.
struct PotentialSlot {
    Rational exponent;
    int source = 0;  // j
};

struct PotentialFamily {
    int q = 0, k = 1;
    /// Non-constant slots, ascending exponent.
    std::vector<PotentialSlot> slots;
    /// Slot mapped to x^0; it plays the role of the new energy.
    int energy_source = 0;

    std::vector<Rational> exponents() const;
};

/// 1 <= k <= 2q+2.
PotentialFamily potential_catalog(int q, int k);
/// "a*r^(-4/3) + b*r^(-2/3) + r^(2/3)": the slot coming from g_{2q} has unit coefficient.
std::string to_string(const PotentialFamily& f);

/// Coefficients of lambda(r) = sum alpha_k r^{2k+2} / (2k+2), indexed by k.
std::vector<Rational> lambda_coefficients(const PotentialSpec& p);
/// "(p0 + p1*y + p2*y^2 ...)*exp(-(c0*r^2 + c1*r^4 + ...))" for a kernel vector, y = r^2/mu.
std::string wave_function_string(const PotentialSpec& p, const std::vector<BigInt>& kernel);

}  // namespace qes

#endif  // QES_PHYSMAP_HPP
