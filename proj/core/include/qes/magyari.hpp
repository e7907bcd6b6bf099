#ifndef QES_MAGYARI_HPP
#define QES_MAGYARI_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qes/linalg.hpp"
#include "qes/multipoly.hpp"
#include "qes/numeric.hpp"

namespace qes {

/// Polynomial potential V(r) = sum_{k=0}^{2q} g_k r^{2k+2} together with its
/// generator parameters: W(r) = sum alpha_k r^{2k}, alpha_q = gamma > 0, and the
/// free lower couplings G_0..G_{q-1}.
struct PotentialSpec {
    int q = 0;
    std::vector<Rational> g;      // g_0..g_{2q}
    std::vector<Rational> alpha;  // alpha_0..alpha_q
    std::vector<Rational> G;      // G_0..G_{q-1}

    const Rational& gamma() const { return alpha.at(static_cast<std::size_t>(q)); }
};

/// g_k = G_k + sum_{i+j=k} alpha_i alpha_j, plus an extra alpha_0^2 in g_0 when q >= 1.
PotentialSpec from_generators(int q, std::vector<Rational> alpha, std::vector<Rational> G);
/// Inverse map. g_{2q} must be the square of a positive rational.
PotentialSpec from_couplings(int q, std::vector<Rational> g);
/// Recomputes the couplings from the generators and checks both sides agree.
PotentialSpec coupling_map(const PotentialSpec& p);

/// G_0 = -alpha_0^2 - alpha_1 (4N + 2 ell + 1).
Rational sextic_constraint(const Rational& alpha0, const Rational& alpha1, int N, const Rational& ell);

/// V(r) = sum g_k r^{2k+2}; r > 0.
Rational potential_eval(const PotentialSpec& p, const Rational& r);

/// a_0 + sum_i a_i * symbol_i with rational coefficients.
struct AffineExpr {
    Rational constant = 0;
    std::map<std::string, Rational> coeff;

    static AffineExpr symbol(const std::string& name, const Rational& c = 1);
    bool is_constant() const { return coeff.empty(); }
    Rational coefficient(const std::string& name) const;
    Rational evaluate(const std::map<std::string, Rational>& values) const;
    /// Substitutes known symbols, keeps the rest.
    AffineExpr partial(const std::map<std::string, Rational>& values) const;

    AffineExpr& operator+=(const AffineExpr& o);
    AffineExpr& operator-=(const AffineExpr& o);
    AffineExpr& operator*=(const Rational& k);
    friend AffineExpr operator+(AffineExpr a, const AffineExpr& b) { return a += b; }
    friend AffineExpr operator-(AffineExpr a, const AffineExpr& b) { return a -= b; }
    friend AffineExpr operator*(AffineExpr a, const Rational& k) { return a *= k; }
    friend bool operator==(const AffineExpr& a, const AffineExpr& b) {
        return a.constant == b.constant && a.coeff == b.coeff;
    }
};

std::string to_string(const AffineExpr& e);

/// Symbol names used in FullMatrix entries.
inline const char* kSymD = "D";
inline const char* kSymGamma = "gamma";
/// "g_-1", "g_0", ...
std::string coupling_symbol(int k);

struct QesSystem {
    PotentialSpec potential;
    int N = 1;
    int L = 0;
    std::optional<Rational> D;  // nullopt: symbolic

    /// ell = L + (D - 3)/2
    AffineExpr ell() const;
    void validate() const;
};

/// Constrained coupling g_{q-1} (for q = 0 this is g_{-1} = -E):
/// -gamma (4(N+q-1) + 2L + D - 2q) + sum_{i<q} alpha_i alpha_{q-1-i}, affine in D.
AffineExpr constrained_coupling(const QesSystem& sys);

/// (N+q-1) x N band matrix with one superdiagonal (C_n) and q subdiagonals.
/// Entries are affine in D (when symbolic), gamma and the free couplings
/// g_{-1}..g_{q-2}. The constraint on g_{q-1} is imposed, so the lowest band is
/// 4 gamma (N+q-1-n).
struct FullMatrix {
    int q = 0, N = 1;
    Matrix<AffineExpr> entries;

    const AffineExpr& C(int n) const { return entries(static_cast<std::size_t>(n), static_cast<std::size_t>(n + 1)); }
    const AffineExpr& B(int n) const { return entries(static_cast<std::size_t>(n), static_cast<std::size_t>(n)); }
    const AffineExpr& A(int n, int k) const {
        return entries(static_cast<std::size_t>(n), static_cast<std::size_t>(n - k));
    }
};

FullMatrix build_full_matrix(const QesSystem& sys);

/// coeff * 2^e2 * gamma^eg * D^eD * s_k (s = 0: no s factor). e2 kept in [0, 1).
struct FormalTerm {
    Rational coeff = 0;
    Rational e2 = 0, eg = 0, eD = 0;
    int s = 0;

    void canonicalize();
    friend bool operator==(const FormalTerm&, const FormalTerm&) = default;
};
FormalTerm operator*(const FormalTerm& a, const FormalTerm& b);
FormalTerm inverse(const FormalTerm& a);
FormalTerm power(const FormalTerm& a, int k);

/// Sum of formal terms with like terms merged and zeros dropped.
struct FormalSum {
    std::vector<FormalTerm> terms;

    FormalSum() = default;
    FormalSum(std::initializer_list<FormalTerm> t);
    void normalize();
    FormalSum& operator+=(const FormalSum& o);
    friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }
    friend FormalSum operator*(const FormalSum& a, const FormalTerm& t);
    friend bool operator==(const FormalSum& a, const FormalSum& b);
    bool is_zero() const { return terms.empty(); }
};

long double evaluate(const FormalTerm& t, long double D, long double gamma, const std::vector<long double>& s = {});
long double evaluate(const FormalSum& f, long double D, long double gamma, const std::vector<long double>& s = {});
std::string to_string(const FormalTerm& t);
std::string to_string(const FormalSum& f);

/// mu = (D/(2 gamma))^{1/(q+1)}, tau = (2^{q+2} D^q gamma)^{1/(q+1)} as formal monomials,
/// plus their values when D and gamma are given.
struct ScalingParams {
    int q = 0;
    FormalTerm mu, tau;
    std::optional<long double> mu_value, tau_value;
};

ScalingParams scaling(int q);
ScalingParams scaling(int q, const Rational& D, const Rational& gamma);

/// g_{k-2} = -alpha_{k-1} D - (tau / mu^{k-1}) s_k for k = 1..q, as formal sums in D,
/// gamma and the values of s. Element 0 is g_{-1} (so the energy is its negative).
std::vector<FormalSum> reparam_couplings(const std::vector<Rational>& s, const PotentialSpec& p);
/// Same with the s_k left symbolic.
std::vector<FormalSum> reparam_couplings_symbolic(const PotentialSpec& p);

/// Variable names for s_1..s_q: s | s,t | r,s,t | s1..sq.
std::vector<std::string> trap_variables(int q);

/// Leading-order (N+q-1) x N trap matrix over s_1..s_q.
struct TrapMatrix {
    int q = 0, N = 1;

    std::size_t rows() const { return static_cast<std::size_t>(N + q - 1); }
    std::size_t cols() const { return static_cast<std::size_t>(N); }
    /// Integer part of entry (n, m), and the index k of s_k it carries (0 for none).
    struct Entry {
        long value = 0;
        int s = 0;
    };
    Entry entry(int n, int m) const;
    MultiPoly entry_poly(int n, int m) const;
    const std::vector<std::string>& vars() const;
    template <class R>
    Matrix<R> evaluate(const std::vector<R>& s, const R& zero) const {
        Matrix<R> out(rows(), cols(), zero);
        for (int n = 0; n < static_cast<int>(rows()); ++n)
            for (int m = 0; m < N; ++m) {
                Entry e = entry(n, m);
                if (e.s) out(n, m) = s.at(static_cast<std::size_t>(e.s - 1));
                else if (e.value) out(n, m) = zero + R(e.value);
            }
        return out;
    }

   private:
    mutable std::vector<std::string> vars_;
};

TrapMatrix build_trap(int q, int N);

struct ConsistencyEntry {
    int n = 0, m = 0;
    int band = 0;              // -1 superdiagonal, 0 diagonal, k >= 1 k-th subdiagonal
    FormalSum scaled;          // exact rescaled entry mu^{n-m} * M(n, m) / tau
    FormalSum retained;        // D^0 part
    FormalSum discarded;       // everything else
    std::optional<Rational> leading_exponent;  // largest D exponent among discarded terms
    bool matches_trap = false;
};

struct ConsistencyReport {
    int q = 0, N = 1;
    std::vector<ConsistencyEntry> entries;
    std::map<int, std::optional<Rational>> band_leading_exponent;
    bool consistent = false;  // every retained part equals the trap entry, nothing grows with D
};

/// Substitutes h_n = p_n / mu^n and the coupling recipe into the full matrix (symbolic D),
/// divides row n by tau and splits each entry into its D^0 part and the vanishing rest.
ConsistencyReport leading_order_consistency(const QesSystem& sys);

/// {"q":..,"N":..,"L":..,"D":..,"couplings":[..],"alpha":[..],"G":[..]} with "p/q" strings.
std::string to_json(const QesSystem& sys);

}  // namespace qes

#endif  // QES_MAGYARI_HPP
