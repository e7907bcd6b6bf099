#ifndef QES_GROEBNER_HPP
#define QES_GROEBNER_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "qes/linalg.hpp"
#include "qes/multipoly.hpp"
#include "qes/numeric.hpp"
#include "qes/unipoly.hpp"

namespace qes {

inline constexpr std::size_t kMaxGbVars = 8;

/// Weighted degree reverse lexicographic order (weights default to 1).
struct MonomialOrder {
    std::vector<unsigned> weights;
};

struct GbStats {
    std::size_t pairs_considered = 0;
    std::size_t pairs_reduced = 0;
    std::size_t zero_reductions = 0;
    std::size_t basis_size = 0;
};

/// Reduced Groebner basis over Q, stored as primitive integer polynomials with
/// positive leading coefficients.
class GroebnerBasis {
   public:
    struct Mono {
        std::uint32_t wdeg = 0;
        std::array<std::uint16_t, kMaxGbVars> e{};
        friend bool operator==(const Mono&, const Mono&) = default;
    };
    struct Poly {
        std::vector<Mono> m;  // descending
        std::vector<BigInt> c;
        std::uint32_t sugar = 0;
        bool empty() const { return m.empty(); }
    };

    GroebnerBasis(std::vector<std::string> vars, MonomialOrder order);

    /// Buchberger with the Gebauer-Moeller criteria and the sugar strategy.
    /// `cancel` is polled between pairs; returning true aborts with GuardExceeded.
    static GroebnerBasis compute(const std::vector<MultiPoly>& gens, MonomialOrder order = {},
                                 const std::function<bool()>& cancel = {});

    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t size() const { return basis_.size(); }
    std::vector<MultiPoly> polynomials() const;
    const GbStats& stats() const { return stats_; }

    bool is_unit_ideal() const;
    bool is_zero_dimensional() const;

    /// r / scale == f modulo the ideal, r fully reduced.
    struct NormalForm {
        MultiPoly remainder;
        Rational scale;
    };
    NormalForm normal_form(const MultiPoly& f) const;
    bool reduces_to_zero(const MultiPoly& f) const;

    /// Standard monomials (basis of the quotient algebra), ascending in the order.
    /// Requires a zero-dimensional ideal.
    const std::vector<Exponent>& standard_monomials() const;
    std::size_t quotient_dimension() const { return standard_monomials().size(); }

    /// Coordinates of the normal form of f on the standard monomials.
    std::vector<Rational> coordinates(const MultiPoly& f) const;
    /// Matrix of multiplication by variable `var`; column j = coordinates of var * b_j.
    const Matrix<Rational>& multiplication_matrix(std::size_t var) const;

    // internal representation, exposed for the implementation file
    int compare(const Mono& a, const Mono& b) const;

   private:
    Mono to_mono(const Exponent& e) const;
    Exponent to_exponent(const Mono& m) const;
    Poly to_poly(const MultiPoly& f) const;
    MultiPoly to_multi(const Poly& p) const;
    void reduce_full(Poly& f, BigInt& scale_num, BigInt& scale_den) const;

    std::vector<std::string> vars_;
    MonomialOrder order_;
    std::vector<Poly> basis_;
    GbStats stats_;
    mutable std::vector<Exponent> standard_;
    mutable bool standard_ready_ = false;
    mutable std::vector<std::unique_ptr<Matrix<Rational>>> mult_;

    friend struct GbEngine;
};

/// Minimal polynomial of a square matrix acting on the Krylov space of e_0
/// (for a quotient algebra this is the minimal polynomial of the element).
/// Returned primitive with positive leading coefficient.
UniPoly krylov_minimal_polynomial(const Matrix<Rational>& m, const std::string& var);

/// Cyclic-basis data for a matrix whose Krylov space from e_0 is the whole space:
/// solves for the polynomial g with g(M) e_0 = target.
class KrylovBasis {
   public:
    KrylovBasis(const Matrix<Rational>& m, std::size_t max_dim);
    /// Degree of the minimal polynomial (dimension of the Krylov space).
    std::size_t dimension() const { return pivots_.size(); }
    /// Monic minimal polynomial coefficients, lowest first (length dimension()+1).
    const std::vector<Rational>& minimal_polynomial() const { return minpoly_; }
    /// Coefficients of g (lowest first) with g(M) e_0 = target; nullopt if target is
    /// outside the Krylov space.
    std::optional<std::vector<Rational>> express(const std::vector<Rational>& target) const;

   private:
    void reduce(std::vector<Rational>& v, std::vector<Rational>& combo) const;

    std::size_t n_;
    std::vector<std::vector<Rational>> rows_;    // echelon rows
    std::vector<std::vector<Rational>> combos_;  // row_i = sum combo_i[j] * M^j e_0
    std::vector<std::size_t> pivots_;
    std::vector<Rational> minpoly_;
};

}  // namespace qes

#endif  // QES_GROEBNER_HPP
