#ifndef QES_REALROOTS_HPP
#define QES_REALROOTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "qes/numeric.hpp"
#include "qes/unipoly.hpp"

namespace qes {

/// A real algebraic number: the unique root of a square-free primitive integer
/// polynomial inside the open interval (lo, hi). Neither endpoint is a root.
/// A rational value may also be carried exactly; then lo < value < hi still holds.
class AlgebraicReal {
   public:
    AlgebraicReal(UniPoly poly, Rational lo, Rational hi);
    static AlgebraicReal from_rational(const Rational& r, const std::string& var = "x");

    const UniPoly& poly() const { return poly_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    int sign_lo() const { return sign_lo_; }
    int sign_hi() const { return -sign_lo_; }

    /// The exact value when it is rational (found by a root of poly inside the interval).
    std::optional<Rational> as_rational() const;

    /// Halves the interval `steps` times, keeping the sign change.
    void refine(int steps = 1);
    /// Refines until hi - lo < width.
    void refine_to(const Rational& width);
    Rational width() const { return hi_ - lo_; }
    Rational midpoint() const { return (lo_ + hi_) / 2; }
    double approx() const;

    /// -1, 0, +1 against a rational.
    int compare(const Rational& r) const;

   private:
    UniPoly poly_;
    Rational lo_, hi_;
    int sign_lo_ = 0;
    mutable std::optional<Rational> exact_;
};

bool operator==(const AlgebraicReal& a, const AlgebraicReal& b);
bool operator<(const AlgebraicReal& a, const AlgebraicReal& b);

/// Sign-corrected primitive Sturm sequence of f.
std::vector<UniPoly> sturm_sequence(const UniPoly& f);

/// Number of distinct real roots of square-free f in (lo, hi]; pass nullopt for +-infinity.
int sturm_count(const std::vector<UniPoly>& seq, const std::optional<Rational>& lo, const std::optional<Rational>& hi);

/// One isolating interval per distinct real root, ascending, pairwise disjoint.
/// f must be nonzero; it is made square-free first.
std::vector<AlgebraicReal> sturm_isolate(const UniPoly& f);

/// All rational roots with multiplicity, ascending, each verified by exact evaluation.
std::vector<Rational> rational_roots(const UniPoly& f);

/// True iff f(a) == 0, decided by gcd(f, a.poly) and a Sturm count on a's interval.
bool algebraic_is_root(const AlgebraicReal& a, const UniPoly& f);

/// Simplest (smallest denominator) rational in the open interval (lo, hi).
Rational simplest_between(const Rational& lo, const Rational& hi);

/// Upper bound on |root| for every root of f (Cauchy), as a power of two.
Rational root_bound(const UniPoly& f);

/// "root of <poly> in (lo, hi)" or the rational value.
std::string to_string(const AlgebraicReal& a);

}  // namespace qes

#endif  // QES_REALROOTS_HPP
