#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <vector>

namespace convexlab::exact {

// Exact rational, canonical form (gcd 1, positive denominator). Thin value
// wrapper over GMP's mpq_class.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long num) : q_(num) {}
    Rational(long num, long den) : q_(num, den) { q_.canonicalize(); }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
        q_.canonicalize();
    }

    const mpq_class& raw() const { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }
    double to_double() const { return q_.get_d(); }
    // Natural log, stable for values far outside double range.
    double log() const;
    std::string str() const;

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
    friend Rational operator/(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ / b.q_)); }
    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }

private:
    mpq_class q_;
};

// Probability that n uniform points in a triangle are in convex position.
Rational p_triangle(int n);

// Probability that n uniform points in a parallelogram are in convex position.
Rational p_square(int n);

struct RationalMatrix {
    int size = 0;
    std::vector<Rational> a;  // row major

    Rational& at(int i, int j) { return a[static_cast<std::size_t>(i * size + j)]; }
    const Rational& at(int i, int j) const {
        return a[static_cast<std::size_t>(i * size + j)];
    }
};

// Inverse covariance matrix of the size-vector fluctuations, size
// (kappa-1) x (kappa-1): entry (i,j) is half of
//   8 - 2 B(i)                     on the diagonal,
//   4 + [|i-j| = 1] - B(i) - B(j)  off the diagonal,
// with B(i) = 1 exactly for the first and last index.
RationalMatrix sigma_inverse(int kappa);

// Exact determinant by Gaussian elimination over the rationals.
Rational det_rational(const RationalMatrix& m);

// Determinant of sigma_inverse(kappa) in closed form:
//   kappa / (3 * 2^kappa) * (2 (-1)^(kappa-1) + (2-sqrt3)^kappa + (2+sqrt3)^kappa),
// with the surd pair summed exactly through a_k = 4 a_{k-1} - a_{k-2}.
Rational d_kappa(int kappa);

// Determinant of the m x m tridiagonal matrix with 4 on the diagonal and 1
// off it, via det L_m = 4 det L_{m-1} - det L_{m-2}.
Rational l_det(int m);

// ln of the asymptotic equivalent of the convex-position probability in the
// regular kappa-gon:
//   ln C_kappa + 2n - n ln 4 + 3n ln kappa + 2n ln r + n ln sin theta
//     - (2n + kappa/2) ln n,
// C_kappa = kappa^((kappa+1)/2) / (pi^(kappa/2) sqrt(d_kappa) 4^kappa
//            (1+cos theta)^kappa).
double log_p_asymptotic(int kappa, long long n);

// Log joint density of (ell, s) for kappa in {3, 4}, normalized by the exact
// convex-position probability. Returns -inf outside the support.
double p34_joint_density_log(int kappa, int n, std::span<const double> ell,
                             std::span<const int> s);

// ln n! and ln C(n, k) in doubles (lgamma based).
double ln_factorial(long long n);
double ln_binomial(long long n, long long k);

}  // namespace convexlab::exact
