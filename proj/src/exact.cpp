#include "convexlab/exact.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "convexlab/geometry.hpp"

namespace convexlab::exact {

using std::numbers::pi;

double Rational::log() const {
    if (q_ == 0) return -std::numeric_limits<double>::infinity();
    if (q_ < 0) throw std::domain_error("Rational::log: negative value");
    const auto log_mpz = [](const mpz_class& z) {
        signed long exp2 = 0;
        const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
        return std::log(mant) + static_cast<double>(exp2) * std::numbers::ln2;
    };
    return log_mpz(q_.get_num()) - log_mpz(q_.get_den());
}

std::string Rational::str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

static mpz_class factorial(unsigned long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

static mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

Rational p_triangle(int n) {
    if (n < 3) throw std::invalid_argument("p_triangle: n must be >= 3");
    const auto un = static_cast<unsigned long>(n);
    mpz_class num;
    mpz_ui_pow_ui(num.get_mpz_t(), 2, un);
    num *= factorial(3 * un - 3);
    mpz_class den = factorial(2 * un);
    const mpz_class f = factorial(un - 1);
    den *= f * f * f;
    return Rational(num, den);
}

Rational p_square(int n) {
    if (n < 3) throw std::invalid_argument("p_square: n must be >= 3");
    const auto un = static_cast<unsigned long>(n);
    const mpz_class c = binomial(2 * un - 2, un - 1);
    const mpz_class f = factorial(un);
    return Rational(c * c, f * f);
}

RationalMatrix sigma_inverse(int kappa) {
    if (kappa < 3) throw std::invalid_argument("sigma_inverse: kappa must be >= 3");
    const int size = kappa - 1;
    RationalMatrix m;
    m.size = size;
    m.a.assign(static_cast<std::size_t>(size * size), Rational(0));
    const auto boundary = [size](int i) { return (i == 0 || i == size - 1) ? 1 : 0; };
    for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
            long twice;
            if (i == j) twice = 8 - 2 * boundary(i);
            else twice = 4 + (std::abs(i - j) == 1 ? 1 : 0) - boundary(i) - boundary(j);
            m.at(i, j) = Rational(twice, 2);
        }
    }
    return m;
}

Rational det_rational(const RationalMatrix& m) {
    if (m.size <= 0 || static_cast<std::size_t>(m.size * m.size) != m.a.size())
        throw std::invalid_argument("det_rational: matrix is not square");
    RationalMatrix w = m;
    const int n = w.size;
    Rational det(1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row) {
            if (w.at(row, col) != Rational(0)) {
                pivot = row;
                break;
            }
        }
        if (pivot < 0) return Rational(0);
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(w.at(pivot, j), w.at(col, j));
            det = det * Rational(-1);
        }
        const Rational& p = w.at(col, col);
        det = det * p;
        for (int row = col + 1; row < n; ++row) {
            const Rational factor = w.at(row, col) / p;
            if (factor == Rational(0)) continue;
            for (int j = col; j < n; ++j)
                w.at(row, j) = w.at(row, j) - factor * w.at(col, j);
        }
    }
    return det;
}

Rational d_kappa(int kappa) {
    if (kappa < 3) throw std::invalid_argument("d_kappa: kappa must be >= 3");
    // a_k = (2 - sqrt3)^k + (2 + sqrt3)^k, integer for all k
    mpz_class a_prev = 2, a_cur = 4;
    for (int k = 2; k <= kappa; ++k) {
        mpz_class a_next = 4 * a_cur - a_prev;
        a_prev = a_cur;
        a_cur = a_next;
    }
    const int sign = (kappa % 2 == 1) ? 1 : -1;
    mpz_class num = kappa * (a_cur + 2 * sign);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(kappa));
    den *= 3;
    return Rational(num, den);
}

Rational l_det(int m) {
    if (m < 1) throw std::invalid_argument("l_det: m must be >= 1");
    mpz_class prev = 1, cur = 4;  // det L_0 = 1, det L_1 = 4
    for (int k = 2; k <= m; ++k) {
        mpz_class next = 4 * cur - prev;
        prev = cur;
        cur = next;
    }
    return Rational(cur, mpz_class(1));
}

double log_p_asymptotic(int kappa, long long n) {
    if (kappa < 3) throw std::invalid_argument("log_p_asymptotic: kappa must be >= 3");
    if (n < 3) throw std::invalid_argument("log_p_asymptotic: n must be >= 3");
    const double theta = (kappa - 2) * pi / kappa;
    const double r = std::sqrt(4.0 * std::tan(pi / kappa) / kappa);
    const double dk = d_kappa(kappa).to_double();
    const double log_c = 0.5 * (kappa + 1) * std::log(static_cast<double>(kappa)) -
                         0.5 * kappa * std::log(pi) - 0.5 * std::log(dk) -
                         kappa * std::log(4.0) -
                         kappa * std::log1p(std::cos(theta));
    const double dn = static_cast<double>(n);
    return log_c + 2.0 * dn - dn * std::log(4.0) +
           3.0 * dn * std::log(static_cast<double>(kappa)) + 2.0 * dn * std::log(r) +
           dn * std::log(std::sin(theta)) - (2.0 * dn + 0.5 * kappa) * std::log(dn);
}

double ln_factorial(long long n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double ln_binomial(long long n, long long k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k);
}

double p34_joint_density_log(int kappa, int n, std::span<const double> ell,
                             std::span<const int> s) {
    if (kappa != 3 && kappa != 4)
        throw std::invalid_argument("p34_joint_density_log: kappa must be 3 or 4");
    if (n < 3) throw std::invalid_argument("p34_joint_density_log: n must be >= 3");
    if (static_cast<int>(ell.size()) != kappa || static_cast<int>(s.size()) != kappa)
        throw std::invalid_argument("p34_joint_density_log: size mismatch");
    for (double l : ell)
        if (!(l >= 0.0)) throw std::domain_error("p34_joint_density_log: negative ell");

    const double neg_inf = -std::numeric_limits<double>::infinity();
    long long total = 0;
    for (int j = 0; j < kappa; ++j) {
        if (s[static_cast<std::size_t>(j)] < 0) return neg_inf;
        total += s[static_cast<std::size_t>(j)];
        const int nj = s[static_cast<std::size_t>(j)] +
                       s[static_cast<std::size_t>((j + 1) % kappa)];
        if (nj < 1) return neg_inf;
    }
    if (total != n) return neg_inf;

    const RegularPolygon poly = make_polygon(kappa);
    const auto ecp = side_lengths(poly, ell);
    if (!ecp) return neg_inf;

    const Rational prob = (kappa == 3) ? p_triangle(n) : p_square(n);
    double log_density = ln_factorial(n) +
                         (n - kappa) * std::log(std::sin(poly.theta)) - prob.log();
    for (int j = 0; j < kappa; ++j) {
        const int sj = s[static_cast<std::size_t>(j)];
        const int nj = sj + s[static_cast<std::size_t>((j + 1) % kappa)] - 1;
        const double c = ecp->side_len[static_cast<std::size_t>(j)];
        if (c <= 0.0 && nj > 0) return neg_inf;
        if (nj > 0) log_density += nj * std::log(c);
        log_density -= ln_factorial(sj) + ln_factorial(nj);
    }
    return log_density;
}

}  // namespace convexlab::exact
