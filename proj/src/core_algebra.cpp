#include "elocus/core_algebra.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "elocus/errors.hpp"

namespace elocus {

Mat2C Mat2C::rotation(double angle) {
    const Complex z = std::polar(1.0, angle);
    return diagonal(z, std::conj(z));
}

double Mat2C::frobenius_norm() const {
    return std::sqrt(std::norm(a11) + std::norm(a12) + std::norm(a21) + std::norm(a22));
}

Mat2C Mat2C::conjugate_transpose() const {
    return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
}

Mat2C& Mat2C::operator+=(const Mat2C& o) {
    a11 += o.a11;
    a12 += o.a12;
    a21 += o.a21;
    a22 += o.a22;
    return *this;
}

Mat2C& Mat2C::operator-=(const Mat2C& o) {
    a11 -= o.a11;
    a12 -= o.a12;
    a21 -= o.a21;
    a22 -= o.a22;
    return *this;
}

Mat2C& Mat2C::operator*=(Complex c) {
    a11 *= c;
    a12 *= c;
    a21 *= c;
    a22 *= c;
    return *this;
}

Mat2C operator*(const Mat2C& x, const Mat2C& y) {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
}

Mat2C operator+(Mat2C x, const Mat2C& y) { return x += y; }
Mat2C operator-(Mat2C x, const Mat2C& y) { return x -= y; }
Mat2C operator*(Complex c, Mat2C x) { return x *= c; }

double distance(const Mat2C& x, const Mat2C& y) { return (x - y).frobenius_norm(); }

std::string_view to_string(ElementClass c) {
    switch (c) {
        case ElementClass::Elliptic: return "elliptic";
        case ElementClass::Parabolic: return "parabolic";
        case ElementClass::Hyperbolic: return "hyperbolic";
        case ElementClass::Identity: return "identity";
    }
    return "unknown";
}

namespace {

template <class T>
T omega_impl(int k, T x) {
    if (k < 0) return -omega_impl(-k, x);
    if (k == 0) return T(0.0);
    T prev(0.0);
    T cur(1.0);
    for (int i = 1; i < k; ++i) {
        const T next = x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace

double omega(int k, double x) { return omega_impl(k, x); }

bool has_unit_determinant(const Mat2C& x, double tol) { return std::abs(x.det() - 1.0) <= tol; }

namespace {

void require_unit_determinant(const Mat2C& x, const char* where) {
    if (!has_unit_determinant(x)) {
        throw InvariantViolation(std::string(where) + ": determinant " +
                                 std::to_string(std::abs(x.det())) + " is not 1");
    }
}

}  // namespace

Mat2C matrix_power(const Mat2C& x, int k) {
    require_unit_determinant(x, "matrix_power");

    Mat2C base = k < 0 ? x.adjugate() : x;
    unsigned n = static_cast<unsigned>(k < 0 ? -static_cast<long>(k) : k);
    Mat2C product = Mat2C::identity();
    while (n != 0) {
        if (n & 1u) product = product * base;
        base = base * base;
        n >>= 1u;
    }

    // Cayley-Hamilton route. Tolerance scales with the size of the entries, which grows
    // geometrically for hyperbolic x.
    const Complex tr = x.trace();
    const Mat2C via_omega =
        omega_impl(k, tr) * x - omega_impl(k - 1, tr) * Mat2C::identity();

    const double scale = std::max({1.0, product.frobenius_norm(), via_omega.frobenius_norm()});
    if (distance(product, via_omega) > 1e-9 * scale) {
        throw InvariantViolation("matrix_power: omega identity disagrees with repeated product");
    }
    return product;
}

ElementClass classify(const Mat2C& x, double tol) {
    if (distance(x, Mat2C::identity()) <= tol ||
        distance(x, Complex(-1.0) * Mat2C::identity()) <= tol) {
        return ElementClass::Identity;
    }
    const double a = std::abs(x.trace().real());
    if (a < 2.0 - tol) return ElementClass::Elliptic;
    if (a > 2.0 + tol) return ElementClass::Hyperbolic;
    return ElementClass::Parabolic;
}

double independence_margin(const Mat2C& a, const Mat2C& b) {
    const Mat2C ab = a * b;
    Eigen::Matrix4cd m;
    const Mat2C id = Mat2C::identity();
    const Mat2C* rows[] = {&id, &a, &b, &ab};
    for (int i = 0; i < 4; ++i) {
        m(i, 0) = rows[i]->a11;
        m(i, 1) = rows[i]->a12;
        m(i, 2) = rows[i]->a21;
        m(i, 3) = rows[i]->a22;
    }
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(m);
    return svd.singularValues()(3);
}

bool pair_is_irreducible(const Mat2C& a, const Mat2C& b, double threshold) {
    return independence_margin(a, b) > threshold;
}

bool preserves_su11_form(const Mat2C& x, double tol) {
    const Mat2C eta = Mat2C::diagonal(1.0, -1.0);
    return distance(x.conjugate_transpose() * eta * x, eta) <= tol;
}

bool is_unitary(const Mat2C& x, double tol) {
    return distance(x.conjugate_transpose() * x, Mat2C::identity()) <= tol;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Boundary map u -> arg(x . e^{2 pi i u}) / 2 pi - u, reduced to [0, 1).
double raw_displacement(const Mat2C& x, double u) {
    const Complex z = std::polar(1.0, kTwoPi * u);
    const Complex w = (x.a11 * z + x.a12) / (x.a21 * z + x.a22);
    double d = std::arg(w) / kTwoPi - u;
    d -= std::floor(d);
    return d;
}

double nearest_congruent(double raw, double target) {
    return raw + std::round(target - raw);
}

// Lifted displacement sampled on a uniform grid of [0, 1], unwrapped from u = 0.
class LiftedCircleMap {
public:
    LiftedCircleMap(const Mat2C& x, double lift_hint, int grid)
        : x_(x), table_(static_cast<std::size_t>(grid) + 1) {
        // Choose d(0) in (hint - 1/2, hint + 1/2].
        const double raw0 = raw_displacement(x, 0.0);
        double d0 = nearest_congruent(raw0, lift_hint);
        if (d0 <= lift_hint - 0.5) d0 += 1.0;
        if (d0 > lift_hint + 0.5) d0 -= 1.0;
        table_[0] = d0;
        for (std::size_t j = 1; j < table_.size(); ++j) {
            const double u = static_cast<double>(j) / grid;
            table_[j] = nearest_congruent(raw_displacement(x, u), table_[j - 1]);
        }
        if (std::abs(table_.back() - table_.front()) > 1e-6) {
            throw ConvergenceError("translation_number_oracle: displacement grid too coarse");
        }
    }

    double operator()(double v) const {
        const double u = v - std::floor(v);
        const double pos = u * static_cast<double>(table_.size() - 1);
        const auto j = static_cast<std::size_t>(std::lround(pos));
        return v + nearest_congruent(raw_displacement(x_, u), table_[j]);
    }

private:
    Mat2C x_;
    std::vector<double> table_;
};

}  // namespace

double translation_number_oracle(const Mat2C& x, double lift_hint, int n_iter) {
    require_unit_determinant(x, "translation_number_oracle");
    const double scale = std::max(1.0, x.frobenius_norm() * x.frobenius_norm());
    if (!preserves_su11_form(x, 1e-8 * scale)) {
        throw DomainError("translation_number_oracle: matrix is not in SU(1,1)");
    }
    if (n_iter < 100) throw DomainError("translation_number_oracle: n_iter must be >= 100");

    // The boundary derivative is bounded by (|a11| + |a12|)^2; keep grid cells well below
    // a half turn of displacement.
    const double lipschitz = std::pow(std::abs(x.a11) + std::abs(x.a12), 2);
    const int grid = static_cast<int>(std::clamp(64.0 * lipschitz, 4096.0, 1048576.0));
    const LiftedCircleMap lift(x, lift_hint, grid);

    double v = 0.0;
    double half_estimate = 0.0;
    const int half = n_iter / 2;
    for (int n = 1; n <= n_iter; ++n) {
        v = lift(v);
        if (n == half) half_estimate = v / half;
    }
    const double estimate = v / n_iter;
    if (std::abs(estimate - half_estimate) > 1e-2) {
        throw ConvergenceError("translation_number_oracle: estimates at n and n/2 differ");
    }
    return estimate;
}

}  // namespace elocus
