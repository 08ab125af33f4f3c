#pragma once

// 2x2 complex matrix arithmetic, the omega_k polynomial family and the trace identities
// used to reduce words in a two-generator group.

#include <complex>
#include <string_view>

namespace elocus {

using Complex = std::complex<double>;

struct Mat2C {
    Complex a11{1.0}, a12{0.0}, a21{0.0}, a22{1.0};

    static Mat2C identity() { return {}; }
    static Mat2C diagonal(Complex d1, Complex d2) { return {d1, 0.0, 0.0, d2}; }
    static Mat2C rotation(double angle);  // diag(e^{i angle}, e^{-i angle})

    Complex det() const { return a11 * a22 - a12 * a21; }
    Complex trace() const { return a11 + a22; }
    double frobenius_norm() const;

    // Adjugate; equals the inverse when det = 1.
    Mat2C adjugate() const { return {a22, -a12, -a21, a11}; }
    Mat2C conjugate_transpose() const;

    Mat2C& operator+=(const Mat2C& o);
    Mat2C& operator-=(const Mat2C& o);
    Mat2C& operator*=(Complex c);
};

Mat2C operator*(const Mat2C& x, const Mat2C& y);
Mat2C operator+(Mat2C x, const Mat2C& y);
Mat2C operator-(Mat2C x, const Mat2C& y);
Mat2C operator*(Complex c, Mat2C x);

double distance(const Mat2C& x, const Mat2C& y);  // Frobenius norm of x - y

// Character coordinates (tr A, tr B, tr AB).
struct TraceTriple {
    double t{0.0};
    double s{0.0};
    double r{0.0};
};

enum class ElementClass { Elliptic, Parabolic, Hyperbolic, Identity };

std::string_view to_string(ElementClass c);

inline constexpr double kDeterminantTol = 1e-9;
inline constexpr double kParabolicBand = 1e-8;
inline constexpr double kIrreducibilityThreshold = 1e-8;

// omega_0 = 0, omega_1 = 1, omega_{k+1} = x omega_k - omega_{k-1}, omega_{-k} = -omega_k.
double omega(int k, double x);

// True when |det x - 1| <= tol.
bool has_unit_determinant(const Mat2C& x, double tol = kDeterminantTol);

// x^k for det x = 1. Computed by repeated squaring and by the omega identity
// x^k = omega_k(tr x) x - omega_{k-1}(tr x) I; throws InvariantViolation if the two disagree.
Mat2C matrix_power(const Mat2C& x, int k);

// |tr| inside [2 - tol, 2 + tol] is parabolic; within tol of +-I is Identity.
ElementClass classify(const Mat2C& x, double tol = kParabolicBand);

// True when the pair has no common eigenvector, i.e. I, A, B, AB are linearly independent
// (smallest singular value of the 4x4 coefficient matrix above threshold).
bool pair_is_irreducible(const Mat2C& a, const Mat2C& b,
                         double threshold = kIrreducibilityThreshold);

// Smallest singular value of the matrix with rows vec(I), vec(A), vec(B), vec(AB).
double independence_margin(const Mat2C& a, const Mat2C& b);

// True when x preserves the form diag(1, -1): x^dagger eta x = eta.
bool preserves_su11_form(const Mat2C& x, double tol);
bool is_unitary(const Mat2C& x, double tol);

// Translation number of a lift of the boundary action of x in SU(1,1), estimated by
// iterating the lifted circle map. The lift is the one whose displacement at 0 lies in
// (lift_hint - 1/2, lift_hint + 1/2]. Test oracle only.
double translation_number_oracle(const Mat2C& x, double lift_hint, int n_iter);

}  // namespace elocus
